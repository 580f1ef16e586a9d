#pragma once

#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "dynaheight/bounds.hpp"

namespace dyna {

// One experiment: either a bounded-height verification over an ambient
// variety (example = 0) or a growth-table reproduction (example = 1 or 2).
// Configurations come from JSON files, bundled presets, or flags; flags
// override file values field by field.
struct ExperimentConfig {
    std::string f;                // polynomial in x
    std::vector<std::string> X;   // equations in x1..xn (verification runs)
    long n = 0;                   // ambient coordinate count; 0 = infer from X
    long codim = 1;               // codimension of the periodic families
    long max_gen_deg = 4;         // chain-generator degree cap
    long budget = 16;             // intersection points per family
    long m_lo = 1, m_hi = 4;      // growth-table range
    double target_error = 1e-9;   // canonical-height certification radius
    unsigned long seed = 1;       // PRNG for demonstration point sampling
    long example = 0;             // 0 = verification, 1|2 = growth table
    long jobs = 1;                // worker cap; the queue runs in order
};

// Parse a JSON configuration document.  Unknown keys are rejected; parse
// errors carry line and column.
ExperimentConfig config_from_json(const std::string& text);

// Bundled presets: "line" (the affine line experiment), "example1" and
// "example2" (the two growth tables), "symmetry" (odd map x^3 + x whose
// commuters double through the sign symmetry).
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// A finished run: a machine-readable document with stable field order plus
// the plottable rows.  exit_code is 0 for a pass and 2 when a sampled point
// exceeded its certificate bound (the violation names the point).
struct ExperimentReport {
    nlohmann::ordered_json doc;
    // (m, point, height) rows sorted by (m, height); m is the growth index
    // for growth tables and the family generator degree for verifications
    // (-1 when D(V) is infinite).
    std::vector<std::tuple<long, std::string, double>> rows;
    int exit_code = 0;
};

// Dispatch classify -> commute -> varieties -> bounds and assemble the
// report.  Deterministic for a fixed config (including the seed): the
// document carries no wall-clock data, only exact values and work counts.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Serializations with stable ordering.  JSON is round-trippable; CSV holds
// the sorted (m, point, height) rows.
std::string emit_json(const ExperimentReport& report);
std::string emit_csv(const ExperimentReport& report);

// Shared JSON renderings used by the command-line surface.
nlohmann::ordered_json interval_json(const RealInterval& v);
nlohmann::ordered_json height_json(const HeightValue& h);
nlohmann::ordered_json certificate_json(const HeightCertificate& cert);
nlohmann::ordered_json config_json(const ExperimentConfig& cfg);

// Infer the ambient coordinate count from the largest x<k> token used by
// the equations (the explicit field wins when positive).
long infer_coordinate_count(const std::vector<std::string>& equations);

} // namespace dyna
