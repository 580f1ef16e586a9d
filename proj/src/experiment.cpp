#include "dynaheight/experiment.hpp"

#include <algorithm>
#include <iomanip>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "dynaheight/classify.hpp"
#include "dynaheight/commute.hpp"
#include "dynaheight/config.hpp"
#include "dynaheight/errors.hpp"
#include "dynaheight/io.hpp"

namespace dyna {

using nlohmann::ordered_json;

namespace {

long require_integer(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer())
        raise(ErrorKind::config, "config field \"" + key + "\" must be an integer");
    return v.get<long>();
}

std::string class_word(const ClassLabel& label) {
    switch (label.kind) {
        case MapClass::power_conjugate: return "power";
        case MapClass::chebyshev_conjugate: return "Chebyshev";
        case MapClass::disintegrated: return "disintegrated";
    }
    return "disintegrated";
}

// Deterministic double rendering for CSV cells.
std::string num_str(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

} // namespace

long infer_coordinate_count(const std::vector<std::string>& equations) {
    long n = 0;
    const std::regex var("x([0-9]+)");
    for (const std::string& eq : equations) {
        for (auto it = std::sregex_iterator(eq.begin(), eq.end(), var);
             it != std::sregex_iterator(); ++it)
            n = std::max(n, std::stol((*it)[1].str()));
    }
    if (n == 0)
        raise(ErrorKind::config,
              "could not infer the coordinate count: no x<k> variable appears in the equations");
    return n;
}

ExperimentConfig config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t stop = e.byte > 0 ? std::min(text.size(), e.byte - 1) : 0;
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        raise(ErrorKind::parse, "config parse error at line " + std::to_string(line) +
                                    ", column " + std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object()) raise(ErrorKind::config, "config must be a JSON object");

    static const std::set<std::string> known = {"f",      "X",            "n",    "codim",
                                                "max_gen_deg", "budget", "m_range", "target_error",
                                                "seed",   "example",      "jobs"};
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            raise(ErrorKind::config, "unknown config key \"" + item.key() + "\"");

    ExperimentConfig c;
    if (j.contains("f")) {
        if (!j["f"].is_string()) raise(ErrorKind::config, "config field \"f\" must be a string");
        c.f = j["f"].get<std::string>();
    }
    if (j.contains("X")) {
        if (!j["X"].is_array()) raise(ErrorKind::config, "config field \"X\" must be an array");
        for (const auto& e : j["X"]) {
            if (!e.is_string())
                raise(ErrorKind::config, "config field \"X\" must hold equation strings");
            c.X.push_back(e.get<std::string>());
        }
    }
    if (j.contains("n")) c.n = require_integer(j["n"], "n");
    if (j.contains("codim")) c.codim = require_integer(j["codim"], "codim");
    if (j.contains("max_gen_deg")) c.max_gen_deg = require_integer(j["max_gen_deg"], "max_gen_deg");
    if (j.contains("budget")) c.budget = require_integer(j["budget"], "budget");
    if (j.contains("example")) c.example = require_integer(j["example"], "example");
    if (j.contains("jobs")) c.jobs = require_integer(j["jobs"], "jobs");
    if (j.contains("m_range")) {
        const auto& r = j["m_range"];
        if (!r.is_array() || r.size() != 2)
            raise(ErrorKind::config, "config field \"m_range\" must be [first, last]");
        c.m_lo = require_integer(r[0], "m_range");
        c.m_hi = require_integer(r[1], "m_range");
    }
    if (j.contains("target_error")) {
        if (!j["target_error"].is_number())
            raise(ErrorKind::config, "config field \"target_error\" must be a number");
        c.target_error = j["target_error"].get<double>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
            raise(ErrorKind::config, "config field \"seed\" must be a nonnegative integer");
        c.seed = j["seed"].get<unsigned long>();
    }
    return c;
}

std::vector<std::string> preset_names() { return {"line", "example1", "example2", "symmetry"}; }

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig c;
    if (name == "line") {
        c.f = "x^2 + 1";
        c.X = {"x2 - x1 - 1"};
        c.n = 2;
        c.codim = 1;
        c.max_gen_deg = 4;
        c.budget = 16;
    } else if (name == "example1") {
        c.f = "x^2 + 1";
        c.example = 1;
        c.m_lo = 1;
        c.m_hi = 4;
    } else if (name == "example2") {
        c.f = "x^2 + 1";
        c.example = 2;
        c.m_lo = 1;
        c.m_hi = 5;
    } else if (name == "symmetry") {
        c.f = "x^3 + x";
        c.X = {"x2 - x1 - 1"};
        c.n = 2;
        c.codim = 1;
        c.max_gen_deg = 9;
        c.budget = 32;
    } else {
        raise(ErrorKind::config,
              "unknown preset \"" + name + "\"; available: line, example1, example2, symmetry");
    }
    return c;
}

ordered_json interval_json(const RealInterval& v) {
    ordered_json o;
    o["lo"] = v.lo().to_double();
    o["hi"] = v.hi().to_double();
    o["radius"] = v.radius().to_double();
    return o;
}

ordered_json height_json(const HeightValue& h) {
    ordered_json o;
    if (h.is_infinite()) {
        o["infinite"] = true;
        return o;
    }
    o["value"] = h.value().to_double();
    o["radius"] = h.radius().to_double();
    o["exact"] = h.exact();
    return o;
}

ordered_json certificate_json(const HeightCertificate& cert) {
    ordered_json o;
    o["X"] = cert.X_id;
    o["signature"] = cert.signature.str();
    o["c1"] = interval_json(cert.c1);
    o["c2"] = cert.c2_integer;
    o["c3"] = cert.c3;
    o["c4"] = interval_json(cert.c4);
    o["conversion"] = interval_json(cert.conversion);
    o["M"] = cert.M;
    o["anomalous_gate_failure"] = cert.anomalous_gate_failure;
    if (!cert.gate_notes.empty()) o["gate_notes"] = cert.gate_notes;
    ordered_json prov = ordered_json::array();
    for (const auto& [k, v] : cert.provenance) prov.push_back({k, v});
    o["provenance"] = std::move(prov);
    ordered_json projs = ordered_json::array();
    for (const MultiPoly& F : cert.projections) projs.push_back(multipoly_to_string(F));
    o["projections"] = std::move(projs);
    return o;
}

ordered_json config_json(const ExperimentConfig& cfg) {
    ordered_json o;
    o["f"] = cfg.f;
    o["X"] = cfg.X;
    o["n"] = cfg.n;
    o["codim"] = cfg.codim;
    o["max_gen_deg"] = cfg.max_gen_deg;
    o["budget"] = cfg.budget;
    o["m_range"] = {cfg.m_lo, cfg.m_hi};
    o["target_error"] = cfg.target_error;
    o["seed"] = cfg.seed;
    o["example"] = cfg.example;
    o["jobs"] = cfg.jobs;
    return o;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.f.empty()) raise(ErrorKind::config, "config needs a polynomial f");
    if (cfg.jobs < 1) raise(ErrorKind::config, "jobs must be at least 1");
    const RPoly f = parse_poly(cfg.f);

    // classify gate: the theory (and every downstream module) assumes a
    // disintegrated map.
    const ClassLabel label = classify(f);
    if (label.kind != MapClass::disintegrated)
        raise(ErrorKind::not_disintegrated, "not disintegrated (" + class_word(label) + ")");

    ExperimentReport rep;
    rep.doc["config"] = config_json(cfg);
    rep.doc["classification"] = ordered_json{{"kind", "disintegrated"},
                                             {"degree", f.degree()}};

    // commute: the generator menu every family draws from.
    const long commuter_window = std::min<long>(128, std::max<long>(f.degree(), cfg.max_gen_deg));
    const CommuterSet cs = commuters_up_to(f, commuter_window);
    {
        ordered_json degrees = ordered_json::array();
        for (const Commuter& c : cs.elements) degrees.push_back(c.poly.degree());
        rep.doc["commuters"] = ordered_json{{"base", poly_to_string(cs.base)},
                                            {"exponent", cs.D_exponent},
                                            {"symmetry_order", cs.group.order()},
                                            {"window", commuter_window},
                                            {"count", cs.elements.size()},
                                            {"degrees", std::move(degrees)}};
    }

    long points_sampled = 0;
    long max_sample_degree = 1;

    if (cfg.example != 0) {
        const GrowthTable gt = reproduce_example(cfg.example, f, cfg.m_lo, cfg.m_hi);
        rep.doc["signatures"] =
            ordered_json{{"n", gt.X.n},
                         {"codim", gt.X.dim_hint},
                         {"count", enumerate_signatures(gt.X.n, gt.X.dim_hint).size()}};
        ordered_json eqs = ordered_json::array();
        for (const MultiPoly& e : gt.X.equations) eqs.push_back(multipoly_to_string(e));
        ordered_json rows = ordered_json::array();
        for (const GrowthRow& row : gt.rows) {
            const std::string p = point_str(row.point);
            rows.push_back(ordered_json{{"m", row.m},
                                        {"point", p},
                                        {"total", height_json(row.total)},
                                        {"dominant", height_json(row.dominant)}});
            rep.rows.emplace_back(row.m, p, row.total.value().to_double());
            ++points_sampled;
        }
        rep.doc["growth"] = ordered_json{{"example", gt.example_id},
                                         {"n", gt.X.n},
                                         {"equations", std::move(eqs)},
                                         {"expansion", interval_json(gt.expansion)},
                                         {"rows", std::move(rows)}};
    } else {
        if (cfg.X.empty())
            raise(ErrorKind::config,
                  "a verification run needs ambient equations (set X) or a growth example id");
        const long n = cfg.n > 0 ? cfg.n : infer_coordinate_count(cfg.X);
        AmbientVariety X;
        X.n = n;
        for (const std::string& eq : cfg.X)
            X.equations.push_back(parse_multipoly(eq, static_cast<int>(n)));
        X.dim_hint = n - static_cast<long>(X.equations.size());
        if (cfg.codim != X.dim_hint)
            raise(ErrorKind::config, "codim " + std::to_string(cfg.codim) +
                                         " must equal dim X = " + std::to_string(X.dim_hint) +
                                         " so the periodic families are complementary");

        rep.doc["signatures"] = ordered_json{
            {"n", n}, {"codim", cfg.codim}, {"count", enumerate_signatures(n, cfg.codim).size()}};

        const BoundednessReport br = verify_bounded(X, f, cfg.codim, cfg.max_gen_deg, cfg.budget);
        ordered_json certs = ordered_json::array();
        for (const HeightCertificate& c : br.certificates) certs.push_back(certificate_json(c));
        ordered_json fams = ordered_json::array();
        for (const VerifiedFamily& fam : br.families) {
            ordered_json pts = ordered_json::array();
            for (std::size_t i = 0; i < fam.points.size(); ++i) {
                const std::string p = point_str(fam.points[i]);
                pts.push_back(
                    ordered_json{{"point", p}, {"height", height_json(fam.heights[i])}});
                const long m = fam.D.infinite ? -1 : fam.D.value;
                rep.rows.emplace_back(m, p, fam.heights[i].value().to_double());
                ++points_sampled;
                for (const P1Point& c : fam.points[i])
                    if (!c.is_infinity() && !c.value().is_rational())
                        max_sample_degree =
                            std::max(max_sample_degree, c.value().min_poly().degree());
            }
            fams.push_back(ordered_json{{"description", fam.description},
                                        {"D", fam.D.str()},
                                        {"beyond_threshold", fam.beyond_threshold},
                                        {"points_sampled", fam.points_sampled},
                                        {"gate_passed", fam.gate_passed},
                                        {"max_height", fam.max_height},
                                        {"bound", fam.bound},
                                        {"points", std::move(pts)},
                                        {"anomalous", fam.anomalous_points},
                                        {"violations", fam.violations}});
        }
        rep.doc["verification"] = ordered_json{{"status", br.status},
                                               {"vacuous", br.vacuous},
                                               {"passed", br.passed()},
                                               {"certificates", std::move(certs)},
                                               {"families", std::move(fams)},
                                               {"violations", br.violations}};
        if (!br.passed()) rep.exit_code = 2;

        // Seeded demonstration samples of X itself (independent of the
        // family sampling, which is exact and deterministic by design).
        if (!br.vacuous) {
            ordered_json demo = ordered_json::array();
            try {
                for (const auto& pt : sample_points(X, 3, cfg.seed))
                    demo.push_back(ordered_json{{"point", point_str(pt)},
                                                {"height", height_json(height_n(pt))}});
                rep.doc["demonstration_points"] = std::move(demo);
            } catch (const Error& e) {
                rep.doc["demonstration_points"] = std::string("unavailable: ") + e.what();
            }
        }
    }

    std::sort(rep.rows.begin(), rep.rows.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) < std::get<2>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    rep.doc["work"] = ordered_json{{"points_sampled", points_sampled},
                                   {"max_sample_degree", max_sample_degree},
                                   {"precision_bits", Config::precision_bits()}};
    return rep;
}

std::string emit_json(const ExperimentReport& report) { return report.doc.dump(2) + "\n"; }

std::string emit_csv(const ExperimentReport& report) {
    std::string out = "m,point,height\n";
    for (const auto& [m, point, height] : report.rows) {
        out += std::to_string(m);
        out += ",\"" + point + "\",";
        out += num_str(height);
        out += "\n";
    }
    return out;
}

} // namespace dyna
