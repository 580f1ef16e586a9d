// dynaheight: canonical heights, polynomial classification, commuting
// families, periodic subvarieties of (P^1)^n, and bounded-height
// verification experiments, from one binary.
//
// Exit codes: 0 success (a vacuous verification counts), 1 configuration or
// gate error, 2 a sampled point exceeded its certified height bound.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynaheight/bounds.hpp"
#include "dynaheight/classify.hpp"
#include "dynaheight/commute.hpp"
#include "dynaheight/errors.hpp"
#include "dynaheight/experiment.hpp"
#include "dynaheight/io.hpp"

using dyna::ExperimentConfig;
using dyna::ExperimentReport;
using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) dyna::raise(dyna::ErrorKind::config, "cannot read file \"" + path + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_out(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) dyna::raise(dyna::ErrorKind::config, "cannot write file \"" + path + "\"");
    out << text;
}

// Equations arrive either as a file (one equation per line, '#' comments)
// or as a single string with ';' separators.
std::vector<std::string> split_equations(const std::string& text) {
    std::string body = text;
    {
        std::ifstream in(text);
        if (in) {
            std::ostringstream os;
            os << in.rdbuf();
            body = os.str();
            for (char& ch : body)
                if (ch == '\n') ch = ';';
        }
    }
    std::vector<std::string> eqs;
    std::string cur;
    std::istringstream is(body);
    while (std::getline(is, cur, ';')) {
        const std::size_t hash = cur.find('#');
        if (hash != std::string::npos) cur.erase(hash);
        const std::size_t a = cur.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const std::size_t b = cur.find_last_not_of(" \t\r");
        eqs.push_back(cur.substr(a, b - a + 1));
    }
    return eqs;
}

dyna::P1Point parse_point(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo")
        return dyna::P1Point::infinity();
    const dyna::RPoly p = dyna::parse_poly(text);
    if (p.degree() > 0)
        dyna::raise(dyna::ErrorKind::parse,
                    "expected a rational point or \"inf\", got \"" + text + "\"");
    return dyna::P1Point::from_rational(p.degree() < 0 ? dyna::Rational(0) : p.coeff(0));
}

std::string nfpoly_str(const dyna::NFPoly& p) {
    try {
        return poly_to_string(dyna::rational_poly(p));
    } catch (const dyna::Error&) {
        std::ostringstream os;
        bool first = true;
        for (long k = p.degree(); k >= 0; --k) {
            if (p.coeff(k).is_zero()) continue;
            if (!first) os << " + ";
            os << "(" << p.coeff(k).str() << ")";
            if (k >= 1) os << "*x";
            if (k >= 2) os << "^" << k;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }
}

void parse_m_range(const std::string& text, long& lo, long& hi) {
    if (std::sscanf(text.c_str(), "%ld..%ld", &lo, &hi) == 2) return;
    if (std::sscanf(text.c_str(), "%ld", &lo) == 1) {
        hi = lo;
        return;
    }
    dyna::raise(dyna::ErrorKind::config, "cannot parse m range \"" + text + "\" (use lo..hi)");
}

struct Output {
    std::string format = "json";  // json | csv
    std::string path;             // empty = stdout
};

void require_json(const Output& out, const char* what) {
    if (out.format != "json")
        dyna::raise(dyna::ErrorKind::config,
                    std::string(what) + " output is JSON only; csv applies to experiment reports");
}

int emit_report(const ExperimentReport& rep, const Output& out) {
    write_out(out.format == "csv" ? emit_csv(rep) : emit_json(rep), out.path);
    return rep.exit_code;
}

int cmd_classify(const std::string& f_text, const Output& out) {
    require_json(out, "classify");
    const dyna::RPoly f = dyna::parse_poly(f_text);
    const dyna::ClassLabel label = dyna::classify(f);
    const dyna::NormalForm nf = dyna::normal_form(f);
    ordered_json o;
    o["f"] = poly_to_string(f);
    o["degree"] = f.degree();
    switch (label.kind) {
        case dyna::MapClass::power_conjugate: o["class"] = "power"; break;
        case dyna::MapClass::chebyshev_conjugate: o["class"] = "chebyshev"; break;
        case dyna::MapClass::disintegrated: o["class"] = "disintegrated"; break;
    }
    if (label.kind == dyna::MapClass::chebyshev_conjugate) {
        o["sign"] = label.sign;
        o["twist_square"] = label.twist_square.str();
    }
    o["normal_form"] = ordered_json{{"monic", nfpoly_str(nf.g)},
                                    {"alpha", nf.alpha.str()},
                                    {"beta", nf.beta.str()},
                                    {"field_degree", nf.field ? nf.field->degree() : 1},
                                    {"pure_power", nf.pure_power},
                                    {"gap", nf.gap}};
    write_out(o.dump(2) + "\n", out.path);
    return 0;
}

int cmd_heights(const std::string& f_text, const std::string& point_text, double target_error,
                const Output& out) {
    require_json(out, "heights");
    const dyna::RPoly f = dyna::parse_poly(f_text);
    const dyna::P1Point p = parse_point(point_text);
    ordered_json o;
    o["f"] = poly_to_string(f);
    o["point"] = p.is_infinity() ? std::string("inf") : p.value().str();
    o["weil"] = dyna::height_json(dyna::weil_height(p));
    o["canonical"] = dyna::height_json(dyna::canonical_height(f, p, target_error));
    write_out(o.dump(2) + "\n", out.path);
    return 0;
}

int cmd_commute(const std::string& f_text, long max_degree, long k_max, const Output& out) {
    require_json(out, "commute");
    const dyna::RPoly f = dyna::parse_poly(f_text);
    const dyna::CommuterSet cs = dyna::commuters_up_to(f, max_degree, k_max);
    ordered_json o;
    o["f"] = poly_to_string(f);
    o["base"] = poly_to_string(cs.base);
    o["exponent"] = cs.D_exponent;
    o["symmetry"] = ordered_json{{"order", cs.group.order()}, {"gap", cs.group.gap}};
    ordered_json elems = ordered_json::array();
    for (const dyna::Commuter& c : cs.elements)
        elems.push_back(ordered_json{{"poly", nfpoly_str(c.poly)},
                                     {"degree", c.poly.degree()},
                                     {"witness_k", c.witness_k}});
    o["count"] = cs.elements.size();
    o["elements"] = std::move(elems);
    write_out(o.dump(2) + "\n", out.path);
    return 0;
}

int cmd_varieties(long n, long codim, long limit, const Output& out) {
    require_json(out, "varieties");
    const std::vector<dyna::Signature> sigs = dyna::enumerate_signatures(n, codim);
    ordered_json o;
    o["n"] = n;
    o["codim"] = codim;
    o["count"] = sigs.size();
    ordered_json list = ordered_json::array();
    for (const dyna::Signature& s : sigs) {
        if (static_cast<long>(list.size()) >= limit) break;
        list.push_back(s.str());
    }
    o["truncated"] = static_cast<long>(sigs.size()) > limit;
    o["signatures"] = std::move(list);
    write_out(o.dump(2) + "\n", out.path);
    return 0;
}

int cmd_certify(const std::string& f_text, const std::vector<std::string>& eqs, long n_opt,
                const Output& out) {
    require_json(out, "bounds certify");
    if (eqs.empty()) dyna::raise(dyna::ErrorKind::config, "certify needs ambient equations");
    const dyna::RPoly f = dyna::parse_poly(f_text);
    const long n = n_opt > 0 ? n_opt : dyna::infer_coordinate_count(eqs);
    dyna::AmbientVariety X;
    X.n = n;
    for (const std::string& eq : eqs)
        X.equations.push_back(dyna::parse_multipoly(eq, static_cast<int>(n)));
    X.dim_hint = n - static_cast<long>(X.equations.size());
    ordered_json o;
    o["f"] = poly_to_string(f);
    o["X"] = eqs;
    o["n"] = n;
    o["dim"] = X.dim_hint;
    o["codim"] = X.dim_hint;  // complementary families have codim = dim X
    ordered_json certs = ordered_json::array();
    try {
        for (const dyna::Signature& sig : dyna::enumerate_signatures(n, X.dim_hint))
            certs.push_back(dyna::certificate_json(dyna::certificate(X, sig, f)));
        o["status"] = "ok";
    } catch (const dyna::Error& e) {
        if (e.kind() != dyna::ErrorKind::degenerate) throw;
        o["status"] = e.what();
        certs = ordered_json::array();
    }
    o["certificates"] = std::move(certs);
    write_out(o.dump(2) + "\n", out.path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical heights, commuting families, periodic subvarieties, and\n"
                 "bounded-height experiments for disintegrated polynomial maps"};
    app.require_subcommand(1);

    Output out;
    long jobs = 1;
    app.add_option("--format", out.format, "output format for experiment reports")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--output", out.path, "write output to a file instead of stdout");
    app.add_option("--jobs", jobs,
                   "worker cap; work is queued deterministically and runs in order")
        ->check(CLI::PositiveNumber);

    std::string f_text, point_text = "1", eq_text, config_path, preset;
    double target_error = 1e-9;
    long max_degree = 16, k_max = 0, n_opt = 0, codim = 1, limit = 100;
    long max_gen_deg = 4, budget = 16, example = 0;
    unsigned long seed = 1;
    std::string m_text = "1..4";

    CLI::App* c_classify = app.add_subcommand("classify",
                                              "decide power / Chebyshev / disintegrated");
    c_classify->add_option("--f", f_text, "polynomial in x")->required();

    CLI::App* c_heights = app.add_subcommand("heights", "Weil and canonical heights of a point");
    c_heights->add_option("--f", f_text, "polynomial in x")->required();
    c_heights->add_option("--point", point_text, "rational point or \"inf\"")
        ->capture_default_str();
    c_heights->add_option("--target-error", target_error, "canonical-height error radius")
        ->capture_default_str();

    CLI::App* c_commute = app.add_subcommand("commute", "all commuters up to a degree");
    c_commute->add_option("--f", f_text, "polynomial in x")->required();
    c_commute->add_option("--max-degree", max_degree, "degree window")->capture_default_str();
    c_commute->add_option("--k-max", k_max, "iterate search cap (0 = default)")
        ->capture_default_str();

    CLI::App* c_varieties = app.add_subcommand("varieties",
                                               "enumerate periodic-subvariety signatures");
    c_varieties->add_option("--n", n_opt, "number of coordinates")->required();
    c_varieties->add_option("--codim", codim, "codimension")->required();
    c_varieties->add_option("--limit", limit, "max signatures to list")->capture_default_str();

    CLI::App* c_bounds = app.add_subcommand("bounds", "height bounds over an ambient variety");
    c_bounds->require_subcommand(1);
    CLI::App* c_certify = c_bounds->add_subcommand("certify",
                                                   "derive the height certificates alone");
    c_certify->add_option("--f", f_text, "polynomial in x")->required();
    c_certify->add_option("--x", eq_text, "equations: file or ';'-separated list")->required();
    c_certify->add_option("--n", n_opt, "coordinate count (0 = infer)")->capture_default_str();
    CLI::App* c_verify = c_bounds->add_subcommand("verify",
                                                  "sample periodic families and check the bound");
    c_verify->add_option("--f", f_text, "polynomial in x")->required();
    c_verify->add_option("--x", eq_text, "equations: file or ';'-separated list")->required();
    c_verify->add_option("--n", n_opt, "coordinate count (0 = infer)")->capture_default_str();
    c_verify->add_option("--max-gen-deg", max_gen_deg, "chain-generator degree cap")
        ->capture_default_str();
    c_verify->add_option("--budget", budget, "intersection points per family")
        ->capture_default_str();
    c_verify->add_option("--seed", seed, "demonstration-sampling seed")->capture_default_str();
    CLI::App* c_reproduce = c_bounds->add_subcommand("reproduce",
                                                     "height-growth tables on the model surfaces");
    c_reproduce->add_option("--example", example, "growth example id (1 or 2)")->required();
    c_reproduce->add_option("--f", f_text, "polynomial in x")->required();
    c_reproduce->add_option("--m", m_text, "parameter range lo..hi")->capture_default_str();

    CLI::App* c_run = app.add_subcommand("run", "full experiment from a config, preset, or flags");
    auto* o_config = c_run->add_option("--config", config_path, "JSON configuration file");
    auto* o_preset =
        c_run->add_option("--preset", preset,
                          "bundled configuration: line, example1, example2, symmetry");
    o_config->excludes(o_preset);
    auto* o_f = c_run->add_option("--f", f_text, "polynomial in x (overrides config)");
    auto* o_x = c_run->add_option("--x", eq_text, "equations: file or ';'-separated list");
    auto* o_n = c_run->add_option("--n", n_opt, "coordinate count (0 = infer)");
    auto* o_codim = c_run->add_option("--codim", codim, "codimension of the periodic families");
    auto* o_gen = c_run->add_option("--max-gen-deg", max_gen_deg, "chain-generator degree cap");
    auto* o_budget = c_run->add_option("--budget", budget, "intersection points per family");
    auto* o_m = c_run->add_option("--m", m_text, "growth range lo..hi");
    auto* o_seed = c_run->add_option("--seed", seed, "demonstration-sampling seed");
    auto* o_err = c_run->add_option("--target-error", target_error, "canonical-height radius");
    auto* o_example = c_run->add_option("--example", example, "0 = verification, 1|2 = growth");

    try {
        app.parse(argc, argv);

        if (c_classify->parsed()) return cmd_classify(f_text, out);
        if (c_heights->parsed()) return cmd_heights(f_text, point_text, target_error, out);
        if (c_commute->parsed()) return cmd_commute(f_text, max_degree, k_max, out);
        if (c_varieties->parsed()) return cmd_varieties(n_opt, codim, limit, out);

        ExperimentConfig cfg;
        if (c_bounds->parsed()) {
            if (c_certify->parsed()) return cmd_certify(f_text, split_equations(eq_text), n_opt, out);
            if (c_verify->parsed()) {
                cfg.f = f_text;
                cfg.X = split_equations(eq_text);
                cfg.n = n_opt > 0 ? n_opt : dyna::infer_coordinate_count(cfg.X);
                cfg.codim = cfg.n - static_cast<long>(cfg.X.size());
                cfg.max_gen_deg = max_gen_deg;
                cfg.budget = budget;
                cfg.seed = seed;
                cfg.jobs = jobs;
                return emit_report(dyna::run_experiment(cfg), out);
            }
            // reproduce
            cfg.f = f_text;
            cfg.example = example;
            parse_m_range(m_text, cfg.m_lo, cfg.m_hi);
            cfg.jobs = jobs;
            return emit_report(dyna::run_experiment(cfg), out);
        }

        // run: config file or preset first, then flag overrides, field by field.
        if (*o_preset) cfg = dyna::preset_config(preset);
        if (*o_config) cfg = dyna::config_from_json(read_file(config_path));
        if (*o_f) cfg.f = f_text;
        if (*o_x) cfg.X = split_equations(eq_text);
        if (*o_n) cfg.n = n_opt;
        if (*o_codim) cfg.codim = codim;
        if (*o_gen) cfg.max_gen_deg = max_gen_deg;
        if (*o_budget) cfg.budget = budget;
        if (*o_m) parse_m_range(m_text, cfg.m_lo, cfg.m_hi);
        if (*o_seed) cfg.seed = seed;
        if (*o_err) cfg.target_error = target_error;
        if (*o_example) cfg.example = example;
        cfg.jobs = jobs;
        return emit_report(dyna::run_experiment(cfg), out);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const dyna::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
