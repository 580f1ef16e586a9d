#include "dynaheight/bounds.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dynaheight/classify.hpp"
#include "dynaheight/errors.hpp"
#include "dynaheight/io.hpp"

namespace dyna {

namespace {

RealInterval ri_max(const RealInterval& a, const RealInterval& b) {
    BigFloat lo = a.lo() < b.lo() ? b.lo() : a.lo();
    BigFloat hi = a.hi() < b.hi() ? b.hi() : a.hi();
    return RealInterval(std::move(lo), std::move(hi));
}

std::string idx_set_str(const std::vector<std::size_t>& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ", ";
        os << "x" << (s[i] + 1);
    }
    os << "}";
    return os.str();
}

std::string describe_equations(const AmbientVariety& X) {
    std::string id;
    for (const MultiPoly& eq : X.equations) {
        if (!id.empty()) id += "; ";
        id += multipoly_to_string(eq);
    }
    return id.empty() ? std::string("(no equations)") : id;
}

std::size_t position_in(const std::vector<std::size_t>& sorted, std::size_t value) {
    for (std::size_t p = 0; p < sorted.size(); ++p)
        if (sorted[p] == value) return p;
    raise(ErrorKind::internal, "index missing from its own sorted set");
}

// x_i as a constant or as a univariate image of its chain head.
struct CoordExpr {
    bool is_const = false;
    P1Point c = P1Point::infinity();
    std::size_t chain = 0;
    RPoly comp;  // x_i = comp(x_head)
};

// Depth-first exact solver for the zero-dimensional system obtained by
// substituting V's relations into the equations of X.  Rational values are
// substituted symbolically; algebraic values (irrational constants of V and
// irrational roots found along the way) are carried as known coordinate
// values and may only enter later equations linearly.
struct IntersectionSolver {
    const AmbientVariety& X;
    const PeriodicSubvariety& V;
    long budget;
    long n;
    const std::vector<CoordExpr>& expr;
    const std::vector<std::size_t>& heads;
    IntersectionSample& out;
    long prec = Config::precision_bits();

    bool full() const { return static_cast<long>(out.points.size()) >= budget; }

    // The emitted points satisfy X and V by construction: V's relations are
    // substituted before solving, and each head is an exactly isolated root
    // of the fully reduced equations.  The redundant post-hoc evaluation is
    // only re-run when it is cheap; pairwise arithmetic between two
    // high-degree algebraic coordinates blows up resultant degrees.
    bool recheck_is_cheap(const std::vector<P1Point>& pt) const {
        long cost = 1;
        for (const P1Point& c : pt) {
            if (c.is_infinity() || c.value().is_rational()) continue;
            cost *= c.value().min_poly().degree();
            if (cost > 16) return false;
        }
        return true;
    }

    void accept(const std::vector<P1Point>& head_val) {
        std::vector<P1Point> pt;
        pt.reserve(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            if (expr[i].is_const)
                pt.push_back(expr[i].c);
            else
                pt.push_back(apply_poly(expr[i].comp, head_val[expr[i].chain]));
        }
        if (recheck_is_cheap(pt) && (!on_variety(X, pt) || !membership(V, pt)))
            raise(ErrorKind::internal, "intersection solver produced a point failing exact verification");
        if (std::find(out.points.begin(), out.points.end(), pt) != out.points.end()) return;
        out.points.push_back(pt);
        out.heights.push_back(height_n(pt));
    }

    AlgebraicNumber eval_known(const MultiPoly& F,
                               const std::vector<std::optional<AlgebraicNumber>>& alg_vals) const {
        std::vector<P1Point> pt;
        pt.reserve(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            if (alg_vals[i])
                pt.push_back(P1Point::finite(*alg_vals[i]));
            else
                pt.push_back(P1Point::from_rational(Rational(0)));  // unused slot
        }
        return eval_at(F, pt);
    }

    void classify_deps(const MultiPoly& R,
                       const std::vector<std::optional<AlgebraicNumber>>& alg_vals,
                       const std::vector<std::optional<P1Point>>& head_val, bool* uses_alg,
                       std::vector<std::size_t>* unknown) const {
        *uses_alg = false;
        unknown->clear();
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            if (!R.depends_on(i)) continue;
            if (alg_vals[i]) {
                *uses_alg = true;
                continue;
            }
            if (expr[i].is_const || heads[expr[i].chain] != i || head_val[expr[i].chain])
                raise(ErrorKind::internal, "reduced equation depends on an already-determined coordinate");
            unknown->push_back(i);
        }
    }

    void solve(std::vector<MultiPoly> eqs, std::vector<std::optional<AlgebraicNumber>> alg_vals,
               std::vector<std::optional<P1Point>> head_val) {
        if (full()) return;

        // Consume every equation whose coordinates are all determined.
        bool uses_alg = false;
        std::vector<std::size_t> unknown;
        for (bool progressed = true; progressed;) {
            progressed = false;
            for (std::size_t e = 0; e < eqs.size(); ++e) {
                if (eqs[e].is_zero()) {
                    eqs.erase(eqs.begin() + static_cast<long>(e));
                    progressed = true;
                    break;
                }
                classify_deps(eqs[e], alg_vals, head_val, &uses_alg, &unknown);
                if (!unknown.empty()) continue;
                if (!uses_alg) {
                    if (!eqs[e].is_constant())
                        raise(ErrorKind::internal, "fully substituted equation is not constant");
                    if (eqs[e].constant_value() != 0) return;  // inconsistent branch
                } else if (!eval_known(eqs[e], alg_vals).is_zero()) {
                    return;  // inconsistent branch
                }
                eqs.erase(eqs.begin() + static_cast<long>(e));
                progressed = true;
                break;
            }
        }

        std::size_t unsolved = 0;
        for (const auto& hv : head_val)
            if (!hv) ++unsolved;
        if (unsolved == 0) {
            // Every equation is fully determined once all heads are solved,
            // so the consumption loop above has emptied eqs.
            std::vector<P1Point> hv;
            hv.reserve(head_val.size());
            for (const auto& h : head_val) hv.push_back(*h);
            accept(hv);
            return;
        }

        for (std::size_t e = 0; e < eqs.size(); ++e) {
            classify_deps(eqs[e], alg_vals, head_val, &uses_alg, &unknown);
            if (unknown.size() != 1) continue;
            const std::size_t u = unknown[0];
            std::vector<MultiPoly> rest = eqs;
            rest.erase(rest.begin() + static_cast<long>(e));
            if (!uses_alg) {
                const RPoly q = eqs[e].univariate_view(u);
                for (const AlgebraicNumber& root : isolate_roots(q, prec)) {
                    if (full()) return;
                    branch_with(u, root, rest, alg_vals, head_val);
                }
            } else {
                std::vector<MultiPoly> layers = eqs[e].coefficients_in(u);
                if (layers.size() > 2)
                    raise(ErrorKind::unsupported,
                          "exact intersection solving couples an algebraic value with an equation of "
                          "degree >= 2; supported reductions are successive rational eliminations and "
                          "linear propagation of algebraic values");
                const AlgebraicNumber a1 = eval_known(layers[1], alg_vals);
                const AlgebraicNumber a0 = eval_known(layers[0], alg_vals);
                if (a1.is_zero()) {
                    if (!a0.is_zero()) return;  // inconsistent branch
                    solve(std::move(rest), std::move(alg_vals), std::move(head_val));
                    return;
                }
                branch_with(u, alg_div(alg_neg(a0), a1), rest, alg_vals, head_val);
            }
            return;
        }

        if (eqs.empty()) {
            std::size_t free_head = 0;
            for (std::size_t k = 0; k < head_val.size(); ++k)
                if (!head_val[k]) {
                    free_head = heads[k];
                    break;
                }
            raise(ErrorKind::degenerate,
                  "non-complementary or anomalous fiber: the reduced system leaves x" +
                      std::to_string(free_head + 1) + " free (positive-dimensional intersection)");
        }
        raise(ErrorKind::unsupported,
              "exact intersection solving needs a triangular reduction; every remaining equation "
              "couples several chain heads");
    }

    void branch_with(std::size_t u, const AlgebraicNumber& root, std::vector<MultiPoly> eqs,
                     std::vector<std::optional<AlgebraicNumber>> alg_vals,
                     std::vector<std::optional<P1Point>> head_val) {
        const std::size_t k = expr[u].chain;
        if (root.is_rational()) {
            const Rational val = root.rational_value();
            head_val[k] = P1Point::from_rational(val);
            for (MultiPoly& R : eqs)
                if (R.depends_on(u)) R = R.substitute(u, val);
        } else {
            head_val[k] = P1Point::finite(root);
            alg_vals[u] = root;
        }
        solve(std::move(eqs), std::move(alg_vals), std::move(head_val));
    }
};

std::string describe_periodic(const PeriodicSubvariety& V) {
    std::ostringstream os;
    bool first = true;
    const Signature& sig = V.signature;
    for (std::size_t s = 0; s < sig.constant_coords.size(); ++s) {
        if (!first) os << "; ";
        first = false;
        const P1Point& c = V.constants[s].value;
        os << "x" << (sig.constant_coords[s] + 1) << " = "
           << (c.is_infinity() ? std::string("inf") : c.value().str()) << " (period "
           << V.constants[s].period << ")";
    }
    for (std::size_t k = 0; k < sig.chains.size(); ++k) {
        if (!first) os << "; ";
        first = false;
        const auto& chain = sig.chains[k];
        os << "x" << (chain[0] + 1) << " free";
        for (std::size_t t = 1; t < chain.size(); ++t)
            os << ", x" << (chain[t] + 1) << " = g(x" << (chain[t - 1] + 1) << ") with deg g = "
               << V.generators[k][t - 1].g.degree();
    }
    os << "; D(V) = " << V.D.str();
    return os.str();
}

} // namespace

std::string HeightCertificate::str() const {
    std::ostringstream os;
    os << "certificate[" << signature.str() << "]: c1 <= " << c1.hi().to_double()
       << ", c2 = " << c2_integer << ", c3 = " << c3 << ", c4 <= " << c4.hi().to_double()
       << ", M = " << M;
    if (anomalous_gate_failure) os << " (anomalous coefficient gate flagged)";
    return os.str();
}

std::string StructureFamily::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::graph:
            os << "x" << (j + 1) << " = g(x" << (k + 1) << "), deg g = " << g.degree()
               << ", g commutes with f^" << witness_k;
            break;
        case Kind::constant_family:
            os << "x" << (j + 1) << " = zeta, zeta any periodic point";
            break;
        case Kind::infinity_family:
            os << "x" << (j + 1) << " = inf";
            break;
    }
    return os.str();
}

HeightCertificate certificate(const AmbientVariety& X, const Signature& sig, const RPoly& f) {
    if (f.degree() < 2) raise(ErrorKind::domain, "certificate requires deg(f) >= 2");
    if (X.n != sig.n) raise(ErrorKind::domain, "signature is for a different ambient product");
    const long n = X.n;
    const long r = X.dim_hint;
    if (r < 1 || r >= n) raise(ErrorKind::domain, "certificate requires 1 <= dim X <= n - 1");
    if (sig.codim() != r)
        raise(ErrorKind::domain,
              "signature codimension must equal dim X so the dimensions are complementary");
    if (auto reason = contained_in_special(X, f))
        raise(ErrorKind::degenerate, "X^{oa} is empty: " + *reason);

    const long prec = Config::precision_bits();
    HeightCertificate cert;
    cert.X_id = describe_equations(X);
    cert.signature = sig;

    std::vector<bool> terminal(static_cast<std::size_t>(n), false);
    for (const auto& chain : sig.chains) terminal[chain.back()] = true;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
        if (!terminal[i]) cert.gamma.push_back(i);

    cert.provenance.push_back({"n", std::to_string(n)});
    cert.provenance.push_back({"dim X", std::to_string(r)});
    cert.provenance.push_back({"signature", sig.str()});
    cert.provenance.push_back({"Gamma (dominated coordinates)", idx_set_str(cert.gamma)});

    long c3 = 1;
    RealInterval c4 = RealInterval::zero(prec);
    bool have_c4 = false;
    const RealInterval conv =
        height_expansion_constant(f) / RealInterval::exact(f.degree() - 1, prec);
    std::vector<std::size_t> pivots;

    for (std::size_t k = 0; k < sig.chains.size(); ++k) {
        const std::size_t term = sig.chains[k].back();
        std::vector<std::size_t> gk = cert.gamma;
        gk.push_back(term);
        std::sort(gk.begin(), gk.end());
        const std::size_t pivot = position_in(gk, term);
        const std::string fk = "F_" + std::to_string(k + 1);

        MultiPoly Fk = projection_hypersurface(X, gk);
        if (Fk.degree_in(pivot) < 1)
            raise(ErrorKind::degenerate,
                  "projection onto " + idx_set_str(gk) + " does not involve the chain terminal x" +
                      std::to_string(term + 1) +
                      "; X lies over a proper subvariety of the dominated coordinates, so X^{oa} "
                      "is empty");
        const InequalityConstants ic = inequality_constants(Fk, f, pivot);
        long ak = 1;
        for (std::size_t j = 0; j < gk.size(); ++j)
            if (j != pivot) ak = std::max(ak, Fk.degree_in(j));
        c3 = std::max(c3, ak);
        c4 = have_c4 ? ri_max(c4, ic.c5) : ic.c5;
        have_c4 = true;

        cert.provenance.push_back(
            {fk + " on " + idx_set_str(gk),
             multipoly_to_string(Fk) + " (variables renamed to the listed coordinates, ascending)"});
        cert.provenance.push_back({fk + " pivot", "x" + std::to_string(term + 1)});
        cert.provenance.push_back(
            {fk + " comparison coefficient a_k = max non-pivot degree (clamped >= 1)",
             std::to_string(ak)});
        cert.provenance.push_back({fk + " additive constant C5", ic.c5.str()});

        cert.constants_used.push_back(ic);
        cert.projections.push_back(std::move(Fk));
        cert.gamma_k.push_back(std::move(gk));
        pivots.push_back(pivot);
    }

    cert.c3 = c3;
    cert.c4 = c4;
    cert.conversion = conv;
    cert.c2_integer = 2 * n * n * c3;
    cert.c2 = RealInterval::exact(cert.c2_integer, prec);
    cert.c1 = mul_long(c4, 2 * n) + div_long(c4, c3) + mul_long(conv, n);
    cert.M = n * n * c3 + 1;

    cert.provenance.push_back({"c3 = max_k a_k", std::to_string(c3)});
    cert.provenance.push_back({"c4 = max_k C5(F_k)", c4.str()});
    cert.provenance.push_back({"c2 = 2 n^2 c3", std::to_string(cert.c2_integer)});
    cert.provenance.push_back({"C4 = C_f/(d-1) (canonical-to-Weil conversion)", conv.str()});
    cert.provenance.push_back({"c1 = 2n c4 + c4/c3 + n C4", cert.c1.str()});
    cert.provenance.push_back({"M = floor(n^2 c3) + 1", std::to_string(cert.M)});

    // Coefficient gate: at sampled loci of X, some pivot coefficient of each
    // projection must survive; a total vanishing marks an anomalous fiber.
    std::vector<std::vector<P1Point>> pts;
    try {
        pts = sample_points(X, 4, 7);
    } catch (const Error&) {
        cert.gate_notes.push_back(
            "coefficient gate not exercised: X could not be sampled by successive elimination");
    }
    for (const auto& pt : pts) {
        for (std::size_t k = 0; k < cert.projections.size(); ++k) {
            std::vector<P1Point> sub;
            sub.reserve(cert.gamma_k[k].size());
            for (std::size_t idx : cert.gamma_k[k]) sub.push_back(pt[idx]);
            const auto check = coefficient_vanishing_check(cert.projections[k], pivots[k], sub);
            if (!check.first) {
                cert.anomalous_gate_failure = true;
                cert.gate_notes.push_back("all pivot coefficients of F_" + std::to_string(k + 1) +
                                          " vanish at " + point_str(sub) +
                                          ": anomalous fiber over this locus");
            }
        }
    }
    if (cert.anomalous_gate_failure)
        cert.provenance.push_back(
            {"anomalous gate", "pivot coefficients vanished at sampled loci; see gate notes"});

    return cert;
}

IntersectionSample sample_intersection(const AmbientVariety& X, const PeriodicSubvariety& V,
                                       long budget) {
    if (budget < 1) raise(ErrorKind::domain, "sampling budget must be at least 1");
    if (X.n != V.n()) raise(ErrorKind::domain, "X and V live in different ambient products");
    if (X.dim_hint + V.dim() != X.n)
        raise(ErrorKind::degenerate, "non-complementary or anomalous fiber: dim X + dim V = " +
                                         std::to_string(X.dim_hint + V.dim()) +
                                         " differs from n = " + std::to_string(X.n));
    const long n = X.n;
    const Signature& sig = V.signature;
    if (V.constants.size() != sig.constant_coords.size() ||
        V.generators.size() != sig.chains.size())
        raise(ErrorKind::domain, "periodic subvariety data is not parallel to its signature");
    for (const MultiPoly& eq : X.equations)
        if (eq.var_count() != static_cast<std::size_t>(n))
            raise(ErrorKind::domain, "ambient equation has the wrong variable count");

    IntersectionSample out;
    out.V = V;

    std::vector<CoordExpr> expr(static_cast<std::size_t>(n));
    bool infinite_constant = false;
    for (std::size_t s = 0; s < sig.constant_coords.size(); ++s) {
        CoordExpr e;
        e.is_const = true;
        e.c = V.constants[s].value;
        if (e.c.is_infinity()) infinite_constant = true;
        expr[sig.constant_coords[s]] = e;
    }
    std::vector<std::size_t> heads;
    heads.reserve(sig.chains.size());
    for (std::size_t k = 0; k < sig.chains.size(); ++k) {
        const auto& chain = sig.chains[k];
        if (V.generators[k].size() + 1 != chain.size())
            raise(ErrorKind::domain, "chain generator count does not match the chain length");
        RPoly comp = RPoly::identity();
        CoordExpr head;
        head.chain = k;
        head.comp = comp;
        expr[chain[0]] = head;
        heads.push_back(chain[0]);
        for (std::size_t t = 1; t < chain.size(); ++t) {
            comp = poly_compose(V.generators[k][t - 1].g, comp);
            CoordExpr e;
            e.chain = k;
            e.comp = comp;
            expr[chain[t]] = e;
        }
    }
    // A coordinate pinned at infinity empties the affine part of X cap V.
    if (infinite_constant) return out;

    // Known algebraic coordinate values: V's irrational constants.
    std::vector<std::optional<AlgebraicNumber>> alg_vals(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
        if (expr[i].is_const && !expr[i].c.value().is_rational())
            alg_vals[i] = expr[i].c.value();

    // Reduce every equation to the chain heads (and algebraic constants).
    std::vector<MultiPoly> eqs;
    for (const MultiPoly& E : X.equations) {
        MultiPoly R = E;
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            if (!R.depends_on(i)) continue;
            if (expr[i].is_const) {
                if (expr[i].c.value().is_rational())
                    R = R.substitute(i, expr[i].c.value().rational_value());
            } else if (heads[expr[i].chain] != i) {
                R = R.substitute(i, expr[i].comp, heads[expr[i].chain]);
            }
        }
        if (!R.is_zero()) eqs.push_back(std::move(R));
    }

    IntersectionSolver solver{X, V, budget, n, expr, heads, out};
    solver.solve(std::move(eqs), std::move(alg_vals),
                 std::vector<std::optional<P1Point>>(sig.chains.size()));
    return out;
}

BoundednessReport verify_bounded(const AmbientVariety& X, const RPoly& f, long codim,
                                 long max_gen_deg, long budget) {
    if (f.degree() < 2) raise(ErrorKind::domain, "verification requires deg(f) >= 2");
    if (codim != X.dim_hint)
        raise(ErrorKind::domain,
              "codim must equal dim X so the enumerated families are complementary");
    if (max_gen_deg < 1) raise(ErrorKind::domain, "max_gen_deg must be at least 1");
    if (budget < 1) raise(ErrorKind::domain, "budget must be at least 1");

    BoundednessReport rep;
    if (auto reason = contained_in_special(X, f)) {
        rep.vacuous = true;
        rep.status = "X^{oa} is empty: " + *reason + "; the bounded-height claim is vacuous";
        return rep;
    }
    rep.status = "bounded";
    const long n = X.n;

    // Certificates first; a degenerate projection empties X^{oa} outright.
    const std::vector<Signature> sigs = enumerate_signatures(n, codim);
    std::vector<HeightCertificate> certs;
    for (const Signature& sig : sigs) {
        try {
            certs.push_back(certificate(X, sig, f));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::degenerate) {
                rep.vacuous = true;
                rep.status = e.what();
                rep.certificates.clear();
                return rep;
            }
            throw;
        }
    }
    rep.certificates = certs;

    // Periodic constants: the finite fixed points of f.
    std::vector<P1Point> fixed;
    for (const AlgebraicNumber& a : isolate_roots(f - RPoly::identity())) {
        const P1Point p = P1Point::finite(a);
        if (std::find(fixed.begin(), fixed.end(), p) == fixed.end()) fixed.push_back(p);
    }
    if (fixed.empty()) raise(ErrorKind::internal, "a polynomial of degree >= 2 has fixed points");

    // Generator pool: commuters of f with rational coefficients, sorted by
    // degree; the pool reaches past every signature's threshold c2 so the
    // D(V) > c2 regime is represented (within the verification envelope).
    long max_c2 = 0;
    for (const auto& c : certs) max_c2 = std::max(max_c2, c.c2_integer);
    const long pool_cap = 128;  // keeps the commuting-witness budget honest
    long pool_D = std::max(max_gen_deg, std::min(pool_cap, 2 * max_c2));
    pool_D = std::min(pool_D, pool_cap);
    std::vector<RPoly> pool;
    for (const Commuter& c : commuters_up_to(f, pool_D).elements) {
        if (c.poly.degree() < 2) continue;
        try {
            pool.push_back(rational_poly(c.poly));
        } catch (const Error&) {
            // commuters with irrational coefficients cannot enter rational
            // chain generators; they are covered by the structure collection
        }
    }
    std::sort(pool.begin(), pool.end(),
              [](const RPoly& a, const RPoly& b) { return a.degree() < b.degree(); });

    for (std::size_t si = 0; si < sigs.size(); ++si) {
        const Signature& sig = sigs[si];
        const HeightCertificate& cert = certs[si];
        const double bound = cert.c1.hi().to_double();

        bool has_gen_slots = false;
        for (const auto& chain : sig.chains)
            if (chain.size() >= 2) has_gen_slots = true;

        struct Assignment {
            std::vector<P1Point> consts;
            std::vector<std::vector<RPoly>> gens;
            std::string note;
        };
        std::vector<Assignment> assignments;
        if (!has_gen_slots) {
            // Every chain is a singleton: D(V) is infinite; vary the pinned
            // fixed point (all constant slots tied together).
            for (const P1Point& fp : fixed) {
                Assignment a;
                a.consts.assign(sig.constant_coords.size(), fp);
                a.gens.assign(sig.chains.size(), {});
                assignments.push_back(std::move(a));
            }
        } else {
            auto make = [&](const RPoly& g, const std::string& note) {
                Assignment a;
                a.consts.assign(sig.constant_coords.size(), fixed[0]);
                a.note = note;
                for (const auto& chain : sig.chains) {
                    std::vector<RPoly> gs;
                    for (std::size_t t = 1; t < chain.size(); ++t)
                        gs.push_back(t + 1 == chain.size() ? g : f);
                    a.gens.push_back(std::move(gs));
                }
                assignments.push_back(std::move(a));
            };
            for (const RPoly& g : pool)
                if (g.degree() <= max_gen_deg) make(g, "");
            const RPoly* above = nullptr;
            for (const RPoly& g : pool)
                if (g.degree() > cert.c2_integer && g.degree() > max_gen_deg) {
                    above = &g;
                    break;
                }
            if (above) make(*above, "generator degree just above the threshold c2");
        }

        for (const Assignment& a : assignments) {
            const PeriodicSubvariety V = build_periodic(sig, a.consts, a.gens, f);
            VerifiedFamily fam;
            fam.signature = sig;
            fam.D = V.D;
            fam.beyond_threshold = V.D.infinite || V.D.value > cert.c2_integer;
            fam.bound = bound;
            fam.description = describe_periodic(V);
            if (!a.note.empty()) fam.description += " [" + a.note + "]";

            IntersectionSample s;
            try {
                s = sample_intersection(X, V, budget);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::degenerate || e.kind() == ErrorKind::unsupported) {
                    fam.anomalous_points.push_back(std::string("whole family: ") + e.what());
                    rep.families.push_back(std::move(fam));
                    continue;
                }
                throw;
            }
            fam.points_sampled = static_cast<long>(s.points.size());
            fam.points = s.points;
            fam.heights = s.heights;
            for (std::size_t i = 0; i < s.points.size(); ++i) {
                const auto& pt = s.points[i];
                bool pass = true;
                for (std::size_t k = 0; k < cert.projections.size() && pass; ++k) {
                    std::vector<P1Point> sub;
                    sub.reserve(cert.gamma_k[k].size());
                    for (std::size_t idx : cert.gamma_k[k]) sub.push_back(pt[idx]);
                    const std::size_t pivot =
                        position_in(cert.gamma_k[k], cert.signature.chains[k].back());
                    if (!coefficient_vanishing_check(cert.projections[k], pivot, sub).first)
                        pass = false;
                }
                if (!pass) {
                    fam.anomalous_points.push_back(point_str(pt));
                    continue;
                }
                ++fam.gate_passed;
                const double hi = s.heights[i].interval().hi().to_double();
                const double lo = s.heights[i].interval().lo().to_double();
                fam.max_height = std::max(fam.max_height, hi);
                if (lo > bound) {
                    std::ostringstream v;
                    v << "height >= " << lo << " exceeds c1 <= " << bound << " at " << point_str(pt)
                      << " [" << fam.description << "]";
                    fam.violations.push_back(v.str());
                    rep.violations.push_back(v.str());
                }
            }
            rep.families.push_back(std::move(fam));
        }
    }
    return rep;
}

StructureBound structure_degree_bound(const AmbientVariety& X, const RPoly& f, long samples) {
    if (f.degree() < 2) raise(ErrorKind::domain, "structure bound requires deg(f) >= 2");
    const long n = X.n;
    const long r = X.dim_hint;
    if (n < 2 || r < 1 || r >= n)
        raise(ErrorKind::domain, "structure bound requires 1 <= dim X <= n - 1");

    StructureBound sb;
    if (auto reason = contained_in_special(X, f)) {
        sb.status = "X^{oa} is empty: " + *reason;
        sb.M = 0;
        sb.c5 = 0;
        sb.provenance.push_back({"gate", sb.status});
        return sb;
    }

    // c5: the comparison coefficient maximized over every projection of X to
    // r+1 coordinates and every usable pivot.
    long c5 = 1;
    std::vector<std::size_t> S(static_cast<std::size_t>(r) + 1);
    for (std::size_t i = 0; i < S.size(); ++i) S[i] = i;
    for (;;) {
        MultiPoly F;
        try {
            F = projection_hypersurface(X, S, samples);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::degenerate) {
                sb.status = std::string("X^{oa} is empty: projection onto ") + idx_set_str(S) +
                            " degenerated: " + e.what();
                sb.M = 0;
                sb.c5 = 0;
                sb.collection.clear();
                sb.provenance.push_back({"gate", sb.status});
                return sb;
            }
            throw;
        }
        long best = 0;
        for (std::size_t p = 0; p < S.size(); ++p) {
            if (F.degree_in(p) < 1) continue;
            long a = 1;
            for (std::size_t j = 0; j < S.size(); ++j)
                if (j != p) a = std::max(a, F.degree_in(j));
            best = std::max(best, a);
        }
        c5 = std::max(c5, best);
        sb.provenance.push_back({"projection onto " + idx_set_str(S),
                                 "comparison coefficient " + std::to_string(best)});

        // Next (r+1)-subset of {0..n-1} in lexicographic order.
        long pos = static_cast<long>(S.size()) - 1;
        while (pos >= 0 && S[static_cast<std::size_t>(pos)] ==
                               static_cast<std::size_t>(n - (static_cast<long>(S.size()) - pos)))
            --pos;
        if (pos < 0) break;
        ++S[static_cast<std::size_t>(pos)];
        for (std::size_t q = static_cast<std::size_t>(pos) + 1; q < S.size(); ++q)
            S[q] = S[q - 1] + 1;
    }

    sb.c5 = c5;
    sb.M = n * n * c5 + 1;
    sb.provenance.push_back({"c5 = max comparison coefficient", std::to_string(c5)});
    sb.provenance.push_back({"M = floor(n^2 c5) + 1", std::to_string(sb.M)});

    const CommuterSet cs = commuters_up_to(f, sb.M);
    for (const Commuter& c : cs.elements)
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
            for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
                if (j != k)
                    sb.collection.push_back(
                        {StructureFamily::Kind::graph, j, k, c.poly, c.witness_k});
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        sb.collection.push_back({StructureFamily::Kind::constant_family, j, j, NFPoly(), 0});
        sb.collection.push_back({StructureFamily::Kind::infinity_family, j, j, NFPoly(), 0});
    }
    sb.provenance.push_back(
        {"commuters of degree <= M", std::to_string(cs.elements.size())});
    sb.provenance.push_back(
        {"graph hypersurfaces x_j = g(x_k)",
         std::to_string(static_cast<long>(cs.elements.size()) * n * (n - 1))});
    sb.provenance.push_back({"constant-type and infinity-type coordinate families",
                             std::to_string(2 * n)});
    sb.status = "ok";
    return sb;
}

GrowthTable reproduce_example(long example_id, const RPoly& f, long m_lo, long m_hi,
                              const P1Point& seed) {
    if (example_id != 1 && example_id != 2)
        raise(ErrorKind::domain, "example id must be 1 or 2");
    if (m_lo < 1 || m_hi < m_lo)
        raise(ErrorKind::domain, "the m range must satisfy 1 <= first <= last");
    const ClassLabel label = classify(f);
    if (label.kind != MapClass::disintegrated)
        raise(ErrorKind::not_disintegrated,
              std::string("example reproduction requires a disintegrated polynomial; this one is "
                          "conjugate to ") +
                  (label.kind == MapClass::power_conjugate
                       ? "a power map"
                       : "a Chebyshev polynomial (up to sign)"));
    if (seed.is_infinity()) raise(ErrorKind::domain, "the seed must be an affine point");
    const HeightValue hh = canonical_height(f, seed);
    if (!(hh.interval().lo().sign() > 0))
        raise(ErrorKind::domain,
              "the seed is preperiodic or its canonical height cannot be certified positive; "
              "enclosure " +
                  hh.interval().str());

    GrowthTable gt;
    gt.example_id = example_id;
    gt.f = f;
    gt.expansion = height_expansion_constant(f);

    const long n = example_id == 1 ? 5 : 4;
    {
        AmbientVariety X;
        X.n = n;
        const std::size_t nv = static_cast<std::size_t>(n);
        X.equations.push_back(MultiPoly::variable(nv, 1) - MultiPoly::from_unipoly(f, nv, 0));
        if (example_id == 1)
            X.equations.push_back(MultiPoly::variable(nv, 4) - MultiPoly::variable(nv, 3));
        else
            X.equations.push_back(MultiPoly::variable(nv, 3) - MultiPoly::variable(nv, 2));
        X.dim_hint = n - 2;
        gt.X = std::move(X);
    }

    const long top = example_id == 1 ? m_hi + 2 : m_hi + 1;
    std::vector<P1Point> orbit = {seed};
    for (long t = 1; t <= top; ++t) orbit.push_back(apply_poly(f, orbit.back()));

    for (long m = m_lo; m <= m_hi; ++m) {
        GrowthRow row;
        row.m = m;
        const P1Point& lead = orbit[static_cast<std::size_t>(example_id == 1 ? m + 2 : m + 1)];
        if (example_id == 1)
            row.point = {orbit[0], orbit[1], orbit[2], lead, lead};
        else
            row.point = {orbit[0], orbit[1], lead, lead};
        if (!on_variety(gt.X, row.point))
            raise(ErrorKind::internal, "emitted point fell off the model surface");
        row.total = height_n(row.point);
        row.dominant = weil_height(lead);
        gt.rows.push_back(std::move(row));
    }
    return gt;
}

} // namespace dyna
