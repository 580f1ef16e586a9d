#include "dynaheight/varieties.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "dynaheight/errors.hpp"
#include "dynaheight/factor.hpp"
#include "dynaheight/heights.hpp"
#include "dynaheight/io.hpp"

namespace dyna {

namespace {

std::string index_list_str(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    for (std::size_t t = 0; t < v.size(); ++t) os << (t ? "," : "") << (v[t] + 1);
    return os.str();
}

void validate_ambient(const AmbientVariety& X) {
    if (X.n < 1) raise(ErrorKind::domain, "ambient dimension must be at least 1");
    if (X.equations.empty()) raise(ErrorKind::domain, "ambient variety needs at least one equation");
    for (const MultiPoly& e : X.equations) {
        if (e.is_zero()) raise(ErrorKind::domain, "ambient variety equations must be nonzero");
        if (e.var_count() != static_cast<std::size_t>(X.n))
            raise(ErrorKind::domain, "equation variable count does not match ambient dimension");
    }
    if (X.dim_hint < 0 || X.dim_hint >= X.n)
        raise(ErrorKind::domain, "declared dimension must lie in [0, n)");
}

// Orbit of a point under f, with certified non-periodicity detection: every
// point of an exact cycle has Weil height at most C_f/(deg f - 1), so an
// orbit value whose certified height lower bound clears that threshold rules
// the start out as periodic.
struct OrbitProbe {
    long period = 0;  // 0 = not periodic within the cap
    bool escaped = false;
    std::vector<std::string> prefix;
};

std::string point_str(const P1Point& p) { return p.is_infinity() ? "inf" : p.value().str(); }

OrbitProbe orbit_probe(const RPoly& f, const P1Point& start, long cap) {
    OrbitProbe out;
    out.prefix.push_back(point_str(start));
    if (start.is_infinity()) {
        out.period = 1;  // polynomial maps fix infinity
        return out;
    }
    BigFloat height_cap = div_long(height_expansion_constant(f), f.degree() - 1).hi();
    AlgebraicNumber z = start.value();
    for (long t = 1; t <= cap; ++t) {
        z = z.is_rational() ? AlgebraicNumber::from_rational(f.eval(z.rational_value()))
                            : algebraic_eval(f, z);
        if (out.prefix.size() < 6) out.prefix.push_back(z.str());
        if (z == start.value()) {
            out.period = t;
            return out;
        }
        HeightValue h = weil_height(P1Point::finite(z));
        if (h.interval().lo() > height_cap) {
            out.escaped = true;
            return out;
        }
    }
    return out;
}

// Smallest k >= 1 with g o f^k = f^k o g, within a composition degree
// budget; 0 when none is found.  The budget stays small because a failed
// search pays for every rung of the iterate ladder.
long commuting_witness(const RPoly& g, const RPoly& f, long degree_budget = 256) {
    long d = f.degree();
    if (d < 2) raise(ErrorKind::domain, "commuter verification requires deg(f) >= 2");
    long dg = std::max(g.degree(), 1L);
    long dk = d;
    for (long k = 1;; ++k) {
        if (dk > degree_budget / dg) return 0;
        RPoly fk = poly_iterate(f, k);
        if (poly_compose(g, fk) == poly_compose(fk, g)) return k;
        if (dk > degree_budget / d) return 0;
        dk *= d;
    }
}

}  // namespace

std::string Signature::str() const {
    std::ostringstream os;
    os << "J_V={" << index_list_str(constant_coords) << "}";
    for (const auto& c : chains) os << "; chain(" << index_list_str(c) << ")";
    return os.str();
}

std::string DVvalue::str() const { return infinite ? "inf" : std::to_string(value); }

namespace {

void gen_chain_partitions(const std::vector<std::size_t>& remaining, long blocks_left,
                          std::vector<std::vector<std::size_t>>& acc,
                          std::vector<std::vector<std::vector<std::size_t>>>& out) {
    if (remaining.empty()) {
        if (blocks_left == 0) out.push_back(acc);
        return;
    }
    if (blocks_left <= 0 || static_cast<long>(remaining.size()) < blocks_left) return;
    // The block containing the smallest remaining index is built here, which
    // generates every unordered collection of ordered blocks exactly once.
    std::size_t anchor = remaining[0];
    std::vector<std::size_t> rest(remaining.begin() + 1, remaining.end());
    std::size_t m = rest.size();
    std::size_t max_extra = m - static_cast<std::size_t>(blocks_left - 1);
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_extra) continue;
        std::vector<std::size_t> block{anchor}, next;
        for (std::size_t t = 0; t < m; ++t)
            ((mask >> t) & 1 ? block : next).push_back(rest[t]);
        std::sort(block.begin(), block.end());
        do {
            acc.push_back(block);
            gen_chain_partitions(next, blocks_left - 1, acc, out);
            acc.pop_back();
        } while (std::next_permutation(block.begin(), block.end()));
    }
}

}  // namespace

std::vector<Signature> enumerate_signatures(long n, long codim) {
    if (n < 1 || codim < 0 || codim > n)
        raise(ErrorKind::domain, "signature enumeration needs 1 <= n and 0 <= codim <= n");
    if (n > 8) raise(ErrorKind::unsupported, "signature enumeration is desk-scale (n <= 8)");
    long r = n - codim;
    std::vector<Signature> out;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<std::size_t> jv, comp;
        for (long i = 0; i < n; ++i) ((mask >> i) & 1 ? jv : comp).push_back(static_cast<std::size_t>(i));
        if (static_cast<long>(comp.size()) < r) continue;
        if (r == 0 && !comp.empty()) continue;
        std::vector<std::vector<std::vector<std::size_t>>> partitions;
        std::vector<std::vector<std::size_t>> acc;
        gen_chain_partitions(comp, r, acc, partitions);
        for (auto& chains : partitions) out.push_back(Signature{n, jv, std::move(chains)});
    }
    return out;
}

P1Point apply_poly(const RPoly& g, const P1Point& a) {
    if (g.is_zero()) return P1Point::from_rational(0);
    if (a.is_infinity())
        return g.degree() >= 1 ? P1Point::infinity() : P1Point::from_rational(g.coeff(0));
    const AlgebraicNumber& z = a.value();
    if (z.is_rational()) return P1Point::from_rational(g.eval(z.rational_value()));
    return P1Point::finite(algebraic_eval(g, z));
}

std::string point_str(const std::vector<P1Point>& pt) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i) os << ", ";
        os << (pt[i].is_infinity() ? std::string("inf") : pt[i].value().str());
    }
    os << ")";
    return os.str();
}

std::vector<P1Point> apply_coordinatewise(const RPoly& f, const std::vector<P1Point>& pt,
                                          long times) {
    std::vector<P1Point> out = pt;
    for (long t = 0; t < times; ++t)
        for (auto& p : out) p = apply_poly(f, p);
    return out;
}

AlgebraicNumber eval_at(const MultiPoly& F, const std::vector<P1Point>& pt) {
    if (pt.size() != F.var_count())
        raise(ErrorKind::domain, "evaluation point size does not match variable count");
    bool all_rational = true;
    for (std::size_t v = 0; v < pt.size(); ++v) {
        if (F.degree_in(v) <= 0) continue;
        if (pt[v].is_infinity())
            raise(ErrorKind::domain, "evaluation requires affine coordinates");
        all_rational = all_rational && pt[v].value().is_rational();
    }
    if (all_rational) {
        std::vector<Rational> q(pt.size(), Rational(0));
        for (std::size_t v = 0; v < pt.size(); ++v)
            if (!pt[v].is_infinity() && pt[v].value().is_rational())
                q[v] = pt[v].value().rational_value();
        return AlgebraicNumber::from_rational(F.eval(q));
    }
    AlgebraicNumber acc = AlgebraicNumber::from_long(0);
    for (const auto& [e, c] : F.terms()) {
        AlgebraicNumber term = AlgebraicNumber::from_rational(c);
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] > 0) term = alg_mul(term, alg_pow(pt[v].value(), static_cast<long>(e[v])));
        acc = alg_add(acc, term);
    }
    return acc;
}

bool vanishes_at(const MultiPoly& F, const std::vector<P1Point>& pt) {
    return eval_at(F, pt).is_zero();
}

bool on_variety(const AmbientVariety& X, const std::vector<P1Point>& pt) {
    for (const MultiPoly& e : X.equations)
        if (!vanishes_at(e, pt)) return false;
    return true;
}

std::optional<GraphForm> graph_form(const MultiPoly& eq) {
    std::size_t n = eq.var_count();
    for (std::size_t w = 0; w < n; ++w) {
        if (eq.degree_in(w) != 1) continue;
        std::vector<MultiPoly> layers = eq.coefficients_in(w);
        if (!layers[1].is_constant()) continue;
        long nvars_used = 0;
        for (std::size_t u = 0; u < n; ++u)
            if (layers[0].depends_on(u)) ++nvars_used;
        if (nvars_used > 1) continue;  // the remaining layer is not univariate: no graph in x_w
        long v = layers[0].sole_variable();
        if (v == static_cast<long>(w)) continue;
        Rational a = layers[1].constant_value();
        GraphForm gf;
        gf.w = w;
        if (v < 0) {  // constant equation a*x_w + c = 0
            gf.v = w;
            gf.g = RPoly::constant(Rational(-layers[0].constant_value() / a));
            return gf;
        }
        gf.v = static_cast<std::size_t>(v);
        gf.g = layers[0].univariate_view(static_cast<std::size_t>(v)).scaled(Rational(-1) / a);
        return gf;
    }
    return std::nullopt;
}

std::vector<std::vector<P1Point>> sample_points(const AmbientVariety& X, long count,
                                                unsigned long seed) {
    validate_ambient(X);
    std::size_t n = static_cast<std::size_t>(X.n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num_dist(-12, 12), den_dist(1, 6);
    auto random_rational = [&]() { return Rational(num_dist(rng), den_dist(rng)); };

    std::vector<std::vector<P1Point>> out;
    long budget = 30 * count + 30;
    for (long attempt = 0; attempt < budget && static_cast<long>(out.size()) < count; ++attempt) {
        std::vector<std::optional<P1Point>> val(n);
        std::vector<MultiPoly> remaining = X.equations;
        bool failed = false;
        while (!failed && !remaining.empty()) {
            bool progress = false;
            for (std::size_t ei = 0; ei < remaining.size() && !progress && !failed; ++ei) {
                const MultiPoly& eq = remaining[ei];
                std::vector<std::size_t> unknown;
                bool knowns_rational = true;
                for (std::size_t v = 0; v < n; ++v) {
                    if (eq.degree_in(v) <= 0) continue;
                    if (!val[v])
                        unknown.push_back(v);
                    else if (val[v]->is_infinity() || !val[v]->value().is_rational())
                        knowns_rational = false;
                }
                if (unknown.empty()) {
                    std::vector<P1Point> pt;
                    pt.reserve(n);
                    for (std::size_t v = 0; v < n; ++v)
                        pt.push_back(val[v] ? *val[v] : P1Point::from_rational(0));
                    if (!vanishes_at(eq, pt)) failed = true;
                    remaining.erase(remaining.begin() + static_cast<long>(ei));
                    progress = true;
                    continue;
                }
                if (unknown.size() != 1) continue;
                std::size_t v = unknown[0];
                if (knowns_rational) {
                    MultiPoly sub = eq;
                    for (std::size_t w = 0; w < n; ++w)
                        if (w != v && sub.degree_in(w) > 0)
                            sub = sub.substitute(w, val[w]->value().rational_value());
                    if (sub.is_zero()) {
                        remaining.erase(remaining.begin() + static_cast<long>(ei));
                        progress = true;
                        continue;
                    }
                    if (sub.is_constant()) {
                        failed = true;
                        continue;
                    }
                    RPoly uni = sub.univariate_view(v);
                    std::vector<AlgebraicNumber> roots = isolate_roots(uni);
                    if (roots.empty()) {
                        failed = true;
                        continue;
                    }
                    std::size_t pick = static_cast<std::size_t>(rng() % roots.size());
                    val[v] = P1Point::finite(roots[pick]);
                    remaining.erase(remaining.begin() + static_cast<long>(ei));
                    progress = true;
                    continue;
                }
                std::optional<GraphForm> gf = graph_form(eq);
                if (gf && gf->w == v && (gf->v == v || val[gf->v])) {
                    val[v] = gf->v == v ? P1Point::from_rational(gf->g.is_zero()
                                                                     ? Rational(0)
                                                                     : gf->g.coeff(0))
                                        : apply_poly(gf->g, *val[gf->v]);
                    remaining.erase(remaining.begin() + static_cast<long>(ei));
                    progress = true;
                    continue;
                }
            }
            if (failed || progress) continue;
            std::size_t free_var = n;
            for (std::size_t v = 0; v < n; ++v)
                if (!val[v]) {
                    free_var = v;
                    break;
                }
            if (free_var == n) {
                // All variables assigned yet equations remain unsolvable.
                failed = true;
                continue;
            }
            val[free_var] = P1Point::from_rational(random_rational());
        }
        if (failed) continue;
        std::vector<P1Point> pt;
        pt.reserve(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (!val[v]) val[v] = P1Point::from_rational(random_rational());
            pt.push_back(*val[v]);
        }
        if (on_variety(X, pt)) out.push_back(std::move(pt));
    }
    if (static_cast<long>(out.size()) < count)
        raise(ErrorKind::unsupported,
              "sampling could not solve the equations by successive univariate elimination");
    return out;
}

namespace {

// Split a squarefree generator into candidate factors using per-variable
// content extraction plus full univariate factorization when only one
// variable remains.  Genuinely multivariate irreducible content stays whole.
std::vector<MultiPoly> candidate_factors(const MultiPoly& g) {
    std::vector<MultiPoly> pieces{g}, done;
    while (!pieces.empty()) {
        MultiPoly p = pieces.back();
        pieces.pop_back();
        if (p.is_constant()) continue;
        std::vector<std::size_t> support;
        for (std::size_t v = 0; v < p.var_count(); ++v)
            if (p.degree_in(v) > 0) support.push_back(v);
        if (support.size() == 1) {
            RationalFactorization fac = factor_rational(p.univariate_view(support[0]));
            for (const auto& [q, mult] : fac.factors)
                done.push_back(MultiPoly::from_unipoly(q, p.var_count(), support[0]));
            continue;
        }
        bool split = false;
        for (std::size_t v : support) {
            std::vector<MultiPoly> layers = p.coefficients_in(v);
            MultiPoly content;
            bool first = true;
            for (const MultiPoly& layer : layers) {
                if (layer.is_zero()) continue;
                content = first ? layer : multipoly_gcd(content, layer);
                first = false;
            }
            if (!content.is_constant()) {
                pieces.push_back(content);
                pieces.push_back(multipoly_exact_div(p, content));
                split = true;
                break;
            }
        }
        if (!split) done.push_back(p.primitive_normalized());
    }
    return done;
}

}  // namespace

MultiPoly projection_hypersurface(const AmbientVariety& X, std::vector<std::size_t> J,
                                  long samples, unsigned long seed) {
    validate_ambient(X);
    std::sort(J.begin(), J.end());
    if (std::adjacent_find(J.begin(), J.end()) != J.end())
        raise(ErrorKind::domain, "projection coordinates must be distinct");
    if (J.empty() || J.back() >= static_cast<std::size_t>(X.n))
        raise(ErrorKind::domain, "projection coordinates out of range");
    if (static_cast<long>(J.size()) != X.dim_hint + 1)
        raise(ErrorKind::domain, "projection needs exactly dim+1 coordinates");

    std::set<std::size_t> keep(J.begin(), J.end());
    std::vector<MultiPoly> eqs = X.equations;

    std::vector<std::size_t> complement;
    for (std::size_t v = 0; v < static_cast<std::size_t>(X.n); ++v)
        if (!keep.count(v)) complement.push_back(v);
    std::stable_sort(complement.begin(), complement.end(), [&](std::size_t a, std::size_t b) {
        long da = 0, db = 0;
        for (const MultiPoly& e : eqs) {
            da = std::max(da, e.degree_in(a));
            db = std::max(db, e.degree_in(b));
        }
        return da < db;
    });

    for (std::size_t v : complement) {
        std::vector<MultiPoly> with_v, without_v;
        for (MultiPoly& e : eqs)
            (e.degree_in(v) > 0 ? with_v : without_v).push_back(std::move(e));
        eqs = std::move(without_v);
        if (with_v.empty()) continue;
        if (with_v.size() == 1) continue;  // v is determined by one equation; projection drops it
        std::size_t pividx = 0;
        for (std::size_t t = 1; t < with_v.size(); ++t)
            if (with_v[t].degree_in(v) < with_v[pividx].degree_in(v)) pividx = t;
        for (std::size_t t = 0; t < with_v.size(); ++t) {
            if (t == pividx) continue;
            MultiPoly r = multipoly_resultant(with_v[pividx], with_v[t], v);
            if (r.is_zero()) continue;  // dependent pair
            if (r.is_constant())
                raise(ErrorKind::degenerate,
                      "equations are inconsistent; the affine part is empty, so the open "
                      "anomalous locus X^{oa} is empty");
            eqs.push_back(multipoly_squarefree(r).primitive_normalized());
        }
    }

    if (eqs.empty())
        raise(ErrorKind::degenerate,
              "projection to the chosen coordinates satisfies no equation; the declared "
              "dimension does not match a hypersurface projection");
    MultiPoly G = eqs[0];
    for (std::size_t t = 1; t < eqs.size(); ++t) G = multipoly_gcd(G, eqs[t]);
    if (G.is_constant())
        raise(ErrorKind::degenerate,
              "projection image has dimension below the declared dimension of X, so the "
              "open anomalous locus X^{oa} is empty");
    G = multipoly_squarefree(G).primitive_normalized();

    std::vector<std::vector<P1Point>> pts = sample_points(X, samples, seed);
    std::vector<MultiPoly> kept;
    for (const MultiPoly& piece : candidate_factors(G)) {
        bool all = true;
        for (const auto& pt : pts)
            if (!vanishes_at(piece, pt)) {
                all = false;
                break;
            }
        if (all) kept.push_back(piece);
    }
    if (kept.empty())
        raise(ErrorKind::degenerate,
              "no single factor of the eliminated generator vanishes on all sampled points; "
              "the projection is not an irreducible hypersurface");
    if (kept.size() > 1)
        raise(ErrorKind::degenerate,
              "several distinct factors vanish on all sampled points, so the projection "
              "image is smaller than a hypersurface and the open anomalous locus X^{oa} "
              "is empty");

    MultiPoly F = kept[0];
    for (std::size_t v = static_cast<std::size_t>(X.n); v-- > 0;)
        if (!keep.count(v)) F = F.drop_variable(v);
    return F.primitive_normalized();
}

std::pair<bool, long> coefficient_vanishing_check(const MultiPoly& F, std::size_t pivot,
                                                  const std::vector<P1Point>& point) {
    if (pivot >= F.var_count()) raise(ErrorKind::domain, "pivot variable out of range");
    if (point.size() != F.var_count())
        raise(ErrorKind::domain, "point size does not match variable count");
    if (F.degree_in(pivot) < 1) return {false, 0};
    std::vector<P1Point> filled = point;
    filled[pivot] = P1Point::from_rational(0);  // unused by the layer polynomials
    std::vector<MultiPoly> layers = F.coefficients_in(pivot);
    for (std::size_t k = layers.size(); k-- > 1;) {
        if (layers[k].is_zero()) continue;
        if (!vanishes_at(layers[k], filled)) return {true, static_cast<long>(k)};
    }
    return {false, 0};
}

std::vector<P1Point> embed_point(const HypersurfaceRelation& rel, long n,
                                 const std::vector<P1Point>& a) {
    if (static_cast<long>(a.size()) != n - 1)
        raise(ErrorKind::domain, "embedding input must have n-1 coordinates");
    if (rel.i >= static_cast<std::size_t>(n))
        raise(ErrorKind::domain, "constrained coordinate out of range");
    P1Point value = P1Point::infinity();
    if (rel.kind == HypersurfaceRelation::Kind::constant) {
        value = rel.zeta;
    } else {
        if (rel.j >= static_cast<std::size_t>(n) || rel.j == rel.i)
            raise(ErrorKind::domain, "graph source coordinate out of range");
        std::size_t arg = rel.i < rel.j ? rel.j - 1 : rel.j;
        value = apply_poly(rel.g, a[arg]);
    }
    std::vector<P1Point> out;
    out.reserve(a.size() + 1);
    out.insert(out.end(), a.begin(), a.begin() + static_cast<long>(rel.i));
    out.push_back(value);
    out.insert(out.end(), a.begin() + static_cast<long>(rel.i), a.end());
    return out;
}

std::vector<MultiPoly> embed_equations(const HypersurfaceRelation& rel,
                                       const std::vector<MultiPoly>& eqs) {
    std::vector<MultiPoly> out;
    for (const MultiPoly& eq : eqs) {
        if (rel.i >= eq.var_count())
            raise(ErrorKind::domain, "constrained coordinate out of range for equation");
        MultiPoly sub;
        if (rel.kind == HypersurfaceRelation::Kind::constant) {
            if (rel.zeta.is_infinity() || !rel.zeta.value().is_rational())
                raise(ErrorKind::unsupported,
                      "equation pushdown needs a finite rational constant");
            sub = eq.substitute(rel.i, rel.zeta.value().rational_value());
        } else {
            if (rel.j == rel.i) raise(ErrorKind::domain, "graph relation needs distinct coordinates");
            sub = eq.substitute(rel.i, rel.g, rel.j);
        }
        if (!sub.is_zero()) out.push_back(sub.drop_variable(rel.i));
    }
    return out;
}

PeriodicSubvariety build_periodic(const Signature& signature,
                                  const std::vector<P1Point>& constants,
                                  const std::vector<std::vector<RPoly>>& generators,
                                  const RPoly& f, long period_cap) {
    if (f.degree() < 2) raise(ErrorKind::domain, "periodic structure requires deg(f) >= 2");
    if (signature.n < 1) raise(ErrorKind::domain, "signature has empty ambient space");
    // The signature must partition {0..n-1}.
    std::vector<char> seen(static_cast<std::size_t>(signature.n), 0);
    auto mark = [&](std::size_t idx) {
        if (idx >= seen.size() || seen[idx])
            raise(ErrorKind::domain, "signature does not partition the coordinate set");
        seen[idx] = 1;
    };
    for (std::size_t idx : signature.constant_coords) mark(idx);
    for (const auto& c : signature.chains) {
        if (c.empty()) raise(ErrorKind::domain, "signature chains must be nonempty");
        for (std::size_t idx : c) mark(idx);
    }
    for (char s : seen)
        if (!s) raise(ErrorKind::domain, "signature does not partition the coordinate set");
    if (constants.size() != signature.constant_coords.size())
        raise(ErrorKind::domain, "one constant required per pinned coordinate");
    if (generators.size() != signature.chains.size())
        raise(ErrorKind::domain, "one generator list required per chain");

    PeriodicSubvariety V;
    V.signature = signature;
    for (std::size_t t = 0; t < constants.size(); ++t) {
        OrbitProbe probe = orbit_probe(f, constants[t], period_cap);
        if (probe.period == 0) {
            std::string orbit;
            for (std::size_t s = 0; s < probe.prefix.size(); ++s)
                orbit += (s ? ", " : "") + probe.prefix[s];
            raise(ErrorKind::non_periodic,
                  std::string("constant is not periodic") +
                      (probe.escaped ? " (orbit escapes)" : " (no cycle within the period cap)") +
                      "; orbit starts " + orbit);
        }
        V.constants.push_back(PeriodicConstant{constants[t], probe.period});
    }
    for (std::size_t k = 0; k < signature.chains.size(); ++k) {
        const auto& chain = signature.chains[k];
        if (generators[k].size() + 1 != chain.size())
            raise(ErrorKind::domain, "chain of length m needs m-1 generators");
        std::vector<ChainGenerator> built;
        for (const RPoly& g : generators[k]) {
            if (g.degree() < 1)
                raise(ErrorKind::domain, "chain generators must be nonconstant polynomials");
            long k_wit = commuting_witness(g, f);
            if (k_wit == 0) {
                RPoly diff = poly_compose(g, f) - poly_compose(f, g);
                raise(ErrorKind::domain,
                      "generator does not commute with any iterate of f within the degree "
                      "budget; g(f(x)) - f(g(x)) = " +
                          poly_to_string(diff));
            }
            built.push_back(ChainGenerator{g, k_wit});
        }
        V.generators.push_back(std::move(built));
    }
    V.D.infinite = true;
    V.D.value = 0;
    for (std::size_t k = 0; k < V.generators.size(); ++k) {
        if (V.generators[k].empty()) continue;
        long deg = V.generators[k].back().g.degree();
        if (V.D.infinite || deg < V.D.value) {
            V.D.infinite = false;
            V.D.value = deg;
        }
    }
    return V;
}

bool membership(const PeriodicSubvariety& V, const std::vector<P1Point>& pt) {
    if (pt.size() != static_cast<std::size_t>(V.signature.n))
        raise(ErrorKind::domain, "point size does not match ambient dimension");
    for (std::size_t t = 0; t < V.constants.size(); ++t)
        if (pt[V.signature.constant_coords[t]] != V.constants[t].value) return false;
    for (std::size_t k = 0; k < V.signature.chains.size(); ++k) {
        const auto& chain = V.signature.chains[k];
        P1Point prev = pt[chain[0]];
        for (std::size_t t = 1; t < chain.size(); ++t) {
            P1Point expect = apply_poly(V.generators[k][t - 1].g, prev);
            if (pt[chain[t]] != expect) return false;
            prev = pt[chain[t]];
        }
    }
    return true;
}

bool membership(const SpecialSubvariety& Z, const std::vector<P1Point>& pt) {
    if (pt.size() != static_cast<std::size_t>(Z.n()))
        raise(ErrorKind::domain, "point size does not match ambient dimension");
    for (std::size_t t = 0; t < Z.fixed_coords.size(); ++t)
        if (pt[Z.fixed_coords[t]] != Z.fixed_values[t]) return false;
    std::set<std::size_t> fixed(Z.fixed_coords.begin(), Z.fixed_coords.end());
    std::vector<P1Point> sub;
    for (std::size_t v = 0; v < pt.size(); ++v)
        if (!fixed.count(v)) sub.push_back(pt[v]);
    return membership(Z.periodic_part, sub);
}

long invariance_exponent(const PeriodicSubvariety& V) {
    long w = 1;
    for (const auto& c : V.constants) w = std::lcm(w, c.period);
    for (const auto& gens : V.generators)
        for (const auto& g : gens) w = std::lcm(w, g.witness_k);
    return w;
}

std::optional<std::string> contained_in_special(const AmbientVariety& X, const RPoly& f) {
    validate_ambient(X);
    if (f.degree() < 2) raise(ErrorKind::domain, "special containment requires deg(f) >= 2");
    for (const MultiPoly& eq : X.equations) {
        std::optional<GraphForm> gf = graph_form(eq);
        if (!gf) continue;
        if (gf->v == gf->w) {  // x_w = c
            Rational c = gf->g.is_zero() ? Rational(0) : gf->g.coeff(0);
            OrbitProbe probe = orbit_probe(f, P1Point::from_rational(c), 64);
            if (probe.period >= 1)
                return "x" + std::to_string(gf->w + 1) + " = " + c.get_str() +
                       " pins a periodic point (period " + std::to_string(probe.period) +
                       "), a proper special subvariety";
            continue;
        }
        long k_wit = commuting_witness(gf->g, f);
        if (k_wit >= 1)
            return "x" + std::to_string(gf->w + 1) + " = g(x" + std::to_string(gf->v + 1) +
                   ") with g = " + poly_to_string(gf->g) + " commuting with the " +
                   std::to_string(k_wit) + "-th iterate: a proper periodic subvariety";
    }
    return std::nullopt;
}

} // namespace dyna
