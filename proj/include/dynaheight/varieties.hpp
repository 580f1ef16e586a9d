#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dynaheight/algebraic.hpp"
#include "dynaheight/multipoly.hpp"
#include "dynaheight/unipoly.hpp"

namespace dyna {

// Combinatorial shape of a periodic subvariety of (P^1)^n: a set of
// coordinates pinned to constants, plus ordered chains covering the rest.
// Chain (i_1, ..., i_m) means x_{i_2} = g_2(x_{i_1}), ..., x_{i_m} =
// g_m(x_{i_{m-1}}) once generators are attached; the chain head x_{i_1} is
// free, so the dimension equals the number of chains.  Indices are 0-based
// throughout; str() prints them 1-based to match the x1..xn naming used by
// the CLI.
struct Signature {
    long n = 0;
    std::vector<std::size_t> constant_coords;        // ascending
    std::vector<std::vector<std::size_t>> chains;    // each nonempty, ordered

    long dim() const { return static_cast<long>(chains.size()); }
    long codim() const { return n - dim(); }
    std::string str() const;

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.n == b.n && a.constant_coords == b.constant_coords && a.chains == b.chains;
    }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
};

// All signatures of dimension n-codim subvarieties of (P^1)^n: every choice
// of constant set and every partition of the complement into n-codim
// nonempty ordered chains.  Duplicate-free; the chain list is normalized so
// chains appear in increasing order of their smallest member.
std::vector<Signature> enumerate_signatures(long n, long codim);

// A coordinate pinned to a periodic value, with its exact period.
struct PeriodicConstant {
    P1Point value;
    long period = 0;  // smallest p >= 1 with f^p(value) = value
};

// A chain generator together with the witness iterate it commutes with:
// g o f^k = f^k o g exactly.
struct ChainGenerator {
    RPoly g;
    long witness_k = 0;
};

// min over chains of length >= 2 of deg(terminal generator); infinite when
// every chain is a singleton.
struct DVvalue {
    bool infinite = true;
    long value = 0;
    std::string str() const;
};

// A validated periodic subvariety: constants verified periodic by exact
// orbit computation, generators verified to commute with an iterate of f.
struct PeriodicSubvariety {
    Signature signature;
    std::vector<PeriodicConstant> constants;              // parallel to constant_coords
    std::vector<std::vector<ChainGenerator>> generators;  // per chain, one per position >= 2
    DVvalue D;

    long n() const { return signature.n; }
    long dim() const { return signature.dim(); }
};

// Verify and assemble a periodic subvariety.  `constants` is parallel to
// signature.constant_coords and `generators[k]` must have
// signature.chains[k].size() - 1 entries.  Periodicity is checked by exact
// orbit computation up to period `period_cap`; each generator must commute
// with f^k for some k with deg(f)^k within the composition degree cap.
PeriodicSubvariety build_periodic(const Signature& signature,
                                  const std::vector<P1Point>& constants,
                                  const std::vector<std::vector<RPoly>>& generators,
                                  const RPoly& f, long period_cap = 64);

// A translate of a periodic subvariety: some coordinates pinned to arbitrary
// (not necessarily periodic) values, the rest carrying a periodic structure.
// periodic_part's signature indices refer to positions within the complement
// of fixed_coords, taken in ascending order.
struct SpecialSubvariety {
    std::vector<std::size_t> fixed_coords;  // ascending
    std::vector<P1Point> fixed_values;      // parallel to fixed_coords
    PeriodicSubvariety periodic_part;

    long n() const {
        return static_cast<long>(fixed_coords.size()) + periodic_part.signature.n;
    }
};

// The ambient variety under study, as the zero set of explicit equations on
// the affine chart A^n.  dim_hint is the declared dimension; hypersurface
// projections check the shape they need operationally and raise typed errors
// rather than certifying irreducibility.
struct AmbientVariety {
    long n = 0;
    std::vector<MultiPoly> equations;  // each over n variables, nonzero
    long dim_hint = 0;
};

// Polynomial map on P^1: infinity maps to infinity (deg >= 1), finite points
// evaluate exactly.
P1Point apply_poly(const RPoly& g, const P1Point& a);

// "(v1, v2, ...)" with algebraic coordinates rendered by their enclosure
// and infinity as "inf".
std::string point_str(const std::vector<P1Point>& pt);

// Coordinatewise f^times.
std::vector<P1Point> apply_coordinatewise(const RPoly& f, const std::vector<P1Point>& pt,
                                          long times = 1);

// Exact evaluation of a multivariate polynomial at an affine algebraic
// point; raises on infinite coordinates.
AlgebraicNumber eval_at(const MultiPoly& F, const std::vector<P1Point>& pt);

// Does F vanish at the point?  Rational points take the fast exact path.
bool vanishes_at(const MultiPoly& F, const std::vector<P1Point>& pt);

// Do all equations of X vanish at the point?
bool on_variety(const AmbientVariety& X, const std::vector<P1Point>& pt);

// Sample affine points of X by assigning random small rationals to free
// coordinates and solving the remaining equations one variable at a time
// (exact roots; graph-shaped equations may feed algebraic values forward).
// Deterministic in `seed`.  Raises if the equation system cannot be solved
// by successive univariate elimination.
std::vector<std::vector<P1Point>> sample_points(const AmbientVariety& X, long count,
                                                unsigned long seed);

// The hypersurface generator F^J of the closure of the projection of X to
// the coordinates J (|J| = dim_hint + 1).  Complement variables are
// eliminated one at a time by resultants, smallest degree first; among the
// factors of the eliminated generator, the one vanishing on sampled points
// of X is returned, reindexed to |J| variables (variable t of the result is
// ambient coordinate J_sorted[t]), primitive and sign-normalized.  If the
// projection has dimension below dim_hint the typed degenerate error
// mentions that the open anomalous locus X^{oa} is empty.
MultiPoly projection_hypersurface(const AmbientVariety& X, std::vector<std::size_t> J,
                                  long samples = 12, unsigned long seed = 1);

// Write F = sum_k F_k(other vars) * x_pivot^k and evaluate the coefficient
// polynomials F_k, k >= 1, at the point (pivot slot ignored).  Returns
// whether some F_k is nonzero there and the largest such k; (false, 0) when
// they all vanish, which marks the point as lying under an anomalous fiber.
std::pair<bool, long> coefficient_vanishing_check(const MultiPoly& F, std::size_t pivot,
                                                  const std::vector<P1Point>& point);

// One defining relation of a periodic hypersurface: x_i = zeta, or the graph
// x_i = g(x_j).
struct HypersurfaceRelation {
    enum class Kind { constant, graph } kind = Kind::constant;
    std::size_t i = 0;  // constrained coordinate
    std::size_t j = 0;  // source coordinate (graph only)
    RPoly g;            // graph generator
    P1Point zeta = P1Point::infinity();
};

// The parametrization e_V : (P^1)^{n-1} -> V for the hypersurface V cut out
// by the relation: insert the constrained value at slot i, reading the graph
// argument from the input tuple with the index shift that makes the image
// satisfy the relation.
std::vector<P1Point> embed_point(const HypersurfaceRelation& rel, long n,
                                 const std::vector<P1Point>& a);

// Push a system of equations on (P^1)^n down through e_V: substitute the
// relation into each equation and drop the constrained variable.  Zero
// equations are dropped.  Constant relations require a finite rational value.
std::vector<MultiPoly> embed_equations(const HypersurfaceRelation& rel,
                                       const std::vector<MultiPoly>& eqs);

// Exact point-on-variety tests.
bool membership(const PeriodicSubvariety& V, const std::vector<P1Point>& pt);
bool membership(const SpecialSubvariety& Z, const std::vector<P1Point>& pt);

// lcm of all constant periods and generator witnesses: V is invariant under
// the coordinatewise action of f^W for this W.
long invariance_exponent(const PeriodicSubvariety& V);

// Is X visibly contained in a proper special subvariety?  Checks each
// equation for the shapes x_i = c with c periodic under f and x_i = g(x_j)
// with g commuting with an iterate of f.  Returns a description of the
// containing special hypersurface, or nullopt if none is found this way.
std::optional<std::string> contained_in_special(const AmbientVariety& X, const RPoly& f);

// If the equation has the affine-graph shape a*x_w + p(x_v) = 0 with a a
// nonzero constant (so x_w = g(x_v) with g = -p/a, or x_w = c when p is
// constant), return (w, v, g); v = w when p is constant.  Used for
// special-containment detection and forward substitution while sampling.
struct GraphForm {
    std::size_t w = 0;  // solved variable
    std::size_t v = 0;  // source variable (== w for a constant equation)
    RPoly g;
};
std::optional<GraphForm> graph_form(const MultiPoly& eq);

} // namespace dyna
