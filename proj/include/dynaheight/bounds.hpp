#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dynaheight/algebraic.hpp"
#include "dynaheight/commute.hpp"
#include "dynaheight/heights.hpp"
#include "dynaheight/interval.hpp"
#include "dynaheight/multipoly.hpp"
#include "dynaheight/unipoly.hpp"
#include "dynaheight/varieties.hpp"

namespace dyna {

// Effective bounded-height certificate for one signature: whenever an
// irreducible periodic subvariety V of that signature has D(V) > c2, the
// affine points of X \cap V outside the anomalous locus have total Weil
// height at most c1.  Every constant is derived step by step in
// `provenance`, in derivation order.
struct HeightCertificate {
    std::string X_id;         // printable form of the ambient equations
    Signature signature;

    RealInterval c1;          // total-height bound (hi() is the certified bound)
    RealInterval c2;          // D(V) threshold as an interval, = 2 n^2 c3
    long c2_integer = 0;      // the same threshold exactly
    long c3 = 1;              // max height-comparison linear coefficient, >= 1
    RealInterval c4;          // max additive comparison constant over projections
    RealInterval conversion;  // C4 = C_f/(d-1): per-coordinate |h - hhat| bound

    std::vector<InequalityConstants> constants_used;  // one per chain projection
    std::vector<MultiPoly> projections;               // F_k, reindexed to Gamma_k
    std::vector<std::vector<std::size_t>> gamma_k;    // sorted ambient index sets
    std::vector<std::size_t> gamma;                   // dominated index set

    long M = 0;  // structure degree bound floor(n^2 c3) + 1 for this signature

    bool anomalous_gate_failure = false;   // pivot coefficients vanished somewhere
    std::vector<std::string> gate_notes;   // human-readable gate observations

    std::vector<std::pair<std::string, std::string>> provenance;

    std::string str() const;
};

// Assemble the certificate: for each chain of the signature, project X onto
// the dominated coordinates plus the chain terminal, derive the
// height-comparison constants of that hypersurface, and combine them into
// the threshold c2 = 2 n^2 c3 and the bound c1 = 2n c4 + c4/c3 + n C4.
// Raises a degenerate error naming X^{oa} when X sits inside a special
// subvariety or a projection drops dimension.
HeightCertificate certificate(const AmbientVariety& X, const Signature& signature,
                              const RPoly& f);

// Exact affine intersection points of X with a validated periodic
// subvariety of complementary dimension, with certified total heights.
struct IntersectionSample {
    PeriodicSubvariety V;
    std::vector<std::vector<P1Point>> points;
    std::vector<HeightValue> heights;  // height_n per point, parallel to points
};

// Substitute V's constant and chain relations into the equations of X,
// solve the resulting zero-dimensional system exactly head by head, and
// return up to `budget` points (each verified to lie on both X and V).
// A reduction that leaves a chain head free raises the typed
// "non-complementary or anomalous fiber" error.
IntersectionSample sample_intersection(const AmbientVariety& X, const PeriodicSubvariety& V,
                                       long budget);

// One family of periodic subvarieties checked by verify_bounded, with the
// outcome of the height comparison on its sampled intersection points.
struct VerifiedFamily {
    std::string description;
    Signature signature;
    DVvalue D;
    bool beyond_threshold = false;  // D(V) > c2 for this family
    long points_sampled = 0;
    long gate_passed = 0;
    double max_height = 0.0;  // largest certified height among gate-passing points
    double bound = 0.0;       // c1 upper bound the heights were compared against
    std::vector<std::vector<P1Point>> points;   // all sampled intersection points
    std::vector<HeightValue> heights;           // parallel to points
    std::vector<std::string> anomalous_points;  // failed the coefficient gate
    std::vector<std::string> violations;        // gate-passing points above c1
};

struct BoundednessReport {
    bool vacuous = false;  // X inside a special subvariety: X^{oa} is empty
    std::string status;    // "bounded" or the vacuous/degenerate reason
    std::vector<HeightCertificate> certificates;  // one per signature reached
    std::vector<VerifiedFamily> families;
    std::vector<std::string> violations;  // aggregated over families

    bool passed() const { return violations.empty(); }
};

// Enumerate periodic subvarieties of the given codimension whose chain
// generators are commuters of f of degree <= max_gen_deg (adding, per
// signature, a generator of smallest degree above the threshold c2), sample
// the intersections with X, and compare certified heights against c1.
// Points failing the pivot-coefficient gate are reported as anomalous-locus
// members, not as violations.
BoundednessReport verify_bounded(const AmbientVariety& X, const RPoly& f, long codim,
                                 long max_gen_deg, long budget);

// One member (or one coordinate family) of the structure collection:
// either an explicit graph hypersurface x_j = g(x_k) with g commuting with
// the witness_k-th iterate of f, or the family of constant hypersurfaces
// x_j = zeta over periodic zeta, or the hypersurface x_j = infinity.
struct StructureFamily {
    enum class Kind { graph, constant_family, infinity_family } kind = Kind::graph;
    std::size_t j = 0;  // constrained coordinate
    std::size_t k = 0;  // source coordinate (graph only)
    NFPoly g;           // graph generator, coefficients in the symmetry field
    long witness_k = 0; // iterate of f the generator commutes with

    std::string str() const;
};

struct StructureBound {
    long M = 0;   // degree bound floor(n^2 c5) + 1
    long c5 = 1;  // max comparison coefficient over all r+1-subsets and pivots
    std::vector<StructureFamily> collection;  // the finite collection of hypersurfaces
    std::string status;                       // "ok" or the X^{oa}-empty reason
    std::vector<std::pair<std::string, std::string>> provenance;
};

// Compute the degree bound M governing which graph hypersurfaces can carry
// unbounded anomalous intersections, and enumerate the finite collection:
// every commuter of f of degree <= M on every ordered coordinate pair, plus
// the constant-type and infinity-type coordinate families.  The collection
// depends only on X's projection degrees and f, not on sampling budgets.
StructureBound structure_degree_bound(const AmbientVariety& X, const RPoly& f,
                                      long samples = 12);

// One row of an unbounded-height reproduction: the parameter m, the exact
// point, its total height, and the height of the growing coordinate.
struct GrowthRow {
    long m = 0;
    std::vector<P1Point> point;
    HeightValue total;     // height_n of the tuple
    HeightValue dominant;  // height of the coordinate driven by m
};

struct GrowthTable {
    long example_id = 1;
    RPoly f;
    AmbientVariety X;
    RealInterval expansion;  // C_f, for the growth law h_{m+1} >= d h_m - C_f
    std::vector<GrowthRow> rows;  // ascending in m
};

// Reproduce the height-growth families on the two model surfaces:
//   example 1: X = {x2 = f(x1), x5 = x4} in (P^1)^5 with points
//              (a, f(a), f^2(a), f^{m+2}(a), f^{m+2}(a));
//   example 2: X = {x2 = f(x1), x4 = x3} in (P^1)^4 with points
//              (a, f(a), f^{m+1}(a), f^{m+1}(a)).
// Requires f disintegrated and a seed with certified positive canonical
// height (a preperiodic seed is rejected with a typed error).
GrowthTable reproduce_example(long example_id, const RPoly& f, long m_lo, long m_hi,
                              const P1Point& seed = P1Point::from_rational(Rational(1)));

} // namespace dyna
