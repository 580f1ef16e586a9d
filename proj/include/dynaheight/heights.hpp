#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dynaheight/algebraic.hpp"
#include "dynaheight/interval.hpp"
#include "dynaheight/multipoly.hpp"
#include "dynaheight/unipoly.hpp"

namespace dyna {

// A certified nonnegative height.  The enclosure is always valid; when the
// value is known in closed form it is log(exact_log_arg()) and the reported
// radius collapses to zero (exact_log_arg = 1 encodes an exact zero).
class HeightValue {
  public:
    HeightValue() : HeightValue(exact_log(Rational(1))) {}

    static HeightValue exact_log(Rational arg, long prec = Config::precision_bits());
    static HeightValue enclosed(RealInterval v);
    // Sentinel for the fixed point at infinity.
    static HeightValue infinite();

    const RealInterval& interval() const { return v_; }
    bool exact() const { return exact_; }
    const Rational& exact_log_arg() const;
    bool is_infinite() const { return infinite_; }

    BigFloat value() const { return v_.midpoint(); }
    BigFloat radius() const;  // exact zero when exact()

    friend HeightValue operator+(const HeightValue& x, const HeightValue& y);

    std::string str() const;

  private:
    HeightValue(RealInterval v, bool exact, Rational arg, bool inf)
        : v_(std::move(v)), log_arg_(std::move(arg)), exact_(exact), infinite_(inf) {}

    RealInterval v_;
    Rational log_arg_ = 1;
    bool exact_ = false;
    bool infinite_ = false;
};

// Absolute logarithmic Weil height of a point of P1 over the algebraics.
// Exact for rationals and infinity; a certified enclosure otherwise.
HeightValue weil_height(const P1Point& a);

// Sum of coordinate heights on a finite product of projective lines.
HeightValue height_n(const std::vector<P1Point>& pts);

// C_f with |h(f(a)) - d*h(a)| <= C_f for every algebraic a; exactly zero for
// the pure power map.
RealInterval height_expansion_constant(const RPoly& f);

// Constant of the upper height inequality attached to a nonzero form F:
// log(#terms) + sum over places of log+ of the largest coefficient.
RealInterval lemma32_upper_constant(const MultiPoly& F);

// Constant of the matching lower inequality, computed from the layers of F
// along the chosen pivot variable (F must depend on the pivot).
RealInterval lemma32_lower_constant(const MultiPoly& F, std::size_t pivot);

// Height-comparison constant coupling F with the dynamics of f:
// C2 + C4 * (1 + sum over non-pivot variables of 2*deg_{x_j} F).
RealInterval corollary34_constant(const MultiPoly& F, const RPoly& f, std::size_t pivot);

struct InequalityConstants {
    RealInterval c1, c2, c4, c5;
    // (constant name, formula actually used) pairs, for reports.
    std::vector<std::pair<std::string, std::string>> provenance;
};

InequalityConstants inequality_constants(const MultiPoly& F, const RPoly& f, std::size_t pivot);

// Canonical height of a point for a polynomial of degree >= 2, as a certified
// enclosure of radius at most target_error.  Exact (radius zero) for
// preperiodic rationals and for pure power maps.  Algebraic points are
// supported for monic integer-coefficient f; infinity returns the infinite
// sentinel.  Raises iterate_too_large when a finite place cannot be decided
// within the exact-orbit size budget (the message carries the best estimate).
HeightValue canonical_height(const RPoly& f, const P1Point& a, double target_error = 1e-9);

} // namespace dyna
