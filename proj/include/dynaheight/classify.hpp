#pragma once

#include <memory>

#include "dynaheight/numberfield.hpp"
#include "dynaheight/unipoly.hpp"

namespace dyna {

// Monic centered conjugate of a polynomial map, together with the linear
// conjugation that produced it.  The conjugator's scale may be irrational
// (a (d-1)-th root of the reciprocal leading coefficient), in which case
// everything lives in the number field it generates.
struct NormalForm {
    NFPoly g;                                  // monic; coefficient of x^(d-1) is 0
    std::shared_ptr<const NumberField> field;  // Q(alpha); empty when rational
    NFElem alpha;                              // L(x) = alpha x + beta, alpha != 0
    NFElem beta;
    bool pure_power = false;  // g == x^d
    long gap = 0;             // r >= 2 with g = x^d + a x^(d-r) + ..., 0 if pure power
};

enum class MapClass { power_conjugate, chebyshev_conjugate, disintegrated };

struct ClassLabel {
    MapClass kind = MapClass::disintegrated;
    int sign = 0;  // +1 / -1 for chebyshev_conjugate, 0 otherwise
    // For chebyshev_conjugate: the square of the residual scaling.  Any u
    // with u^2 = twist_square satisfies u^-1 g(u x) = sign * chebyshev(d).
    NFElem twist_square;
};

// Degree-d Chebyshev-like normalization: T(x + 1/x) = x^d + 1/x^d.
RPoly chebyshev_poly(long d);

// Conjugate f by L(x) = alpha x + beta so the result is monic with no
// x^(d-1) term; alpha is the positive real (d-1)-th root of 1/lead when one
// exists, otherwise a fixed canonical complex root.
NormalForm normal_form(const RPoly& f);

// Decide whether f is linearly conjugate over the algebraics to the pure
// power x^d, to (+-) the degree-d Chebyshev normalization, or to neither.
ClassLabel classify(const RPoly& f);

inline bool is_disintegrated(const RPoly& f) {
    return classify(f).kind == MapClass::disintegrated;
}

} // namespace dyna
