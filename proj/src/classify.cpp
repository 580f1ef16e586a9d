#include "dynaheight/classify.hpp"

#include <mutex>
#include <vector>

#include "dynaheight/algebraic.hpp"
#include "dynaheight/errors.hpp"

namespace dyna {

namespace {

// Canonical choice among the (d-1)-th roots of a nonzero rational: the
// positive real root when one exists, otherwise a rational root when one
// exists (there is at most one of each), otherwise the root of maximal real
// part with positive imaginary part.  isolate_roots orders by real part then
// imaginary part, so the final fallback is simply the last root.
AlgebraicNumber canonical_root(const std::vector<AlgebraicNumber>& roots) {
    for (const auto& r : roots) {
        if (r.is_real() && r.sign() > 0) return r;
    }
    for (const auto& r : roots) {
        if (r.is_rational()) return r;
    }
    return roots.back();
}

} // namespace

RPoly chebyshev_poly(long d) {
    if (d < 1) raise(ErrorKind::domain, "chebyshev_poly requires degree >= 1");
    static std::mutex mu;
    static std::vector<RPoly> cache;  // cache[k] holds degree k+1
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) {
        cache.push_back(RPoly(std::vector<Rational>{Rational(0), Rational(1)}));
        cache.push_back(RPoly(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)}));
    }
    const RPoly x = cache[0];
    while (static_cast<long>(cache.size()) < d) {
        const RPoly& prev = cache[cache.size() - 1];
        const RPoly& prev2 = cache[cache.size() - 2];
        cache.push_back(x * prev - prev2);
    }
    return cache[static_cast<size_t>(d - 1)];
}

NormalForm normal_form(const RPoly& f) {
    const long d = f.degree();
    if (d < 2) raise(ErrorKind::domain, "normal form requires a map of degree >= 2");

    const Rational lead = f.lead();
    const Rational beta = Rational(-f.coeff(d - 1) / (Rational(d) * lead));

    NormalForm nf;
    NFElem alpha_e;
    if (lead == 1) {
        alpha_e = NFElem(Rational(1));
    } else if (d == 2) {
        // alpha^1 = 1/lead is already rational.
        alpha_e = NFElem(Rational(Rational(1) / lead));
    } else {
        std::vector<Rational> pw(static_cast<size_t>(d), Rational(0));
        pw[0] = Rational(-(Rational(1) / lead));
        pw[static_cast<size_t>(d - 1)] = Rational(1);
        const auto roots = isolate_roots(RPoly(pw));
        const AlgebraicNumber a = canonical_root(roots);
        if (a.is_rational()) {
            alpha_e = NFElem(a.rational_value());
        } else {
            nf.field = NumberField::make(a);
            alpha_e = NFElem::generator(nf.field);
        }
    }

    const NFElem beta_e{beta};
    const NFPoly L(std::vector<NFElem>{beta_e, alpha_e});
    NFPoly g = poly_compose(lift_poly(f), L);
    g = (g - NFPoly(std::vector<NFElem>{beta_e})).scaled(alpha_e.inverse());

    if (!g.is_monic() || !g.coeff(d - 1).is_zero())
        raise(ErrorKind::internal, "normal form failed to center the conjugate");

    nf.g = g;
    nf.alpha = alpha_e;
    nf.beta = beta_e;
    nf.pure_power = true;
    for (long i = d - 2; i >= 0; --i) {
        if (!g.coeff(i).is_zero()) {
            nf.pure_power = false;
            nf.gap = d - i;
            break;
        }
    }
    return nf;
}

ClassLabel classify(const RPoly& f) {
    const NormalForm nf = normal_form(f);
    if (nf.pure_power) return {MapClass::power_conjugate, 0, NFElem()};

    const long d = f.degree();
    const RPoly cheb = chebyshev_poly(d);

    // A conjugate of the Chebyshev normalization that is monic and centered
    // must be u^-1 * cheb(u x) for a scalar u, which rescales the coefficient
    // at x^(d-2j) by u^(2j) while u^(d-1) = +-1.  So the support must match
    // exactly, the coefficient ratios must be consistent powers of v = u^2,
    // and v^(d-1) must be 1.  All checks are exact field arithmetic.
    for (long i = 0; i <= d - 2; ++i) {
        const bool on_support = ((d - i) % 2 == 0);
        if (nf.g.coeff(i).is_zero() == on_support)
            return {MapClass::disintegrated, 0, NFElem()};
    }

    const Rational t1 = cheb.coeff(d - 2);
    const NFElem v = nf.g.coeff(d - 2) * NFElem(Rational(Rational(1) / t1));
    NFElem vpow = v;
    for (long j = 2; 2 * j <= d; ++j) {
        vpow = vpow * v;
        if (nf.g.coeff(d - 2 * j) != NFElem(cheb.coeff(d - 2 * j)) * vpow)
            return {MapClass::disintegrated, 0, NFElem()};
    }
    if (v.pow(d - 1) != NFElem(Rational(1))) return {MapClass::disintegrated, 0, NFElem()};

    if (d % 2 == 0) return {MapClass::chebyshev_conjugate, +1, v};
    const NFElem sigma = v.pow((d - 1) / 2);
    if (sigma == NFElem(Rational(1))) return {MapClass::chebyshev_conjugate, +1, v};
    if (sigma == NFElem(Rational(-1))) return {MapClass::chebyshev_conjugate, -1, v};
    raise(ErrorKind::internal, "square root of unity is neither +1 nor -1");
}

} // namespace dyna
