#pragma once

#include <string>

#include "dynaheight/bigfloat.hpp"

namespace dyna {

// Closed interval [lo, hi] with outward (directed) rounding on every
// operation, so any real arithmetic expression evaluated through these ops
// yields a guaranteed enclosure of the exact value.
class RealInterval {
  public:
    RealInterval() : lo_(), hi_() {}
    RealInterval(BigFloat lo, BigFloat hi);

    static RealInterval exact(long n, long prec = Config::precision_bits());
    static RealInterval from_rational(const Rational& q, long prec = Config::precision_bits());
    static RealInterval from_integer(const Integer& n, long prec = Config::precision_bits());
    // log of a positive rational, enclosed.
    static RealInterval log_of(const Rational& q, long prec = Config::precision_bits());
    static RealInterval zero(long prec = Config::precision_bits()) { return exact(0, prec); }

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    BigFloat midpoint() const;
    BigFloat radius() const;  // half-width, rounded up

    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const Rational& q) const;
    bool intersects(const RealInterval& o) const;
    bool is_point() const { return lo_ == hi_; }
    // Sign certain for the whole interval: -1, 0 (exact zero), +1; or unknown.
    bool certain_sign(int* out) const;

    friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator-(const RealInterval& a);
    // Division requires 0 not in b.
    friend RealInterval operator/(const RealInterval& a, const RealInterval& b);

    RealInterval abs() const;
    RealInterval sqrt() const;        // requires lo >= 0 (clamps tiny negative noise at 0)
    RealInterval log() const;         // requires lo > 0
    RealInterval log_plus() const;    // enclosure of log max(1, x), requires hi >= 0
    RealInterval hull(const RealInterval& o) const;
    RealInterval widen(const BigFloat& r) const;  // pad both endpoints by r >= 0
    RealInterval scale_2exp(long e) const;

    std::string str() const;

  private:
    BigFloat lo_, hi_;
};

RealInterval mul_long(const RealInterval& a, long k);
RealInterval div_long(const RealInterval& a, long k);

// Axis-aligned complex rectangle; the primitive behind certified root
// enclosures.  Operations are componentwise interval arithmetic.
class ComplexBox {
  public:
    ComplexBox() = default;
    ComplexBox(RealInterval re, RealInterval im) : re_(std::move(re)), im_(std::move(im)) {}

    static ComplexBox exact(long re, long im = 0, long prec = Config::precision_bits());
    static ComplexBox from_rational(const Rational& re, long prec = Config::precision_bits());

    const RealInterval& re() const { return re_; }
    const RealInterval& im() const { return im_; }

    friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
    friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
    friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);
    friend ComplexBox operator-(const ComplexBox& a);
    friend ComplexBox operator/(const ComplexBox& a, const ComplexBox& b);  // 0 not in b

    RealInterval abs() const;          // enclosure of |z|
    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    bool intersects(const ComplexBox& o) const { return re_.intersects(o.re()) && im_.intersects(o.im()); }
    bool is_real_line() const { return im_.is_point() && im_.lo().is_zero(); }

    // Radius of the enclosing disk around the midpoint, rounded up.
    BigFloat disk_radius() const;

    std::string str() const;

  private:
    RealInterval re_, im_;
};

// Plain (uncertified) complex number used by the numeric root-finding
// iteration; certification afterwards goes through ComplexBox.
struct CFloat {
    BigFloat re, im;

    CFloat() = default;
    CFloat(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    friend CFloat operator+(const CFloat& a, const CFloat& b) {
        return {bf_add(a.re, b.re, MPFR_RNDN), bf_add(a.im, b.im, MPFR_RNDN)};
    }
    friend CFloat operator-(const CFloat& a, const CFloat& b) {
        return {bf_sub(a.re, b.re, MPFR_RNDN), bf_sub(a.im, b.im, MPFR_RNDN)};
    }
    friend CFloat operator*(const CFloat& a, const CFloat& b);
    friend CFloat operator/(const CFloat& a, const CFloat& b);

    BigFloat abs2() const;  // re^2 + im^2, round-to-nearest
};

} // namespace dyna
