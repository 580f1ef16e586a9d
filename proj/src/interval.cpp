#include "dynaheight/interval.hpp"

#include "dynaheight/errors.hpp"

namespace dyna {

RealInterval::RealInterval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) raise(ErrorKind::domain, "interval endpoints out of order");
}

RealInterval RealInterval::exact(long n, long prec) {
    BigFloat v = BigFloat::from_long(n, prec);
    return RealInterval(v, v);
}

RealInterval RealInterval::from_rational(const Rational& q, long prec) {
    return RealInterval(BigFloat::from_rational(q, MPFR_RNDD, prec),
                        BigFloat::from_rational(q, MPFR_RNDU, prec));
}

RealInterval RealInterval::from_integer(const Integer& n, long prec) {
    return RealInterval(BigFloat::from_integer(n, MPFR_RNDD, prec),
                        BigFloat::from_integer(n, MPFR_RNDU, prec));
}

RealInterval RealInterval::log_of(const Rational& q, long prec) {
    if (q <= 0) raise(ErrorKind::domain, "log of non-positive rational");
    return RealInterval(bf_log(BigFloat::from_rational(q, MPFR_RNDD, prec), MPFR_RNDD),
                        bf_log(BigFloat::from_rational(q, MPFR_RNDU, prec), MPFR_RNDU));
}

BigFloat RealInterval::midpoint() const {
    if (lo_ == hi_) return lo_;
    return bf_mul_2exp(bf_add(lo_, hi_, MPFR_RNDN), -1);
}

BigFloat RealInterval::radius() const {
    BigFloat m = midpoint();
    return bf_max(bf_sub(hi_, m, MPFR_RNDU), bf_sub(m, lo_, MPFR_RNDU));
}

bool RealInterval::contains(const Rational& q) const {
    long prec = std::max(lo_.precision(), hi_.precision());
    BigFloat qd = BigFloat::from_rational(q, MPFR_RNDD, prec);
    BigFloat qu = BigFloat::from_rational(q, MPFR_RNDU, prec);
    return lo_ <= qd && qu <= hi_;
}

bool RealInterval::intersects(const RealInterval& o) const {
    return !(hi_ < o.lo_ || o.hi_ < lo_);
}

bool RealInterval::certain_sign(int* out) const {
    if (lo_.sign() > 0) { *out = 1; return true; }
    if (hi_.sign() < 0) { *out = -1; return true; }
    if (lo_.is_zero() && hi_.is_zero()) { *out = 0; return true; }
    return false;
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    return RealInterval(bf_add(a.lo_, b.lo_, MPFR_RNDD), bf_add(a.hi_, b.hi_, MPFR_RNDU));
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    return RealInterval(bf_sub(a.lo_, b.hi_, MPFR_RNDD), bf_sub(a.hi_, b.lo_, MPFR_RNDU));
}

RealInterval operator-(const RealInterval& a) {
    return RealInterval(bf_neg(a.hi_), bf_neg(a.lo_));
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    const BigFloat* as[2] = {&a.lo_, &a.hi_};
    const BigFloat* bs[2] = {&b.lo_, &b.hi_};
    BigFloat lo = bf_mul(a.lo_, b.lo_, MPFR_RNDD);
    BigFloat hi = bf_mul(a.lo_, b.lo_, MPFR_RNDU);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == 0 && j == 0) continue;
            lo = bf_min(lo, bf_mul(*as[i], *bs[j], MPFR_RNDD));
            hi = bf_max(hi, bf_mul(*as[i], *bs[j], MPFR_RNDU));
        }
    return RealInterval(lo, hi);
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.contains_zero()) raise(ErrorKind::domain, "interval division by interval containing zero");
    const BigFloat* as[2] = {&a.lo_, &a.hi_};
    const BigFloat* bs[2] = {&b.lo_, &b.hi_};
    BigFloat lo = bf_div(a.lo_, b.lo_, MPFR_RNDD);
    BigFloat hi = bf_div(a.lo_, b.lo_, MPFR_RNDU);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == 0 && j == 0) continue;
            lo = bf_min(lo, bf_div(*as[i], *bs[j], MPFR_RNDD));
            hi = bf_max(hi, bf_div(*as[i], *bs[j], MPFR_RNDU));
        }
    return RealInterval(lo, hi);
}

RealInterval RealInterval::abs() const {
    if (lo_.sign() >= 0) return *this;
    if (hi_.sign() <= 0) return -*this;
    return RealInterval(BigFloat::from_long(0, lo_.precision()), bf_max(bf_neg(lo_), hi_));
}

RealInterval RealInterval::sqrt() const {
    BigFloat lo = lo_;
    if (lo.sign() < 0) lo = BigFloat::from_long(0, lo_.precision());
    if (hi_.sign() < 0) raise(ErrorKind::domain, "sqrt of negative interval");
    return RealInterval(bf_sqrt(lo, MPFR_RNDD), bf_sqrt(hi_, MPFR_RNDU));
}

RealInterval RealInterval::log() const {
    if (lo_.sign() <= 0) raise(ErrorKind::domain, "log of interval touching zero");
    return RealInterval(bf_log(lo_, MPFR_RNDD), bf_log(hi_, MPFR_RNDU));
}

RealInterval RealInterval::log_plus() const {
    if (hi_.sign() < 0) raise(ErrorKind::domain, "log_plus of negative interval");
    BigFloat one = BigFloat::from_long(1, lo_.precision());
    BigFloat lo = bf_max(lo_, one);
    BigFloat hi = bf_max(hi_, one);
    return RealInterval(bf_log(lo, MPFR_RNDD), bf_log(hi, MPFR_RNDU));
}

RealInterval RealInterval::hull(const RealInterval& o) const {
    return RealInterval(bf_min(lo_, o.lo_), bf_max(hi_, o.hi_));
}

RealInterval RealInterval::widen(const BigFloat& r) const {
    if (r.sign() < 0) raise(ErrorKind::domain, "widen by negative radius");
    return RealInterval(bf_sub(lo_, r, MPFR_RNDD), bf_add(hi_, r, MPFR_RNDU));
}

RealInterval RealInterval::scale_2exp(long e) const {
    return RealInterval(bf_mul_2exp(lo_, e), bf_mul_2exp(hi_, e));
}

std::string RealInterval::str() const {
    return "[" + lo_.str(20) + ", " + hi_.str(20) + "]";
}

RealInterval mul_long(const RealInterval& a, long k) {
    RealInterval kiv = RealInterval::exact(k, a.lo().precision());
    return a * kiv;
}

RealInterval div_long(const RealInterval& a, long k) {
    if (k == 0) raise(ErrorKind::domain, "division by zero");
    RealInterval kiv = RealInterval::exact(k, a.lo().precision());
    return a / kiv;
}

ComplexBox ComplexBox::exact(long re, long im, long prec) {
    return ComplexBox(RealInterval::exact(re, prec), RealInterval::exact(im, prec));
}

ComplexBox ComplexBox::from_rational(const Rational& re, long prec) {
    return ComplexBox(RealInterval::from_rational(re, prec), RealInterval::exact(0, prec));
}

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
    return ComplexBox(a.re_ + b.re_, a.im_ + b.im_);
}

ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
    return ComplexBox(a.re_ - b.re_, a.im_ - b.im_);
}

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return ComplexBox(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

ComplexBox operator-(const ComplexBox& a) { return ComplexBox(-a.re_, -a.im_); }

ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) {
    RealInterval n = b.re_ * b.re_ + b.im_ * b.im_;
    if (n.contains_zero()) raise(ErrorKind::domain, "complex interval division by box containing zero");
    return ComplexBox((a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n);
}

RealInterval ComplexBox::abs() const {
    return (re_ * re_ + im_ * im_).sqrt();
}

BigFloat ComplexBox::disk_radius() const {
    BigFloat rr = re_.radius();
    BigFloat ri = im_.radius();
    BigFloat s = bf_add(bf_mul(rr, rr, MPFR_RNDU), bf_mul(ri, ri, MPFR_RNDU), MPFR_RNDU);
    return bf_sqrt(s, MPFR_RNDU);
}

std::string ComplexBox::str() const {
    return re_.str() + " + i*" + im_.str();
}

CFloat operator*(const CFloat& a, const CFloat& b) {
    return {bf_sub(bf_mul(a.re, b.re, MPFR_RNDN), bf_mul(a.im, b.im, MPFR_RNDN), MPFR_RNDN),
            bf_add(bf_mul(a.re, b.im, MPFR_RNDN), bf_mul(a.im, b.re, MPFR_RNDN), MPFR_RNDN)};
}

CFloat operator/(const CFloat& a, const CFloat& b) {
    BigFloat n = b.abs2();
    return {bf_div(bf_add(bf_mul(a.re, b.re, MPFR_RNDN), bf_mul(a.im, b.im, MPFR_RNDN), MPFR_RNDN), n, MPFR_RNDN),
            bf_div(bf_sub(bf_mul(a.im, b.re, MPFR_RNDN), bf_mul(a.re, b.im, MPFR_RNDN), MPFR_RNDN), n, MPFR_RNDN)};
}

BigFloat CFloat::abs2() const {
    return bf_add(bf_mul(re, re, MPFR_RNDN), bf_mul(im, im, MPFR_RNDN), MPFR_RNDN);
}

} // namespace dyna
