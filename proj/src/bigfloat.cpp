#include "dynaheight/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace dyna {

namespace {
// Orbit values grow doubly exponentially, and their exponents overflow the
// stock window (about 2^30) long before the mantissa is stressed.  Open the
// exponent range to the library maximum once, before any computation.
struct ExponentRangeInit {
    ExponentRangeInit() {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
    }
};
const ExponentRangeInit exponent_range_init{};
} // namespace

BigFloat BigFloat::from_long(long n, long prec) {
    BigFloat x(prec);
    mpfr_set_si(x.v_, n, MPFR_RNDN);
    return x;
}

BigFloat BigFloat::from_double(double d, long prec) {
    BigFloat x(prec);
    mpfr_set_d(x.v_, d, MPFR_RNDN);
    return x;
}

BigFloat BigFloat::from_integer(const Integer& n, mpfr_rnd_t rnd, long prec) {
    BigFloat x(prec);
    mpfr_set_z(x.v_, n.get_mpz_t(), rnd);
    return x;
}

BigFloat BigFloat::from_rational(const Rational& q, mpfr_rnd_t rnd, long prec) {
    BigFloat x(prec);
    mpfr_set_q(x.v_, q.get_mpq_t(), rnd);
    return x;
}

BigFloat BigFloat::pos_inf(long prec) {
    BigFloat x(prec);
    mpfr_set_inf(x.raw(), 1);
    return x;
}

Rational BigFloat::to_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
}

std::string BigFloat::str(std::size_t digits) const {
    if (is_nan()) return "nan";
    if (is_inf()) return sign() > 0 ? "inf" : "-inf";
    if (digits == 0) digits = static_cast<std::size_t>(precision() * 0.30103) + 2;
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%zuRg", digits);
    std::vector<char> buf(digits + 64);
    mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
    return std::string(buf.data());
}

namespace {
long join_prec(const BigFloat& a, const BigFloat& b) {
    return std::max(a.precision(), b.precision());
}
} // namespace

BigFloat bf_add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
    BigFloat r(join_prec(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

BigFloat bf_sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
    BigFloat r(join_prec(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

BigFloat bf_mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
    BigFloat r(join_prec(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

BigFloat bf_div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
    BigFloat r(join_prec(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

BigFloat bf_neg(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

BigFloat bf_abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

BigFloat bf_sqrt(const BigFloat& a, mpfr_rnd_t rnd) {
    BigFloat r(a.precision());
    mpfr_sqrt(r.raw(), a.raw(), rnd);
    return r;
}

BigFloat bf_log(const BigFloat& a, mpfr_rnd_t rnd) {
    BigFloat r(a.precision());
    mpfr_log(r.raw(), a.raw(), rnd);
    return r;
}

BigFloat bf_exp(const BigFloat& a, mpfr_rnd_t rnd) {
    BigFloat r(a.precision());
    mpfr_exp(r.raw(), a.raw(), rnd);
    return r;
}

BigFloat bf_min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }
BigFloat bf_max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }

BigFloat bf_mul_2exp(const BigFloat& a, long e) {
    BigFloat r(a.precision());
    mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}

int cmp_abs(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmpabs(a.raw(), b.raw());
}

std::pair<BigFloat, BigFloat> bf_unit_direction(long num, long den, long prec) {
    BigFloat angle(prec);
    mpfr_const_pi(angle.raw(), MPFR_RNDN);
    mpfr_mul_si(angle.raw(), angle.raw(), 2 * num, MPFR_RNDN);
    mpfr_div_si(angle.raw(), angle.raw(), den, MPFR_RNDN);
    BigFloat c(prec), s(prec);
    mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
    return {std::move(c), std::move(s)};
}

} // namespace dyna
