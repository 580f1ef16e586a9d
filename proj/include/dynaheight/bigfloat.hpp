#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "dynaheight/config.hpp"
#include "dynaheight/rational.hpp"

namespace dyna {

// Thin RAII wrapper over mpfr_t with value semantics.  Every instance carries
// its own precision; binary operations round into max(operand precisions)
// under an explicit rounding mode, which is what the interval layer needs to
// build certified enclosures.
class BigFloat {
  public:
    BigFloat() : BigFloat(Config::precision_bits()) {}
    explicit BigFloat(long prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_long(long n, long prec = Config::precision_bits());
    static BigFloat from_double(double d, long prec = Config::precision_bits());
    static BigFloat from_integer(const Integer& n, mpfr_rnd_t rnd, long prec = Config::precision_bits());
    static BigFloat from_rational(const Rational& q, mpfr_rnd_t rnd, long prec = Config::precision_bits());
    static BigFloat pos_inf(long prec = Config::precision_bits());

    long precision() const { return mpfr_get_prec(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Exact conversion; requires a finite value.
    Rational to_rational() const;

    // Shortest decimal string that identifies the value at its precision.
    std::string str(std::size_t digits = 0) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

  private:
    mpfr_t v_;
};

// Rounded binary/unary operations.  Result precision is max of the operands'.
BigFloat bf_add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
BigFloat bf_sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
BigFloat bf_mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
BigFloat bf_div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
BigFloat bf_neg(const BigFloat& a);
BigFloat bf_abs(const BigFloat& a);
BigFloat bf_sqrt(const BigFloat& a, mpfr_rnd_t rnd);
BigFloat bf_log(const BigFloat& a, mpfr_rnd_t rnd);
BigFloat bf_exp(const BigFloat& a, mpfr_rnd_t rnd);
BigFloat bf_min(const BigFloat& a, const BigFloat& b);
BigFloat bf_max(const BigFloat& a, const BigFloat& b);
BigFloat bf_mul_2exp(const BigFloat& a, long e);
int cmp_abs(const BigFloat& a, const BigFloat& b);

// cos(2*pi*num/den) and sin(2*pi*num/den) at the given precision, rounded to
// nearest; used only to seed iterations, never in certified bounds.
std::pair<BigFloat, BigFloat> bf_unit_direction(long num, long den, long prec);

} // namespace dyna
