#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "dynaheight/errors.hpp"

namespace dyna {

// Exact arithmetic sits on GMP throughout: Integer/Rational are the only
// scalar types the symbolic layer ever computes with.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) raise(ErrorKind::domain, "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) raise(ErrorKind::domain, "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// q^e for integer e (negative exponents invert; 0^0 = 1).
Rational rational_pow(const Rational& q, long e);

// p-adic valuation v_p(q); q must be nonzero.
long p_valuation(const Integer& p, const Rational& q);

// Distinct prime factors of |n| by trial division (desk-scale inputs:
// coefficient numerators/denominators, not cryptographic sizes).
std::vector<Integer> prime_factors(const Integer& n);

// Parse "p", "p/q", with optional sign and surrounding whitespace.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

// Decimal digit count of |n| (n != 0), used by iterate-size statistics.
std::size_t digit_size(const Integer& n);

} // namespace dyna
