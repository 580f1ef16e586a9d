#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynaheight/factor.hpp"
#include "dynaheight/interval.hpp"
#include "dynaheight/unipoly.hpp"

namespace dyna {

// An algebraic number: monic irreducible minimal polynomial over Q together
// with a certified isolating box around the designated complex root.  The
// box radius is kept below a quarter of the certified minimal root
// separation of the polynomial, so two enclosures of roots of the same
// polynomial overlap exactly when they designate the same root, and
// refinement can never migrate to a neighbouring root.
class AlgebraicNumber {
  public:
    AlgebraicNumber() = default;
    AlgebraicNumber(RPoly min_poly, ComplexBox box, long prec);

    static AlgebraicNumber from_rational(const Rational& q);
    static AlgebraicNumber from_long(long n) { return from_rational(Rational(n)); }

    const RPoly& min_poly() const { return min_poly_; }
    const ComplexBox& box() const { return box_; }
    long degree() const { return min_poly_.degree(); }
    long precision() const { return prec_; }

    bool is_rational() const { return min_poly_.degree() == 1; }
    Rational rational_value() const;  // requires is_rational()
    bool is_zero() const;
    bool is_real() const { return box_.is_real_line(); }

    // Certified sign of a real algebraic number (-1, 0, +1).
    int sign() const;

    // Tighten the box to radius <= 2^-bits without changing the designated
    // root; the result carries at least `bits` of working precision.
    AlgebraicNumber refined(long bits) const;

    // Same designated root of the same minimal polynomial.
    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }

    std::string str() const;

  private:
    RPoly min_poly_;
    ComplexBox box_;
    long prec_ = 0;
};

// A point of the projective line over the algebraic numbers: either a finite
// value or the point at infinity, which is its own constructor, never a
// stand-in number.
class P1Point {
  public:
    static P1Point infinity() { return P1Point(); }
    static P1Point finite(AlgebraicNumber a) {
        P1Point p;
        p.finite_ = std::move(a);
        return p;
    }
    static P1Point from_rational(const Rational& q) {
        return finite(AlgebraicNumber::from_rational(q));
    }

    bool is_infinity() const { return !finite_.has_value(); }
    const AlgebraicNumber& value() const {
        if (!finite_) raise(ErrorKind::domain, "the point at infinity has no affine value");
        return *finite_;
    }

    friend bool operator==(const P1Point& a, const P1Point& b) {
        if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
        return *a.finite_ == *b.finite_;
    }
    friend bool operator!=(const P1Point& a, const P1Point& b) { return !(a == b); }

  private:
    P1Point() = default;
    std::optional<AlgebraicNumber> finite_;
};

// All complex roots of p, each wrapped with its irreducible factor as minimal
// polynomial, repeated per multiplicity.  Deterministic order: by real part,
// then imaginary part.  Degree-cap and precision failures raise.
std::vector<AlgebraicNumber> isolate_roots(const RPoly& p,
                                           long prec = Config::precision_bits());

// Real roots only, via exact sign-variation bisection (no floating point in
// the isolation itself).
std::vector<AlgebraicNumber> isolate_real_roots(const RPoly& p,
                                                long prec = Config::precision_bits());

// Number of distinct real roots of a squarefree polynomial in (a, b].
int sturm_count(const RPoly& squarefree, const Rational& a, const Rational& b);

// Exact image p(a): minimal polynomial by linear algebra in Q[y]/(min_a),
// designation by interval refinement.
AlgebraicNumber algebraic_eval(const RPoly& p, const AlgebraicNumber& a);

AlgebraicNumber alg_add(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber alg_sub(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber alg_mul(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber alg_div(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber alg_neg(const AlgebraicNumber& a);
AlgebraicNumber alg_inv(const AlgebraicNumber& a);
// a^e for any integer e (negative inverts; 0^0 = 1).
AlgebraicNumber alg_pow(const AlgebraicNumber& a, long e);

} // namespace dyna
