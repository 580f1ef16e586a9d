#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dynaheight/algebraic.hpp"
#include "dynaheight/unipoly.hpp"

namespace dyna {

// The field Q(theta) for a designated algebraic generator theta.  Elements
// are polynomials in theta of degree < [K:Q]; the generator's certified box
// gives the complex embedding when one is needed.
class NumberField {
  public:
    static std::shared_ptr<const NumberField> make(AlgebraicNumber generator);

    const RPoly& min_poly() const { return generator_.min_poly(); }
    const AlgebraicNumber& generator() const { return generator_; }
    long degree() const { return generator_.degree(); }
    // Set for fields built by cyclotomic_field(r); 0 otherwise.
    long cyclotomic_order() const { return cyclotomic_order_; }

  private:
    explicit NumberField(AlgebraicNumber g) : generator_(std::move(g)) {}
    AlgebraicNumber generator_;
    long cyclotomic_order_ = 0;

    friend std::shared_ptr<const NumberField> cyclotomic_field(long r);
};

// An element of a number field, or a plain rational when the field pointer
// is empty.  Rationals promote automatically when combined with field
// elements, which lets UniPoly<NFElem> templates construct K(0)/K(1).
class NFElem {
  public:
    NFElem() : NFElem(0L) {}
    NFElem(long n) : rep_(RPoly::constant(Rational(n))) {}
    explicit NFElem(Rational q) : rep_(RPoly::constant(std::move(q))) {}
    NFElem(std::shared_ptr<const NumberField> field, RPoly rep);

    static NFElem generator(const std::shared_ptr<const NumberField>& field);

    const std::shared_ptr<const NumberField>& field() const { return field_; }
    // Coordinates in the power basis of the generator (constant for rationals).
    const RPoly& rep() const { return rep_; }

    bool is_zero() const { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }
    Rational rational_value() const;

    NFElem inverse() const;
    NFElem pow(long e) const;

    // The element as a certified algebraic number through the generator's
    // designated embedding.
    AlgebraicNumber embed() const;

    friend NFElem operator+(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a, const NFElem& b);
    friend NFElem operator*(const NFElem& a, const NFElem& b);
    friend NFElem operator/(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a);
    friend bool operator==(const NFElem& a, const NFElem& b);
    friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

    std::string str() const;

  private:
    std::shared_ptr<const NumberField> field_;  // empty = rational constant
    RPoly rep_;
};

using NFPoly = UniPoly<NFElem>;

// Coefficient-wise lift of a rational polynomial into number-field elements.
NFPoly lift_poly(const RPoly& p);
// Push back down; raises if any coefficient is irrational.
RPoly rational_poly(const NFPoly& p);

// The r-th cyclotomic polynomial (monic, integer coefficients).
RPoly cyclotomic_poly(long r);

// Q(zeta_r) with the generator designated as the primitive root of largest
// real part in the upper half plane (exp(2*pi*i/r)).
std::shared_ptr<const NumberField> cyclotomic_field(long r);

// All solutions of u^m = 1 in the field (empty pointer = Q).  Supported for
// Q, real fields, and fields created by cyclotomic_field.
std::vector<NFElem> roots_of_unity_in(const std::shared_ptr<const NumberField>& field, long m);

} // namespace dyna
