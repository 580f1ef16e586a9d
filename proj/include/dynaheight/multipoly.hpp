#pragma once

#include <map>
#include <string>
#include <vector>

#include "dynaheight/rational.hpp"
#include "dynaheight/unipoly.hpp"

namespace dyna {

// Sparse multivariate polynomial over the rationals: exponent vector ->)
// coefficient, exponent vectors all sized to var_count.  This is the shape
// the geometry layer works with; univariate work extracts dense views.
class MultiPoly {
  public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, Rational>;

    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}
    MultiPoly(std::size_t nvars, TermMap terms);

    static MultiPoly constant(std::size_t nvars, const Rational& c);
    static MultiPoly variable(std::size_t nvars, std::size_t index);
    // Embed a univariate polynomial as a polynomial in variable `index`.
    static MultiPoly from_unipoly(const RPoly& p, std::size_t nvars, std::size_t index);

    std::size_t var_count() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()
    std::size_t term_count() const { return terms_.size(); }

    long degree_in(std::size_t var) const;   // -1 for the zero polynomial
    long total_degree() const;               // -1 for the zero polynomial
    bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

    void add_term(const Exponents& e, const Rational& c);

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly scaled(const Rational& c) const;

    // Coefficients of the polynomial viewed as univariate in `var`, each a
    // MultiPoly in the same ambient variable set (degree 0 in `var`).
    std::vector<MultiPoly> coefficients_in(std::size_t var) const;
    static MultiPoly assemble_in(std::size_t var, const std::vector<MultiPoly>& coeffs);

    // Dense univariate view; requires the polynomial to involve at most the
    // single variable `var`.
    RPoly univariate_view(std::size_t var) const;
    // The unique variable this polynomial depends on, or -1 if constant;
    // raises if it depends on several.
    long sole_variable() const;

    // Substitute variable -> rational constant.
    MultiPoly substitute(std::size_t var, const Rational& value) const;
    // Substitute variable -> univariate polynomial image g(x_target).
    MultiPoly substitute(std::size_t var, const RPoly& g, std::size_t target_var) const;

    // Evaluate fully at a rational point (size = var_count).
    Rational eval(const std::vector<Rational>& point) const;

    // Evaluate through any commutative ring T (e.g. complex boxes, algebraic
    // numbers) given the coordinate images and ring constants.
    template <class T, class Conv>
    T eval_ring(const std::vector<T>& point, const T& zero, Conv conv) const {
        T acc = zero;
        for (const auto& [e, c] : terms_) {
            T term = conv(c);
            for (std::size_t v = 0; v < nvars_; ++v)
                for (unsigned k = 0; k < e[v]; ++k) term = term * point[v];
            acc = acc + term;
        }
        return acc;
    }

    // Remove integer content and normalize the sign of the leading term (in
    // lex order), so equal hypersurfaces compare equal.
    MultiPoly primitive_normalized() const;

    // Drop variable `var` (which the polynomial must not depend on) and
    // reindex the remaining variables; used when slicing eliminated systems.
    MultiPoly drop_variable(std::size_t var) const;
    // Inverse direction: insert a fresh unused variable at position `var`.
    MultiPoly insert_variable(std::size_t var) const;

  private:
    std::size_t nvars_;
    TermMap terms_;
};

// Resultant of a and b with respect to `var`, i.e. elimination of that
// variable, computed by the subresultant polynomial remainder sequence over
// the ring of polynomials in the remaining variables.
MultiPoly multipoly_resultant(const MultiPoly& a, const MultiPoly& b, std::size_t var);

// Multivariate gcd through recursive subresultant PRS (exact, desk-scale).
MultiPoly multipoly_gcd(const MultiPoly& a, const MultiPoly& b);

// Squarefree part: g / gcd(g, dg/dx) taken over all variables it depends on.
MultiPoly multipoly_squarefree(const MultiPoly& g);

MultiPoly multipoly_derivative(const MultiPoly& a, std::size_t var);

// Exact division; raises if the division leaves a remainder.
MultiPoly multipoly_exact_div(const MultiPoly& a, const MultiPoly& b);

} // namespace dyna
