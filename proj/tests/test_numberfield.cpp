#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynaheight/numberfield.hpp"

using namespace dyna;

namespace {
RPoly P(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long x : coeffs) c.emplace_back(x);
    return RPoly(std::move(c));
}

AlgebraicNumber sqrt2() {
    for (const auto& r : isolate_roots(P({-2, 0, 1})))
        if (r.sign() > 0) return r;
    raise(ErrorKind::internal, "sqrt(2) not found");
}
} // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == P({-1, 1}));
    CHECK(cyclotomic_poly(2) == P({1, 1}));
    CHECK(cyclotomic_poly(3) == P({1, 1, 1}));
    CHECK(cyclotomic_poly(4) == P({1, 0, 1}));
    CHECK(cyclotomic_poly(6) == P({1, -1, 1}));
    CHECK(cyclotomic_poly(12) == P({1, 0, -1, 0, 1}));
    // Degree is Euler phi.
    CHECK(cyclotomic_poly(15).degree() == 8);
    CHECK(cyclotomic_poly(16).degree() == 8);
}

TEST_CASE("field arithmetic in Q(sqrt 2)") {
    auto field = NumberField::make(sqrt2());
    NFElem t = NFElem::generator(field);
    CHECK(t * t == NFElem(2L));
    CHECK((NFElem(1L) + t) * (t - NFElem(1L)) == NFElem(1L));
    CHECK(t.pow(4) == NFElem(4L));
    CHECK(t.pow(-2) == NFElem(Rational(1, 2)));
    CHECK(t.inverse() * t == NFElem(1L));
    CHECK((t / t) == NFElem(1L));
    CHECK_THROWS_AS(NFElem(0L).inverse(), Error);

    // Mixed arithmetic with plain rationals promotes.
    NFElem u = NFElem(Rational(3, 2)) * t + NFElem(5L);
    CHECK(u - NFElem(5L) == NFElem(Rational(3, 2)) * t);
    CHECK((u * u).rep().degree() <= 1);

    // Embedding returns the designated root's arithmetic.
    AlgebraicNumber e = (t * t - NFElem(1L)).embed();
    CHECK(e.is_rational());
    CHECK(e.rational_value() == 1);
    CHECK(t.embed() == sqrt2());
}

TEST_CASE("distinct fields never mix silently") {
    auto f2 = NumberField::make(sqrt2());
    AlgebraicNumber r3;
    for (const auto& r : isolate_roots(P({-3, 0, 1})))
        if (r.sign() > 0) r3 = r;
    auto f3 = NumberField::make(r3);
    CHECK_THROWS_AS(NFElem::generator(f2) + NFElem::generator(f3), Error);
}

TEST_CASE("cyclotomic field designates exp(2 pi i / r)") {
    auto q4 = cyclotomic_field(4);
    CHECK(q4->cyclotomic_order() == 4);
    NFElem i = NFElem::generator(q4);
    CHECK(i * i == NFElem(-1L));
    AlgebraicNumber ie = i.embed();
    CHECK(!ie.is_real());
    CHECK(ie.box().im().lo().sign() > 0);  // upper half plane

    auto q3 = cyclotomic_field(3);
    NFElem z = NFElem::generator(q3);
    CHECK(z.pow(3) == NFElem(1L));
    CHECK(z.pow(2) + z + NFElem(1L) == NFElem(0L));
    // Largest real part among the primitive cube roots is cos(2 pi/3) both;
    // the designated one has positive imaginary part.
    CHECK(z.embed().box().im().lo().sign() > 0);

    auto q5 = cyclotomic_field(5);
    NFElem w = NFElem::generator(q5);
    CHECK(w.pow(5) == NFElem(1L));
    CHECK(w.pow(-1) == w.pow(4));
    // exp(2 pi i/5) has real part cos(72 deg) > 0.
    CHECK(w.embed().box().re().lo().sign() > 0);
}

TEST_CASE("roots of unity enumeration") {
    auto vals = roots_of_unity_in(nullptr, 2);
    CHECK(vals.size() == 2);
    CHECK(roots_of_unity_in(nullptr, 3).size() == 1);
    CHECK(roots_of_unity_in(nullptr, 6).size() == 2);

    auto q4 = cyclotomic_field(4);
    CHECK(roots_of_unity_in(q4, 4).size() == 4);
    CHECK(roots_of_unity_in(q4, 2).size() == 2);
    CHECK(roots_of_unity_in(q4, 3).size() == 1);
    CHECK(roots_of_unity_in(q4, 12).size() == 4);

    auto q3 = cyclotomic_field(3);
    CHECK(roots_of_unity_in(q3, 6).size() == 6);   // generated by -zeta_3
    CHECK(roots_of_unity_in(q3, 3).size() == 3);
    CHECK(roots_of_unity_in(q3, 2).size() == 2);

    // Real quadratic field only carries +-1.
    auto f2 = NumberField::make(sqrt2());
    CHECK(roots_of_unity_in(f2, 8).size() == 2);

    // Complex non-cyclotomic fields are out of the supported envelope.
    AlgebraicNumber r;
    for (const auto& root : isolate_roots(P({2, 0, 1})))  // x^2 + 2
        if (!root.is_real()) r = root;
    auto fc = NumberField::make(r);
    CHECK_THROWS_AS(roots_of_unity_in(fc, 2), Error);

    // Every claimed root of unity actually satisfies u^m = 1.
    for (const auto& u : roots_of_unity_in(q3, 6)) CHECK(u.pow(6) == NFElem(1L));
}

TEST_CASE("polynomials over a number field") {
    auto q4 = cyclotomic_field(4);
    NFElem i = NFElem::generator(q4);
    NFPoly f = lift_poly(P({1, 0, 1}));  // x^2 + 1
    CHECK(f.eval(i).is_zero());
    CHECK_THROWS_AS(rational_poly(NFPoly({i, NFElem(1L)})), Error);
    CHECK(rational_poly(lift_poly(P({-2, 0, 1}))) == P({-2, 0, 1}));

    // Division and gcd work coefficient-exactly over the field.
    NFPoly top = NFPoly({i, NFElem(1L)}) * NFPoly({-i, NFElem(1L)});
    CHECK(rational_poly(top) == P({1, 0, 1}));
    NFPoly g = poly_gcd(top, NFPoly({i, NFElem(1L)}));
    CHECK(g.degree() == 1);
}
