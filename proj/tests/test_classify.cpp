#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "dynaheight/classify.hpp"
#include "dynaheight/errors.hpp"
#include "dynaheight/io.hpp"

using namespace dyna;

namespace {

RPoly P(std::vector<Rational> c) { return RPoly(std::move(c)); }

RPoly monomial(long e) {
    std::vector<Rational> c(static_cast<size_t>(e) + 1, Rational(0));
    c.back() = Rational(1);
    return RPoly(std::move(c));
}

// L(x) = a x + b and its inverse, as rational polynomials.
RPoly lin(const Rational& a, const Rational& b) { return P({b, a}); }
RPoly lin_inv(const Rational& a, const Rational& b) {
    return P({Rational(-b / a), Rational(Rational(1) / a)});
}

RPoly conjugate_by(const RPoly& f, const Rational& a, const Rational& b) {
    return poly_compose(lin_inv(a, b), poly_compose(f, lin(a, b)));
}

// The recomposition identity that defines the normal form: f(L(x)) = L(g(x)).
bool recomposes(const RPoly& f, const NormalForm& nf) {
    const NFPoly L(std::vector<NFElem>{nf.beta, nf.alpha});
    const NFPoly lhs = poly_compose(lift_poly(f), L);
    const NFPoly rhs = nf.g.scaled(nf.alpha) + NFPoly(std::vector<NFElem>{nf.beta});
    return lhs == rhs;
}

} // namespace

TEST_CASE("chebyshev family: frozen low-degree values") {
    CHECK(chebyshev_poly(1) == P({0, 1}));
    CHECK(chebyshev_poly(2) == P({-2, 0, 1}));
    CHECK(chebyshev_poly(3) == P({0, -3, 0, 1}));
    CHECK(chebyshev_poly(4) == P({2, 0, -4, 0, 1}));
    CHECK_THROWS_AS(chebyshev_poly(0), Error);
}

TEST_CASE("chebyshev family: defining identity with denominators cleared") {
    // T(x + 1/x) = x^d + 1/x^d  <=>  sum_j t_j (x^2+1)^(d-2j) x^(2j) = x^(2d) + 1.
    const RPoly q = P({1, 0, 1});
    for (long d = 1; d <= 16; ++d) {
        const RPoly cheb = chebyshev_poly(d);
        RPoly acc;
        for (long j = 0; 2 * j <= d; ++j) {
            const Rational t = cheb.coeff(d - 2 * j);
            if (t == 0) continue;
            acc = acc + (poly_pow(q, d - 2 * j) * monomial(2 * j)).scaled(t);
        }
        RPoly want = monomial(2 * d) + P({1});
        CHECK(acc == want);
    }
}

TEST_CASE("chebyshev family: closed under composition") {
    for (long d = 1; d <= 4; ++d)
        for (long e = 1; e <= 4; ++e)
            CHECK(poly_compose(chebyshev_poly(d), chebyshev_poly(e)) ==
                  chebyshev_poly(d * e));
}

TEST_CASE("normal form: rational rescaling of a pure square") {
    const RPoly f = P({0, 0, 2});  // 2x^2
    const NormalForm nf = normal_form(f);
    CHECK(nf.pure_power);
    CHECK(nf.field == nullptr);
    CHECK(nf.alpha == NFElem(Rational(1, 2)));
    CHECK(nf.beta.is_zero());
    CHECK(nf.g == lift_poly(P({0, 0, 1})));
    CHECK(recomposes(f, nf));
}

TEST_CASE("normal form: already-normal map is untouched") {
    const RPoly f = P({1, 0, 1});  // x^2 + 1
    const NormalForm nf = normal_form(f);
    CHECK_FALSE(nf.pure_power);
    CHECK(nf.gap == 2);
    CHECK(nf.alpha == NFElem(Rational(1)));
    CHECK(nf.beta.is_zero());
    CHECK(nf.g == lift_poly(f));
}

TEST_CASE("normal form: shift reveals a hidden pure square") {
    // x^2 + 2x = (x+1)^2 - 1, so centering with beta = -1 gives exactly x^2.
    const RPoly f = P({0, 2, 1});
    const NormalForm nf = normal_form(f);
    CHECK(nf.pure_power);
    CHECK(nf.beta == NFElem(Rational(-1)));
    CHECK(nf.g == lift_poly(P({0, 0, 1})));
    CHECK(recomposes(f, nf));
}

TEST_CASE("normal form: irrational scale lands in a quadratic field") {
    const RPoly f = P({0, 0, 0, 3});  // 3x^3, alpha^2 = 1/3
    const NormalForm nf = normal_form(f);
    CHECK(nf.pure_power);
    REQUIRE(nf.field != nullptr);
    CHECK(nf.field->degree() == 2);
    CHECK(nf.alpha.pow(2) == NFElem(Rational(1, 3)));
    CHECK(nf.g.coeff(3) == NFElem(Rational(1)));
    CHECK(recomposes(f, nf));
}

TEST_CASE("normal form: negative leading coefficient, odd degree") {
    const RPoly f = P({0, -1, 0, -1});  // -x^3 - x, alpha^2 = -1
    const NormalForm nf = normal_form(f);
    CHECK_FALSE(nf.pure_power);
    CHECK(nf.gap == 2);
    REQUIRE(nf.field != nullptr);
    CHECK(nf.alpha.pow(2) == NFElem(Rational(-1)));
    // g = x^3 - x with rational-valued coefficients inside Q(i).
    CHECK(nf.g.coeff(3) == NFElem(Rational(1)));
    CHECK(nf.g.coeff(2).is_zero());
    CHECK(nf.g.coeff(1) == NFElem(Rational(-1)));
    CHECK(nf.g.coeff(0).is_zero());
    CHECK(recomposes(f, nf));
}

TEST_CASE("normal form: rational canonical root when no positive one exists") {
    // -x^4 + 4x^2 - 2: alpha^3 = -1 picks alpha = -1, and the conjugate is
    // the degree-4 Chebyshev normalization itself.
    const RPoly f = P({-2, 0, 4, 0, -1});
    const NormalForm nf = normal_form(f);
    CHECK(nf.field == nullptr);
    CHECK(nf.alpha == NFElem(Rational(-1)));
    CHECK(nf.g == lift_poly(chebyshev_poly(4)));
    CHECK(recomposes(f, nf));
}

TEST_CASE("normal form: idempotent on its own output") {
    for (const RPoly& g : {P({1, 0, 1}), chebyshev_poly(3), chebyshev_poly(4),
                           P({0, 1, 0, 1}), P({0, 1, 0, 0, 0, 1})}) {
        const NormalForm nf = normal_form(g);
        CHECK(nf.alpha == NFElem(Rational(1)));
        CHECK(nf.beta.is_zero());
        CHECK(nf.g == lift_poly(g));
    }
}

TEST_CASE("normal form: gap exponent reads off the leading non-power term") {
    CHECK(normal_form(P({0, 1, 0, 0, 0, 1})).gap == 4);   // x^5 + x
    CHECK(normal_form(P({7, 0, 0, 0, 0, 1})).gap == 5);   // x^5 + 7
    CHECK(normal_form(chebyshev_poly(6)).gap == 2);
    CHECK_THROWS_AS(normal_form(P({3, 1})), Error);   // degree 1
}

TEST_CASE("classify: frozen labels") {
    CHECK(classify(P({-2, 0, 1})).kind == MapClass::chebyshev_conjugate);  // x^2-2
    CHECK(classify(P({-2, 0, 1})).sign == +1);
    CHECK(classify(P({1, 0, 1})).kind == MapClass::disintegrated);         // x^2+1
    CHECK(classify(P({0, 0, 0, 3})).kind == MapClass::power_conjugate);    // 3x^3
    CHECK(classify(P({0, 0, 2})).kind == MapClass::power_conjugate);       // 2x^2
    CHECK(classify(P({0, 2, 1})).kind == MapClass::power_conjugate);       // x^2+2x
    CHECK(classify(P({0, 1, 0, 1})).kind == MapClass::disintegrated);      // x^3+x
    CHECK(classify(P({0, -1, 0, -1})).kind == MapClass::disintegrated);    // -x^3-x
    CHECK(classify(P({-2, 0, 2})).kind == MapClass::disintegrated);        // 2x^2-2
}

TEST_CASE("classify: signed chebyshev classes in odd degree") {
    const ClassLabel plus = classify(chebyshev_poly(3));
    CHECK(plus.kind == MapClass::chebyshev_conjugate);
    CHECK(plus.sign == +1);
    CHECK(plus.twist_square == NFElem(Rational(1)));

    // x^3 + 3x is the centered monic conjugate of -C_3.
    const ClassLabel minus = classify(P({0, 3, 0, 1}));
    CHECK(minus.kind == MapClass::chebyshev_conjugate);
    CHECK(minus.sign == -1);
    CHECK(minus.twist_square == NFElem(Rational(-1)));

    // x^3 - x matches the support but fails the twist consistency check.
    CHECK(classify(P({0, -1, 0, 1})).kind == MapClass::disintegrated);
}

TEST_CASE("classify: even-degree chebyshev and its negative coincide") {
    CHECK(classify(chebyshev_poly(4)).kind == MapClass::chebyshev_conjugate);
    CHECK(classify(chebyshev_poly(4)).sign == +1);
    const RPoly neg = chebyshev_poly(4).scaled(Rational(-1));
    CHECK(classify(neg).kind == MapClass::chebyshev_conjugate);
    CHECK(classify(neg).sign == +1);
}

TEST_CASE("classify: scaled chebyshev conjugate through an irrational field") {
    // 3x^3 - 3x = M^-1 (C_3 (M x)) for M(x) = sqrt(3) x.
    const ClassLabel got = classify(P({0, -3, 0, 3}));
    CHECK(got.kind == MapClass::chebyshev_conjugate);
    CHECK(got.sign == +1);
}

TEST_CASE("classify: invariant under rational linear conjugation") {
    const std::vector<std::pair<Rational, Rational>> maps = {
        {Rational(2), Rational(3)},
        {Rational(1, 3), Rational(-1)},
        {Rational(-1), Rational(1, 2)},
        {Rational(5), Rational(-7, 2)},
    };
    const std::vector<RPoly> reps = {
        P({1, 0, 1}),          // disintegrated
        P({-2, 0, 1}),         // chebyshev +
        P({0, 0, 0, 1}),       // power
        chebyshev_poly(3),     // chebyshev +
        P({0, 3, 0, 1}),       // chebyshev -
        P({0, 1, 0, 1}),       // disintegrated
    };
    for (const RPoly& f : reps) {
        const ClassLabel base = classify(f);
        for (const auto& [a, b] : maps) {
            const ClassLabel got = classify(conjugate_by(f, a, b));
            CHECK(got.kind == base.kind);
            CHECK(got.sign == base.sign);
        }
    }
}
