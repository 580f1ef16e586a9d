#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dynaheight/algebraic.hpp"
#include "dynaheight/factor.hpp"
#include "dynaheight/interval.hpp"
#include "dynaheight/multipoly.hpp"
#include "dynaheight/rational.hpp"
#include "dynaheight/unipoly.hpp"

using namespace dyna;

namespace {
RPoly P(std::initializer_list<long> coeffs_low_to_high) {
    std::vector<Rational> v;
    for (long c : coeffs_low_to_high) v.emplace_back(c);
    return RPoly(std::move(v));
}
} // namespace

TEST_CASE("rational helpers") {
    CHECK(parse_rational(" -3/6 ") == make_rational(-1, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK(rational_pow(make_rational(2, 3), -2) == make_rational(9, 4));
    CHECK(rational_pow(Rational(0), 0) == 1);
    CHECK(p_valuation(Integer(2), make_rational(12, 7)) == 2);
    CHECK(p_valuation(Integer(7), make_rational(12, 7)) == -1);
    auto primes = prime_factors(Integer(360));
    REQUIRE(primes.size() == 3);
    CHECK(primes[0] == 2);
    CHECK(primes[1] == 3);
    CHECK(primes[2] == 5);
}

TEST_CASE("interval arithmetic encloses and directs rounding") {
    RealInterval third = RealInterval::from_rational(make_rational(1, 3));
    CHECK(third.contains(make_rational(1, 3)));
    CHECK(!third.is_point());  // 1/3 is not a binary float
    RealInterval nine = third * RealInterval::exact(27);
    CHECK(nine.contains(Rational(9)));

    // log 3 = 1.0986122886...; a certified enclosure sits strictly inside
    RealInterval l3 = RealInterval::log_of(Rational(3));
    CHECK(l3.lo().to_rational() > make_rational(10986, 10000));
    CHECK(l3.hi().to_rational() < make_rational(10987, 10000));

    CHECK(RealInterval::from_rational(make_rational(1, 2)).log_plus().is_point());
    CHECK(RealInterval::from_rational(make_rational(1, 2)).log_plus().lo().is_zero());
    CHECK(RealInterval::from_rational(Rational(3)).log_plus().hi().to_rational() <
          make_rational(10987, 10000));

    int s = 0;
    CHECK(RealInterval::from_rational(make_rational(-1, 7)).certain_sign(&s));
    CHECK(s == -1);

    ComplexBox i_unit = ComplexBox(RealInterval::exact(0), RealInterval::exact(1));
    ComplexBox sq = i_unit * i_unit;
    CHECK(sq.re().contains(Rational(-1)));
    CHECK(sq.im().contains(Rational(0)));
    CHECK(i_unit.abs().contains(Rational(1)));
}

TEST_CASE("univariate polynomial ring") {
    RPoly f = P({1, 0, 1});  // x^2 + 1
    CHECK(poly_compose(f, f) == P({2, 0, 2, 0, 1}));

    // orbit of 0 under x^2 + 1
    CHECK(poly_iterate(f, 1).eval(0) == 1);
    CHECK(poly_iterate(f, 2).eval(0) == 2);
    CHECK(poly_iterate(f, 3).eval(0) == 5);
    CHECK(poly_iterate(f, 4).eval(0) == 26);

    CHECK(poly_gcd(P({-2, 1}) * P({1, 1}), P({-2, 1}) * P({5, 1})) == P({-2, 1}));
    CHECK(resultant(P({-1, 0, 1}), P({-4, 0, 1})) == 9);

    RPoly q, r;
    RPoly::divrem(P({1, 2, 3, 4}), P({1, 1}), &q, &r);
    CHECK(q * P({1, 1}) + r == P({1, 2, 3, 4}));
    CHECK(r.degree() < 1);

    CHECK_THROWS_AS(poly_iterate(P({0, 0, 1}), 40, 1000), Error);  // degree budget
    CHECK(poly_reverse(P({2, 3, 1})) == P({1, 3, 2}));
}

TEST_CASE("multivariate polynomials and resultants") {
    // F = x2 - x1^2, G = x2^2 - 5 over variables (x1, x2)
    MultiPoly x1 = MultiPoly::variable(2, 0);
    MultiPoly x2 = MultiPoly::variable(2, 1);
    MultiPoly F = x2 - x1 * x1;
    MultiPoly G = x2 * x2 - MultiPoly::constant(2, Rational(5));
    MultiPoly res = multipoly_resultant(F, G, 1);
    MultiPoly expected = x1 * x1 * x1 * x1 - MultiPoly::constant(2, Rational(5));
    CHECK(res == expected);

    MultiPoly d = multipoly_gcd((x1 - x2) * (x1 + x2), (x1 - x2) * (x1 - x2));
    CHECK(d.primitive_normalized() == (x1 - x2).primitive_normalized());

    MultiPoly sf = multipoly_squarefree((x1 - x2) * (x1 - x2) * (x1 + x2));
    CHECK(sf.primitive_normalized() == ((x1 - x2) * (x1 + x2)).primitive_normalized());

    MultiPoly sub = F.substitute(1, P({0, 0, 1}), 0);  // x2 := x1^2 leaves 0
    CHECK(sub.is_constant());
    CHECK(sub.constant_value() == 0);

    CHECK(F.eval({Rational(3), Rational(9)}) == 0);
    CHECK(F.eval({Rational(3), Rational(10)}) == 1);
}

TEST_CASE("factorization over the rationals") {
    RPoly p = P({1, 0, 1});          // x^2 + 1
    RPoly two = P({-2, 1});          // x - 2
    RPoly prod = p * p * two;
    auto fact = factor_rational(prod.scaled(make_rational(3, 7)));
    CHECK(fact.lead == make_rational(3, 7));
    REQUIRE(fact.factors.size() == 2);
    CHECK(fact.factors[0].first == two);
    CHECK(fact.factors[0].second == 1);
    CHECK(fact.factors[1].first == p);
    CHECK(fact.factors[1].second == 2);

    auto sixth = factor_rational(P({-1, 0, 0, 0, 0, 0, 1}));  // x^6 - 1
    REQUIRE(sixth.factors.size() == 4);
    long degs[4] = {1, 1, 2, 2};
    for (int i = 0; i < 4; ++i) CHECK(sixth.factors[i].first.degree() == degs[i]);

    // needs genuine recombination: quadratics split modulo most primes
    auto quads = factor_rational(P({-2, 0, 1}) * P({-3, 0, 1}) * P({-5, 0, 1}));
    REQUIRE(quads.factors.size() == 3);
    for (const auto& [g, m] : quads.factors) {
        CHECK(g.degree() == 2);
        CHECK(m == 1);
    }

    CHECK(is_irreducible(P({2, 0, 2, 0, 1})));   // Eisenstein at 2
    CHECK(!is_irreducible(P({-1, 0, 0, 0, 1}))); // x^4 - 1

    auto wide = factor_rational(P({-1, 1}) * P({-2, 1}) * P({-3, 1}) * P({-4, 1}) * P({-5, 1}) * P({-6, 1}));
    REQUIRE(wide.factors.size() == 6);
    // equal degrees order by coefficient vectors, so roots descend
    for (int k = 0; k < 6; ++k) CHECK(wide.factors[k].first == P({-(6 - k), 1}));

    auto sq = squarefree_decomposition(p * p * two);
    REQUIRE(sq.size() == 2);
    CHECK(sq[0].first == two);
    CHECK(sq[0].second == 1);
    CHECK(sq[1].first == p);
    CHECK(sq[1].second == 2);
}

TEST_CASE("root isolation with certified boxes") {
    auto roots01 = isolate_roots(P({0, -1, 1}));  // x^2 - x
    REQUIRE(roots01.size() == 2);
    CHECK(roots01[0].rational_value() == 0);
    CHECK(roots01[1].rational_value() == 1);

    auto r2 = isolate_real_roots(P({-2, 0, 1}));  // x^2 - 2
    REQUIRE(r2.size() == 2);
    CHECK(r2[0].sign() == -1);
    CHECK(r2[1].sign() == 1);
    CHECK(r2[0].degree() == 2);
    CHECK(r2[0].is_real());
    CHECK(r2[0] == alg_neg(r2[1]));

    auto im = isolate_roots(P({1, 0, 1}));  // x^2 + 1
    REQUIRE(im.size() == 2);
    CHECK(!im[0].is_real());
    CHECK(!im[1].is_real());
    CHECK(im[0].box().im().lo().sign() * im[1].box().im().lo().sign() == -1);

    // multiplicity is reported per root
    auto dbl = isolate_roots(P({1, 0, 1}) * P({1, 0, 1}) * P({-2, 1}));
    CHECK(dbl.size() == 5);

    auto refined = r2[1].refined(200);
    CHECK(refined == r2[1]);
    CHECK(refined.box().disk_radius() <= bf_mul_2exp(BigFloat::from_long(1), -200));

    CHECK(sturm_count(P({0, -2, 0, 1}), Rational(-2), Rational(2)) == 3);  // x^3 - 2x
    CHECK(sturm_count(P({0, -2, 0, 1}), Rational(1), Rational(2)) == 1);
}

TEST_CASE("algebraic arithmetic through minimal polynomials") {
    auto phi = isolate_real_roots(P({-1, -1, 1}))[1];  // (1 + sqrt 5)/2
    auto shifted = alg_add(phi, AlgebraicNumber::from_long(2));
    CHECK(shifted.min_poly() == P({5, -5, 1}));
    CHECK(algebraic_eval(P({2, 1}), phi) == shifted);

    auto sqrt2 = isolate_real_roots(P({-2, 0, 1}))[1];
    auto sqrt3 = isolate_real_roots(P({-3, 0, 1}))[1];

    auto sum = alg_add(sqrt2, sqrt3);
    CHECK(sum.min_poly() == P({1, 0, -10, 0, 1}));
    CHECK(sum.sign() == 1);

    auto prod = alg_mul(sqrt2, sqrt3);
    CHECK(prod.min_poly() == P({-6, 0, 1}));
    CHECK(prod.sign() == 1);
    CHECK(prod == isolate_real_roots(P({-6, 0, 1}))[1]);

    auto inv = alg_inv(sqrt2);
    std::vector<Rational> half{make_rational(-1, 2), Rational(0), Rational(1)};
    CHECK(inv.min_poly() == RPoly(half));
    CHECK(alg_mul(inv, AlgebraicNumber::from_long(2)) == sqrt2);

    CHECK(alg_pow(sqrt2, 4).rational_value() == 4);
    CHECK(alg_pow(sqrt2, -2).rational_value() == make_rational(1, 2));
    CHECK(alg_sub(sqrt2, sqrt2).is_zero());

    // squaring an imaginary root lands on a rational
    auto i_root = isolate_roots(P({1, 0, 1}))[0];
    auto sq = alg_mul(i_root, i_root);
    CHECK(sq.is_rational());
    CHECK(sq.rational_value() == -1);

    CHECK_THROWS_AS(alg_inv(AlgebraicNumber::from_long(0)), Error);
    CHECK_THROWS_AS(i_root.sign(), Error);
}
