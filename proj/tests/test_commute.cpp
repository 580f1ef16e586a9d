#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dynaheight/commute.hpp"
#include "dynaheight/errors.hpp"
#include "dynaheight/heights.hpp"

using namespace dyna;

namespace {

RPoly P(std::vector<Rational> c) { return RPoly(std::move(c)); }

bool contains_mu(const std::vector<NFElem>& mus, const NFElem& v) {
    return std::any_of(mus.begin(), mus.end(), [&](const NFElem& m) { return m == v; });
}

bool has_element(const CommuterSet& cs, const RPoly& g) {
    const NFPoly lifted = lift_poly(g);
    return std::any_of(cs.elements.begin(), cs.elements.end(),
                       [&](const Commuter& c) { return c.poly == lifted; });
}

} // namespace

TEST_CASE("symmetry group: even map has only the identity") {
    const SymmetryGroup sym = symmetry_group(P({1, 0, 1}));  // x^2 + 1
    CHECK(sym.order() == 1);
    CHECK(sym.gap == 2);
    CHECK(sym.mus[0] == NFElem(Rational(1)));
    CHECK(sym.elements[0].witness_k == 1);
    CHECK(sym.elements[0].mu == AlgebraicNumber::from_long(1));
}

TEST_CASE("symmetry group: odd cubic picks up the sign flip") {
    const SymmetryGroup sym = symmetry_group(P({0, 1, 0, 1}));  // x^3 + x
    CHECK(sym.order() == 2);
    CHECK(sym.gap == 2);
    CHECK(sym.gap % sym.order() == 0);
    CHECK(contains_mu(sym.mus, NFElem(Rational(1))));
    CHECK(contains_mu(sym.mus, NFElem(Rational(-1))));
    for (const auto& el : sym.elements) CHECK(el.witness_k == 1);
    CHECK(sym.field == nullptr);
}

TEST_CASE("symmetry group: centered form of x^3 + x^2 is asymmetric") {
    // Normal form of x^3 + x^2 is x^3 - x/3 + 11/27; the constant term
    // forces mu = 1.
    const NFPoly g = normal_form(P({0, 0, 1, 1})).g;
    const RPoly gq = rational_poly(g);
    CHECK(gq == P({Rational(11, 27), Rational(-1, 3), Rational(0), Rational(1)}));
    const SymmetryGroup sym = symmetry_group(gq);
    CHECK(sym.order() == 1);
}

TEST_CASE("symmetry group: quartic roots of unity for x^5 + x") {
    const SymmetryGroup sym = symmetry_group(P({0, 1, 0, 0, 0, 1}));
    CHECK(sym.order() == 4);
    CHECK(sym.gap == 4);
    REQUIRE(sym.field != nullptr);
    CHECK(sym.field->degree() == 2);

    const NFElem one{Rational(1)};
    const NFElem minus_one{Rational(-1)};
    const NFElem gen = sym.mus[sym.generator_index()];
    CHECK(gen.pow(2) == minus_one);
    CHECK(gen.pow(4) == one);

    // Closure and inverses by exhaustive composition table.
    for (const NFElem& a : sym.mus) {
        bool has_inverse = false;
        for (const NFElem& b : sym.mus) {
            CHECK(contains_mu(sym.mus, a * b));
            if (a * b == one) has_inverse = true;
        }
        CHECK(has_inverse);
    }
    for (const auto& el : sym.elements) CHECK(el.witness_k == 1);
}

TEST_CASE("symmetry group: contract errors") {
    CHECK_THROWS_WITH_AS(symmetry_group(P({-2, 0, 1})),
                         doctest::Contains("symmetry group contract requires disintegrated f"),
                         Error);
    CHECK_THROWS_AS(symmetry_group(P({0, 0, 2})), Error);   // not monic
    CHECK_THROWS_AS(symmetry_group(P({0, 2, 1})), Error);   // not centered
}

TEST_CASE("minimal commuter: prime degrees return the map itself") {
    CHECK(minimal_commuter(P({1, 0, 1})) == P({1, 0, 1}));
    CHECK(minimal_commuter(P({0, 1, 0, 1})) == P({0, 1, 0, 1}));
    CHECK(minimal_commuter(P({0, 1, 0, 0, 0, 0, 1})) == P({0, 1, 0, 0, 0, 0, 1}));
}

TEST_CASE("minimal commuter: compositional square root of a quartic") {
    const RPoly f = P({2, 0, 2, 0, 1});  // x^4 + 2x^2 + 2 = (x^2+1) o (x^2+1)
    const RPoly g = minimal_commuter(f);
    CHECK(g == P({1, 0, 1}));
    CHECK(poly_compose(g, f) == poly_compose(f, g));
    CHECK(poly_compose(g, g) == f);
}

TEST_CASE("minimal commuter: non-monic square") {
    // (2x^2+1) o (2x^2+1) = 8x^4 + 8x^2 + 3; leading coefficient solved from
    // y^3 = 8.
    const RPoly f = P({3, 0, 8, 0, 8});
    const RPoly g = minimal_commuter(f);
    CHECK(g == P({1, 0, 2}));
    CHECK(poly_compose(g, f) == poly_compose(f, g));
}

TEST_CASE("minimal commuter: shifted square keeps its linear term") {
    // (x^2+x) o (x^2+x) = x^4 + 2x^3 + 2x^2 + x.
    const RPoly f = P({0, 1, 2, 2, 1});
    const RPoly g = minimal_commuter(f);
    CHECK(g == P({0, 1, 1}));
    CHECK(poly_compose(g, f) == poly_compose(f, g));
}

TEST_CASE("minimal commuter: rejects special maps") {
    CHECK_THROWS_AS(minimal_commuter(P({-2, 0, 1})), Error);
    CHECK_THROWS_AS(minimal_commuter(P({0, 0, 1})), Error);
}

TEST_CASE("commuter enumeration: iterates of x^2 + 1 up to degree 4") {
    const CommuterSet cs = commuters_up_to(P({1, 0, 1}), 4);
    CHECK(cs.base == P({1, 0, 1}));
    CHECK(cs.D_exponent == 1);
    REQUIRE(cs.elements.size() == 3);
    CHECK(has_element(cs, P({0, 1})));           // x
    CHECK(has_element(cs, P({1, 0, 1})));        // x^2+1
    CHECK(has_element(cs, P({2, 0, 2, 0, 1})));  // x^4+2x^2+2
    for (const auto& el : cs.elements) CHECK(el.witness_k >= 1);
}

TEST_CASE("commuter enumeration: odd cubic and its sign twists") {
    const CommuterSet cs = commuters_up_to(P({0, 1, 0, 1}), 3);
    REQUIRE(cs.elements.size() == 4);
    CHECK(has_element(cs, P({0, 1})));
    CHECK(has_element(cs, P({0, -1})));
    CHECK(has_element(cs, P({0, 1, 0, 1})));
    CHECK(has_element(cs, P({0, -1, 0, -1})));
}

TEST_CASE("commuter enumeration: degree bound one returns the group alone") {
    const CommuterSet cs = commuters_up_to(P({0, 1, 0, 1}), 1);
    CHECK(cs.elements.size() == 2);
    for (const auto& el : cs.elements) CHECK(el.poly.degree() == 1);
}

TEST_CASE("commuter enumeration: quartic symmetries of x^5 + x") {
    const RPoly f = P({0, 1, 0, 0, 0, 1});
    const CommuterSet cs = commuters_up_to(f, 5);
    CHECK(cs.base == f);
    CHECK(cs.group.order() == 4);
    REQUIRE(cs.elements.size() == 8);

    // Two-sided set identity: every base^m o L equals some L' o base^m.
    const NFPoly fK = lift_poly(f);
    for (const auto& el : cs.elements) {
        if (el.poly.degree() == 1) continue;
        bool matched = false;
        for (const NFElem& mu : cs.group.mus) {
            if (el.poly == fK.scaled(mu)) matched = true;
        }
        CHECK(matched);
    }
}

TEST_CASE("commuter enumeration: every element verifies against its witness") {
    for (const RPoly& f : {P({1, 0, 1}), P({0, 1, 0, 1})}) {
        const CommuterSet cs = commuters_up_to(f, 9);
        for (const auto& el : cs.elements) {
            RPoly fk = f;
            for (long k = 1; k < el.witness_k; ++k) fk = poly_compose(f, fk);
            const NFPoly fkK = lift_poly(fk);
            CHECK(poly_compose(el.poly, fkK) == poly_compose(fkK, el.poly));
        }
    }
}

TEST_CASE("commuter enumeration: commuters scale canonical height by their degree") {
    const RPoly f = P({1, 0, 1});
    const CommuterSet cs = commuters_up_to(f, 4);
    for (const Rational& a : {Rational(1, 3), Rational(2), Rational(-3, 2)}) {
        const HeightValue ha = canonical_height(f, P1Point::from_rational(a));
        for (const auto& el : cs.elements) {
            const RPoly g = rational_poly(el.poly);
            const Rational ga = g.eval(a);
            const HeightValue hga = canonical_height(f, P1Point::from_rational(ga));
            const double want = static_cast<double>(g.degree()) * ha.value().to_double();
            const double slack = static_cast<double>(g.degree()) * ha.radius().to_double() +
                                 hga.radius().to_double() + 1e-12;
            CHECK(std::abs(hga.value().to_double() - want) <= slack);
        }
    }

    // Odd map: the sign symmetry preserves height exactly by symmetry of orbits.
    const RPoly f3 = P({0, 1, 0, 1});
    const HeightValue h1 = canonical_height(f3, P1Point::from_rational(Rational(2)));
    const HeightValue h2 = canonical_height(f3, P1Point::from_rational(Rational(-2)));
    CHECK(std::abs(h1.value().to_double() - h2.value().to_double()) <=
          h1.radius().to_double() + h2.radius().to_double() + 1e-15);
}
