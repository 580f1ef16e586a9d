#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynaheight/heights.hpp"
#include "dynaheight/io.hpp"

using namespace dyna;

namespace {

RPoly P(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long x : coeffs) c.emplace_back(x);
    return RPoly(std::move(c));
}

P1Point pt(long num, long den = 1) { return P1Point::from_rational(make_rational(num, den)); }

AlgebraicNumber named_root(const RPoly& p, int sign) {
    for (const auto& r : isolate_roots(p))
        if (r.is_real() && r.sign() == sign) return r;
    raise(ErrorKind::internal, "requested real root not found");
}

double mid(const HeightValue& h) { return h.value().to_double(); }
double rad(const HeightValue& h) { return h.radius().to_double(); }

bool interval_is(const RealInterval& v, const Rational& log_arg) {
    RealInterval expect = (log_arg == 1) ? RealInterval::zero() : RealInterval::log_of(log_arg);
    return v.intersects(expect) && v.radius().to_double() < 1e-12;
}

} // namespace

TEST_CASE("weil heights of rationals are exact logs") {
    HeightValue h = weil_height(pt(3, 2));
    CHECK(h.exact());
    CHECK(h.exact_log_arg() == 3);

    CHECK(weil_height(pt(0)).exact_log_arg() == 1);
    CHECK(weil_height(pt(1)).exact_log_arg() == 1);
    CHECK(weil_height(pt(-7)).exact_log_arg() == 7);
    CHECK(weil_height(pt(2, 5)).exact_log_arg() == 5);
    CHECK(weil_height(P1Point::infinity()).exact_log_arg() == 1);
    CHECK(weil_height(P1Point::infinity()).radius().is_zero());
}

TEST_CASE("weil heights of algebraic numbers") {
    // h(sqrt 2) = (1/2) log 2.
    HeightValue h = weil_height(P1Point::finite(named_root(P({-2, 0, 1}), 1)));
    CHECK(!h.exact());
    RealInterval expect = RealInterval::log_of(Rational(2)) * RealInterval::from_rational(Rational(1, 2));
    CHECK(h.interval().intersects(expect));
    CHECK(rad(h) < 1e-12);

    // Roots of unity have height zero.
    AlgebraicNumber i_unit;
    for (const auto& r : isolate_roots(P({1, 0, 1})))
        if (r.box().im().lo().sign() > 0) i_unit = r;
    HeightValue hz = weil_height(P1Point::finite(i_unit));
    CHECK(hz.interval().lo().sign() >= 0);
    CHECK(hz.interval().hi().to_double() < 1e-12);

    // Golden ratio: h = (1/2) log phi ~ 0.24061.
    HeightValue hg = weil_height(P1Point::finite(named_root(P({-1, -1, 1}), 1)));
    CHECK(mid(hg) == doctest::Approx(0.2406059125).epsilon(1e-8));

    // Galois invariance: conjugates share the height.
    HeightValue hneg = weil_height(P1Point::finite(named_root(P({-2, 0, 1}), -1)));
    CHECK(h.interval().intersects(hneg.interval()));
}

TEST_CASE("tuple heights add exactly") {
    HeightValue h = height_n({pt(3, 2), P1Point::infinity(), pt(2)});
    CHECK(h.exact());
    CHECK(h.exact_log_arg() == 6);  // log 3 + 0 + log 2
    CHECK_THROWS_AS(height_n({}), Error);
}

TEST_CASE("height expansion constant") {
    // Pure powers are exactly neutral.
    RealInterval c = height_expansion_constant(P({0, 0, 1}));
    CHECK(c.is_point());
    CHECK(c.lo().is_zero());

    // x^2 + 1: ascent log 3, descent log 4; the max is log 4.
    CHECK(interval_is(height_expansion_constant(P({1, 0, 1})), Rational(4)));

    // x^2 - 2: ascent log 6, descent log 16.
    CHECK(interval_is(height_expansion_constant(P({-2, 0, 1})), Rational(16)));

    CHECK_THROWS_AS(height_expansion_constant(P({0, 1})), Error);
}

TEST_CASE("upper and lower form constants") {
    MultiPoly line = parse_multipoly("x2 - x1 - 1", 2);
    CHECK(interval_is(lemma32_upper_constant(line), Rational(3)));
    CHECK(interval_is(lemma32_upper_constant(parse_multipoly("2*x1*x2", 2)), Rational(2)));
    CHECK(interval_is(lemma32_upper_constant(parse_multipoly("x1", 2)), Rational(1)));
    // Denominators count through the finite places: |1/2| at p = 2 is 2.
    CHECK(interval_is(lemma32_upper_constant(parse_multipoly("x1/2", 2)), Rational(2)));

    // Coordinate form: no lower layers, C2 = 0.
    CHECK(interval_is(lemma32_lower_constant(parse_multipoly("x2", 2), 1), Rational(1)));
    // The line: top layer constant, lower layer -x1 - 1 contributes log 2 + log 2.
    CHECK(interval_is(lemma32_lower_constant(line, 1), Rational(4)));
    CHECK_THROWS_AS(lemma32_lower_constant(parse_multipoly("x1", 2), 1), Error);

    // Assembled constants for the line under x^2 + 1 (frozen end to end):
    // C2 = log 4, C4 = log 4, C5 = log 4 + 3 log 4 = 8 log 2.
    InequalityConstants k = inequality_constants(line, P({1, 0, 1}), 1);
    CHECK(interval_is(k.c2, Rational(4)));
    CHECK(interval_is(k.c4, Rational(4)));
    CHECK(interval_is(k.c5, Rational(256)));
    CHECK(k.provenance.size() == 4);
}

TEST_CASE("canonical heights: exact special cases") {
    // Fixed point of x^2 - 2.
    HeightValue h = canonical_height(P({-2, 0, 1}), pt(2));
    CHECK(h.exact());
    CHECK(h.exact_log_arg() == 1);

    // Preperiodic: 0 -> -2 -> 2 -> 2 under x^2 - 2.
    CHECK(canonical_height(P({-2, 0, 1}), pt(0)).exact());

    // Pure power map: canonical equals Weil exactly.
    HeightValue hp = canonical_height(P({0, 0, 1}), pt(3));
    CHECK(hp.exact());
    CHECK(hp.exact_log_arg() == 3);

    // Infinity is the exceptional fixed point.
    CHECK(canonical_height(P({1, 0, 1}), P1Point::infinity()).is_infinite());

    CHECK_THROWS_AS(canonical_height(P({0, 1}), pt(2)), Error);
    CHECK_THROWS_AS(canonical_height(P({1, 0, 1}), pt(2), 0.0), Error);
}

TEST_CASE("canonical heights: functional equation") {
    RPoly f = P({1, 0, 1});  // x^2 + 1
    // h(f(a)) = 2 h(a) within certified radii; a = 0 maps to 1, 1 to 2, ...
    for (long a : {0L, 1L, 3L}) {
        HeightValue ha = canonical_height(f, pt(a), 1e-10);
        HeightValue hfa = canonical_height(f, pt(f.eval(Rational(a)).get_num().get_si()), 1e-10);
        CHECK(std::abs(mid(hfa) - 2 * mid(ha)) <= rad(hfa) + 2 * rad(ha) + 1e-9);
        CHECK(mid(ha) > 0.1);  // genuinely wandering points
    }

    // Rational point with a denominator exercises the good finite places.
    HeightValue h_half = canonical_height(f, pt(1, 2), 1e-10);
    HeightValue h_img = canonical_height(f, pt(5, 4), 1e-10);
    CHECK(std::abs(mid(h_img) - 2 * mid(h_half)) <= rad(h_img) + 2 * rad(h_half) + 1e-9);

    // Iterating the map squares the degree but keeps the limit.
    RPoly f2 = poly_iterate(f, 2);
    HeightValue via_f = canonical_height(f, pt(1, 3), 1e-10);
    HeightValue via_f2 = canonical_height(f2, pt(1, 3), 1e-10);
    CHECK(std::abs(mid(via_f) - mid(via_f2)) <= rad(via_f) + rad(via_f2) + 1e-9);
}

TEST_CASE("canonical heights: proximity to the Weil height") {
    // |hhat - h| <= C_f/(d-1) audited over mixed test points.
    for (const RPoly& f : {P({1, 0, 1}), P({-2, 0, 1}), P({0, 1, 0, 1})}) {
        RealInterval c4 =
            height_expansion_constant(f) / RealInterval::exact(f.degree() - 1);
        double allow = c4.hi().to_double();
        for (long num : {0L, 1L, -1L, 2L, 7L, -5L}) {
            for (long den : {1L, 2L, 3L}) {
                P1Point a = pt(num, den);
                double gap = std::abs(mid(canonical_height(f, a, 1e-9)) - mid(weil_height(a)));
                CHECK(gap <= allow + 1e-6);
            }
        }
    }
}

TEST_CASE("canonical heights: defective finite places") {
    // f = x^2/2: the prime 2 escapes immediately from integral points.
    RPoly half_square({Rational(0), Rational(0), Rational(1, 2)});
    HeightValue h3 = canonical_height(half_square, pt(3), 1e-10);
    // hhat(3) = lim log|x_m|/2^m with x_m = 2 (3/2)^(2^m): equals log(3/2) + log 2 = log 3.
    CHECK(mid(h3) == doctest::Approx(std::log(3.0)).epsilon(1e-9));

    // f = 2x^2: descending valuations at 2 still escape exactly.
    RPoly twice_square = P({0, 0, 2});
    HeightValue hq = canonical_height(twice_square, pt(5), 1e-10);
    CHECK(mid(hq) == doctest::Approx(std::log(10.0)).epsilon(1e-9));

    // Functional equation survives the bad prime.
    HeightValue h6 = canonical_height(half_square, pt(9, 2), 1e-10);
    CHECK(std::abs(mid(h6) - 2 * mid(h3)) <= rad(h6) + 2 * rad(h3) + 1e-9);

    // A place that neither escapes nor lands integral raises the typed error.
    RPoly stubborn({Rational(1), Rational(-1, 2), Rational(0), Rational(2)});
    try {
        canonical_height(stubborn, pt(3, 2), 1e-10);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::iterate_too_large);
        CHECK(std::string(e.what()).find("best height estimate") != std::string::npos);
    }
}

TEST_CASE("canonical heights of algebraic points") {
    RPoly f = P({-2, 0, 1});  // x^2 - 2
    // sqrt 2 is preperiodic: sqrt2 -> 0 -> -2 -> 2 -> 2.
    HeightValue h = canonical_height(f, P1Point::finite(named_root(P({-2, 0, 1}), 1)), 1e-10);
    CHECK(h.interval().hi().to_double() < 1e-9);

    // Golden ratio is fixed by x^2 - 1... (phi^2 - 1 = phi).
    HeightValue hg = canonical_height(P({-1, 0, 1}),
                                      P1Point::finite(named_root(P({-1, -1, 1}), 1)), 1e-10);
    CHECK(hg.interval().hi().to_double() < 1e-9);

    // Cross-check the two code paths: f(sqrt 2) = 3 under x^2 + 1, so
    // hhat(3) = 2 hhat(sqrt 2).
    RPoly g = P({1, 0, 1});
    HeightValue hs = canonical_height(g, P1Point::finite(named_root(P({-2, 0, 1}), 1)), 1e-10);
    HeightValue h3 = canonical_height(g, pt(3), 1e-10);
    CHECK(std::abs(mid(h3) - 2 * mid(hs)) <= rad(h3) + 2 * rad(hs) + 1e-9);

    // Non-monic maps refuse irrational points with a typed error.
    RPoly half_square({Rational(0), Rational(0), Rational(1, 2)});
    try {
        canonical_height(half_square, P1Point::finite(named_root(P({-2, 0, 1}), 1)));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unsupported);
    }
}
