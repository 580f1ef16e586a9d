#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "dynaheight/bounds.hpp"
#include "dynaheight/errors.hpp"
#include "dynaheight/io.hpp"

using namespace dyna;

namespace {

RPoly P(const std::string& text) { return parse_poly(text); }

AmbientVariety ambient(long n, std::vector<std::string> eqs, long dim_hint) {
    AmbientVariety X;
    X.n = n;
    for (const auto& e : eqs) X.equations.push_back(parse_multipoly(e, static_cast<int>(n)));
    X.dim_hint = dim_hint;
    return X;
}

Signature sig(long n, std::vector<std::size_t> jv, std::vector<std::vector<std::size_t>> chains) {
    return Signature{n, std::move(jv), std::move(chains)};
}

P1Point pt(long num, long den = 1) { return P1Point::from_rational(make_rational(num, den)); }

// The interval encloses log(log_arg) tightly.
bool interval_is(const RealInterval& v, const Rational& log_arg) {
    RealInterval expect = (log_arg == 1) ? RealInterval::zero() : RealInterval::log_of(log_arg);
    return v.intersects(expect) && v.radius().to_double() < 1e-12;
}

// A fixed point of x^2 + 1 (root of x^2 - x + 1).
AlgebraicNumber fixed_point_of_square_plus_one() {
    const auto roots = isolate_roots(P("x^2 - x + 1"));
    REQUIRE(roots.size() == 2);
    return roots[0];
}

bool has_point(const IntersectionSample& s, const std::vector<P1Point>& pt) {
    return std::find(s.points.begin(), s.points.end(), pt) != s.points.end();
}

} // namespace

TEST_CASE("certificate for the line under x^2+1: full constant audit") {
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^2 + 1");
    const HeightCertificate cert = certificate(line, sig(2, {}, {{0, 1}}), f);

    // One chain, terminal x2, dominated set Gamma = {x1}.
    CHECK(cert.gamma == std::vector<std::size_t>{0});
    CHECK(cert.gamma_k.size() == 1);
    CHECK(cert.gamma_k[0] == std::vector<std::size_t>{0, 1});
    CHECK(cert.projections.size() == 1);
    CHECK(cert.constants_used.size() == 1);

    // The comparison coefficient of x2 - x1 - 1 against pivot x2 is 1, so
    // c2 = 2 n^2 c3 = 8 and M = n^2 c3 + 1 = 5.
    CHECK(cert.c3 == 1);
    CHECK(cert.c2_integer == 8);
    CHECK(cert.M == 5);
    CHECK(cert.M > 2 * 2 * cert.c3);

    // c4 = C5 = log 256 and the height conversion term is log 4, hence
    // c1 = 2n c4 + c4/c3 + n C4 = log(2^44).
    CHECK(interval_is(cert.c4, Rational(256)));
    CHECK(interval_is(cert.conversion, Rational(4)));
    CHECK(interval_is(cert.c1, Rational(17592186044416L)));  // 2^44
    CHECK(interval_is(cert.c2, Rational(1)) == false);
    CHECK(cert.c2.midpoint().to_double() == doctest::Approx(8.0));

    // Positivity and bookkeeping.
    CHECK(cert.c1.lo().sign() > 0);
    CHECK(cert.c2.lo().sign() > 0);
    CHECK(!cert.anomalous_gate_failure);
    CHECK(!cert.provenance.empty());
    CHECK(cert.str().find("c1") != std::string::npos);
    CHECK(cert.X_id.find("x2") != std::string::npos);
}

TEST_CASE("certificate: multi-chain signature on a complementary curve") {
    // dim X = 1 in n = 3, so a two-chain signature (dim V = 2) is complementary.
    const AmbientVariety X = ambient(3, {"x2 - x1 - 1", "x3 - x1 - x2"}, 1);
    const RPoly f = P("x^2 + 1");
    const Signature s = sig(3, {}, {{0}, {1, 2}});
    REQUIRE(s.codim() == 1);  // codim of V must equal dim X... (3 - 2 = 1)

    const HeightCertificate cert = certificate(X, s, f);
    CHECK(cert.gamma == std::vector<std::size_t>{1});  // non-terminals
    CHECK(cert.gamma_k.size() == 2);
    CHECK(cert.gamma_k[0] == std::vector<std::size_t>{0, 1});
    CHECK(cert.gamma_k[1] == std::vector<std::size_t>{1, 2});
    CHECK(cert.c3 == 1);
    CHECK(cert.c2_integer == 2 * 3 * 3 * 1);
    CHECK(cert.M == 3 * 3 * 1 + 1);
    CHECK(cert.c1.lo().sign() > 0);
    CHECK(cert.projections.size() == 2);
}

TEST_CASE("certificate: hypersurface with one full chain") {
    const AmbientVariety X = ambient(3, {"x3 - x1 - x2"}, 2);
    const HeightCertificate cert = certificate(X, sig(3, {}, {{0, 1, 2}}), P("x^2 + 1"));
    CHECK(cert.c3 == 1);
    CHECK(cert.c2_integer == 18);
    CHECK(cert.M == 10);
    CHECK(cert.c1.lo().sign() > 0);
}

TEST_CASE("certificate: degenerate and invalid inputs") {
    const RPoly f = P("x^2 + 1");
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);

    // Non-complementary signature.
    CHECK_THROWS_WITH_AS(certificate(line, sig(2, {}, {{0}, {1}}), f),
                         doctest::Contains("complementary"), Error);

    // A projection missing its chain terminal empties X^{oa}.
    const AmbientVariety wall = ambient(2, {"x1 - 5"}, 1);
    CHECK_THROWS_WITH_AS(certificate(wall, sig(2, {}, {{0, 1}}), f),
                         doctest::Contains("X^{oa}"), Error);

    // The diagonal is itself special.
    const AmbientVariety diag = ambient(2, {"x2 - x1"}, 1);
    CHECK_THROWS_WITH_AS(certificate(diag, sig(2, {}, {{0, 1}}), f),
                         doctest::Contains("X^{oa} is empty"), Error);

    CHECK_THROWS_AS(certificate(line, sig(2, {}, {{0, 1}}), P("x + 1")), Error);
    CHECK_THROWS_AS(certificate(line, sig(3, {}, {{0, 1, 2}}), f), Error);
}

TEST_CASE("sample_intersection: line meets the graph of f") {
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^2 + 1");
    const PeriodicSubvariety V = build_periodic(sig(2, {}, {{0, 1}}), {}, {{f}}, f);

    const IntersectionSample s = sample_intersection(line, V, 10);
    // f(x) = x + 1 reduces to x^2 - x = 0: exactly (0,1) and (1,2).
    REQUIRE(s.points.size() == 2);
    CHECK(has_point(s, {pt(0), pt(1)}));
    CHECK(has_point(s, {pt(1), pt(2)}));
    REQUIRE(s.heights.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(s.heights[i].exact());
        const bool zero_one = s.points[i] == std::vector<P1Point>{pt(0), pt(1)};
        CHECK(s.heights[i].exact_log_arg() == (zero_one ? 1 : 2));  // heights 0 and log 2
    }

    // Budget is honored.
    CHECK(sample_intersection(line, V, 1).points.size() == 1);
}

TEST_CASE("sample_intersection: line meets the graph of f^2") {
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^2 + 1");
    const RPoly f2 = poly_iterate(f, 2);
    const PeriodicSubvariety V = build_periodic(sig(2, {}, {{0, 1}}), {}, {{f2}}, f);

    const IntersectionSample s = sample_intersection(line, V, 10);
    // x^4 + 2x^2 - x + 1 = 0 has four simple roots.
    REQUIRE(s.points.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(on_variety(line, s.points[i]));
        CHECK(membership(V, s.points[i]));
        CHECK(!s.heights[i].is_infinite());
    }
    // The four first coordinates are exactly the roots of that quartic.
    const auto roots = isolate_roots(P("x^4 + 2*x^2 - x + 1"));
    REQUIRE(roots.size() == 4);
    for (const auto& r : roots) {
        bool found = false;
        for (const auto& p : s.points) found = found || p[0] == P1Point::finite(r);
        CHECK(found);
    }
}

TEST_CASE("sample_intersection: diagonal meets a pinned fixed point") {
    const AmbientVariety diag = ambient(2, {"x2 - x1"}, 1);
    const RPoly f = P("x^2 + 1");
    const AlgebraicNumber zeta = fixed_point_of_square_plus_one();
    const PeriodicSubvariety V =
        build_periodic(sig(2, {0}, {{1}}), {P1Point::finite(zeta)}, {{}}, f);
    CHECK(V.D.infinite);

    const IntersectionSample s = sample_intersection(diag, V, 5);
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0][0] == P1Point::finite(zeta));
    CHECK(s.points[0][1] == P1Point::finite(zeta));
}

TEST_CASE("sample_intersection: error paths") {
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^2 + 1");

    // Non-complementary dimensions.
    const PeriodicSubvariety full = build_periodic(sig(2, {}, {{0}, {1}}), {}, {{}, {}}, f);
    CHECK_THROWS_WITH_AS(sample_intersection(line, full, 5),
                         doctest::Contains("non-complementary"), Error);

    // A positive-dimensional fiber: X vanishes identically on x1 = zeta.
    const AlgebraicNumber zeta = fixed_point_of_square_plus_one();
    const AmbientVariety minpoly_wall = ambient(2, {"x1^2 - x1 + 1"}, 1);
    const PeriodicSubvariety pin =
        build_periodic(sig(2, {0}, {{1}}), {P1Point::finite(zeta)}, {{}}, f);
    CHECK_THROWS_WITH_AS(sample_intersection(minpoly_wall, pin, 5),
                         doctest::Contains("free (positive-dimensional intersection)"), Error);

    // Two free heads coupled by one equation: honest refusal.
    const AmbientVariety coupled = ambient(4, {"x1*x2 - x3", "x4 - x3"}, 2);
    const P1Point zp = P1Point::finite(zeta);
    const PeriodicSubvariety two_heads =
        build_periodic(sig(4, {2, 3}, {{0}, {1}}), {zp, zp}, {{}, {}}, f);
    CHECK_THROWS_WITH_AS(sample_intersection(coupled, two_heads, 5),
                         doctest::Contains("couples several chain heads"), Error);

    // A coordinate pinned at infinity empties the affine part.
    PeriodicSubvariety at_inf = pin;
    at_inf.constants[0] = PeriodicConstant{P1Point::infinity(), 1};
    CHECK(sample_intersection(line, at_inf, 5).points.empty());

    CHECK_THROWS_AS(sample_intersection(line, pin, 0), Error);
}

TEST_CASE("verify_bounded: the line stays below its certificate") {
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^2 + 1");
    const BoundednessReport rep = verify_bounded(line, f, 1, 16, 64);

    CHECK(!rep.vacuous);
    CHECK(rep.passed());
    CHECK(rep.status == "bounded");
    CHECK(rep.certificates.size() == 4);  // signatures of dim 1 in n = 2
    CHECK(!rep.families.empty());

    bool beyond = false, sampled = false, infinite_D = false;
    for (const auto& fam : rep.families) {
        if (fam.beyond_threshold) beyond = true;
        if (fam.points_sampled > 0) sampled = true;
        if (fam.D.infinite) infinite_D = true;
        CHECK(fam.max_height <= fam.bound + 1e-9);
        CHECK(fam.violations.empty());
    }
    CHECK(beyond);
    CHECK(sampled);
    CHECK(infinite_D);
}

TEST_CASE("verify_bounded: heights shrink as the generator degree grows") {
    // On the line x2 = x1 + 1 with V: x2 = f^l(x1), every sampled head a1
    // satisfies (2^l - 1) hhat(a1) <= C5 = log 256; the largest hhat per
    // level is nonincreasing in l.
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^2 + 1");
    const double C5 = std::log(256.0);
    double prev_max = 1e100;
    for (long l = 1; l <= 4; ++l) {
        const RPoly fl = poly_iterate(f, l);
        const PeriodicSubvariety V = build_periodic(sig(2, {}, {{0, 1}}), {}, {{fl}}, f);
        const IntersectionSample s = sample_intersection(line, V, 64);
        REQUIRE(!s.points.empty());
        CHECK(static_cast<long>(s.points.size()) == (1L << l));
        double level_max = 0.0;
        const double scale = static_cast<double>((1L << l) - 1);
        for (const auto& p : s.points) {
            const HeightValue hh = canonical_height(f, p[0]);
            const double lo = hh.interval().lo().to_double();
            const double hi = hh.interval().hi().to_double();
            CHECK(scale * lo <= C5 + 1e-9);
            level_max = std::max(level_max, hi);
        }
        CHECK(level_max <= prev_max + 1e-12);
        prev_max = level_max;
    }
}

TEST_CASE("verify_bounded: pinned-constant family obeys the direct bound") {
    // V = zeta x P^1 has D(V) = +infinity; on the line the sole intersection
    // point satisfies hhat(a2) <= c3 hhat(a1) + C5 directly.
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^2 + 1");
    const AlgebraicNumber zeta = fixed_point_of_square_plus_one();
    const PeriodicSubvariety V =
        build_periodic(sig(2, {0}, {{1}}), {P1Point::finite(zeta)}, {{}}, f);

    const IntersectionSample s = sample_intersection(line, V, 4);
    REQUIRE(s.points.size() == 1);
    const double h1 = canonical_height(f, s.points[0][0]).interval().hi().to_double();
    const double h2 = canonical_height(f, s.points[0][1]).interval().lo().to_double();
    CHECK(h2 <= 1.0 * h1 + std::log(256.0) + 1e-9);
}

TEST_CASE("verify_bounded: special ambient variety is a vacuous pass") {
    const AmbientVariety diag = ambient(2, {"x2 - x1"}, 1);
    const BoundednessReport rep = verify_bounded(diag, P("x^2 + 1"), 1, 4, 8);
    CHECK(rep.vacuous);
    CHECK(rep.passed());
    CHECK(rep.status.find("X^{oa}") != std::string::npos);
    CHECK(rep.families.empty());
}

TEST_CASE("verify_bounded: random-style lines regenerate certificates") {
    const RPoly f = P("x^2 + 1");
    for (const char* eq : {"x2 - 3*x1 - 7/2", "x2 + 2*x1 - 5", "2*x2 - x1 - 1/3"}) {
        const AmbientVariety X = ambient(2, {eq}, 1);
        const BoundednessReport rep = verify_bounded(X, f, 1, 4, 16);
        CHECK(!rep.vacuous);
        CHECK(rep.passed());
    }
}

TEST_CASE("verify_bounded: argument validation") {
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^2 + 1");
    CHECK_THROWS_AS(verify_bounded(line, f, 2, 4, 8), Error);   // codim != dim X
    CHECK_THROWS_AS(verify_bounded(line, f, 1, 0, 8), Error);   // bad degree cap
    CHECK_THROWS_AS(verify_bounded(line, f, 1, 4, 0), Error);   // bad budget
    CHECK_THROWS_AS(verify_bounded(line, P("x"), 1, 4, 8), Error);
}

TEST_CASE("structure_degree_bound: the line under x^2+1") {
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^2 + 1");
    const StructureBound sb = structure_degree_bound(line, f);

    CHECK(sb.status == "ok");
    CHECK(sb.c5 == 1);
    CHECK(sb.M == 5);
    CHECK(sb.M > 2 * 2 * sb.c5);

    // Commuters of degree <= 5 are id, f, f^2; each yields the two ordered
    // graphs x_j = g(x_k), plus 2n constant/infinity coordinate families.
    long graphs = 0, consts = 0, infs = 0;
    std::set<std::string> seen;
    for (const auto& fam : sb.collection) {
        switch (fam.kind) {
            case StructureFamily::Kind::graph: {
                ++graphs;
                CHECK(fam.j != fam.k);
                CHECK(fam.witness_k >= 1);
                seen.insert(std::to_string(fam.j) + "|" + std::to_string(fam.k) + "|" +
                            poly_to_string(rational_poly(fam.g)));
                break;
            }
            case StructureFamily::Kind::constant_family: ++consts; break;
            case StructureFamily::Kind::infinity_family: ++infs; break;
        }
        CHECK(!fam.str().empty());
    }
    CHECK(graphs == 6);
    CHECK(consts == 2);
    CHECK(infs == 2);
    for (long l = 0; l <= 2; ++l) {
        const std::string g = poly_to_string(poly_iterate(f, l));
        CHECK(seen.count("0|1|" + g) == 1);
        CHECK(seen.count("1|0|" + g) == 1);
    }

    // The collection depends only on the constants, not the sampling budget.
    const StructureBound sb2 = structure_degree_bound(line, f, 24);
    CHECK(sb2.M == sb.M);
    CHECK(sb2.c5 == sb.c5);
    REQUIRE(sb2.collection.size() == sb.collection.size());
    for (std::size_t i = 0; i < sb.collection.size(); ++i) {
        CHECK(sb2.collection[i].kind == sb.collection[i].kind);
        CHECK(sb2.collection[i].j == sb.collection[i].j);
        CHECK(sb2.collection[i].k == sb.collection[i].k);
        CHECK(sb2.collection[i].g == sb.collection[i].g);
    }
}

TEST_CASE("structure_degree_bound: odd symmetry doubles the graph list") {
    const AmbientVariety line = ambient(2, {"x2 - x1 - 1"}, 1);
    const RPoly f = P("x^3 + x");
    const StructureBound sb = structure_degree_bound(line, f);
    CHECK(sb.M == 5);

    // Commuters of degree <= 5: x, -x, f, -f.
    bool minus_f = false, minus_x = false;
    long graphs = 0;
    for (const auto& fam : sb.collection) {
        if (fam.kind != StructureFamily::Kind::graph) continue;
        ++graphs;
        const RPoly g = rational_poly(fam.g);
        if (g == -f) minus_f = true;
        if (g == -RPoly::identity()) minus_x = true;
    }
    CHECK(graphs == 8);
    CHECK(minus_f);
    CHECK(minus_x);
}

TEST_CASE("structure_degree_bound: special ambient variety reports empty") {
    const AmbientVariety diag = ambient(2, {"x2 - x1"}, 1);
    const StructureBound sb = structure_degree_bound(diag, P("x^2 + 1"));
    CHECK(sb.status.find("X^{oa}") != std::string::npos);
    CHECK(sb.M == 0);
    CHECK(sb.collection.empty());

    CHECK_THROWS_AS(structure_degree_bound(diag, P("x")), Error);
}

TEST_CASE("reproduce_example 2: surface growth table") {
    const RPoly f = P("x^2 + 1");
    const GrowthTable gt = reproduce_example(2, f, 1, 5);

    CHECK(gt.example_id == 2);
    CHECK(gt.X.n == 4);
    CHECK(gt.X.equations.size() == 2);
    REQUIRE(gt.rows.size() == 5);
    CHECK(interval_is(gt.expansion, Rational(4)));

    double prev_total = -1.0, prev_dom = 0.0;
    const double Cf = std::log(4.0);
    for (std::size_t i = 0; i < gt.rows.size(); ++i) {
        const GrowthRow& row = gt.rows[i];
        CHECK(row.m == static_cast<long>(i) + 1);
        REQUIRE(row.point.size() == 4);
        CHECK(row.point[2] == row.point[3]);
        CHECK(on_variety(gt.X, row.point));

        const double total = row.total.value().to_double();
        CHECK(total > prev_total);  // strictly increasing heights
        const double dom = row.dominant.value().to_double();
        if (i > 0) {
            // One more f-step multiplies the dominant height by d up to C_f.
            CHECK(dom >= 2.0 * prev_dom - Cf - 1e-9);
        }
        prev_total = total;
        prev_dom = dom;
    }
    // The growth ratio approaches d = 2.
    const double last = gt.rows[4].dominant.value().to_double();
    const double before = gt.rows[3].dominant.value().to_double();
    CHECK(std::abs(last / before - 2.0) < 0.3);
}

TEST_CASE("reproduce_example 1: five-coordinate growth table") {
    const RPoly f = P("x^2 + 1");
    const GrowthTable gt = reproduce_example(1, f, 1, 4);
    CHECK(gt.X.n == 5);
    REQUIRE(gt.rows.size() == 4);
    double prev = -1.0;
    for (const GrowthRow& row : gt.rows) {
        REQUIRE(row.point.size() == 5);
        CHECK(row.point[3] == row.point[4]);
        CHECK(on_variety(gt.X, row.point));
        const double total = row.total.value().to_double();
        CHECK(total > prev);
        prev = total;
    }
}

TEST_CASE("reproduce_example: rejection paths") {
    const RPoly f = P("x^2 + 1");

    // Preperiodic seed: a fixed point has canonical height zero.
    const AlgebraicNumber zeta = fixed_point_of_square_plus_one();
    CHECK_THROWS_WITH_AS(reproduce_example(2, f, 1, 3, P1Point::finite(zeta)),
                         doctest::Contains("preperiodic"), Error);

    // Non-disintegrated polynomials are refused with their class named.
    CHECK_THROWS_WITH_AS(reproduce_example(2, P("x^2 - 2"), 1, 3),
                         doctest::Contains("Chebyshev"), Error);
    CHECK_THROWS_WITH_AS(reproduce_example(2, P("x^2"), 1, 3),
                         doctest::Contains("power map"), Error);

    CHECK_THROWS_AS(reproduce_example(3, f, 1, 2), Error);
    CHECK_THROWS_AS(reproduce_example(2, f, 3, 2), Error);
    CHECK_THROWS_AS(reproduce_example(2, f, 0, 2), Error);
    CHECK_THROWS_AS(reproduce_example(2, f, 1, 2, P1Point::infinity()), Error);
}
