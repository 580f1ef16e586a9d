#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynaheight/io.hpp"

using namespace dyna;

namespace {
RPoly P(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long x : coeffs) c.emplace_back(x);
    return RPoly(std::move(c));
}
} // namespace

TEST_CASE("univariate parsing") {
    CHECK(parse_poly("x^4 + 2*x^2 + 2") == P({2, 0, 2, 0, 1}));
    CHECK(parse_poly("x^4+2x^2+2") == P({2, 0, 2, 0, 1}));  // juxtaposition
    CHECK(parse_poly("-x^3 - x") == P({0, -1, 0, -1}));
    CHECK(parse_poly("x") == RPoly::identity());
    CHECK(parse_poly("7") == RPoly::constant(Rational(7)));
    CHECK(parse_poly("x/2 - 1/3") == RPoly({Rational(-1, 3), Rational(1, 2)}));
    CHECK(parse_poly("(x - 1)*(x + 1)") == P({-1, 0, 1}));
    CHECK(parse_poly("2(x+1)") == P({2, 2}));
    CHECK(parse_poly("x1 + 1") == P({1, 1}));  // x1 allowed when nvars == 1
    CHECK(parse_poly("3 - 2^3") == RPoly::constant(Rational(-5)));
}

TEST_CASE("parse errors carry a column") {
    auto col_of = [](const std::string& text) -> std::string {
        try {
            parse_poly(text);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::parse);
            return e.what();
        }
        return "";
    };
    CHECK(col_of("x +").find("column") != std::string::npos);
    CHECK(col_of("x $ 1").find("column") != std::string::npos);
    CHECK(col_of("1/x").find("constant") != std::string::npos);  // variable division
    CHECK(col_of("x/0") != "");
    CHECK(col_of("x^-2") != "");
    CHECK(col_of("") != "");

    // Out-of-range variable, multivariate.
    try {
        parse_multipoly("x1 + x3", 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
    }
    // Bare x is ambiguous with several variables.
    try {
        parse_multipoly("x + 1", 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
    }
}

TEST_CASE("multivariate parsing and printing") {
    MultiPoly f = parse_multipoly("x2 - x1 - 1", 2);
    CHECK(f.var_count() == 2);
    CHECK(f.term_count() == 3);
    CHECK(f.eval({Rational(1), Rational(2)}) == Rational(0));

    MultiPoly g = parse_multipoly("2*x1*x2", 2);
    CHECK(g.term_count() == 1);
    CHECK(g.eval({Rational(3), Rational(5)}) == Rational(30));

    // Round trips through the printer.
    for (const char* text : {"x2 - x1 - 1", "2*x1*x2", "x1^2*x2 + x1/2 - 5"}) {
        MultiPoly p = parse_multipoly(text, 2);
        CHECK(parse_multipoly(multipoly_to_string(p), 2) == p);
    }
    for (const char* text : {"x^4 + 2*x^2 + 2", "-x^3 - x", "x/2 - 1/3", "0"}) {
        RPoly p = parse_poly(text);
        CHECK(parse_poly(poly_to_string(p)) == p);
    }
}

TEST_CASE("algebraic numbers serialize with a rounded-up radius") {
    std::vector<AlgebraicNumber> roots = isolate_roots(P({-2, 0, 1}));  // x^2 - 2
    const AlgebraicNumber& r = roots[1].sign() > 0 ? roots[1] : roots[0];
    nlohmann::json j = algebraic_to_json(r);
    CHECK(j.contains("minpoly"));
    CHECK(j.contains("approx"));
    CHECK(j.contains("radius"));
    CHECK(j["approx"].size() == 2);
    double re = j["approx"][0].get<double>();
    double rad = j["radius"].get<double>();
    CHECK(re == doctest::Approx(1.41421356).epsilon(1e-6));
    CHECK(j["approx"][1].get<double>() == 0.0);
    CHECK(rad >= 0.0);
    CHECK(rad < 1e-9);
    CHECK(j["minpoly"].get<std::string>() == poly_to_string(P({-2, 0, 1})));
}
