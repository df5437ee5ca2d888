#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qev/expr.hpp"

using namespace qev;

namespace {
const std::vector<std::string> xy{"x", "y"};
const std::set<std::string> no_params;

double fd1(const Expr& e, int i, std::vector<double> p, double h = 1e-6) {
    std::vector<double> a = p, b = p;
    a[i] += h;
    b[i] -= h;
    return (e.eval(a) - e.eval(b)) / (2 * h);
}
}  // namespace

TEST_CASE("parser handles precedence and associativity") {
    CHECK(parse_expr("1 + 2*3", xy, no_params).eval({0, 0}) == 7);
    CHECK(parse_expr("2^3^2", xy, no_params).eval({0, 0}) == 512);  // right assoc
    CHECK(parse_expr("8 - 3 - 2", xy, no_params).eval({0, 0}) == 3);
    CHECK(parse_expr("8 / 4 / 2", xy, no_params).eval({0, 0}) == 1);
    CHECK(parse_expr("-2^2", xy, no_params).eval({0, 0}) == -4);
    CHECK(parse_expr("(-2)^2", xy, no_params).eval({0, 0}) == 4);
    CHECK(parse_expr("2^-2", xy, no_params).eval({0, 0}) == 0.25);
    CHECK(parse_expr("x*y + sin(x)", xy, no_params).eval({2, 3}) ==
          doctest::Approx(6 + std::sin(2.0)));
}

TEST_CASE("parser reports undeclared identifiers with position") {
    CHECK_THROWS_WITH_AS(parse_expr("x + b", xy, no_params),
                         doctest::Contains("undeclared parameter 'b'"), ParseError);
    CHECK_THROWS_AS(parse_expr("frob(x)", xy, no_params), ParseError);
    CHECK_THROWS_AS(parse_expr("x + ", xy, no_params), ParseError);
    CHECK_THROWS_AS(parse_expr("(x", xy, no_params), ParseError);
    CHECK_THROWS_AS(parse_expr("x @ y", xy, no_params), ParseError);
}

TEST_CASE("parameters bind and missing ones throw") {
    std::set<std::string> ps{"a"};
    Expr e = parse_expr("a*x + 1", xy, ps);
    CHECK_THROWS_AS(e.eval({2, 0}, nullptr), Error);
    ParamMap pm{{"a", 3.0}};
    CHECK(e.eval({2, 0}, &pm) == 7);
    CHECK(e.bind(pm).eval({2, 0}) == 7);
    CHECK_THROWS_AS(e.bind({}), Error);
}

TEST_CASE("symbolic derivatives match finite differences") {
    std::set<std::string> ps;
    std::vector<const char*> cases = {
        "sin(x)*cos(y) + x^3",  "exp(x*y) / (1 + y^2)", "sqrt(1 + x^2) * log(2 + y)",
        "sinh(x) + cosh(x*y)",  "x^-2 + y^(1/3)",       "(x - y)/(x + y + 3)",
        "2^(x)",
    };
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.2, 1.2);
    for (const char* s : cases) {
        Expr e = parse_expr(s, xy, ps);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> p{u(rng), u(rng)};
            for (int i = 0; i < 2; ++i) {
                const double sym = e.diff(i).eval(p);
                const double num = fd1(e, i, p);
                CHECK(sym == doctest::Approx(num).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("third derivatives are exact for polynomials") {
    Expr e = parse_expr("x^5 + 2*x^3*y - y^4", xy, no_params);
    Expr d3 = e.diff(0).diff(0).diff(0);  // 60 x^2 + 12 y
    CHECK(d3.eval({2.0, 3.0}) == doctest::Approx(60 * 4 + 12 * 3));
}

TEST_CASE("canonical print round-trips and is stable") {
    std::vector<const char*> cases = {"x*(y + 1)", "-x^2", "(x + y)/(x - y)",
                                      "sqrt(x)/2 - sin(x*y)", "1 - x^2/3"};
    for (const char* s : cases) {
        Expr e = parse_expr(s, xy, no_params);
        std::string printed = e.str(&xy);
        Expr e2 = parse_expr(printed, xy, no_params);
        CHECK(e2.str(&xy) == printed);
        std::vector<double> p{0.7, 0.3};
        CHECK(e.eval(p) == doctest::Approx(e2.eval(p)).epsilon(1e-15));
    }
}

TEST_CASE("compiled tapes agree with tree evaluation") {
    std::set<std::string> ps;
    Expr e = parse_expr("sin(x)^2 * exp(-y) + x/(3 + y) + x^4", xy, ps);
    CompiledExpr ce(e);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> p{u(rng), u(rng)};
        CHECK(ce(p) == doctest::Approx(e.eval(p)).epsilon(1e-15));
    }
}

TEST_CASE("identical text parses to an identical expression") {
    const char* text = "1 - 0.1/x - x^2/3 + sin(y)";
    Expr a = parse_expr(text, xy, no_params);
    Expr b = parse_expr(text, xy, no_params);
    CHECK(a.str() == b.str());
}

TEST_CASE("coordinate shift renumbers") {
    Expr e = parse_expr("x + 2*y", xy, no_params);
    Expr s = e.shift_coords(2);
    CHECK(s.eval({0, 0, 3, 4}) == 11);
}
