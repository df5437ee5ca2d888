#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qev/geometry.hpp"
#include "qev/yamabe.hpp"

using namespace qev;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(8, -1.0, 1.0, x, w);
    double s0 = 0, s2 = 0, s14 = 0;
    for (int i = 0; i < 8; ++i) {
        s0 += w[i];
        s2 += w[i] * x[i] * x[i];
        s14 += w[i] * std::pow(x[i], 14);
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2 == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(s14 == doctest::Approx(2.0 / 15).epsilon(1e-13));  // degree 14 < 2*8
    for (double wi : w) CHECK(wi > 0);
}

TEST_CASE("volumes of the closed catalog members") {
    auto t2 = get_geometry("flat_torus", {{"n", 2}});
    CHECK(volume(make_quadrature(t2.g, 24)) == doctest::Approx(4 * kPi * kPi).epsilon(1e-12));

    auto s2 = get_geometry("round_sphere", {{"n", 2}, {"ell", 1}});
    CHECK(volume(make_quadrature(s2.g, 24)) == doctest::Approx(4 * kPi).epsilon(1e-10));

    auto s3 = get_geometry("round_sphere", {{"n", 3}, {"ell", 1}});
    CHECK(volume(make_quadrature(s3.g, 24)) == doctest::Approx(2 * kPi * kPi).epsilon(1e-10));

    auto s3b = get_geometry("round_sphere", {{"n", 3}, {"ell", 2}});
    CHECK(volume(make_quadrature(s3b.g, 24)) ==
          doctest::Approx(8 * 2 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("hand-integrated oracle on the 2-sphere") {
    auto s2 = get_geometry("round_sphere", {{"n", 2}, {"ell", 1}});
    QuadratureRule rule = make_quadrature(s2.g, 24);
    TensorField f = make_scalar(s2.chart, sin(Expr::coord(0)) * sin(Expr::coord(0)));
    // integral of sin^2(theta) over the unit sphere = 2 pi * 4/3
    CHECK(integrate(f, rule) == doctest::Approx(8 * kPi / 3).epsilon(1e-10));
}

TEST_CASE("node doubling reaches the floor on smooth periodic integrands") {
    auto t1 = get_geometry("flat_torus", {{"n", 1}});
    TensorField f = make_scalar(t1.chart, exp(sin(Expr::coord(0))));
    const double exact = 7.9549265210128456971;  // 2 pi I0(1)
    const double e8 = std::abs(integrate(f, make_quadrature(t1.g, 8)) - exact);
    const double e16 = std::abs(integrate(f, make_quadrature(t1.g, 16)) - exact);
    CHECK(e16 <= std::max(e8 / 100, 1e-12));
}

TEST_CASE("conformal quotient on the unit 3-sphere") {
    auto s3 = get_geometry("round_sphere", {{"n", 3}, {"ell", 1}});
    QuadratureRule rule = make_quadrature(s3.g, 24);
    TensorField one = make_scalar(s3.chart, Expr::num(1));
    const double expected = 6 * std::pow(2 * kPi * kPi, 2.0 / 3.0);
    const double Q1 = yamabe_quotient(s3.g, one, rule);
    CHECK(Q1 == doctest::Approx(expected).epsilon(1e-9));

    // scale invariance
    TensorField c = make_scalar(s3.chart, Expr::num(7.3));
    CHECK(yamabe_quotient(s3.g, c, rule) == doctest::Approx(Q1).epsilon(1e-12));

    // perturbations do not go below the round value
    for (double a : {0.2, 0.4}) {
        TensorField phi = make_scalar(s3.chart, Expr::num(1) + Expr::num(a) * cos(Expr::coord(0)));
        CHECK(yamabe_quotient(s3.g, phi, rule) >= Q1 - 1e-9);
    }
    // dimension restriction
    auto t2 = get_geometry("flat_torus", {{"n", 2}});
    CHECK_THROWS_AS(
        yamabe_quotient(t2.g, make_scalar(t2.chart, Expr::num(1)), make_quadrature(t2.g, 8)),
        Error);
}

TEST_CASE("pointwise decomposition holds for arbitrary k and test functions") {
    GeometryEntry e = get_geometry("lim_product", {{"m", 2}});
    QEProblem prob(e.g, *e.X, 2.0, -2.0);
    TensorField phi = make_scalar(e.chart, Expr::num(2) + sin(Expr::coord(0)));
    for (double k : {0.5, 1.0, 3.0, std::sqrt(2.0)}) {
        for (const auto& p : random_interior_points(e.chart, 10, 17))
            CHECK(decomposition_check(prob, {phi, k}, p) < 1e-9);
    }
    // X = 0 reduces both sides to the same curvature form
    GeometryEntry s3 = get_geometry("round_sphere", {{"n", 3}, {"ell", 1}});
    QEProblem ps(s3.g, make_zero(s3.chart, {1, 0}), 2.0, 2.0);
    TensorField psi = make_scalar(s3.chart, Expr::num(1) + Expr::num(0.2) * cos(Expr::coord(0)));
    for (const auto& p : random_interior_points(s3.chart, 10, 19))
        CHECK(decomposition_check(ps, {psi, 1.1}, p) < 1e-10);

    CHECK_THROWS_AS(decomposition_check(prob, {phi, 0.0}, {0.5, 0.0, 1.5}), Error);
    // hypothesis guard: wrong lambda is not a solution
    QEProblem bad(e.g, *e.X, 2.0, 3.0);
    CHECK_THROWS_AS(decomposition_check(bad, {phi, 1.0}, {0.5, 0.0, 1.5}), Error);
}

TEST_CASE("divergence term integrates to zero on closed charts") {
    GeometryEntry e = get_geometry("flat_torus", {{"n", 3}});
    TensorField X = make_one_form(
        e.chart, {Expr::num(0.4) * sin(Expr::coord(1)), Expr::num(0.7) * cos(Expr::coord(2)),
                  Expr::num(0.2) * sin(Expr::coord(0))});
    QEProblem prob(e.g, X, 2.0, 0.0);
    TensorField phi = make_scalar(e.chart, Expr::num(2) + Expr::num(0.3) * sin(Expr::coord(0)) +
                                               Expr::num(0.2) * cos(Expr::coord(2)));
    QuadratureRule rule = make_quadrature(e.g, 24);
    CHECK(std::abs(divergence_term_integral(prob, phi, rule)) < 1e-10);
}

TEST_CASE("lower bound: equality, strictness, and preconditions") {
    auto s3 = get_geometry("round_sphere", {{"n", 3}, {"ell", 1}});
    QuadratureRule rule = make_quadrature(s3.g, 24);
    QEProblem prob(s3.g, make_zero(s3.chart, {1, 0}), 2.0, 2.0);
    TensorField one = make_scalar(s3.chart, Expr::num(1));

    auto req = bound_check(prob, {one, std::sqrt(2.0)}, rule);
    CHECK(req.status == "pass");
    CHECK(req.metrics.at("quotient") ==
          doctest::Approx(req.metrics.at("bound")).epsilon(1e-9));

    TensorField phi = make_scalar(s3.chart, Expr::num(1) + Expr::num(0.3) * cos(Expr::coord(0)));
    auto rs = bound_check(prob, {phi, std::sqrt(2.0)}, rule);
    CHECK(rs.status == "pass");
    CHECK(rs.metrics.at("quotient") > rs.metrics.at("bound") + 1e-3);

    // boundary normalization gives plain nonnegativity
    QEProblem p8(s3.g, make_zero(s3.chart, {1, 0}), 8.0, 2.0);
    auto rb = bound_check(p8, {phi, std::sqrt(8.0)}, rule);
    CHECK(rb.status == "pass");
    CHECK(rb.metrics.at("coefficient") == 0.0);
    CHECK(rb.metrics.at("quotient") >= 0.0);

    // preconditions are named
    QEProblem neg(s3.g, make_zero(s3.chart, {1, 0}), 2.0, -1.0);
    CHECK(bound_check(neg, {one, std::sqrt(2.0)}, rule).status == "error");
    QEProblem badk(s3.g, make_zero(s3.chart, {1, 0}), 2.0, 2.0);
    CHECK(bound_check(badk, {one, 1.0}, rule).status == "error");   // k^2 < m
    CHECK(bound_check(badk, {one, 3.0}, rule).status == "error");   // k^2 > 4(n-1)/(n-2)
}
