#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qev/geometry.hpp"
#include "qev/quasi_einstein.hpp"

using namespace qev;

namespace {
constexpr double kPi = 3.14159265358979323846;

GeometryEntry lim(double m) { return get_geometry("lim_product", {{"m", m}}); }

QEProblem lim_problem(double m) {
    GeometryEntry e = lim(m);
    return QEProblem(e.g, *e.X, m, -m);
}
}  // namespace

TEST_CASE("problem construction validates its inputs") {
    GeometryEntry e = lim(2);
    CHECK_THROWS_AS(QEProblem(e.g, *e.X, -1.0, 0.0), Error);
    GeometryEntry xb = get_geometry("xbtz_nhg");
    CHECK_THROWS_AS(QEProblem(xb.g, make_zero(xb.chart, {1, 0}), 2.0, 0.0), Error);
}

TEST_CASE("modified curvature tensor values") {
    // flat chart with a parallel form: only the rank-one term survives
    Chart box({{"x", -1, 1, false}, {"y", -1, 1, false}}, Signature::Riemannian);
    TensorField flat = make_metric(box, {{Expr::num(1), Expr::num(0)}, {Expr::num(1)}});
    const double cte = 0.7;
    TensorField X = make_one_form(box, {Expr::num(cte), Expr::num(0)});
    QEProblem prob(flat, X, 2.0, 0.0);
    auto be = bakry_emery_ricci(prob, {0.1, 0.2});
    CHECK(be.at({0, 0}) == doctest::Approx(-cte * cte / 2).epsilon(1e-15));
    CHECK(be.at({0, 1}) == 0.0);
    CHECK(be.at({1, 1}) == 0.0);

    // the counter-example meets its constant exactly
    QEProblem lp = lim_problem(2);
    Point p{1.0, 0.2, 1.4};
    auto bel = bakry_emery_ricci(lp, p);
    FieldJets gj;
    lp.g.eval(p, 0, gj);
    for (int i = 0; i < 9; ++i)
        CHECK(bel.comps[i] == doctest::Approx(-2.0 * gj.v[i]).epsilon(1e-13));

    // with X = 0 it reduces to the Ricci tensor
    GeometryEntry s2 = get_geometry("round_sphere", {{"n", 2}, {"ell", 1}});
    QEProblem sp(s2.g, make_zero(s2.chart, {1, 0}), 5.0, 1.0);
    auto bes = bakry_emery_ricci(sp, {1.1, 0.4});
    FieldJets sj;
    s2.g.eval({1.1, 0.4}, 0, sj);
    for (int i = 0; i < 4; ++i) CHECK(bes.comps[i] == doctest::Approx(sj.v[i]).epsilon(1e-13));
}

TEST_CASE("residual report on solutions and non-solutions") {
    QEProblem lp = lim_problem(2);
    Grid grid(lp.g.chart(), default_grid_counts(lp.g.chart(), 10));
    auto r = qe_residual(lp, grid);
    CHECK(r.status == "pass");
    CHECK(r.residual_max < 1e-9);
    CHECK(r.metrics.at("dX_max") < 1e-9);

    // wrong constant fails with the exact offset |lambda' - lambda| * |g|
    QEProblem wrong(lp.g, lp.X, 2.0, -1.0);
    auto rw = qe_residual(wrong, grid);
    CHECK(rw.status == "fail");
    CHECK(rw.residual_max == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("stencil backend certifies the gradient cylinder at 1e-6") {
    GeometryEntry e = get_geometry("sds_cylinder", {{"m", 2}, {"lambda", 1}, {"mu", 1}, {"a", 0.1}});
    FdConfig fd{1e-4, 3e-3};
    QEProblem prob(with_fd_backend(e.g, fd), with_fd_backend(*e.X, fd), 2.0, 1.0);
    Grid grid(e.chart, default_grid_counts(e.chart, 16));
    auto r = qe_residual(prob, grid);
    CHECK(r.status == "pass");
    CHECK(r.residual_max < 1e-6);
}

TEST_CASE("trace identity ties the tensor residual to its trace") {
    QEProblem lp = lim_problem(2);
    Point p{0.3, -0.1, 1.7};
    // R = -4, div X = 0, |X|^2/m = 2, n lambda = -6
    CHECK(trace_identity(lp, p) == doctest::Approx(0.0).epsilon(1e-12));

    GeometryEntry s3 = get_geometry("round_sphere", {{"n", 3}, {"ell", 1}});
    QEProblem es(s3.g, make_zero(s3.chart, {1, 0}), 2.0, 1.0);
    Point q{1.0, 1.0, 1.0};
    CHECK(trace_identity(es, q) == doctest::Approx(6.0 - 3.0).epsilon(1e-11));

    // consistency: trace of the residual tensor equals the identity
    for (const auto& pt : random_interior_points(lp.g.chart(), 10, 4)) {
        auto be = bakry_emery_ricci(lp, pt);
        MetricData md = metric_data(lp.g, pt, 0);
        double tr = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                tr += md.gi(i, j) * (be.comps[i * 3 + j] - lp.lambda * md.g(i, j));
        CHECK(std::abs(tr - trace_identity(lp, pt)) < 1e-11);
    }
}

TEST_CASE("static potential values") {
    QEProblem lp = lim_problem(2);
    CHECK(static_Y(lp, {0.5, 0.0, 1.5}) == doctest::Approx(0.0).epsilon(1e-13));

    GeometryEntry s3 = get_geometry("round_sphere", {{"n", 3}, {"ell", 1}});
    QEProblem es(s3.g, make_zero(s3.chart, {1, 0}), 2.0, 5.0);
    CHECK(static_Y(es, {1.0, 1.0, 1.0}) == doctest::Approx(5.0));

    GeometryEntry sds = get_geometry("sds_cylinder", {{"m", 2}, {"lambda", 1}, {"mu", 1}, {"a", 0}});
    QEProblem sp(sds.g, *sds.X, 2.0, 1.0);
    CHECK(static_Y(sp, {0.5, 0.0}) == doctest::Approx(4.0).epsilon(1e-12));

    QEProblem m3 = lim_problem(3);
    CHECK_THROWS_AS(static_Y(m3, {0.5, 0.0, 1.5}), Error);
}

TEST_CASE("potential identities hold on verified solutions") {
    for (auto& [prob, tol] : std::vector<std::pair<QEProblem, double>>{
             {lim_problem(2), 1e-9},
             {[] {
                  GeometryEntry e = get_geometry(
                      "sds_cylinder", {{"m", 2}, {"lambda", 1}, {"mu", 1}, {"a", 0.1}});
                  return QEProblem(e.g, *e.X, 2.0, 1.0);
              }(),
              1e-9}}) {
        Grid grid(prob.g.chart(), default_grid_counts(prob.g.chart(), 12));
        auto r = lemma21_check(prob, grid);
        CHECK(r.status == "pass");
        CHECK(r.metrics.at("grad_identity_max") < tol);
        CHECK(r.metrics.at("scalar_identity_max") < tol);
    }

    // X = 0: the potential is constant, residuals exactly zero
    GeometryEntry s3 = get_geometry("round_sphere", {{"n", 3}, {"ell", 1}});
    QEProblem es(s3.g, make_zero(s3.chart, {1, 0}), 2.0, 2.0);
    Grid grid(s3.chart, default_grid_counts(s3.chart, 10));
    auto r = lemma21_check(es, grid);
    CHECK(r.status == "pass");
    CHECK(r.metrics.at("grad_identity_max") == 0.0);
    CHECK(r.metrics.at("scalar_identity_max") == 0.0);
}

TEST_CASE("potential identity residuals grow linearly with a perturbation") {
    auto perturbed = [&](double eps) {
        GeometryEntry e = lim(2);
        const auto& gex = field_exprs(e.g);
        std::vector<Expr> comps = gex;
        // smooth symmetric bump on the circle-circle slot
        comps[0] = gex[0] + Expr::num(eps) * sin(Expr::coord(1) + Expr::coord(2));
        TensorField g = make_expr_field(e.chart, {2, 0}, comps);
        QEProblem prob(g, *e.X, 2.0, -2.0);
        Grid grid(e.chart, default_grid_counts(e.chart, 8));
        return lemma21_check(prob, grid);
    };
    auto r3 = perturbed(1e-3);
    auto r4 = perturbed(1e-4);
    CHECK(r3.status == "hypotheses-failed");
    const double ratio =
        r3.metrics.at("grad_identity_max") / r4.metrics.at("grad_identity_max");
    CHECK(ratio > 3.0);
    CHECK(ratio < 30.0);
}

TEST_CASE("characteristic constant on the gradient cylinder family") {
    for (auto& [m, lam, mu, a] : std::vector<std::array<double, 4>>{
             {2, 1, 1, 0}, {2, 1, 1, 0.1}, {0.5, 1, 1, 0}, {3, -1, -1, 0.1}}) {
        GeometryEntry e =
            get_geometry("sds_cylinder", {{"m", m}, {"lambda", lam}, {"mu", mu}, {"a", a}});
        QEProblem prob(e.g, *e.X, m, e.expected.at("lambda"));
        GradientData grad{*e.f, e.expected.at("mu")};
        Grid grid(e.chart, default_grid_counts(e.chart, 16));
        auto r = characteristic_constant(prob, grad, grid);
        INFO("m=", m, " a=", a);
        CHECK(r.status == "pass");
        CHECK(r.metrics.at("mu_deviation_max") < 1e-6);
        CHECK(r.metrics.at("mu_mean") ==
              doctest::Approx(e.expected.at("mu")).epsilon(1e-9));
    }
}

TEST_CASE("characteristic constant is gauge covariant in the potential shift") {
    GeometryEntry e = get_geometry("sds_cylinder", {{"m", 2}, {"lambda", 1}, {"mu", 1}, {"a", 0}});
    QEProblem prob(e.g, *e.X, 2.0, 1.0);
    Grid grid(e.chart, default_grid_counts(e.chart, 10));
    const double shift = 0.8;
    TensorField f_shifted =
        make_scalar(e.chart, field_exprs(*e.f)[0] + Expr::num(shift));
    auto r0 = characteristic_constant(prob, {*e.f, {}}, grid);
    auto r1 = characteristic_constant(prob, {f_shifted, {}}, grid);
    CHECK(r1.metrics.at("mu_mean") ==
          doctest::Approx(r0.metrics.at("mu_mean") * std::exp(-2 * shift / 2.0))
              .epsilon(1e-9));
    CHECK(r1.metrics.at("mu_deviation_max") < 1e-9);
}

TEST_CASE("characteristic constant rejects non-exact inputs") {
    GeometryEntry e = lim(2);
    QEProblem prob = lim_problem(2);
    TensorField f0 = make_scalar(e.chart, Expr::num(0));
    Grid grid(e.chart, default_grid_counts(e.chart, 8));
    auto r = characteristic_constant(prob, {f0, {}}, grid);
    CHECK(r.status == "error");
    CHECK(r.metrics.at("X_minus_df_max") == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("degenerate gradient data: constant potential at lambda zero") {
    GeometryEntry e = get_geometry("flat_torus", {{"n", 2}});
    QEProblem prob(e.g, make_zero(e.chart, {1, 0}), 3.0, 0.0);
    TensorField f = make_scalar(e.chart, Expr::num(1.7));
    Grid grid(e.chart, default_grid_counts(e.chart, 8));
    auto r = characteristic_constant(prob, {f, 0.0}, grid);
    CHECK(r.status == "pass");
    CHECK(r.metrics.at("mu_mean") == doctest::Approx(0.0));
}

TEST_CASE("rigidity invariants across the m family") {
    for (double m : {3.0}) {  // the general-m instance called out explicitly
        QEProblem prob = lim_problem(m);
        Grid grid(prob.g.chart(), default_grid_counts(prob.g.chart(), 8));
        CHECK(rigidity_invariants(prob, grid).residual_max < 1e-9);
    }
    for (int j = 0; j <= 10; ++j) {
        const double m = 0.25 * std::pow(32.0, j / 10.0);
        QEProblem prob = lim_problem(m);
        Grid grid(prob.g.chart(), default_grid_counts(prob.g.chart(), 8));
        auto r = rigidity_invariants(prob, grid);
        INFO("m=", m);
        CHECK(r.status == "pass");
        CHECK(r.residual_max < 1e-9);
    }
    // non-example reports the 2m offset in the combined invariant
    GeometryEntry s3 = get_geometry("round_sphere", {{"n", 3}, {"ell", 1}});
    QEProblem es(s3.g, make_zero(s3.chart, {1, 0}), 2.0, 2.0);
    Grid grid(s3.chart, default_grid_counts(s3.chart, 8));
    auto r = rigidity_invariants(es, grid);
    CHECK(r.status == "fail");
    CHECK(r.metrics.at("combined_max") == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("norm recurrence has the right value on a non-parallel form") {
    // flat torus, X = sin(x) dx, m = 2, lambda = -0.3: by hand,
    // 2 cos 2x - sin(x) sin(2x) - 2 cos^2 x - sin^2(x) (sin^2(x) - 0.6)
    GeometryEntry t2 = get_geometry("flat_torus", {{"n", 2}});
    TensorField X = make_one_form(t2.chart, {sin(Expr::coord(0)), Expr::num(0)});
    QEProblem prob(t2.g, X, 2.0, -0.3);
    auto expected = [](double x) {
        const double s = std::sin(x);
        return 2 * std::cos(2 * x) - s * std::sin(2 * x) - 2 * std::cos(x) * std::cos(x) -
               s * s * (s * s - 0.6);
    };
    for (double x : {0.7, 2.1}) {
        CHECK(bochner_residual(prob, {x, 0.5}) ==
              doctest::Approx(expected(x)).epsilon(1e-12));
    }
    // cross-checks the frozen symbolic values as well
    CHECK(expected(0.7) == doctest::Approx(-1.3881057818783016).epsilon(1e-14));
    CHECK(expected(2.1) == doctest::Approx(-0.8460495333526176).epsilon(1e-14));
}

TEST_CASE("norm recurrence vanishes where every term does") {
    for (double m : {2.0, 5.0}) {
        QEProblem prob = lim_problem(m);
        for (const auto& p : random_interior_points(prob.g.chart(), 6, 11))
            CHECK(std::abs(bochner_residual(prob, p)) < 1e-11);
    }
    GeometryEntry s3 = get_geometry("round_sphere", {{"n", 3}, {"ell", 1}});
    QEProblem es(s3.g, make_zero(s3.chart, {1, 0}), 2.0, 2.0);
    CHECK(std::abs(bochner_residual(es, {1.2, 1.0, 0.5})) < 1e-11);

    // rejected on stencil backends
    GeometryEntry e = lim(2);
    QEProblem fd(with_fd_backend(e.g, {1e-4, 3e-3}), with_fd_backend(*e.X, {1e-4, 3e-3}), 2.0,
                 -2.0);
    CHECK_THROWS_AS(bochner_residual(fd, {0.5, 0.0, 1.5}), Error);
}

TEST_CASE("average norm identity in both modes") {
    QEProblem lp = lim_problem(2);
    auto r = average_norm_identity(lp, 16);
    CHECK(r.status == "pass");
    CHECK(r.message.find("pointwise-reduction") != std::string::npos);

    GeometryEntry t3 = get_geometry("flat_torus", {{"n", 3}});
    TensorField X = make_one_form(t3.chart, {Expr::num(2), Expr::num(0), Expr::num(0)});
    QEProblem tp(t3.g, X, 2.0, -2.0);
    auto rq = average_norm_identity(tp, 16);
    CHECK(rq.status == "pass");
    CHECK(rq.message.find("quadrature") != std::string::npos);
    CHECK(rq.residual_max < 1e-10);

    // trivial zero case
    QEProblem zero(t3.g, make_zero(t3.chart, {1, 0}), 2.0, 0.0);
    CHECK(average_norm_identity(zero, 8).status == "pass");

    // violated hypothesis flags the row
    QEProblem bad(t3.g, X, 2.0, 1.0);
    CHECK(average_norm_identity(bad, 8).status == "hypotheses-failed");
}

TEST_CASE("loop integrals measure the periodic generators") {
    GeometryEntry e = lim(2);
    auto loops = loop_integrals(*e.X);
    REQUIRE(loops.size() == 1);
    CHECK(loops[0] == doctest::Approx(4 * kPi).epsilon(1e-12));

    GeometryEntry t3 = get_geometry("flat_torus", {{"n", 3}});
    TensorField X = make_one_form(
        t3.chart, {Expr::num(1.5), sin(Expr::coord(1)), Expr::num(0)});
    auto l3 = loop_integrals(X);
    REQUIRE(l3.size() == 3);
    CHECK(l3[0] == doctest::Approx(3 * kPi).epsilon(1e-12));
    CHECK(std::abs(l3[2]) < 1e-12);
}
