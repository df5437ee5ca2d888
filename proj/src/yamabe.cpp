#include "qev/yamabe.hpp"

#include <cmath>

namespace qev {

namespace {

double grad_sq(const TensorField& phi, const TensorField& g, const Point& p) {
    FieldJets fj;
    phi.eval(p, 1, fj);
    MetricData md = metric_data(g, p, 0);
    double s = 0;
    for (int a = 0; a < md.n; ++a)
        for (int b = 0; b < md.n; ++b) s += md.gi(a, b) * fj.D1(a, 0) * fj.D1(b, 0);
    return s;
}

double cn(int n) { return 4.0 * (n - 1) / (n - 2); }

}  // namespace

double yamabe_quotient(const TensorField& g, const TensorField& phi, const QuadratureRule& rule) {
    const int n = g.dim();
    if (n < 3) throw Error("the conformal quotient needs chart dimension >= 3");
    const double num = integrate_fn(
        [&](const Point& p) {
            const double ph = phi.value(p)[0];
            return cn(n) * grad_sq(phi, g, p) + scalar_curvature(g, p) * ph * ph;
        },
        rule);
    const double den = integrate_fn(
        [&](const Point& p) {
            const double ph = phi.value(p)[0];
            return std::pow(std::abs(ph), 2.0 * n / (n - 2));
        },
        rule);
    if (!(den > 0)) throw Error("conformal quotient: vanishing denominator");
    return num / std::pow(den, double(n - 2) / n);
}

double decomposition_check(const QEProblem& prob, const YamabeEval& eval, const Point& p) {
    const int n = prob.g.dim();
    if (n < 3) throw Error("decomposition needs chart dimension >= 3");
    if (eval.k == 0) throw Error("decomposition needs k != 0");
    if (qe_residual_at(prob, p) > 10 * backend_tolerance(prob.g))
        throw Error("decomposition hypothesis: quasi-Einstein equation fails at the point");

    const double k = eval.k, m = prob.m, lam = prob.lambda;
    MetricData md = metric_data(prob.g, p, 0);
    FieldJets fj, xj;
    eval.phi.eval(p, 1, fj);
    prob.X.eval(p, 0, xj);
    const double phi = fj.comp(0);
    const double gp2 = grad_sq(eval.phi, prob.g, p);
    const double x2 = norm_sq_one_form(prob.X, prob.g, p);
    const double R = scalar_curvature(prob.g, p);
    const double divX = divergence(prob.X, prob.g, p);

    double Xdphi = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Xdphi += md.gi(a, b) * xj.comp(a) * fj.D1(b, 0);

    const double lhs = cn(n) * gp2 + R * phi * phi;

    // div(phi^2 X) expanded explicitly
    const double div_term = phi * phi * divX + 2 * phi * Xdphi;
    // | k grad phi + X phi / k |^2
    const double mixed = k * k * gp2 + 2 * phi * Xdphi + (phi * phi / (k * k)) * x2;
    const double rhs = (cn(n) - k * k) * gp2 - div_term + mixed +
                       ((k * k - m) / (m * k * k)) * x2 * phi * phi +
                       n * lam * phi * phi;
    return std::abs(lhs - rhs);
}

double divergence_term_integral(const QEProblem& prob, const TensorField& phi,
                                const QuadratureRule& rule) {
    const int n = prob.g.dim();
    return integrate_fn(
        [&](const Point& p) {
            MetricData md = metric_data(prob.g, p, 0);
            FieldJets fj, xj;
            phi.eval(p, 1, fj);
            prob.X.eval(p, 0, xj);
            double Xdphi = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) Xdphi += md.gi(a, b) * xj.comp(a) * fj.D1(b, 0);
            return fj.comp(0) * fj.comp(0) * divergence(prob.X, prob.g, p) +
                   2 * fj.comp(0) * Xdphi;
        },
        rule);
}

VerificationReport bound_check(const QEProblem& prob, const YamabeEval& eval,
                               const QuadratureRule& rule) {
    VerificationReport r;
    r.check = "conformal-bound";
    r.anchor = "eq-A.3";
    r.backend = prob.g.analytic() ? "analytic" : "fd";
    r.grid = "quadrature";
    const int n = prob.g.dim();
    if (n < 3) {
        r.status = "error";
        r.message = "precondition failed: chart dimension must be >= 3";
        return r;
    }
    if (!(prob.lambda >= 0)) {
        r.status = "error";
        r.message = "precondition failed: lambda must be nonnegative";
        return r;
    }
    const double k2 = eval.k * eval.k;
    const bool boundary =
        std::abs(k2 - cn(n)) <= 1e-12 && std::abs(prob.m - cn(n)) <= 1e-12;
    if (!(prob.m > 0) || !(prob.m <= k2 + 1e-12) || (!boundary && !(k2 < cn(n)))) {
        r.status = "error";
        r.message = "precondition failed: need 0 < m <= k^2 < 4(n-1)/(n-2)";
        return r;
    }

    const double Q = yamabe_quotient(prob.g, eval.phi, rule);
    const double coeff = boundary ? 0.0 : std::min(cn(n) - k2, n * prob.lambda);
    const double num = integrate_fn(
        [&](const Point& p) {
            const double ph = eval.phi.value(p)[0];
            return grad_sq(eval.phi, prob.g, p) + ph * ph;
        },
        rule);
    const double den = integrate_fn(
        [&](const Point& p) {
            const double ph = eval.phi.value(p)[0];
            return std::pow(std::abs(ph), 2.0 * n / (n - 2));
        },
        rule);
    const double bound = coeff * num / std::pow(den, double(n - 2) / n);

    r.metrics["quotient"] = Q;
    r.metrics["bound"] = bound;
    r.metrics["coefficient"] = coeff;
    r.residual_max = std::max(0.0, bound - Q);  // violation amount
    r.residual_mean = r.residual_max;
    r.tolerance = 1e-6;
    r.finalize();
    return r;
}

}  // namespace qev
