#pragma once

#include <optional>

#include "qev/ops.hpp"
#include "qev/quadrature.hpp"
#include "qev/report.hpp"

namespace qev {

/// One instance of the quasi-Einstein problem: Ric + Lie_X g / 2 - X(x)X/m
/// = lambda g on a Riemannian chart, m > 0.
struct QEProblem {
    TensorField g;
    TensorField X;
    double m = 2;
    double lambda = 0;

    QEProblem(TensorField g_, TensorField X_, double m_, double lambda_);
};

struct GradientData {
    TensorField f;
    std::optional<double> mu;  // declared characteristic constant, if any
};

/// Pinned tolerance policy.
double analytic_tolerance();                 // 1e-9
double fd_tolerance(double h);               // max(1e-6, 50 h^2)
double backend_tolerance(const TensorField& g);

PointValue bakry_emery_ricci(const QEProblem& prob, const Point& p);

/// Pointwise coordinate-invariant magnitude of Ric_X^m - lambda g.
double qe_residual_at(const QEProblem& prob, const Point& p);

VerificationReport qe_residual(const QEProblem& prob, const Grid& grid);

/// R + div X - |X|^2/m - n lambda; zero on solutions with dX = 0.
double trace_identity(const QEProblem& prob, const Point& p);

/// Y = lambda + |X|^2/2 - div X / 2 (m = 2 only).
double static_Y(const QEProblem& prob, const Point& p);

/// Y as a field with backend-accurate first and second derivatives.
TensorField make_static_Y_field(const QEProblem& prob);

/// Near-horizon potential identities for a derived Y: max |dY - Y X| and the
/// scalar recurrence; hypotheses-failed unless qe_residual and |dX| pass.
VerificationReport lemma21_check(const QEProblem& prob, const Grid& grid);

VerificationReport characteristic_constant(const QEProblem& prob, const GradientData& grad,
                                           const Grid& grid);

VerificationReport rigidity_invariants(const QEProblem& prob, const Grid& grid);

/// Norm recurrence scalar at p (analytic backends only).
double bochner_residual(const QEProblem& prob, const Point& p);

/// Average-norm identity: quadrature when the chart supports it, otherwise a
/// pointwise check of the (constant) integrand.
VerificationReport average_norm_identity(const QEProblem& prob, int quad_nodes);

/// Integral of X along each periodic generator (loop through chart center).
std::vector<double> loop_integrals(const TensorField& X);

/// Potential for X by composite-quadrature path integration from the chart
/// center (valid when the loop integrals vanish).
double reconstruct_potential(const TensorField& X, const Point& p);

}  // namespace qev
