#pragma once

#include "qev/quasi_einstein.hpp"

namespace qev {

/// Data of a horizon cross-section: the m=2 problem plus the potential Y and
/// the spacetime constant Lambda = n lambda / 2.
struct NHGBundle {
    QEProblem base;        // m must be 2
    TensorField Y;         // scalar on the base chart
    double Lambda() const { return base.g.dim() * base.lambda / 2.0; }
};

/// Builds the (n+2)-dimensional metric 2 dv (dr + r X_i dx^i + r^2 Y dv / 2)
/// + g_ij dx^i dx^j on a chart (v, r, x...). Requires expression-backed
/// inputs.
TensorField assemble_nhg(const NHGBundle& bundle, double r_half_width = 0.3);

/// Component sup-norm of Ric - R g / 2 + Lambda g over the grid.
VerificationReport einstein_residual(const TensorField& g_lorentz, double Lambda,
                                     const Grid& grid);

/// The four residuals of the general (non-static) horizon system.
struct HorizonSystemResiduals {
    double constraint = 0;  // scalar linking Y, |X|^2, div X, lambda
    double tensor = 0;      // m = 2 curvature equation, frame norm
    double scalar = 0;      // potential recurrence with the |dX|^2 source
    double one_form = 0;    // potential gradient equation with curl terms
};
HorizonSystemResiduals general_nhg_at(const TensorField& g, const TensorField& X,
                                      const TensorField& Y, double lambda, const Point& p);

VerificationReport general_nhg_residuals(const TensorField& g, const TensorField& X,
                                         const TensorField& Y, double lambda, const Grid& grid);

/// One-parameter family of Lorentzian metrics on a fixed chart.
struct LorentzianMetricFamily {
    Chart chart;
    std::function<TensorField(double)> member;
};

/// The horizon scaling family of a v-independent metric whose first two
/// coordinates are (v, r): member(eps) evaluates the metric at r -> eps r
/// with the null-pair component rescaling.
LorentzianMetricFamily scaling_family(const TensorField& g_lorentz);

struct NearHorizonLimit {
    VerificationReport report;
    std::optional<TensorField> limit;
    double order = 0;   // measured convergence order; +inf marks a fixed point
};

/// Richardson extrapolation of the family along a strictly decreasing
/// positive eps sequence (at least 4 terms, first-order leading term).
NearHorizonLimit near_horizon_limit(const LorentzianMetricFamily& family,
                                    const std::vector<double>& eps, const Grid& grid);

}  // namespace qev
