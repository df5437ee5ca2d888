#pragma once

#include "qev/field.hpp"

namespace qev {

/// Product quadrature over a chart: trapezoid nodes on periodic dimensions
/// (spectral for smooth periodic integrands), Gauss-Legendre on interval
/// dimensions. The volume weight sqrt(det g) is applied at the nodes.
struct QuadratureRule {
    Chart chart;
    TensorField metric;
    std::vector<std::vector<double>> nodes;    // per dimension
    std::vector<std::vector<double>> weights;  // per dimension

    std::int64_t size() const;
};

QuadratureRule make_quadrature(const TensorField& g, int nodes_per_dim);

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

/// Integral of a scalar field against the metric volume element. Fixed-order
/// pairwise reduction; deterministic.
double integrate(const TensorField& scalar, const QuadratureRule& rule);

/// Integral of a raw function of the point (volume element still applied).
double integrate_fn(const std::function<double(const Point&)>& f, const QuadratureRule& rule);

/// Volume of the chart under the rule's metric.
double volume(const QuadratureRule& rule);

}  // namespace qev
