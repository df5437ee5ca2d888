#pragma once

#include <map>
#include <optional>

#include "qev/field.hpp"

namespace qev {

/// One named geometry: a chart, its fields, and the constants it is expected
/// to realize. `expected` keys in use: lambda, m, mu, mu_display, Lambda, Y,
/// R, n, tilde_lambda, kappa.
struct GeometryEntry {
    std::string name;
    ParamMap params;
    Chart chart;
    TensorField g;
    std::optional<TensorField> X;
    std::optional<TensorField> f;
    std::optional<TensorField> Y;

    std::optional<Chart> spacetime_chart;
    std::optional<TensorField> spacetime_g;
    std::optional<TensorField> maxwell;  // 2-form on the spacetime chart

    std::optional<TensorField> T;    // symmetric (0,2) stress block on M
    std::optional<TensorField> Tpm;  // scalar stress block on M

    std::map<std::string, double> expected;
    std::string anchor;  // provenance label, e.g. "eq-1.4"
    std::string summary;
    bool quadrature_capable = false;

    bool lorentzian() const { return chart.signature() == Signature::Lorentzian; }
};

/// Registry of the built-in geometries. Names:
/// flat_torus(n), round_sphere(n, ell), hyperbolic_surface(kappa),
/// lim_product(m), xbtz_product(a), xbtz_nhg(a), sds_cylinder(m, lambda, mu, a),
/// maxwell_sphere(n, c, lambda), maxwell_circle_sigma(k), minkowski(n).
GeometryEntry get_geometry(const std::string& name, const ParamMap& params = {});

std::vector<std::string> list_geometries();
std::string describe_geometry(const std::string& name);

/// Second chart of the round 2-sphere with its pole on the x-axis, plus the
/// point map from standard-chart coordinates into it.
GeometryEntry rotated_sphere_chart(double ell);
Point sphere_chart_transition(const Point& standard_coords);

/// Positive-F window used by sds_cylinder: widest connected interval where F
/// stays positive inside (floor, cap], shrunk by the relative margin.
std::pair<double, double> positive_interval(const std::function<double(double)>& F, double floor,
                                            double cap, double margin_frac);

}  // namespace qev
