#include "qev/quadrature.hpp"

#include <cmath>

#include "qev/ops.hpp"

namespace qev {

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev estimate
        double z = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
            }
            pp = n * (z * p0 - p1) / (z * z - 1);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = mid - half * z;
        x[n - 1 - i] = mid + half * z;
        w[i] = 2 * half / ((1 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

QuadratureRule make_quadrature(const TensorField& g, int nodes_per_dim) {
    QuadratureRule r;
    r.chart = g.chart();
    r.metric = g;
    const int n = r.chart.dim();
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto& c = r.chart.coord(i);
        if (c.periodic) {
            auto& xs = r.nodes[i];
            auto& ws = r.weights[i];
            xs.resize(nodes_per_dim);
            ws.assign(nodes_per_dim, c.period() / nodes_per_dim);
            for (int j = 0; j < nodes_per_dim; ++j) xs[j] = c.lo + c.period() * j / nodes_per_dim;
        } else {
            gauss_legendre(nodes_per_dim, c.lo, c.hi, r.nodes[i], r.weights[i]);
        }
    }
    return r;
}

std::int64_t QuadratureRule::size() const {
    std::int64_t t = 1;
    for (const auto& xs : nodes) t *= static_cast<std::int64_t>(xs.size());
    return t;
}

double integrate_fn(const std::function<double(const Point&)>& f, const QuadratureRule& rule) {
    const int n = rule.chart.dim();
    const std::int64_t total = rule.size();
    std::vector<double> terms(static_cast<size_t>(total));
    Point p(n);
    for (std::int64_t k = 0; k < total; ++k) {
        std::int64_t t = k;
        double w = 1;
        for (int i = n - 1; i >= 0; --i) {
            const auto m = static_cast<std::int64_t>(rule.nodes[i].size());
            const auto j = t % m;
            p[i] = rule.nodes[i][j];
            w *= rule.weights[i][j];
            t /= m;
        }
        FieldJets gj;
        rule.metric.eval(p, 0, gj);
        std::vector<double> inv(static_cast<size_t>(n) * n);
        double det = 0;
        invert_matrix(n, gj.v.data(), inv.data(), &det);
        terms[static_cast<size_t>(k)] = f(p) * w * std::sqrt(std::abs(det));
    }
    return pairwise_sum(terms);
}

double integrate(const TensorField& scalar, const QuadratureRule& rule) {
    if (scalar.valence().total() != 0) throw Error("integrate expects a scalar field");
    if (!scalar.chart().same_layout(rule.chart))
        throw Error("integrand lives on a different chart than the rule");
    return integrate_fn([&](const Point& p) { return scalar.value(p)[0]; }, rule);
}

double volume(const QuadratureRule& rule) {
    return integrate_fn([](const Point&) { return 1.0; }, rule);
}

}  // namespace qev
