#pragma once

#include "qev/field.hpp"

namespace qev {

/// Dense pointwise metric data: inverse, Christoffels and their derivatives,
/// assembled from backend component derivatives up to `order` (2 or 3).
struct MetricData {
    int n = 0;
    int order = 2;
    std::vector<double> G, Ginv;     // n*n
    double det = 0;
    std::vector<double> dG;          // [k][i][j]
    std::vector<double> d2G;         // [k][l][i][j]
    std::vector<double> d3G;         // [k][l][m][i][j] (order 3)
    std::vector<double> dGinv;       // [k][i][j]
    std::vector<double> d2Ginv;      // [k][l][i][j] (order 3)
    std::vector<double> Gamma;       // [k][i][j]
    std::vector<double> dGamma;      // [m][k][i][j]
    std::vector<double> d2Gamma;     // [l][m][k][i][j] (order 3)

    double g(int i, int j) const { return G[i * n + j]; }
    double gi(int i, int j) const { return Ginv[i * n + j]; }
    double Gm(int k, int i, int j) const { return Gamma[(k * n + i) * n + j]; }
    double dGm(int m, int k, int i, int j) const {
        return dGamma[((m * n + k) * n + i) * n + j];
    }
};

MetricData metric_data(const TensorField& g, const Point& p, int order = 2);

/// Solves the dense linear algebra only; throws on singular input.
void invert_matrix(int n, const double* a, double* out, double* det);

// --- curvature ---

PointValue christoffel(const TensorField& g, const Point& p);
PointValue ricci(const TensorField& g, const Point& p);
double scalar_curvature(const TensorField& g, const Point& p);

/// Ricci and its coordinate derivatives (needs order-3 data).
void ricci_with_derivatives(const MetricData& md, std::vector<double>& ric,
                            std::vector<double>& dric);

/// One-form del^j (Ric_ij - R g_ij / 2); identically zero for exact metrics.
PointValue bianchi_divergence(const TensorField& g, const Point& p);

// --- first-order operators ---

PointValue lie_derivative_metric(const TensorField& X, const TensorField& g, const Point& p);
PointValue exterior_derivative(const TensorField& omega, const Point& p);
double divergence(const TensorField& X, const TensorField& g, const Point& p);
PointValue hessian(const TensorField& f, const TensorField& g, const Point& p);
double laplacian(const TensorField& f, const TensorField& g, const Point& p);
PointValue rough_laplacian(const TensorField& X, const TensorField& g, const Point& p);

/// Covariant derivative of a 1-form: components [i][j] = del_i X_j.
PointValue covariant_derivative_one_form(const TensorField& X, const TensorField& g,
                                         const Point& p);

// --- norms ---

/// Frobenius norm in a g-orthonormal frame. Riemannian g only.
double orthonormal_norm(const PointValue& t, const TensorField& g, const Point& p);

/// Component sup norm (the Lorentzian reporting variant).
double sup_norm(const PointValue& t);

// --- scalar helpers used by several verifiers ---

double norm_sq_one_form(const TensorField& X, const TensorField& g, const Point& p);

// --- jet algebra for derived scalar fields ---

/// Scalar value with first and second derivatives; arithmetic propagates
/// derivatives exactly (chain rule), letting derived quantities such as Y or
/// |X|^2 expose backend-accurate hessians.
struct Jet2 {
    int n = 0;
    double v = 0;
    std::array<double, 5> d{};
    std::array<double, 25> dd{};

    static Jet2 constant(int n, double c);
    double& D2(int i, int j) { return dd[i * 5 + j]; }
    double D2(int i, int j) const { return dd[i * 5 + j]; }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator*(double s, const Jet2& a);
Jet2 operator+(const Jet2& a, double c);
Jet2 operator-(const Jet2& a, double c);

/// Jet of component c of a field (uses derivatives up to order 2).
Jet2 jet2_component(const FieldJets& j, int c);
/// Jet of del_k (component c) (uses derivatives up to order 3).
Jet2 jet2_d1_component(const FieldJets& j, int k, int c);

/// Jets of the inverse metric entries from an order-3 metric evaluation.
struct InverseJets {
    int n;
    std::vector<Jet2> gi;  // [i][j]
    const Jet2& operator()(int i, int j) const { return gi[i * n + j]; }
};
InverseJets inverse_metric_jets(const FieldJets& gj);

}  // namespace qev
