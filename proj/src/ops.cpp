#include "qev/ops.hpp"

#include <cmath>
#include <cstring>

namespace qev {

void invert_matrix(int n, const double* a, double* out, double* det) {
    // Gauss-Jordan with partial pivoting
    if (n < 1 || n > 7) throw Error("matrix inversion supports dimensions 1..7");
    double m[49], inv[49];
    std::memcpy(m, a, sizeof(double) * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i * n + j] = i == j ? 1.0 : 0.0;
    double d = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
        if (m[piv * n + col] == 0.0) throw Error("singular metric");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(m[piv * n + j], m[col * n + j]);
                std::swap(inv[piv * n + j], inv[col * n + j]);
            }
            d = -d;
        }
        const double p = m[col * n + col];
        d *= p;
        const double ip = 1.0 / p;
        for (int j = 0; j < n; ++j) {
            m[col * n + j] *= ip;
            inv[col * n + j] *= ip;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m[r * n + col];
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                m[r * n + j] -= f * m[col * n + j];
                inv[r * n + j] -= f * inv[col * n + j];
            }
        }
    }
    std::memcpy(out, inv, sizeof(double) * n * n);
    if (det) *det = d;
    if (!std::isfinite(d) || d == 0.0) throw Error("singular metric");
}

MetricData metric_data(const TensorField& g, const Point& p, int order) {
    if (g.valence().cov != 2 || g.valence().con != 0)
        throw Error("metric_data expects a (2,0) covariant field");
    const int n = g.dim();
    FieldJets j;
    g.eval(p, order, j);
    MetricData md;
    md.n = n;
    md.order = order;
    md.G = j.v;
    md.Ginv.resize(n * n);
    invert_matrix(n, md.G.data(), md.Ginv.data(), &md.det);

    if (order < 1) return md;

    md.dG.resize(static_cast<size_t>(n) * n * n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) md.dG[(k * n + i) * n + jj] = j.D1(k, i * n + jj);
    if (order >= 2) {
        md.d2G.resize(static_cast<size_t>(n) * n * n * n);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i)
                    for (int jj = 0; jj < n; ++jj)
                        md.d2G[((k * n + l) * n + i) * n + jj] = j.D2(k, l, i * n + jj);
    }
    if (order >= 3) {
        md.d3G.resize(static_cast<size_t>(n) * n * n * n * n);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m)
                    for (int i = 0; i < n; ++i)
                        for (int jj = 0; jj < n; ++jj)
                            md.d3G[(((k * n + l) * n + m) * n + i) * n + jj] =
                                j.D3(k, l, m, i * n + jj);
    }

    // d(g^-1) = -g^-1 dg g^-1
    md.dGinv.resize(md.dG.size());
    auto gi = [&](int a, int b) { return md.Ginv[a * n + b]; };
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) {
                double s = 0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        s -= gi(i, a) * md.dG[(k * n + a) * n + b] * gi(b, jj);
                md.dGinv[(k * n + i) * n + jj] = s;
            }

    // Gamma^k_ij = g^{kl} (dg_i jl + dg_j il - dg_l ij) / 2
    md.Gamma.resize(md.dG.size());
    auto A = [&](int i, int jj, int l) {
        return md.dG[(i * n + jj) * n + l] + md.dG[(jj * n + i) * n + l] -
               md.dG[(l * n + i) * n + jj];
    };
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) {
                double s = 0;
                for (int l = 0; l < n; ++l) s += gi(k, l) * A(i, jj, l);
                md.Gamma[(k * n + i) * n + jj] = 0.5 * s;
            }

    // del_m Gamma^k_ij
    auto dA = [&](int m, int i, int jj, int l) {
        return md.d2G[((m * n + i) * n + jj) * n + l] + md.d2G[((m * n + jj) * n + i) * n + l] -
               md.d2G[((m * n + l) * n + i) * n + jj];
    };
    if (order >= 2) {
        md.dGamma.resize(static_cast<size_t>(n) * n * n * n);
        for (int m = 0; m < n; ++m)
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int jj = 0; jj < n; ++jj) {
                        double s = 0;
                        for (int l = 0; l < n; ++l)
                            s += md.dGinv[(m * n + k) * n + l] * A(i, jj, l) +
                                 gi(k, l) * dA(m, i, jj, l);
                        md.dGamma[((m * n + k) * n + i) * n + jj] = 0.5 * s;
                    }
    }

    if (order >= 3) {
        // d2(g^-1) = g^-1 dg g^-1 dg g^-1 + g^-1 dg g^-1 dg g^-1 - g^-1 d2g g^-1
        md.d2Ginv.resize(static_cast<size_t>(n) * n * n * n);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i)
                    for (int jj = 0; jj < n; ++jj) {
                        double s = 0;
                        for (int a = 0; a < n; ++a)
                            for (int b = 0; b < n; ++b) {
                                s -= md.dGinv[(k * n + i) * n + a] * md.dG[(l * n + a) * n + b] *
                                     gi(b, jj);
                                s -= gi(i, a) * md.d2G[((k * n + l) * n + a) * n + b] * gi(b, jj);
                                s -= gi(i, a) * md.dG[(l * n + a) * n + b] *
                                     md.dGinv[(k * n + b) * n + jj];
                            }
                        md.d2Ginv[((k * n + l) * n + i) * n + jj] = s;
                    }
        // del_l del_m Gamma^k_ij
        md.d2Gamma.resize(static_cast<size_t>(n) * n * n * n * n);
        auto d2A = [&](int l, int m, int i, int jj, int q) {
            return md.d3G[(((l * n + m) * n + i) * n + jj) * n + q] +
                   md.d3G[(((l * n + m) * n + jj) * n + i) * n + q] -
                   md.d3G[(((l * n + m) * n + q) * n + i) * n + jj];
        };
        for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
                for (int k = 0; k < n; ++k)
                    for (int i = 0; i < n; ++i)
                        for (int jj = 0; jj < n; ++jj) {
                            double s = 0;
                            for (int q = 0; q < n; ++q) {
                                s += md.d2Ginv[((l * n + m) * n + k) * n + q] * A(i, jj, q);
                                s += md.dGinv[(m * n + k) * n + q] * dA(l, i, jj, q);
                                s += md.dGinv[(l * n + k) * n + q] * dA(m, i, jj, q);
                                s += gi(k, q) * d2A(l, m, i, jj, q);
                            }
                            md.d2Gamma[(((l * n + m) * n + k) * n + i) * n + jj] = 0.5 * s;
                        }
    }
    return md;
}

namespace {

PointValue make_pv(const Point& p, Valence v, int n, std::vector<double> comps) {
    PointValue pv;
    pv.point = p;
    pv.valence = v;
    pv.dim = n;
    pv.comps = std::move(comps);
    if (!pv.finite()) throw Error("non-finite tensor components");
    return pv;
}

std::vector<double> ricci_from(const MetricData& md) {
    const int n = md.n;
    std::vector<double> ric(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int k = 0; k < n; ++k) {
                s += md.dGm(k, k, i, j) - md.dGm(i, k, k, j);
                for (int l = 0; l < n; ++l)
                    s += md.Gm(k, k, l) * md.Gm(l, i, j) - md.Gm(k, i, l) * md.Gm(l, k, j);
            }
            ric[i * n + j] = s;
        }
    return ric;
}

}  // namespace

PointValue christoffel(const TensorField& g, const Point& p) {
    MetricData md = metric_data(g, p, 1);
    return make_pv(p, {2, 1}, md.n, md.Gamma);
}

PointValue ricci(const TensorField& g, const Point& p) {
    MetricData md = metric_data(g, p, 2);
    return make_pv(p, {2, 0}, md.n, ricci_from(md));
}

double scalar_curvature(const TensorField& g, const Point& p) {
    MetricData md = metric_data(g, p, 2);
    auto ric = ricci_from(md);
    double r = 0;
    for (int i = 0; i < md.n; ++i)
        for (int j = 0; j < md.n; ++j) r += md.gi(i, j) * ric[i * md.n + j];
    return r;
}

void ricci_with_derivatives(const MetricData& md, std::vector<double>& ric,
                            std::vector<double>& dric) {
    if (md.order < 3) throw Error("ricci derivatives need order-3 metric data");
    const int n = md.n;
    ric = ricci_from(md);
    dric.assign(static_cast<size_t>(n) * n * n, 0.0);
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0;
                for (int k = 0; k < n; ++k) {
                    s += md.d2Gamma[(((m * n + k) * n + k) * n + i) * n + j] -
                         md.d2Gamma[(((m * n + i) * n + k) * n + k) * n + j];
                    for (int l = 0; l < n; ++l) {
                        s += md.dGm(m, k, k, l) * md.Gm(l, i, j) + md.Gm(k, k, l) * md.dGm(m, l, i, j);
                        s -= md.dGm(m, k, i, l) * md.Gm(l, k, j) + md.Gm(k, i, l) * md.dGm(m, l, k, j);
                    }
                }
                dric[(m * n + i) * n + j] = s;
            }
}

PointValue bianchi_divergence(const TensorField& g, const Point& p) {
    MetricData md = metric_data(g, p, 3);
    const int n = md.n;
    std::vector<double> ric, dric;
    ricci_with_derivatives(md, ric, dric);

    double R = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R += md.gi(i, j) * ric[i * n + j];
    std::vector<double> dR(n, 0.0);
    for (int m = 0; m < n; ++m) {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s += md.dGinv[(m * n + i) * n + j] * ric[i * n + j] +
                     md.gi(i, j) * dric[(m * n + i) * n + j];
        dR[m] = s;
    }

    // del_k Ric_ij = dric - Gamma^l_ki Ric_lj - Gamma^l_kj Ric_il
    auto covd_ric = [&](int k, int i, int j) {
        double s = dric[(k * n + i) * n + j];
        for (int l = 0; l < n; ++l)
            s -= md.Gm(l, k, i) * ric[l * n + j] + md.Gm(l, k, j) * ric[i * n + l];
        return s;
    };

    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) s += md.gi(j, k) * covd_ric(k, i, j);
        out[i] = s - 0.5 * dR[i];
    }
    return make_pv(p, {1, 0}, n, std::move(out));
}

PointValue covariant_derivative_one_form(const TensorField& X, const TensorField& g,
                                         const Point& p) {
    if (X.valence().cov != 1 || X.valence().con != 0) throw Error("expected a 1-form");
    if (!X.chart().same_layout(g.chart())) throw Error("fields live on different charts");
    MetricData md = metric_data(g, p, 1);
    const int n = md.n;
    FieldJets xj;
    X.eval(p, 1, xj);
    std::vector<double> out(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = xj.D1(i, j);
            for (int k = 0; k < n; ++k) s -= md.Gm(k, i, j) * xj.comp(k);
            out[i * n + j] = s;
        }
    return make_pv(p, {2, 0}, n, std::move(out));
}

PointValue lie_derivative_metric(const TensorField& X, const TensorField& g, const Point& p) {
    PointValue cd = covariant_derivative_one_form(X, g, p);
    const int n = cd.dim;
    std::vector<double> out(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i * n + j] = cd.comps[i * n + j] + cd.comps[j * n + i];
    return make_pv(p, {2, 0}, n, std::move(out));
}

PointValue exterior_derivative(const TensorField& omega, const Point& p) {
    const Valence v = omega.valence();
    if (v.con != 0) throw Error("exterior derivative expects a covariant form");
    const int k = v.cov;
    const int n = omega.dim();
    if (k + 1 > n) throw Error("form degree exceeds chart dimension");
    FieldJets j;
    omega.eval(p, 1, j);
    const int outrank = k + 1;
    int nout = 1;
    for (int r = 0; r < outrank; ++r) nout *= n;
    std::vector<double> out(nout, 0.0);
    std::vector<int> idx(outrank, 0);
    for (int flat = 0; flat < nout; ++flat) {
        int t = flat;
        for (int r = outrank - 1; r >= 0; --r) {
            idx[r] = t % n;
            t /= n;
        }
        double s = 0;
        std::vector<int> rest(k);
        for (int drop = 0; drop < outrank; ++drop) {
            int w = 0;
            for (int r = 0; r < outrank; ++r)
                if (r != drop) rest[w++] = idx[r];
            int cflat = 0;
            for (int r = 0; r < k; ++r) cflat = cflat * n + rest[r];
            const double term = j.D1(idx[drop], cflat);
            s += (drop % 2 == 0) ? term : -term;
        }
        out[flat] = s;
    }
    return make_pv(p, {k + 1, 0}, n, std::move(out));
}

double divergence(const TensorField& X, const TensorField& g, const Point& p) {
    PointValue cd = covariant_derivative_one_form(X, g, p);
    MetricData md = metric_data(g, p, 0);
    const int n = md.n;
    double s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += md.gi(i, j) * cd.comps[i * n + j];
    return s;
}

PointValue hessian(const TensorField& f, const TensorField& g, const Point& p) {
    if (f.valence().total() != 0) throw Error("hessian expects a scalar field");
    MetricData md = metric_data(g, p, 1);
    const int n = md.n;
    FieldJets fj;
    f.eval(p, 2, fj);
    std::vector<double> out(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = fj.D2(i, j, 0);
            for (int k = 0; k < n; ++k) s -= md.Gm(k, i, j) * fj.D1(k, 0);
            out[i * n + j] = s;
        }
    return make_pv(p, {2, 0}, n, std::move(out));
}

double laplacian(const TensorField& f, const TensorField& g, const Point& p) {
    PointValue h = hessian(f, g, p);
    MetricData md = metric_data(g, p, 0);
    const int n = md.n;
    double s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += md.gi(i, j) * h.comps[i * n + j];
    return s;
}

PointValue rough_laplacian(const TensorField& X, const TensorField& g, const Point& p) {
    if (X.valence().cov != 1 || X.valence().con != 0) throw Error("expected a 1-form");
    MetricData md = metric_data(g, p, 2);
    const int n = md.n;
    FieldJets xj;
    X.eval(p, 2, xj);
    // del_j del_k X_i = d_j(covd X)_{ki} - Gamma^l_jk (covd X)_{li} - Gamma^l_ji (covd X)_{kl}
    auto covd = [&](int k, int i) {
        double s = xj.D1(k, i);
        for (int l = 0; l < n; ++l) s -= md.Gm(l, k, i) * xj.comp(l);
        return s;
    };
    auto dcovd = [&](int j, int k, int i) {
        double s = xj.D2(j, k, i);
        for (int l = 0; l < n; ++l)
            s -= md.dGm(j, l, k, i) * xj.comp(l) + md.Gm(l, k, i) * xj.D1(j, l);
        return s;
    };
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double t = dcovd(j, k, i);
                for (int l = 0; l < n; ++l)
                    t -= md.Gm(l, j, k) * covd(l, i) + md.Gm(l, j, i) * covd(k, l);
                s += md.gi(j, k) * t;
            }
        out[i] = s;
    }
    return make_pv(p, {1, 0}, n, std::move(out));
}

double orthonormal_norm(const PointValue& t, const TensorField& g, const Point& p) {
    if (g.chart().signature() != Signature::Riemannian)
        throw Error("orthonormal norm needs a Riemannian metric; use the sup-norm variant");
    MetricData md = metric_data(g, p, 0);
    const int n = md.n;
    const int rank = t.rank();
    if (rank == 0) return std::abs(t.comps[0]);
    // raise covariant slots / lower contravariant slots one index at a time
    std::vector<double> cur = t.comps, next(t.comps.size());
    int stride_unit = 1;
    for (int slot = rank - 1; slot >= 0; --slot) {
        const bool contrav = slot < t.valence.con;  // contravariant slots first
        const int block = stride_unit * n;
        for (size_t base = 0; base < cur.size(); base += block)
            for (int r = 0; r < stride_unit; ++r)
                for (int i = 0; i < n; ++i) {
                    double s = 0;
                    for (int j = 0; j < n; ++j) {
                        const double m = contrav ? md.g(i, j) : md.gi(i, j);
                        s += m * cur[base + j * stride_unit + r];
                    }
                    next[base + i * stride_unit + r] = s;
                }
        cur.swap(next);
        stride_unit *= n;
    }
    double s = 0;
    for (size_t a = 0; a < cur.size(); ++a) s += cur[a] * t.comps[a];
    if (s < 0 && s > -1e-14) s = 0;
    if (s < 0) throw Error("orthonormal norm: negative square (metric not Riemannian at point?)");
    return std::sqrt(s);
}

double sup_norm(const PointValue& t) {
    double m = 0;
    for (double v : t.comps) m = std::max(m, std::abs(v));
    return m;
}

double norm_sq_one_form(const TensorField& X, const TensorField& g, const Point& p) {
    MetricData md = metric_data(g, p, 0);
    FieldJets xj;
    X.eval(p, 0, xj);
    double s = 0;
    for (int i = 0; i < md.n; ++i)
        for (int j = 0; j < md.n; ++j) s += md.gi(i, j) * xj.comp(i) * xj.comp(j);
    return s;
}

// ---------------------------------------------------------------------------
// Jet2 algebra
// ---------------------------------------------------------------------------

Jet2 Jet2::constant(int n, double c) {
    Jet2 j;
    j.n = n;
    j.v = c;
    return j;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v += b.v;
    for (int i = 0; i < a.n; ++i) r.d[i] += b.d[i];
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r.D2(i, j) += b.D2(i, j);
    return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v -= b.v;
    for (int i = 0; i < a.n; ++i) r.d[i] -= b.d[i];
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r.D2(i, j) -= b.D2(i, j);
    return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.n = a.n;
    r.v = a.v * b.v;
    for (int i = 0; i < a.n; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            r.D2(i, j) = a.D2(i, j) * b.v + a.d[i] * b.d[j] + a.d[j] * b.d[i] + a.v * b.D2(i, j);
    return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.n = a.n;
    const double ib = 1.0 / b.v;
    r.v = a.v * ib;
    for (int i = 0; i < a.n; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * ib;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            r.D2(i, j) =
                (a.D2(i, j) - r.d[i] * b.d[j] - r.d[j] * b.d[i] - r.v * b.D2(i, j)) * ib;
    return r;
}

Jet2 operator*(double s, const Jet2& a) {
    Jet2 r = a;
    r.v *= s;
    for (int i = 0; i < a.n; ++i) r.d[i] *= s;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r.D2(i, j) *= s;
    return r;
}

Jet2 operator+(const Jet2& a, double c) {
    Jet2 r = a;
    r.v += c;
    return r;
}

Jet2 operator-(const Jet2& a, double c) {
    Jet2 r = a;
    r.v -= c;
    return r;
}

Jet2 jet2_component(const FieldJets& j, int c) {
    if (j.n > 5) throw Error("jet algebra supports chart dimensions up to 5");
    Jet2 r;
    r.n = j.n;
    r.v = j.comp(c);
    for (int i = 0; i < j.n; ++i) r.d[i] = j.D1(i, c);
    for (int i = 0; i < j.n; ++i)
        for (int k = 0; k < j.n; ++k) r.D2(i, k) = j.D2(i, k, c);
    return r;
}

Jet2 jet2_d1_component(const FieldJets& j, int k, int c) {
    if (j.order < 3) throw Error("jet of a derivative needs an order-3 evaluation");
    Jet2 r;
    r.n = j.n;
    r.v = j.D1(k, c);
    for (int i = 0; i < j.n; ++i) r.d[i] = j.D2(i, k, c);
    for (int i = 0; i < j.n; ++i)
        for (int l = 0; l < j.n; ++l) r.D2(i, l) = j.D3(i, l, k, c);
    return r;
}

InverseJets inverse_metric_jets(const FieldJets& gj) {
    const int n = gj.n;
    InverseJets out;
    out.n = n;
    out.gi.assign(static_cast<size_t>(n) * n, Jet2::constant(n, 0));
    // value part
    std::vector<double> gi(n * n);
    double det;
    invert_matrix(n, gj.v.data(), gi.data(), &det);
    // first derivative: dGI_k = -GI dG_k GI
    // second: d2GI_{kl} = GI dG_l GI dG_k GI + GI dG_k GI dG_l GI - GI d2G_{kl} GI
    auto g1 = [&](int k, int a, int b) { return gj.D1(k, a * n + b); };
    auto g2 = [&](int k, int l, int a, int b) { return gj.D2(k, l, a * n + b); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet2& J = out.gi[i * n + j];
            J.n = n;
            J.v = gi[i * n + j];
            for (int k = 0; k < n; ++k) {
                double s = 0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) s -= gi[i * n + a] * g1(k, a, b) * gi[b * n + j];
                J.d[k] = s;
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet2& J = out.gi[i * n + j];
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double s = 0;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) {
                            s -= out.gi[i * n + a].d[l] * g1(k, a, b) * gi[b * n + j];
                            s -= gi[i * n + a] * g2(k, l, a, b) * gi[b * n + j];
                            s -= gi[i * n + a] * g1(k, a, b) * out.gi[b * n + j].d[l];
                        }
                    J.D2(k, l) = s;
                }
        }
    return out;
}

}  // namespace qev
