#include "qev/matter.hpp"

#include <cmath>

namespace qev {

PointValue maxwell_stress(const TensorField& F, const TensorField& g_lorentz, const Point& p) {
    if (F.valence().cov != 2) throw Error("maxwell stress expects a 2-form");
    const int n = g_lorentz.dim();
    MetricData md = metric_data(g_lorentz, p, 0);
    FieldJets fj;
    F.eval(p, 0, fj);
    auto Fv = [&](int a, int b) { return fj.comp(a * n + b); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (std::abs(Fv(a, b) + Fv(b, a)) > 1e-12)
                throw Error("maxwell stress: 2-form is not antisymmetric");
    double F2 = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    F2 += Fv(a, b) * md.gi(a, c) * md.gi(b, d) * Fv(c, d);
    PointValue out;
    out.point = p;
    out.valence = {2, 0};
    out.dim = n;
    out.comps.resize(static_cast<size_t>(n) * n);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            double ff = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) ff += Fv(mu, a) * md.gi(a, b) * Fv(nu, b);
            out.comps[mu * n + nu] = 2.0 * (ff - 0.25 * md.g(mu, nu) * F2);
        }
    if (!out.finite()) throw Error("non-finite stress components");
    return out;
}

namespace {

// del_k T_ij at p, from order-1 data
std::vector<double> covd_T(const MetricData& md, const FieldJets& tj) {
    const int n = md.n;
    std::vector<double> out(static_cast<size_t>(n) * n * n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = tj.D1(k, i * n + j);
                for (int l = 0; l < n; ++l)
                    s -= md.Gm(l, k, i) * tj.comp(l * n + j) + md.Gm(l, k, j) * tj.comp(i * n + l);
                out[(k * n + i) * n + j] = s;
            }
    return out;
}

}  // namespace

PointValue beta(const MatterBundle& bundle, const TensorField& X, const TensorField& g,
                const Point& p) {
    const int n = g.dim();
    MetricData md = metric_data(g, p, 1);
    FieldJets tj, xj, pj;
    bundle.T.eval(p, 1, tj);
    X.eval(p, 0, xj);
    bundle.Tpm.eval(p, 0, pj);
    auto cdT = covd_T(md, tj);
    PointValue out;
    out.point = p;
    out.valence = {1, 0};
    out.dim = n;
    out.comps.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                s -= md.gi(j, k) * cdT[(k * n + j) * n + i];   // -del^j T_ji
                s += tj.comp(i * n + j) * md.gi(j, k) * xj.comp(k);  // T_ij X^j
            }
        s -= pj.comp(0) * xj.comp(i);
        out.comps[i] = s;
    }
    return out;
}

double beta_divergence(const MatterBundle& bundle, const TensorField& X, const TensorField& g,
                       const Point& p) {
    // div beta = g^{ab} (d_a beta_b - Gamma^c_ab beta_c) with d_a beta taken
    // by differentiating the closed-form expression through order-2 data
    const int n = g.dim();
    MetricData md = metric_data(g, p, 2);
    FieldJets tj, xj, pj, gj;
    bundle.T.eval(p, 2, tj);
    X.eval(p, 1, xj);
    bundle.Tpm.eval(p, 1, pj);
    g.eval(p, 2, gj);

    auto beta_at = [&](const MetricData& m2, const FieldJets& t2, const FieldJets& x2,
                       const FieldJets& p2, int i) {
        double s = 0;
        auto cdT = covd_T(m2, t2);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                s -= m2.gi(j, k) * cdT[(k * n + j) * n + i];
                s += t2.comp(i * n + j) * m2.gi(j, k) * x2.comp(k);
            }
        s -= p2.comp(0) * x2.comp(i);
        return s;
    };

    // d_a beta_i: differentiate term by term
    auto dbeta = [&](int a, int i) {
        double s = 0;
        // -d_a [ g^{jk} (d_k T_ji - Gamma T - Gamma T) ]
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double gijk = md.gi(j, k);
                const double dgi = md.dGinv[(a * n + j) * n + k];
                double cd = tj.D1(k, j * n + i);
                for (int l = 0; l < n; ++l)
                    cd -= md.Gm(l, k, j) * tj.comp(l * n + i) + md.Gm(l, k, i) * tj.comp(j * n + l);
                double dcd = tj.D2(a, k, j * n + i);
                for (int l = 0; l < n; ++l) {
                    dcd -= md.dGm(a, l, k, j) * tj.comp(l * n + i) +
                           md.Gm(l, k, j) * tj.D1(a, l * n + i);
                    dcd -= md.dGm(a, l, k, i) * tj.comp(j * n + l) +
                           md.Gm(l, k, i) * tj.D1(a, j * n + l);
                }
                s -= dgi * cd + gijk * dcd;
                // + d_a [ T_ij g^{jk} X_k ]
                s += tj.D1(a, i * n + j) * gijk * xj.comp(k) + tj.comp(i * n + j) * dgi * xj.comp(k) +
                     tj.comp(i * n + j) * gijk * xj.D1(a, k);
            }
        // - d_a [ Tpm X_i ]
        s -= pj.D1(a, 0) * xj.comp(i) + pj.comp(0) * xj.D1(a, i);
        return s;
    };

    double div = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double t = dbeta(a, b);
            for (int c = 0; c < n; ++c) {
                // beta_c value
                double bc = beta_at(md, tj, xj, pj, c);
                t -= md.Gm(c, a, b) * bc;
            }
            div += md.gi(a, b) * t;
        }
    return div;
}

PointValue reconstruct_stress(const MatterBundle& bundle, const TensorField& X,
                              const TensorField& Y, const TensorField& g, const Point& p_st) {
    // spacetime point (v, r, x...) over the cross-section chart of g
    const int n = g.dim();
    const int N = n + 2;
    const double r = p_st[1];
    Point x(p_st.begin() + 2, p_st.end());

    FieldJets tj, xj, pj, yj;
    bundle.T.eval(x, 0, tj);
    X.eval(x, 0, xj);
    bundle.Tpm.eval(x, 0, pj);
    Y.eval(x, 0, yj);
    PointValue b = beta(bundle, X, g, x);
    const double divb = beta_divergence(bundle, X, g, x);

    PointValue out;
    out.point = p_st;
    out.valence = {2, 0};
    out.dim = N;
    out.comps.assign(static_cast<size_t>(N) * N, 0.0);
    auto set = [&](int a, int c, double v) {
        out.comps[a * N + c] = v;
        out.comps[c * N + a] = v;
    };
    const double Tpm = pj.comp(0);
    set(0, 1, Tpm);
    MetricData md = metric_data(g, x, 0);
    double Xb = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Xb += md.gi(i, j) * xj.comp(i) * b.comps[j];
    set(0, 0, r * r * (Tpm * yj.comp(0) - 0.5 * divb + Xb));
    for (int i = 0; i < n; ++i) set(0, 2 + i, r * (b.comps[i] + Tpm * xj.comp(i)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.comps[(2 + i) * N + (2 + j)] = tj.comp(i * n + j);
    return out;
}

double matter_qe_residual_at(const TensorField& g, const TensorField& X,
                             const MatterBundle& bundle, double lambda, const Point& p) {
    const int n = g.dim();
    MetricData md = metric_data(g, p, 0);
    PointValue ric = ricci(g, p);
    PointValue cdx = covariant_derivative_one_form(X, g, p);
    FieldJets xj, tj, pj;
    X.eval(p, 0, xj);
    bundle.T.eval(p, 0, tj);
    bundle.Tpm.eval(p, 0, pj);
    double trT = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) trT += md.gi(a, b) * tj.comp(a * n + b);
    PointValue res;
    res.point = p;
    res.valence = {2, 0};
    res.dim = n;
    res.comps.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double tf = tj.comp(i * n + j) - (trT / n) * md.g(i, j);
            res.comps[i * n + j] = ric.comps[i * n + j] + cdx.comps[i * n + j] -
                                   0.5 * xj.comp(i) * xj.comp(j) - tf +
                                   (2.0 / n) * pj.comp(0) * md.g(i, j) - lambda * md.g(i, j);
        }
    return orthonormal_norm(res, g, p);
}

VerificationReport matter_qe_residual(const TensorField& g, const TensorField& X,
                                      const MatterBundle& bundle, double lambda,
                                      const Grid& grid) {
    VerificationReport r;
    r.check = "matter-qe-residual";
    r.anchor = "eq-4.13";
    r.grid = grid.shape_string();
    r.backend = g.analytic() ? "analytic" : "fd";
    r.h = g.analytic() ? 0.0 : g.fd_step();
    r.tolerance = backend_tolerance(g);
    SweepAccumulator res, dx;
    grid.for_each([&](const Point& p, std::int64_t) {
        res.add(p, matter_qe_residual_at(g, X, bundle, lambda, p));
        PointValue d = exterior_derivative(X, p);
        dx.add(p, orthonormal_norm(d, g, p));
    });
    r.residual_max = std::max(res.max(), dx.max());
    r.residual_mean = res.mean();
    r.max_location = res.argmax();
    r.metrics["tensor_max"] = res.max();
    r.metrics["dX_max"] = dx.max();
    r.finalize();
    return r;
}

VerificationReport matter_Y_and_lemma41(const TensorField& g, const TensorField& X,
                                        const MatterBundle& bundle, double lambda,
                                        const Grid& grid) {
    VerificationReport r;
    r.check = "matter-potential-identities";
    r.anchor = "lemma-4.1";
    r.grid = grid.shape_string();
    r.backend = g.analytic() ? "analytic" : "fd";
    r.h = g.analytic() ? 0.0 : g.fd_step();
    const int n = g.dim();

    VerificationReport base = matter_qe_residual(g, X, bundle, lambda, grid);
    r.metrics["input_residual"] = base.residual_max;
    if (base.residual_max > backend_tolerance(g)) {
        r.status = "hypotheses-failed";
        r.message = "inputs do not satisfy the reduced matter system within tolerance";
    }

    // Y from the constraint, with backend-accurate derivatives
    const TensorField T = bundle.T, Tpm = bundle.Tpm, gc = g, Xc = X;
    auto yfn = [gc, Xc, T, Tpm, lambda, n](const Point& p, int order, FieldJets& out) {
        FieldJets gj, xj, tj, pj;
        gc.eval(p, 3, gj);
        Xc.eval(p, 3, xj);
        T.eval(p, 3, tj);
        Tpm.eval(p, 2, pj);
        InverseJets gi = inverse_metric_jets(gj);
        Jet2 x2 = Jet2::constant(n, 0), div = Jet2::constant(n, 0), trT = Jet2::constant(n, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                x2 = x2 + gi(a, b) * jet2_component(xj, a) * jet2_component(xj, b);
                trT = trT + gi(a, b) * jet2_component(tj, a * n + b);
                Jet2 covd = jet2_d1_component(xj, a, b);
                for (int c = 0; c < n; ++c) {
                    Jet2 gm = Jet2::constant(n, 0);
                    for (int d = 0; d < n; ++d) {
                        Jet2 t = jet2_d1_component(gj, a, b * n + d) +
                                 jet2_d1_component(gj, b, a * n + d) -
                                 jet2_d1_component(gj, d, a * n + b);
                        gm = gm + gi(c, d) * t;
                    }
                    covd = covd - 0.5 * gm * jet2_component(xj, c);
                }
                div = div + gi(a, b) * covd;
            }
        Jet2 tpm = jet2_component(pj, 0);
        Jet2 Y = 0.5 * x2 - 0.5 * div + (double(n - 2) / n) * tpm - (1.0 / n) * trT + lambda;
        out.n = n;
        out.ncomp = 1;
        out.order = order;
        out.v = {Y.v};
        if (order >= 1) {
            out.d1.resize(n);
            for (int i = 0; i < n; ++i) out.d1[i] = Y.d[i];
        }
        if (order >= 2) {
            out.d2.resize(static_cast<size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) out.d2[i * n + k] = Y.D2(i, k);
        }
    };
    TensorField Yf = make_derived_scalar(g.chart(), yfn, g.analytic() && X.analytic(),
                                         g.fd_step());

    SweepAccumulator grad_eq, scalar_eq, yvals;
    grid.for_each([&](const Point& p, std::int64_t) {
        MetricData md = metric_data(g, p, 0);
        FieldJets yj, xj;
        Yf.eval(p, 1, yj);
        X.eval(p, 0, xj);
        PointValue rho;
        rho.point = p;
        rho.valence = {1, 0};
        rho.dim = n;
        rho.comps.resize(n);
        for (int i = 0; i < n; ++i) rho.comps[i] = yj.D1(i, 0) - yj.comp(0) * xj.comp(i);
        grad_eq.add(p, orthonormal_norm(rho, g, p));
        const double lap = laplacian(Yf, g, p);
        const double div = divergence(X, g, p);
        const double x2 = norm_sq_one_form(X, g, p);
        double gradXY = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) gradXY += md.gi(a, b) * xj.comp(a) * yj.D1(b, 0);
        scalar_eq.add(p, lap - 3 * gradXY - yj.comp(0) * div + 2 * yj.comp(0) * x2);
        yvals.add(p, yj.comp(0));
    });
    r.metrics["grad_identity_max"] = grad_eq.max();
    r.metrics["scalar_identity_max"] = scalar_eq.max();
    r.metrics["Y_mean"] = pairwise_sum(yvals.values) / double(yvals.values.size());
    r.residual_max = std::max(grad_eq.max(), scalar_eq.max());
    r.residual_mean = 0.5 * (grad_eq.mean() + scalar_eq.mean());
    r.max_location = grad_eq.max() > scalar_eq.max() ? grad_eq.argmax() : scalar_eq.argmax();
    r.tolerance = std::min(base.residual_max, backend_tolerance(g)) + backend_tolerance(g);
    r.finalize();
    return r;
}

VerificationReport theorem42_reduction(const TensorField& g, const TensorField& X,
                                       const MatterBundle& bundle, double lambda,
                                       const Grid& grid) {
    VerificationReport r;
    r.check = "trace-matter-reduction";
    r.anchor = "thm-4.2";
    r.grid = grid.shape_string();
    r.backend = g.analytic() ? "analytic" : "fd";
    r.h = g.analytic() ? 0.0 : g.fd_step();
    r.tolerance = backend_tolerance(g);
    const int n = g.dim();

    // preconditions: tracefree part of T vanishes; Tpm constant
    SweepAccumulator tf_acc;
    double tpm_min = 1e300, tpm_max = -1e300;
    std::vector<double> tpm_vals;
    grid.for_each([&](const Point& p, std::int64_t) {
        MetricData md = metric_data(g, p, 0);
        FieldJets tj, pj;
        bundle.T.eval(p, 0, tj);
        bundle.Tpm.eval(p, 0, pj);
        double trT = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) trT += md.gi(a, b) * tj.comp(a * n + b);
        PointValue tf;
        tf.point = p;
        tf.valence = {2, 0};
        tf.dim = n;
        tf.comps.resize(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                tf.comps[i * n + j] = tj.comp(i * n + j) - (trT / n) * md.g(i, j);
        tf_acc.add(p, orthonormal_norm(tf, g, p));
        tpm_min = std::min(tpm_min, pj.comp(0));
        tpm_max = std::max(tpm_max, pj.comp(0));
        tpm_vals.push_back(pj.comp(0));
    });
    r.metrics["tracefree_T_max"] = tf_acc.max();
    r.metrics["Tpm_variation"] = tpm_max - tpm_min;
    if (tf_acc.max() > backend_tolerance(g)) {
        r.status = "error";
        r.message = "precondition failed: tracefree part of T nonzero";
        return r;
    }
    if (tpm_max - tpm_min > backend_tolerance(g)) {
        r.status = "error";
        r.message = "precondition failed: Tpm is not constant";
        return r;
    }
    const double tpm = pairwise_sum(tpm_vals) / double(tpm_vals.size());
    const double lam_t = lambda - (2.0 / n) * tpm;
    r.metrics["tilde_lambda"] = lam_t;

    SweepAccumulator res;
    grid.for_each([&](const Point& p, std::int64_t) {
        MetricData md = metric_data(g, p, 0);
        PointValue ric = ricci(g, p);
        PointValue cdx = covariant_derivative_one_form(X, g, p);
        FieldJets xj;
        X.eval(p, 0, xj);
        PointValue t;
        t.point = p;
        t.valence = {2, 0};
        t.dim = n;
        t.comps.resize(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                t.comps[i * n + j] = ric.comps[i * n + j] + cdx.comps[i * n + j] -
                                     0.5 * xj.comp(i) * xj.comp(j) - lam_t * md.g(i, j);
        res.add(p, orthonormal_norm(t, g, p));
    });
    r.residual_max = res.max();
    r.residual_mean = res.mean();
    r.max_location = res.argmax();

    // cross-check against the full matter residual
    VerificationReport full = matter_qe_residual(g, X, bundle, lambda, grid);
    r.metrics["matter_residual_max"] = full.metrics["tensor_max"];
    r.metrics["cross_check_gap"] = std::abs(full.metrics["tensor_max"] - res.max());
    r.finalize();
    return r;
}

}  // namespace qev
