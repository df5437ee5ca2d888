#include "qev/nhg.hpp"

#include <cmath>
#include <limits>

namespace qev {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TensorField assemble_nhg(const NHGBundle& bundle, double r_half_width) {
    if (bundle.base.m != 2) throw Error("horizon assembly needs the m = 2 problem");
    const Chart& M = bundle.base.g.chart();
    const int n = M.dim();
    std::vector<Chart::Coord> cs{{"v", 0, 2 * kPi, true}, {"r", -r_half_width, r_half_width, false}};
    for (const auto& c : M.coords()) cs.push_back(c);
    Chart st(cs, Signature::Lorentzian);

    const auto& gex = field_exprs(bundle.base.g);
    const auto& xex = field_exprs(bundle.base.X);
    const auto& yex = field_exprs(bundle.Y);
    const int N = n + 2;
    std::vector<Expr> comps(static_cast<size_t>(N) * N, Expr::num(0));
    Expr r = Expr::coord(1);
    comps[0 * N + 0] = r * r * yex[0].shift_coords(2);
    comps[0 * N + 1] = Expr::num(1);
    comps[1 * N + 0] = Expr::num(1);
    for (int i = 0; i < n; ++i) {
        Expr xi = r * xex[i].shift_coords(2);
        comps[0 * N + (2 + i)] = xi;
        comps[(2 + i) * N + 0] = xi;
        for (int j = 0; j < n; ++j)
            comps[(2 + i) * N + (2 + j)] = gex[i * n + j].shift_coords(2);
    }
    TensorField out = make_expr_field(st, {2, 0}, comps);

    // reject r-ranges where the assembled metric degenerates
    for (const auto& p : random_interior_points(st, 8, 0x5bd1e995u)) {
        FieldJets j;
        out.eval(p, 0, j);
        std::vector<double> inv(static_cast<size_t>(N) * N);
        double det = 0;
        invert_matrix(N, j.v.data(), inv.data(), &det);
        if (det >= 0) throw Error("assembled metric degenerate on the chosen r-range");
    }
    return out;
}

VerificationReport einstein_residual(const TensorField& g_lorentz, double Lambda,
                                     const Grid& grid) {
    VerificationReport r;
    r.check = "einstein-residual";
    r.anchor = "eq-2.1";
    r.grid = grid.shape_string();
    r.backend = g_lorentz.analytic() ? "analytic" : "fd";
    r.h = g_lorentz.analytic() ? 0.0 : g_lorentz.fd_step();
    r.tolerance = g_lorentz.analytic() ? analytic_tolerance() : fd_tolerance(g_lorentz.fd_step());
    r.metrics["Lambda"] = Lambda;
    r.message = "component sup-norm (lorentzian chart)";

    SweepAccumulator acc;
    const int n = g_lorentz.dim();
    grid.for_each([&](const Point& p, std::int64_t) {
        MetricData md = metric_data(g_lorentz, p, 2);
        PointValue ric = ricci(g_lorentz, p);
        double R = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) R += md.gi(i, j) * ric.comps[i * n + j];
        double worst = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                worst = std::max(worst, std::abs(ric.comps[i * n + j] -
                                                 0.5 * R * md.g(i, j) + Lambda * md.g(i, j)));
        acc.add(p, worst);
    });
    r.residual_max = acc.max();
    r.residual_mean = acc.mean();
    r.max_location = acc.argmax();
    r.finalize();
    return r;
}

HorizonSystemResiduals general_nhg_at(const TensorField& g, const TensorField& X,
                                      const TensorField& Y, double lambda, const Point& p) {
    const int n = g.dim();
    HorizonSystemResiduals out;
    MetricData md = metric_data(g, p, 2);
    FieldJets yj, xj;
    Y.eval(p, 2, yj);
    X.eval(p, 2, xj);
    const double x2 = norm_sq_one_form(X, g, p);
    const double div = divergence(X, g, p);
    const double Yv = yj.comp(0);

    out.constraint = Yv - 0.5 * x2 + 0.5 * div - lambda;

    {
        QEProblem prob(g, X, 2.0, lambda);
        out.tensor = qe_residual_at(prob, p);
    }

    // curl of X, both index positions
    PointValue dx = exterior_derivative(X, p);
    auto dxv = [&](int i, int j) { return dx.comps[i * n + j]; };
    double dx2 = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    dx2 += md.gi(i, a) * md.gi(j, b) * dxv(i, j) * dxv(a, b);

    // scalar recurrence with the curl source
    {
        double lapY;
        {
            PointValue h = hessian(Y, g, p);
            lapY = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) lapY += md.gi(a, b) * h.comps[a * n + b];
        }
        double gradXY = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) gradXY += md.gi(a, b) * xj.comp(a) * yj.D1(b, 0);
        out.scalar = lapY - 3 * gradXY - Yv * div + 2 * Yv * x2 - 0.5 * dx2;
    }

    // one-form equation
    {
        PointValue rho;
        rho.point = p;
        rho.valence = {1, 0};
        rho.dim = n;
        rho.comps.resize(n);
        // covariant divergence of the curl: g^{jk} del_k (dx)_{ij}
        for (int i = 0; i < n; ++i) {
            double term = yj.D1(i, 0) - Yv * xj.comp(i);
            for (int j = 0; j < n; ++j)
                for (int a = 0; a < n; ++a) term -= md.gi(j, a) * xj.comp(a) * dxv(i, j);
            double divdx = 0;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double cd = xj.D2(k, i, j) - xj.D2(k, j, i);
                    for (int l = 0; l < n; ++l)
                        cd -= md.Gm(l, k, i) * dxv(l, j) + md.Gm(l, k, j) * dxv(i, l);
                    divdx += md.gi(j, k) * cd;
                }
            rho.comps[i] = term + 0.5 * divdx;
        }
        out.one_form = orthonormal_norm(rho, g, p);
    }
    return out;
}

VerificationReport general_nhg_residuals(const TensorField& g, const TensorField& X,
                                         const TensorField& Y, double lambda, const Grid& grid) {
    VerificationReport r;
    r.check = "general-nhg-residuals";
    r.anchor = "eq-2.2..2.5";
    r.grid = grid.shape_string();
    r.backend = g.analytic() ? "analytic" : "fd";
    r.h = g.analytic() ? 0.0 : g.fd_step();
    r.tolerance = backend_tolerance(g);

    SweepAccumulator e_scalar0, e_tensor, e_scalar2, e_oneform;
    grid.for_each([&](const Point& p, std::int64_t) {
        HorizonSystemResiduals hr = general_nhg_at(g, X, Y, lambda, p);
        e_scalar0.add(p, hr.constraint);
        e_tensor.add(p, hr.tensor);
        e_scalar2.add(p, hr.scalar);
        e_oneform.add(p, hr.one_form);
    });
    r.metrics["constraint_scalar_max"] = e_scalar0.max();
    r.metrics["tensor_max"] = e_tensor.max();
    r.metrics["scalar_recurrence_max"] = e_scalar2.max();
    r.metrics["one_form_max"] = e_oneform.max();
    r.residual_max = std::max({e_scalar0.max(), e_tensor.max(), e_scalar2.max(), e_oneform.max()});
    r.residual_mean = e_tensor.mean();
    r.max_location = e_tensor.argmax();
    r.finalize();
    return r;
}

LorentzianMetricFamily scaling_family(const TensorField& g_lorentz) {
    const Chart& c = g_lorentz.chart();
    if (c.dim() < 2 || c.coord(0).name != "v" || c.coord(1).name != "r")
        throw Error("scaling family needs a chart with leading coordinates (v, r)");
    const int N = c.dim();
    LorentzianMetricFamily fam;
    fam.chart = c;
    fam.member = [g_lorentz, N](double eps) {
        std::vector<double> sp(N, 1.0);
        sp[1] = eps;  // evaluate at r -> eps r; components are v-independent
        std::vector<double> lam(N, 1.0);
        lam[0] = 1.0 / eps;
        lam[1] = eps;
        std::vector<double> sc(static_cast<size_t>(N) * N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) sc[i * N + j] = lam[i] * lam[j];
        return linear_pullback(g_lorentz, sp, sc);
    };
    return fam;
}

NearHorizonLimit near_horizon_limit(const LorentzianMetricFamily& family,
                                    const std::vector<double>& eps, const Grid& grid) {
    if (eps.size() < 4) throw Error("near-horizon limit needs at least 4 scale values");
    for (size_t i = 0; i + 1 < eps.size(); ++i)
        if (!(eps[i] > eps[i + 1]) || !(eps[i + 1] > 0))
            throw Error("scale sequence must be strictly decreasing and positive");

    NearHorizonLimit out;
    VerificationReport& r = out.report;
    r.check = "near-horizon-limit";
    r.anchor = "scaling limit";
    r.grid = grid.shape_string();
    r.backend = "analytic";

    const size_t K = eps.size();
    std::vector<TensorField> members;
    members.reserve(K);
    for (double e : eps) members.push_back(family.member(e));

    // sample all members over the grid
    std::vector<std::vector<double>> vals(K);
    std::int64_t total = grid.size();
    for (size_t k = 0; k < K; ++k) {
        vals[k].reserve(total * members[k].ncomp());
        grid.for_each([&](const Point& p, std::int64_t) {
            auto v = members[k].value(p);
            vals[k].insert(vals[k].end(), v.begin(), v.end());
        });
    }

    // successive difference magnitudes
    std::vector<double> diffs(K - 1, 0.0);
    for (size_t k = 0; k + 1 < K; ++k)
        for (size_t a = 0; a < vals[k].size(); ++a)
            diffs[k] = std::max(diffs[k], std::abs(vals[k][a] - vals[k + 1][a]));

    const double floor = 1e-13;
    bool fixed_point = true;
    for (double d : diffs) fixed_point &= d < floor;

    const double e1 = eps[K - 2], e2 = eps[K - 1];
    const double rho = e2 / e1;
    const TensorField mA = members[K - 1], mB = members[K - 2];
    auto limit_fn = [mA, mB, rho](const Point& p, double* outv) {
        auto a = mA.value(p);
        auto b = mB.value(p);
        for (size_t i = 0; i < a.size(); ++i) outv[i] = (a[i] - rho * b[i]) / (1.0 - rho);
    };

    if (fixed_point) {
        out.order = std::numeric_limits<double>::infinity();
        r.metrics["order"] = out.order;
        r.message = "family is a fixed point of the scaling; limit equals the input";
        r.residual_max = 0;
        r.tolerance = floor;
        out.limit = members[K - 1];
        r.finalize();
        return out;
    }

    std::vector<double> orders;
    for (size_t k = 0; k + 2 < K; ++k) {
        if (diffs[k] < floor || diffs[k + 1] < floor) continue;
        orders.push_back(std::log(diffs[k] / diffs[k + 1]) / std::log(eps[k] / eps[k + 1]));
    }
    double order = 0;
    if (!orders.empty()) {
        for (double o : orders) order += o;
        order /= static_cast<double>(orders.size());
    }
    out.order = order;
    r.metrics["order"] = order;

    // deviation of the smallest-eps member from the extrapolant
    double dev = 0;
    {
        std::vector<double> lim(members[0].ncomp());
        std::int64_t idx = 0;
        grid.for_each([&](const Point& p, std::int64_t) {
            limit_fn(p, lim.data());
            for (int c = 0; c < members[0].ncomp(); ++c)
                dev = std::max(dev, std::abs(vals[K - 1][idx * members[0].ncomp() + c] - lim[c]));
            ++idx;
        });
    }
    r.residual_max = dev;
    r.tolerance = 10 * eps.back();
    if (order < 0.5) {
        r.status = "fail";
        r.message = "no convergence (measured order below 0.5); no limit returned";
        return out;
    }
    out.limit = make_fd_field(family.chart, members[0].valence(), limit_fn,
                              {1e-4, 3e-3});
    r.finalize();
    return out;
}

}  // namespace qev
