#include "qev/field.hpp"

#include <algorithm>
#include <cmath>

namespace qev {

double PointValue::at(std::initializer_list<int> idx) const {
    int flat = 0;
    for (int i : idx) flat = flat * dim + i;
    return comps.at(flat);
}

bool PointValue::finite() const {
    for (double v : comps)
        if (!std::isfinite(v)) return false;
    return true;
}

TensorField::TensorField(Chart chart, Valence val, std::shared_ptr<const Backend> be)
    : chart_(std::move(chart)), val_(val), be_(std::move(be)) {
    ncomp_ = 1;
    for (int r = 0; r < val_.total(); ++r) ncomp_ *= chart_.dim();
}

void TensorField::eval(const Point& p, int order, FieldJets& out) const {
    be_->eval(p, order, out);
}

std::vector<double> TensorField::value(const Point& p) const {
    FieldJets j;
    eval(p, 0, j);
    return j.v;
}

PointValue TensorField::value_pv(const Point& p) const {
    PointValue pv;
    pv.point = p;
    pv.valence = val_;
    pv.dim = dim();
    pv.comps = value(p);
    return pv;
}

// ---------------------------------------------------------------------------
// Expression backend: symbolic derivatives compiled to tapes; first
// derivatives built eagerly, higher orders on first use.
// ---------------------------------------------------------------------------

namespace {

class ExprBackend final : public Backend {
  public:
    ExprBackend(std::vector<Expr> comps, int n) : n_(n), exprs_(std::move(comps)) {
        const int nc = static_cast<int>(exprs_.size());
        val_.reserve(nc);
        for (const auto& e : exprs_) val_.emplace_back(e);
        d1_.resize(static_cast<size_t>(n_) * nc);
        for (int i = 0; i < n_; ++i)
            for (int c = 0; c < nc; ++c) {
                dex1_.push_back(exprs_[c].diff(i));
                d1_[i * nc + c] = CompiledExpr(dex1_.back());
            }
    }

    void eval(const Point& p, int order, FieldJets& out) const override {
        const int nc = static_cast<int>(exprs_.size());
        out.n = n_;
        out.ncomp = nc;
        out.order = order;
        out.v.resize(nc);
        for (int c = 0; c < nc; ++c) out.v[c] = val_[c](p);
        if (order >= 1) {
            out.d1.resize(d1_.size());
            for (size_t k = 0; k < d1_.size(); ++k) out.d1[k] = d1_[k](p);
        }
        if (order >= 2) {
            ensure2();
            out.d2.resize(static_cast<size_t>(n_) * n_ * nc);
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    const int ij = i <= j ? tri(i, j) : tri(j, i);
                    for (int c = 0; c < nc; ++c)
                        out.d2[(i * n_ + j) * nc + c] = d2_[ij * nc + c](p);
                }
        }
        if (order >= 3) {
            ensure3();
            out.d3.resize(static_cast<size_t>(n_) * n_ * n_ * nc);
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    for (int k = 0; k < n_; ++k) {
                        int a = i, b = j, c3 = k;
                        if (a > b) std::swap(a, b);
                        if (b > c3) std::swap(b, c3);
                        if (a > b) std::swap(a, b);
                        const int t = tri3(a, b, c3);
                        for (int c = 0; c < nc; ++c)
                            out.d3[((i * n_ + j) * n_ + k) * nc + c] = d3_[t * nc + c](p);
                    }
        }
    }

    bool analytic() const override { return true; }

    const std::vector<Expr>& exprs() const { return exprs_; }

  private:
    int tri(int i, int j) const { return i * n_ - i * (i - 1) / 2 + (j - i); }
    int tri3(int i, int j, int k) const {
        // rank of sorted triple among combinations with repetition
        int r = 0;
        for (int a = 0; a < n_; ++a)
            for (int b = a; b < n_; ++b)
                for (int c = b; c < n_; ++c) {
                    if (a == i && b == j && c == k) return r;
                    ++r;
                }
        throw Error("bad index triple");
    }

    void ensure2() const {
        std::call_once(once2_, [this] {
            const int nc = static_cast<int>(exprs_.size());
            const int npair = n_ * (n_ + 1) / 2;
            auto& d2 = const_cast<ExprBackend*>(this)->d2_;
            d2.resize(static_cast<size_t>(npair) * nc);
            auto& dex2 = const_cast<ExprBackend*>(this)->dex2_;
            dex2.resize(static_cast<size_t>(npair) * nc);
            for (int i = 0; i < n_; ++i)
                for (int j = i; j < n_; ++j)
                    for (int c = 0; c < nc; ++c) {
                        Expr e = dex1_[static_cast<size_t>(i) * nc + c].diff(j);
                        dex2[static_cast<size_t>(tri(i, j)) * nc + c] = e;
                        d2[static_cast<size_t>(tri(i, j)) * nc + c] = CompiledExpr(e);
                    }
        });
    }

    void ensure3() const {
        ensure2();
        std::call_once(once3_, [this] {
            const int nc = static_cast<int>(exprs_.size());
            int ntri = 0;
            for (int a = 0; a < n_; ++a)
                for (int b = a; b < n_; ++b)
                    for (int c = b; c < n_; ++c) ++ntri;
            auto& d3 = const_cast<ExprBackend*>(this)->d3_;
            d3.resize(static_cast<size_t>(ntri) * nc);
            int r = 0;
            for (int a = 0; a < n_; ++a)
                for (int b = a; b < n_; ++b)
                    for (int c = b; c < n_; ++c) {
                        for (int cc = 0; cc < nc; ++cc) {
                            Expr e = dex2_[static_cast<size_t>(tri(a, b)) * nc + cc].diff(c);
                            d3[static_cast<size_t>(r) * nc + cc] = CompiledExpr(e);
                        }
                        ++r;
                    }
        });
    }

    int n_;
    std::vector<Expr> exprs_;
    std::vector<Expr> dex1_;
    mutable std::vector<Expr> dex2_;
    std::vector<CompiledExpr> val_;
    std::vector<CompiledExpr> d1_;
    mutable std::vector<CompiledExpr> d2_, d3_;
    mutable std::once_flag once2_, once3_;
};

// ---------------------------------------------------------------------------
// Finite-difference backend: central stencils over a component function.
// 4th order for first and same-axis second derivatives, 2nd order for mixed
// second derivatives, 6th order for same-axis third derivatives at a larger
// dedicated step; mixed thirds differentiate second-derivative values.
// ---------------------------------------------------------------------------

class FdBackend final : public Backend {
  public:
    FdBackend(Chart chart, int ncomp, std::function<void(const Point&, double*)> fn, FdConfig cfg)
        : chart_(std::move(chart)), ncomp_(ncomp), fn_(std::move(fn)), cfg_(cfg) {}

    void eval(const Point& p, int order, FieldJets& out) const override {
        const int n = chart_.dim();
        out.n = n;
        out.ncomp = ncomp_;
        out.order = order;
        out.v.resize(ncomp_);
        call(p, out.v.data());
        if (order >= 1) d1_all(p, out.d1);
        // an order-3 request feeds third-derivative chains: the second
        // derivatives then use a larger step to stay off the roundoff floor
        const double h2 = order >= 3 ? std::max(cfg_.h, 1e-3) : cfg_.h;
        if (order >= 2) d2_all(p, h2, out.d2);
        if (order >= 3) d3_all(p, out.d3);
    }

    bool analytic() const override { return false; }
    double step() const override { return cfg_.h; }

  private:
    void call(Point q, double* out) const {
        q = chart_.wrap(std::move(q));
        fn_(q, out);
    }

    void sample(const Point& p, int axis, double offset, double* out) const {
        Point q = p;
        q[axis] += offset;
        call(std::move(q), out);
    }

    // 4th-order first derivative
    void d1_axis(const Point& p, int i, double h, double* out) const {
        std::vector<double> a(ncomp_), b(ncomp_), c(ncomp_), d(ncomp_);
        sample(p, i, -2 * h, a.data());
        sample(p, i, -h, b.data());
        sample(p, i, h, c.data());
        sample(p, i, 2 * h, d.data());
        for (int k = 0; k < ncomp_; ++k)
            out[k] = (a[k] - 8 * b[k] + 8 * c[k] - d[k]) / (12 * h);
    }

    void d1_all(const Point& p, std::vector<double>& out) const {
        const int n = chart_.dim();
        out.resize(static_cast<size_t>(n) * ncomp_);
        for (int i = 0; i < n; ++i) d1_axis(p, i, cfg_.h, out.data() + i * ncomp_);
    }

    void d2_pair(const Point& p, int i, int j, double h, double* out) const {
        if (i == j) {
            std::vector<double> m2(ncomp_), m1(ncomp_), c0(ncomp_), p1(ncomp_), p2(ncomp_);
            sample(p, i, -2 * h, m2.data());
            sample(p, i, -h, m1.data());
            call(p, c0.data());
            sample(p, i, h, p1.data());
            sample(p, i, 2 * h, p2.data());
            for (int k = 0; k < ncomp_; ++k)
                out[k] = (-m2[k] + 16 * m1[k] - 30 * c0[k] + 16 * p1[k] - p2[k]) / (12 * h * h);
            return;
        }
        std::vector<double> pp(ncomp_), pm(ncomp_), mp(ncomp_), mm(ncomp_);
        Point q = p;
        auto at = [&](double di, double dj, double* o) {
            q = p;
            q[i] += di;
            q[j] += dj;
            call(q, o);
        };
        at(h, h, pp.data());
        at(h, -h, pm.data());
        at(-h, h, mp.data());
        at(-h, -h, mm.data());
        for (int k = 0; k < ncomp_; ++k)
            out[k] = (pp[k] - pm[k] - mp[k] + mm[k]) / (4 * h * h);
    }

    void d2_all(const Point& p, double h, std::vector<double>& out) const {
        const int n = chart_.dim();
        out.resize(static_cast<size_t>(n) * n * ncomp_);
        std::vector<double> buf(ncomp_);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                d2_pair(p, i, j, h, buf.data());
                for (int k = 0; k < ncomp_; ++k) {
                    out[(i * n + j) * ncomp_ + k] = buf[k];
                    out[(j * n + i) * ncomp_ + k] = buf[k];
                }
            }
    }

    // 6th-order same-axis third derivative at the dedicated step
    void d3_axis(const Point& p, int i, double* out) const {
        static const double w[9] = {-7.0 / 240, 3.0 / 10, -169.0 / 120, 61.0 / 30, 0,
                                    -61.0 / 30, 169.0 / 120, -3.0 / 10, 7.0 / 240};
        const double h = cfg_.h3;
        std::vector<double> acc(ncomp_, 0.0), buf(ncomp_);
        for (int s = -4; s <= 4; ++s) {
            if (s == 0) continue;
            sample(p, i, s * h, buf.data());
            for (int k = 0; k < ncomp_; ++k) acc[k] += w[s + 4] * buf[k];
        }
        for (int k = 0; k < ncomp_; ++k) out[k] = acc[k] / (h * h * h);
    }

    void d3_all(const Point& p, std::vector<double>& out) const {
        const int n = chart_.dim();
        out.resize(static_cast<size_t>(n) * n * n * ncomp_);
        std::vector<double> buf(ncomp_);
        const double h2 = std::max(cfg_.h, 1e-3);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k) {
                    if (i == j && j == k) {
                        d3_axis(p, i, buf.data());
                    } else {
                        // outer 4th-order first difference of an inner second
                        // derivative; the axis appearing once goes outside
                        int outer, ax1, ax2;
                        if (i == j) { outer = k; ax1 = i; ax2 = j; }
                        else if (j == k) { outer = i; ax1 = j; ax2 = k; }
                        else { outer = j; ax1 = i; ax2 = k; }
                        const double h = cfg_.h3;
                        std::vector<double> acc(ncomp_, 0.0), tmp(ncomp_);
                        static const double w1[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
                        static const int off[4] = {-2, -1, 1, 2};
                        for (int s = 0; s < 4; ++s) {
                            Point q = p;
                            q[outer] += off[s] * h;
                            d2_pair(q, ax1, ax2, h2, tmp.data());
                            for (int c = 0; c < ncomp_; ++c) acc[c] += w1[s] * tmp[c];
                        }
                        for (int c = 0; c < ncomp_; ++c) buf[c] = acc[c] / h;
                    }
                    for (auto [x, y, z] : perms3(i, j, k))
                        for (int c = 0; c < ncomp_; ++c)
                            out[((x * n + y) * n + z) * ncomp_ + c] = buf[c];
                }
    }

    static std::vector<std::array<int, 3>> perms3(int i, int j, int k) {
        std::vector<std::array<int, 3>> r{{i, j, k}, {i, k, j}, {j, i, k},
                                          {j, k, i}, {k, i, j}, {k, j, i}};
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        return r;
    }

    Chart chart_;
    int ncomp_;
    std::function<void(const Point&, double*)> fn_;
    FdConfig cfg_;
};

// ---------------------------------------------------------------------------

class DerivedScalarBackend final : public Backend {
  public:
    DerivedScalarBackend(std::function<void(const Point&, int, FieldJets&)> fn, bool analytic,
                         double step)
        : fn_(std::move(fn)), analytic_(analytic), step_(step) {}
    void eval(const Point& p, int order, FieldJets& out) const override { fn_(p, order, out); }
    bool analytic() const override { return analytic_; }
    double step() const override { return step_; }
    int max_order() const override { return 2; }

  private:
    std::function<void(const Point&, int, FieldJets&)> fn_;
    bool analytic_;
    double step_;
};

class PullbackBackend final : public Backend {
  public:
    PullbackBackend(TensorField base, std::vector<double> sp, std::vector<double> sc)
        : base_(std::move(base)), sp_(std::move(sp)), sc_(std::move(sc)) {}

    void eval(const Point& p, int order, FieldJets& out) const override {
        const int n = base_.dim();
        Point q(n);
        for (int i = 0; i < n; ++i) q[i] = sp_[i] * p[i];
        FieldJets j;
        base_.eval(q, order, j);
        const int nc = j.ncomp;
        out = j;
        for (int c = 0; c < nc; ++c) out.v[c] *= sc_[c];
        if (order >= 1)
            for (int i = 0; i < n; ++i)
                for (int c = 0; c < nc; ++c) out.d1[i * nc + c] = sc_[c] * sp_[i] * j.D1(i, c);
        if (order >= 2)
            for (int i = 0; i < n; ++i)
                for (int jx = 0; jx < n; ++jx)
                    for (int c = 0; c < nc; ++c)
                        out.d2[(i * n + jx) * nc + c] = sc_[c] * sp_[i] * sp_[jx] * j.D2(i, jx, c);
        if (order >= 3)
            for (int i = 0; i < n; ++i)
                for (int jx = 0; jx < n; ++jx)
                    for (int k = 0; k < n; ++k)
                        for (int c = 0; c < nc; ++c)
                            out.d3[((i * n + jx) * n + k) * nc + c] =
                                sc_[c] * sp_[i] * sp_[jx] * sp_[k] * j.D3(i, jx, k, c);
    }

    bool analytic() const override { return base_.analytic(); }
    double step() const override { return base_.fd_step(); }

  private:
    TensorField base_;
    std::vector<double> sp_, sc_;
};

int ncomp_for(const Chart& chart, Valence v) {
    int nc = 1;
    for (int r = 0; r < v.total(); ++r) nc *= chart.dim();
    return nc;
}

}  // namespace

TensorField make_expr_field(const Chart& chart, Valence val, std::vector<Expr> comps,
                            const ParamMap& params) {
    const int nc = ncomp_for(chart, val);
    if (static_cast<int>(comps.size()) != nc)
        throw Error("component count does not match valence");
    for (auto& e : comps) e = e.bind(params);
    return TensorField(chart, val, std::make_shared<ExprBackend>(std::move(comps), chart.dim()));
}

TensorField make_metric(const Chart& chart, const std::vector<std::vector<Expr>>& rows,
                        const ParamMap& params) {
    const int n = chart.dim();
    if (static_cast<int>(rows.size()) != n) throw Error("metric rows must match dimension");
    std::vector<Expr> comps(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Expr& e = j >= i ? rows[i][j - i] : rows[j][i - j];
            comps[i * n + j] = e;
        }
    return make_expr_field(chart, {2, 0}, std::move(comps), params);
}

TensorField make_scalar(const Chart& chart, const Expr& e, const ParamMap& params) {
    return make_expr_field(chart, {0, 0}, {e}, params);
}

TensorField make_one_form(const Chart& chart, std::vector<Expr> comps, const ParamMap& params) {
    return make_expr_field(chart, {1, 0}, std::move(comps), params);
}

TensorField make_constant(const Chart& chart, Valence val, std::vector<double> comps) {
    std::vector<Expr> es(comps.size());
    for (size_t i = 0; i < comps.size(); ++i) es[i] = Expr::num(comps[i]);
    return make_expr_field(chart, val, std::move(es));
}

TensorField make_zero(const Chart& chart, Valence val) {
    return make_constant(chart, val, std::vector<double>(ncomp_for(chart, val), 0.0));
}

TensorField make_fd_field(const Chart& chart, Valence val,
                          std::function<void(const Point&, double*)> value_fn, FdConfig cfg) {
    const int nc = ncomp_for(chart, val);
    return TensorField(chart, val, std::make_shared<FdBackend>(chart, nc, std::move(value_fn), cfg));
}

TensorField with_fd_backend(const TensorField& f, FdConfig cfg) {
    TensorField base = f;
    auto fn = [base](const Point& p, double* out) {
        FieldJets j;
        base.eval(p, 0, j);
        std::copy(j.v.begin(), j.v.end(), out);
    };
    return make_fd_field(f.chart(), f.valence(), std::move(fn), cfg);
}

TensorField make_derived_scalar(const Chart& chart,
                                std::function<void(const Point&, int, FieldJets&)> jets_fn,
                                bool analytic_inputs, double step) {
    return TensorField(chart, {0, 0},
                       std::make_shared<DerivedScalarBackend>(std::move(jets_fn), analytic_inputs,
                                                              step));
}

TensorField linear_pullback(const TensorField& f, std::vector<double> scale_point,
                            std::vector<double> comp_scale) {
    if (static_cast<int>(scale_point.size()) != f.dim() ||
        static_cast<int>(comp_scale.size()) != f.ncomp())
        throw Error("pullback scale sizes do not match field");
    return TensorField(f.chart(), f.valence(),
                       std::make_shared<PullbackBackend>(f, std::move(scale_point),
                                                         std::move(comp_scale)));
}

const std::vector<Expr>& field_exprs(const TensorField& f) {
    auto* eb = dynamic_cast<const ExprBackend*>(f.backend().get());
    if (!eb) throw Error("field has no expression backend");
    return eb->exprs();
}

}  // namespace qev
