#pragma once

#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>

#include "qev/chart.hpp"
#include "qev/expr.hpp"

namespace qev {

/// (covariant rank, contravariant rank). Component storage puts
/// contravariant slots first: christoffel components are [k][i][j].
struct Valence {
    int cov = 0;
    int con = 0;
    int total() const { return cov + con; }
    bool operator==(const Valence&) const = default;
};

struct PointValue {
    Point point;
    Valence valence;
    int dim = 0;
    std::vector<double> comps;

    int rank() const { return valence.total(); }
    double at(std::initializer_list<int> idx) const;
    bool finite() const;
};

/// Derivative bundle of all components of a field at a point.
/// d1[i*nc + c] = del_i comp_c ; d2[(i*n + j)*nc + c] ; d3 analogous.
struct FieldJets {
    int n = 0, ncomp = 0, order = 0;
    std::vector<double> v, d1, d2, d3;

    double comp(int c) const { return v[c]; }
    double D1(int i, int c) const { return d1[i * ncomp + c]; }
    double D2(int i, int j, int c) const { return d2[(i * n + j) * ncomp + c]; }
    double D3(int i, int j, int k, int c) const { return d3[((i * n + j) * n + k) * ncomp + c]; }
};

class Backend {
  public:
    virtual ~Backend() = default;
    virtual void eval(const Point& p, int order, FieldJets& out) const = 0;
    virtual bool analytic() const = 0;
    virtual double step() const { return 0.0; }
    virtual int max_order() const { return 3; }
};

enum class BackendKind { Analytic, FiniteDifference };

struct FdConfig {
    double h = 1e-4;       // first/second derivative step
    double h3 = 3e-3;      // third derivative step
};

/// Immutable tensor field on a chart. Purely functional: all evaluation is
/// per-point and safe to run concurrently.
class TensorField {
  public:
    TensorField() = default;
    TensorField(Chart chart, Valence val, std::shared_ptr<const Backend> be);

    const Chart& chart() const { return chart_; }
    Valence valence() const { return val_; }
    int dim() const { return chart_.dim(); }
    int ncomp() const { return ncomp_; }
    bool analytic() const { return be_->analytic(); }
    double fd_step() const { return be_->step(); }

    void eval(const Point& p, int order, FieldJets& out) const;
    std::vector<double> value(const Point& p) const;
    PointValue value_pv(const Point& p) const;

    const std::shared_ptr<const Backend>& backend() const { return be_; }

  private:
    Chart chart_;
    Valence val_;
    int ncomp_ = 0;
    std::shared_ptr<const Backend> be_;
};

// --- constructors ---

/// Analytic field from expressions (parameters already bound or bound here).
TensorField make_expr_field(const Chart& chart, Valence val, std::vector<Expr> comps,
                            const ParamMap& params = {});

/// Metric helper: takes the upper triangle (i <= j) row-major, symmetrizes.
TensorField make_metric(const Chart& chart, const std::vector<std::vector<Expr>>& comps,
                        const ParamMap& params = {});

TensorField make_scalar(const Chart& chart, const Expr& e, const ParamMap& params = {});
TensorField make_one_form(const Chart& chart, std::vector<Expr> comps, const ParamMap& params = {});
TensorField make_constant(const Chart& chart, Valence val, std::vector<double> comps);
TensorField make_zero(const Chart& chart, Valence val);

/// Finite-difference field over a raw component function.
TensorField make_fd_field(const Chart& chart, Valence val,
                          std::function<void(const Point&, double*)> value_fn, FdConfig cfg);

/// Switch an analytic field to stencil evaluation of the same components.
TensorField with_fd_backend(const TensorField& f, FdConfig cfg);

/// Scalar field defined by closures producing value/gradient/hessian
/// (see DerivedScalar in ops.hpp for the usual way to build these).
TensorField make_derived_scalar(
    const Chart& chart,
    std::function<void(const Point&, int order, FieldJets&)> jets_fn,
    bool analytic_inputs, double step);

/// Pullback of `f` under the diagonal linear map p -> scale_point .* p,
/// with an extra constant factor per component.
TensorField linear_pullback(const TensorField& f, std::vector<double> scale_point,
                            std::vector<double> comp_scale);

/// Expressions of an analytic field (throws for non-expression backends).
const std::vector<Expr>& field_exprs(const TensorField& f);

}  // namespace qev
