#include "qev/geometry.hpp"

#include <cmath>
#include <sstream>

namespace qev {

namespace {

constexpr double kPi = 3.14159265358979323846;

double need(const ParamMap& params, const std::string& key, double fallback,
            bool required = false) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (required) throw Error("missing parameter '" + key + "'");
        return fallback;
    }
    return it->second;
}

int need_int(const ParamMap& params, const std::string& key, int fallback) {
    const double v = need(params, key, fallback);
    if (v != std::floor(v)) throw Error("parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
}

Chart::Coord interval(std::string name, double lo, double hi) {
    return {std::move(name), lo, hi, false};
}

Chart::Coord periodic(std::string name, double period, double lo = 0.0) {
    return {std::move(name), lo, lo + period, true};
}

/// Metric of constant curvature kappa on a surface chart. kappa < 0: scaled
/// upper half plane on (x, y); kappa = 0: flat torus; kappa > 0: round sphere
/// (coords are then an interval colatitude and a periodic longitude).
struct SurfacePiece {
    std::vector<Chart::Coord> coords;
    Expr g00, g11;  // diagonal
};

SurfacePiece constant_curvature_surface(double kappa, const std::string& c0,
                                        const std::string& c1) {
    SurfacePiece s;
    if (kappa < 0) {
        Expr y = Expr::coord(1);  // resolved by position within the piece
        s.coords = {interval(c0, -1.0, 1.0), interval(c1, 1.0, 2.0)};
        Expr conf = Expr::num(1.0 / (-kappa)) / (y * y);
        s.g00 = conf;
        s.g11 = conf;
    } else if (kappa == 0) {
        s.coords = {periodic(c0, 2 * kPi), periodic(c1, 2 * kPi)};
        s.g00 = Expr::num(1);
        s.g11 = Expr::num(1);
    } else {
        const double rho2 = 1.0 / kappa;
        Expr th = Expr::coord(0);
        s.coords = {interval(c0, 0.0, kPi), periodic(c1, 2 * kPi)};
        s.g00 = Expr::num(rho2);
        s.g11 = Expr::num(rho2) * sin(th) * sin(th);
    }
    return s;
}

GeometryEntry flat_torus(const ParamMap& params) {
    const int n = need_int(params, "n", 2);
    if (n < 1 || n > 5) throw Error("flat_torus: parameter 'n' must be in 1..5");
    std::vector<Chart::Coord> cs;
    for (int i = 0; i < n; ++i) cs.push_back(periodic("Phi" + std::to_string(i + 1), 2 * kPi));
    Chart chart(cs, Signature::Riemannian);
    std::vector<Expr> comps(n * n, Expr::num(0));
    for (int i = 0; i < n; ++i) comps[i * n + i] = Expr::num(1);
    GeometryEntry e;
    e.name = "flat_torus";
    e.params = {{"n", double(n)}};
    e.chart = chart;
    e.g = make_expr_field(chart, {2, 0}, comps);
    e.expected = {{"R", 0.0}, {"n", double(n)}};
    e.anchor = "flat model";
    e.summary = "flat torus, all coordinates periodic with period 2*pi";
    e.quadrature_capable = true;
    return e;
}

GeometryEntry round_sphere(const ParamMap& params) {
    const int n = need_int(params, "n", 2);
    const double ell = need(params, "ell", 1.0);
    if (n < 2 || n > 4) throw Error("round_sphere: parameter 'n' must be in 2..4");
    if (!(ell > 0)) throw Error("round_sphere: parameter 'ell' must be positive");
    std::vector<Chart::Coord> cs;
    for (int i = 0; i + 1 < n; ++i) cs.push_back(interval("th" + std::to_string(i + 1), 0.0, kPi));
    cs.push_back(periodic("phi", 2 * kPi));
    Chart chart(cs, Signature::Riemannian);
    std::vector<Expr> comps(static_cast<size_t>(n) * n, Expr::num(0));
    Expr factor = Expr::num(ell * ell);
    for (int i = 0; i < n; ++i) {
        comps[i * n + i] = factor;
        if (i + 1 < n) {
            Expr s = sin(Expr::coord(i));
            factor = factor * s * s;
        }
    }
    GeometryEntry e;
    e.name = "round_sphere";
    e.params = {{"n", double(n)}, {"ell", ell}};
    e.chart = chart;
    e.g = make_expr_field(chart, {2, 0}, comps);
    e.expected = {{"ricci_factor", (n - 1) / (ell * ell)},
                  {"R", n * (n - 1) / (ell * ell)},
                  {"n", double(n)}};
    e.anchor = "round model";
    e.summary = "round n-sphere of radius ell in nested polar coordinates";
    e.quadrature_capable = true;
    return e;
}

GeometryEntry hyperbolic_surface(const ParamMap& params) {
    const double kappa = need(params, "kappa", -1.0);
    if (!(kappa < 0)) throw Error("hyperbolic_surface: parameter 'kappa' must be negative");
    SurfacePiece s = constant_curvature_surface(kappa, "x", "y");
    Chart chart(s.coords, Signature::Riemannian);
    GeometryEntry e;
    e.name = "hyperbolic_surface";
    e.params = {{"kappa", kappa}};
    e.chart = chart;
    e.g = make_expr_field(chart, {2, 0}, {s.g00, Expr::num(0), Expr::num(0), s.g11});
    e.expected = {{"R", 2 * kappa}, {"n", 2.0}};
    e.anchor = "constant-curvature local chart";
    e.summary = "local constant-curvature chart of a compact hyperbolic surface";
    return e;
}

GeometryEntry lim_product(const ParamMap& params) {
    const double m = need(params, "m", 2.0);
    if (!(m > 0)) throw Error("lim_product: parameter 'm' must be positive");
    Chart chart({periodic("Phi", 2 * kPi), interval("x", -1.0, 1.0), interval("y", 1.0, 2.0)},
                Signature::Riemannian);
    Expr y = Expr::coord(2);
    Expr conf = Expr::num(1.0 / m) / (y * y);
    std::vector<Expr> comps(9, Expr::num(0));
    comps[0] = Expr::num(1);
    comps[4] = conf;
    comps[8] = conf;
    GeometryEntry e;
    e.name = "lim_product";
    e.params = {{"m", m}};
    e.chart = chart;
    e.g = make_expr_field(chart, {2, 0}, comps);
    e.X = make_one_form(chart, {Expr::num(m), Expr::num(0), Expr::num(0)});
    e.Y = make_scalar(chart, Expr::num(0));
    e.expected = {{"lambda", -m}, {"m", m}, {"Y", 0.0}, {"R", -2 * m},
                  {"n", 3.0},     {"Lambda", -1.5 * m}, {"loop_integral", 2 * kPi * m}};
    e.anchor = "eq-1.4";
    e.summary = "circle times hyperbolic surface; X = m dPhi closed, not exact";
    return e;
}

void sigma_block(double kappa, std::vector<Chart::Coord>& cs, std::vector<Expr>* diag,
                 int chart_dim, int offset) {
    // appends the two Sigma coordinates and fills diag entries at offset
    Expr u = Expr::coord(offset);
    Expr w = Expr::coord(offset + 1);
    if (kappa < 0) {
        cs.push_back(interval("x", -1.0, 1.0));
        cs.push_back(interval("y", 1.0, 2.0));
        Expr conf = Expr::num(1.0 / (-kappa)) / (w * w);
        if (diag) {
            (*diag)[offset] = conf;
            (*diag)[offset + 1] = conf;
        }
    } else if (kappa == 0) {
        cs.push_back(periodic("x", 2 * kPi));
        cs.push_back(periodic("y", 2 * kPi));
        if (diag) {
            (*diag)[offset] = Expr::num(1);
            (*diag)[offset + 1] = Expr::num(1);
        }
    } else {
        cs.push_back(interval("x", 0.0, kPi));
        cs.push_back(periodic("y", 2 * kPi));
        if (diag) {
            (*diag)[offset] = Expr::num(1.0 / kappa);
            (*diag)[offset + 1] = Expr::num(1.0 / kappa) * sin(u) * sin(u);
        }
    }
    (void)chart_dim;
}

GeometryEntry xbtz(const ParamMap& params, bool near_horizon_form) {
    const double a = need(params, "a", 0.25);
    if (!(a > 0)) throw Error("xbtz: parameter 'a' must be positive");
    std::vector<Chart::Coord> cs{periodic("v", 2 * kPi), interval("r", -0.4 * a, 0.4 * a),
                                 periodic("Phi", 2 * kPi)};
    std::vector<Expr> diag(5, Expr::num(0));
    sigma_block(-2.0, cs, &diag, 5, 3);
    Chart chart(cs, Signature::Lorentzian);
    Expr r = Expr::coord(1);
    std::vector<Expr> comps(25, Expr::num(0));
    if (near_horizon_form)
        comps[0 * 5 + 1] = Expr::num(1.0 / std::sqrt(a));
    else
        comps[0 * 5 + 1] = Expr::num(1) / sqrt(r + Expr::num(a));
    comps[1 * 5 + 0] = comps[0 * 5 + 1];
    comps[0 * 5 + 2] = Expr::num(4) * r;
    comps[2 * 5 + 0] = comps[0 * 5 + 2];
    comps[2 * 5 + 2] = near_horizon_form ? Expr::num(4 * a)
                                         : Expr::num(4) * (r + Expr::num(a));
    comps[3 * 5 + 3] = diag[3];
    comps[4 * 5 + 4] = diag[4];
    GeometryEntry e;
    e.name = near_horizon_form ? "xbtz_nhg" : "xbtz_product";
    e.params = {{"a", a}};
    e.chart = chart;
    e.g = make_expr_field(chart, {2, 0}, comps);
    e.expected = {{"Lambda", -3.0}, {"lambda", -2.0}, {"n", 3.0}};
    e.anchor = near_horizon_form ? "eq-1.6" : "eq-1.5";
    e.summary = near_horizon_form
                    ? "near-horizon form of the extreme product spacetime"
                    : "extreme product spacetime (3d factor times hyperbolic surface)";
    return e;
}

GeometryEntry sds_cylinder(const ParamMap& params) {
    const double m = need(params, "m", 2.0);
    const double lam = need(params, "lambda", 1.0);
    const double mu = need(params, "mu", 1.0);
    const double a = need(params, "a", 0.0);
    if (!(m > 0)) throw Error("sds_cylinder: parameter 'm' must be positive");
    if (mu == 0) throw Error("sds_cylinder: parameter 'mu' must be nonzero");
    if (a < 0) throw Error("sds_cylinder: parameter 'a' must be nonnegative");

    const double c = (m - 1) * lam / ((m + 1) * mu);
    auto F = [&](double psi) {
        double t = 1.0 - c * psi * psi;
        if (a > 0) t -= std::pow(a / psi, m - 1);
        return t;
    };
    const double cap = 2.0 * std::max({1.0, c > 0 ? std::sqrt(1.0 / c) : 1.0, 3.0 * a});
    auto [lo, hi] = positive_interval(F, 1e-4, cap, 0.05);

    Chart chart({interval("psi", lo, hi), periodic("tau", 2 * kPi)}, Signature::Riemannian);
    Expr psi = Expr::coord(0);
    Expr Fe = Expr::num(1) - Expr::num(c) * psi * psi;
    if (a > 0) Fe = Fe - pow(Expr::num(a) / psi, m - 1);
    std::vector<Expr> comps{Expr::num(1) / Fe, Expr::num(0), Expr::num(0), Fe};
    GeometryEntry e;
    e.name = "sds_cylinder";
    e.params = {{"m", m}, {"lambda", lam}, {"mu", mu}, {"a", a}};
    e.chart = chart;
    e.g = make_expr_field(chart, {2, 0}, comps);
    e.X = make_one_form(chart, {Expr::num(-m) / psi, Expr::num(0)});
    e.f = make_scalar(chart, Expr::num(-m) * log(psi));
    const double lam_qe = (m - 1) * lam / mu;
    const double mu_char = m - 1;
    e.expected = {{"lambda", lam_qe}, {"m", m},   {"mu", mu_char},
                  {"mu_display", mu}, {"n", 2.0}, {"F_lo", lo},  {"F_hi", hi}};
    e.anchor = "eq-3.13";
    e.summary = "gradient cylinder metric on the window where F stays positive";
    return e;
}

GeometryEntry maxwell_sphere(const ParamMap& params) {
    const int n = need_int(params, "n", 2);
    const double c = need(params, "c", 1.0);
    const double lam = need(params, "lambda", 1.0);
    if (n < 2 || n > 4) throw Error("maxwell_sphere: parameter 'n' must be in 2..4");
    const double denom = lam + 2 * c * c / n;
    if (!(denom > 0))
        throw Error("maxwell_sphere: lambda + 2c^2/n must be positive");
    const double ell2 = (n - 1) / denom;
    GeometryEntry e = round_sphere({{"n", double(n)}, {"ell", std::sqrt(ell2)}});
    e.name = "maxwell_sphere";
    e.params = {{"n", double(n)}, {"c", c}, {"lambda", lam}};
    const Chart& M = e.chart;
    e.X = make_zero(M, {1, 0});
    // stress data from the verbatim field-strength formula: T = c^2 g, T_pm = -c^2
    e.T = make_expr_field(M, {2, 0}, [&] {
        std::vector<Expr> t(field_exprs(e.g).size());
        for (size_t i = 0; i < t.size(); ++i) t[i] = Expr::num(c * c) * field_exprs(e.g)[i];
        return t;
    }());
    e.Tpm = make_scalar(M, Expr::num(-c * c));
    const double Yv = lam + (double(n - 2) / n) * (-c * c) - c * c;
    e.Y = make_scalar(M, Expr::num(Yv));

    // spacetime: 2 dv dr + r^2 Y dv^2 + ell^2 g_sphere
    std::vector<Chart::Coord> cs{periodic("v", 2 * kPi), interval("r", -0.3, 0.3)};
    for (const auto& cc : M.coords()) cs.push_back(cc);
    Chart st(cs, Signature::Lorentzian);
    const int N = st.dim();
    std::vector<Expr> gs(static_cast<size_t>(N) * N, Expr::num(0));
    Expr r = Expr::coord(1);
    gs[0 * N + 0] = Expr::num(Yv) * r * r;
    gs[0 * N + 1] = Expr::num(1);
    gs[1 * N + 0] = Expr::num(1);
    // sphere block shifted by two coordinates
    {
        std::vector<Expr> comps(static_cast<size_t>(n) * n, Expr::num(0));
        Expr factor = Expr::num(ell2);
        for (int i = 0; i < n; ++i) {
            comps[i * n + i] = factor;
            if (i + 1 < n) {
                Expr s = sin(Expr::coord(2 + i));
                factor = factor * s * s;
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gs[(2 + i) * N + (2 + j)] = comps[i * n + j];
    }
    e.spacetime_chart = st;
    e.spacetime_g = make_expr_field(st, {2, 0}, gs);
    std::vector<Expr> fm(static_cast<size_t>(N) * N, Expr::num(0));
    fm[1 * N + 0] = Expr::num(c);   // F = d(c r dv): F_rv = c
    fm[0 * N + 1] = Expr::num(-c);
    e.maxwell = make_expr_field(st, {2, 0}, fm);
    e.expected = {{"lambda", lam},
                  {"m", 2.0},
                  {"n", double(n)},
                  {"ell2", ell2},
                  {"Tpm", -c * c},
                  {"Y", Yv},
                  {"Lambda", n * lam / 2.0},
                  {"tilde_lambda", lam + 2 * c * c / n},
                  {"ricci_factor", (n - 1) / ell2}};
    e.anchor = "sec-4 sphere example";
    e.summary = "round sphere with a radial 2-form field; X = 0";
    e.quadrature_capable = true;
    return e;
}

GeometryEntry maxwell_circle_sigma(const ParamMap& params) {
    const double k = need(params, "k", 0.5);
    if (!(k > 0)) throw Error("maxwell_circle_sigma: parameter 'k' must be positive");
    const double lam = -2.0;
    const double kappa = -2.0 * (1.0 - 2.0 * k * k);
    const double gPhi = 1.0 + k * k;

    std::vector<Chart::Coord> cs{periodic("Phi", 2 * kPi)};
    std::vector<Expr> diag(3, Expr::num(0));
    sigma_block(kappa, cs, &diag, 3, 1);
    Chart M(cs, Signature::Riemannian);
    std::vector<Expr> comps(9, Expr::num(0));
    comps[0] = Expr::num(gPhi);
    comps[4] = diag[1];
    comps[8] = diag[2];
    GeometryEntry e;
    e.name = "maxwell_circle_sigma";
    e.params = {{"k", k}};
    e.chart = M;
    e.g = make_expr_field(M, {2, 0}, comps);
    e.X = make_one_form(M, {Expr::num(2 * gPhi), Expr::num(0), Expr::num(0)});
    // verbatim stress data: T_pm = -3k^2, T_PhiPhi = -3k^2 gPhi, T_Sigma = +3k^2 g_Sigma
    std::vector<Expr> T(9, Expr::num(0));
    T[0] = Expr::num(-3 * k * k * gPhi);
    T[4] = Expr::num(3 * k * k) * diag[1];
    T[8] = Expr::num(3 * k * k) * diag[2];
    e.T = make_expr_field(M, {2, 0}, T);
    e.Tpm = make_scalar(M, Expr::num(-3 * k * k));
    e.Y = make_scalar(M, Expr::num(0));

    // spacetime: 2 dv (dr + r X) + g_M
    std::vector<Chart::Coord> scs{periodic("v", 2 * kPi), interval("r", -0.3, 0.3)};
    for (const auto& cc : M.coords()) scs.push_back(cc);
    Chart st(scs, Signature::Lorentzian);
    const int N = 5;
    std::vector<Expr> gs(25, Expr::num(0));
    Expr r = Expr::coord(1);
    gs[0 * N + 1] = Expr::num(1);
    gs[1 * N + 0] = Expr::num(1);
    gs[0 * N + 2] = r * Expr::num(2 * gPhi);
    gs[2 * N + 0] = gs[0 * N + 2];
    gs[2 * N + 2] = Expr::num(gPhi);
    // Sigma block rebuilt against spacetime coordinates (indices 3, 4)
    {
        std::vector<Chart::Coord> tmp;
        std::vector<Expr> d2(5, Expr::num(0));
        sigma_block(kappa, tmp, &d2, 5, 3);
        gs[3 * N + 3] = d2[3];
        gs[4 * N + 4] = d2[4];
    }
    e.spacetime_chart = st;
    e.spacetime_g = make_expr_field(st, {2, 0}, gs);
    // F = sqrt(3) k dVol_Sigma
    std::vector<Expr> fm(25, Expr::num(0));
    {
        std::vector<Chart::Coord> tmp;
        std::vector<Expr> d2(5, Expr::num(0));
        sigma_block(kappa, tmp, &d2, 5, 3);
        Expr sdet = sqrt(d2[3] * d2[4]);
        fm[3 * N + 4] = Expr::num(std::sqrt(3.0) * k) * sdet;
        fm[4 * N + 3] = -fm[3 * N + 4];
    }
    e.maxwell = make_expr_field(st, {2, 0}, fm);
    e.expected = {{"lambda", lam},  {"m", 2.0},      {"n", 3.0},
                  {"kappa", kappa}, {"Tpm", -3 * k * k}, {"Y", 0.0},
                  {"Lambda", -3.0}};
    e.anchor = "sec-4 circle example";
    e.summary = "circle times constant-curvature surface with a volume-form field";
    e.quadrature_capable = kappa >= 0;
    return e;
}

GeometryEntry minkowski(const ParamMap& params) {
    const int n = need_int(params, "n", 5);
    if (n < 3 || n > 6) throw Error("minkowski: parameter 'n' must be in 3..6");
    std::vector<Chart::Coord> cs{periodic("v", 2 * kPi), interval("r", -1.0, 1.0)};
    for (int i = 0; i + 2 < n; ++i) cs.push_back(interval("x" + std::to_string(i + 1), -1.0, 1.0));
    Chart chart(cs, Signature::Lorentzian);
    std::vector<Expr> comps(static_cast<size_t>(n) * n, Expr::num(0));
    comps[0 * n + 1] = Expr::num(1);
    comps[1 * n + 0] = Expr::num(1);
    for (int i = 2; i < n; ++i) comps[i * n + i] = Expr::num(1);
    GeometryEntry e;
    e.name = "minkowski";
    e.params = {{"n", double(n)}};
    e.chart = chart;
    e.g = make_expr_field(chart, {2, 0}, comps);
    e.expected = {{"Lambda", 0.0}, {"R", 0.0}, {"n", double(n - 2)}};
    e.anchor = "flat model";
    e.summary = "flat spacetime in null coordinates 2 dv dr + delta";
    return e;
}

using Builder = GeometryEntry (*)(const ParamMap&);

const std::vector<std::pair<std::string, Builder>>& registry() {
    static const std::vector<std::pair<std::string, Builder>> reg = {
        {"flat_torus", flat_torus},
        {"round_sphere", round_sphere},
        {"hyperbolic_surface", hyperbolic_surface},
        {"lim_product", lim_product},
        {"xbtz_product", [](const ParamMap& p) { return xbtz(p, false); }},
        {"xbtz_nhg", [](const ParamMap& p) { return xbtz(p, true); }},
        {"sds_cylinder", sds_cylinder},
        {"maxwell_sphere", maxwell_sphere},
        {"maxwell_circle_sigma", maxwell_circle_sigma},
        {"minkowski", minkowski},
    };
    return reg;
}

}  // namespace

std::pair<double, double> positive_interval(const std::function<double(double)>& F, double floor,
                                            double cap, double margin_frac) {
    const int N = 4096;
    std::vector<double> xs(N + 1), fs(N + 1);
    for (int i = 0; i <= N; ++i) {
        xs[i] = floor + (cap - floor) * i / N;
        fs[i] = F(xs[i]);
    }
    auto bisect = [&](double a, double b) {
        double fa = F(a);
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = F(m);
            if ((fa > 0) == (fm > 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };
    double best_lo = 0, best_hi = 0;
    int i = 0;
    while (i <= N) {
        if (fs[i] > 0) {
            int j = i;
            while (j + 1 <= N && fs[j + 1] > 0) ++j;
            double lo = xs[i], hi = xs[j];
            if (i > 0) lo = bisect(xs[i], xs[i - 1]);
            if (j < N) hi = bisect(xs[j], xs[j + 1]);
            if (hi - lo > best_hi - best_lo) {
                best_lo = lo;
                best_hi = hi;
            }
            i = j + 1;
        } else {
            ++i;
        }
    }
    if (best_hi <= best_lo) throw Error("no interval with F > 0 found");
    const double margin = margin_frac * (best_hi - best_lo);
    return {best_lo + margin, best_hi - margin};
}

GeometryEntry get_geometry(const std::string& name, const ParamMap& params) {
    for (const auto& [n, b] : registry())
        if (n == name) return b(params);
    throw Error("unknown geometry '" + name + "'");
}

std::vector<std::string> list_geometries() {
    std::vector<std::string> out;
    for (const auto& [n, b] : registry()) out.push_back(n);
    return out;
}

std::string describe_geometry(const std::string& name) {
    GeometryEntry e = get_geometry(name);
    std::ostringstream os;
    os << e.name << ": " << e.summary << "\n";
    os << "  anchor: " << e.anchor << "\n";
    os << "  defaults:";
    for (const auto& [k, v] : e.params) os << " " << k << "=" << v;
    os << "\n  chart:";
    for (const auto& c : e.chart.coords()) {
        os << " " << c.name;
        if (c.periodic)
            os << "(periodic " << c.period() << ")";
        else
            os << "[" << c.lo << "," << c.hi << "]";
    }
    os << "\n  expected:";
    for (const auto& [k, v] : e.expected) os << " " << k << "=" << v;
    if (e.name == "lim_product") os << "  [lambda = -m for every m]";
    os << "\n";
    return os.str();
}

GeometryEntry rotated_sphere_chart(double ell) {
    GeometryEntry e = get_geometry("round_sphere", {{"n", 2.0}, {"ell", ell}});
    e.name = "round_sphere_rotated";
    e.summary = "round 2-sphere chart with its pole on the x-axis";
    return e;
}

Point sphere_chart_transition(const Point& p) {
    // standard chart embeds (sin th cos ph, sin th sin ph, cos th); the
    // rotated chart reads x as its polar axis.
    const double th = p[0], ph = p[1];
    const double x = std::sin(th) * std::cos(ph);
    const double y = std::sin(th) * std::sin(ph);
    const double z = std::cos(th);
    return {std::acos(x), std::atan2(z, y)};
}

}  // namespace qev
