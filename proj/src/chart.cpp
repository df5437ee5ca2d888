#include "qev/chart.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace qev {

Chart::Chart(std::vector<Coord> coords, Signature sig) : coords_(std::move(coords)), sig_(sig) {
    if (coords_.empty()) throw Error("chart must have at least one coordinate");
    static const std::set<std::string> reserved{"sin", "cos",  "sinh", "cosh",
                                                "exp", "log",  "sqrt", "pi"};
    for (size_t i = 0; i < coords_.size(); ++i) {
        const auto& c = coords_[i];
        if (!(c.hi > c.lo)) throw Error("chart range empty for coordinate '" + c.name + "'");
        if (c.periodic && !(c.period() > 0 && std::isfinite(c.period())))
            throw Error("periodic coordinate '" + c.name + "' needs a finite positive period");
        if (!std::isfinite(c.lo) || !std::isfinite(c.hi))
            throw Error("chart range must be finite for coordinate '" + c.name + "'");
        if (reserved.count(c.name))
            throw Error("coordinate name '" + c.name + "' is reserved");
        for (size_t j = 0; j < i; ++j)
            if (coords_[j].name == c.name)
                throw Error("duplicate coordinate name '" + c.name + "'");
    }
}

std::vector<std::string> Chart::coord_names() const {
    std::vector<std::string> names;
    names.reserve(coords_.size());
    for (const auto& c : coords_) names.push_back(c.name);
    return names;
}

Point Chart::wrap(Point p) const {
    for (size_t i = 0; i < coords_.size(); ++i) {
        const auto& c = coords_[i];
        if (!c.periodic) continue;
        double t = std::fmod(p[i] - c.lo, c.period());
        if (t < 0) t += c.period();
        p[i] = c.lo + t;
    }
    return p;
}

bool Chart::in_interior(const Point& p, double margin) const {
    if (p.size() != coords_.size()) return false;
    for (size_t i = 0; i < coords_.size(); ++i) {
        const auto& c = coords_[i];
        if (c.periodic) continue;
        if (p[i] < c.lo + margin || p[i] > c.hi - margin) return false;
    }
    return true;
}

bool Chart::same_layout(const Chart& other) const {
    if (dim() != other.dim() || sig_ != other.sig_) return false;
    for (int i = 0; i < dim(); ++i) {
        const auto &a = coords_[i], &b = other.coords_[i];
        if (a.periodic != b.periodic || a.lo != b.lo || a.hi != b.hi) return false;
    }
    return true;
}

Grid::Grid(const Chart& chart, std::vector<int> counts, double margin_frac)
    : counts_(std::move(counts)) {
    if (static_cast<int>(counts_.size()) != chart.dim())
        throw Error("grid counts must match chart dimension");
    axes_.resize(counts_.size());
    for (size_t i = 0; i < counts_.size(); ++i) {
        const auto& c = chart.coord(i);
        const int n = counts_[i];
        if (n < 1) throw Error("grid needs at least one node per dimension");
        auto& ax = axes_[i];
        ax.resize(n);
        if (c.periodic) {
            for (int j = 0; j < n; ++j) ax[j] = c.lo + c.period() * j / n;
        } else {
            const double m = margin_frac * (c.hi - c.lo);
            const double lo = c.lo + m, hi = c.hi - m;
            for (int j = 0; j < n; ++j)
                ax[j] = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * j / (n - 1);
        }
        total_ *= n;
    }
}

Grid::Grid(const Chart& chart, int per_dim, double margin_frac)
    : Grid(chart, std::vector<int>(chart.dim(), per_dim), margin_frac) {}

Point Grid::point(std::int64_t flat) const {
    Point p(axes_.size());
    for (size_t i = axes_.size(); i-- > 0;) {
        const auto n = static_cast<std::int64_t>(axes_[i].size());
        p[i] = axes_[i][flat % n];
        flat /= n;
    }
    return p;
}

std::string Grid::shape_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < counts_.size(); ++i) os << (i ? "x" : "") << counts_[i];
    return os.str();
}

void Grid::for_each(const std::function<void(const Point&, std::int64_t)>& f) const {
    for (std::int64_t k = 0; k < total_; ++k) f(point(k), k);
}

std::vector<int> default_grid_counts(const Chart& chart, int base) {
    int n = base;
    if (chart.dim() == 4) n = std::max(8, (base * 5) / 12);
    if (chart.dim() >= 5) n = std::max(8, base / 3);
    return std::vector<int>(chart.dim(), n);
}

std::vector<Point> random_interior_points(const Chart& chart, int count, std::uint64_t seed,
                                          double margin_frac) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        Point p(chart.dim());
        for (int i = 0; i < chart.dim(); ++i) {
            const auto& c = chart.coord(i);
            if (c.periodic) {
                p[i] = c.lo + c.period() * u(rng);
            } else {
                const double m = margin_frac * (c.hi - c.lo);
                p[i] = c.lo + m + (c.hi - c.lo - 2 * m) * u(rng);
            }
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

double pairwise_sum(std::span<const double> v) {
    const size_t n = v.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0;
        for (double x : v) s += x;
        return s;
    }
    const size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace qev
