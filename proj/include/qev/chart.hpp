#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qev/expr.hpp"

namespace qev {

enum class Signature { Riemannian, Lorentzian };

using Point = std::vector<double>;

/// A coordinate box. Periodic coordinates store a period and wrap; interval
/// coordinates carry an inclusive range and sampling keeps an interior margin.
class Chart {
  public:
    struct Coord {
        std::string name;
        double lo = 0, hi = 1;
        bool periodic = false;
        double period() const { return hi - lo; }
    };

    Chart() = default;
    Chart(std::vector<Coord> coords, Signature sig);

    int dim() const { return static_cast<int>(coords_.size()); }
    const Coord& coord(int i) const { return coords_.at(i); }
    const std::vector<Coord>& coords() const { return coords_; }
    Signature signature() const { return sig_; }

    std::vector<std::string> coord_names() const;

    /// Wraps periodic components into [lo, lo+period).
    Point wrap(Point p) const;

    /// True when p lies within the box with the given absolute margin on
    /// non-periodic coordinates.
    bool in_interior(const Point& p, double margin) const;

    bool same_layout(const Chart& other) const;

  private:
    std::vector<Coord> coords_;
    Signature sig_ = Signature::Riemannian;
};

/// Deterministic rectangular sample grid over a chart. Non-periodic
/// dimensions keep a relative interior margin; periodic dimensions cover one
/// full period without duplicating the seam.
class Grid {
  public:
    Grid(const Chart& chart, std::vector<int> counts, double margin_frac = 0.15);
    Grid(const Chart& chart, int per_dim, double margin_frac = 0.15);

    std::int64_t size() const { return total_; }
    Point point(std::int64_t flat_index) const;
    const std::vector<int>& counts() const { return counts_; }
    std::string shape_string() const;

    /// Sweeps f over all nodes.
    void for_each(const std::function<void(const Point&, std::int64_t)>& f) const;

  private:
    std::vector<std::vector<double>> axes_;
    std::vector<int> counts_;
    std::int64_t total_ = 1;
};

/// Per-dimension default node counts for a requested base density: the base
/// for dims <= 3, reduced for 4- and 5-dimensional charts to keep sweeps at
/// a comparable total point count.
std::vector<int> default_grid_counts(const Chart& chart, int base);

/// Deterministic interior sample points (for probe/property checks).
std::vector<Point> random_interior_points(const Chart& chart, int count, std::uint64_t seed,
                                          double margin_frac = 0.15);

/// Fixed-order pairwise summation; independent of accumulation chunking.
double pairwise_sum(std::span<const double> v);

}  // namespace qev
