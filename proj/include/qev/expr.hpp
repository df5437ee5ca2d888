#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qev {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    int line = 0, col = 0;
    ParseError(std::string msg, int line_, int col_)
        : Error(std::move(msg)), line(line_), col(col_) {}
};

using ParamMap = std::map<std::string, double>;

/// Immutable scalar expression tree over coordinates and named parameters.
/// Supports + - * / ^, sin cos sinh cosh exp log sqrt, symbolic
/// differentiation with respect to a coordinate, and parameter binding.
class Expr {
  public:
    Expr();  // literal 0

    static Expr num(double v);
    static Expr coord(int index);
    static Expr param(std::string name);

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr pow(const Expr& a, const Expr& b);
    friend Expr pow(const Expr& a, double e);
    friend Expr sin(const Expr& a);
    friend Expr cos(const Expr& a);
    friend Expr sinh(const Expr& a);
    friend Expr cosh(const Expr& a);
    friend Expr exp(const Expr& a);
    friend Expr log(const Expr& a);
    friend Expr sqrt(const Expr& a);

    /// Derivative with respect to coordinate `index`, simplified.
    Expr diff(int index) const;

    /// Replace every parameter with its value; missing parameters throw.
    Expr bind(const ParamMap& params) const;

    /// Renumber coordinates: index -> index + offset.
    Expr shift_coords(int offset) const;

    double eval(std::span<const double> x, const ParamMap* params = nullptr) const;
    double eval(std::initializer_list<double> x, const ParamMap* params = nullptr) const {
        return eval(std::span<const double>(x.begin(), x.size()), params);
    }

    void collect_params(std::set<std::string>& out) const;

    bool is_const() const;
    bool is_zero() const;

    /// Canonical text form; parsing it back reproduces the same tree.
    /// Coordinates print as their names when given, else as $index.
    std::string str(const std::vector<std::string>* coord_names = nullptr) const;

    struct Node;
    using NodeP = std::shared_ptr<const Node>;
    explicit Expr(NodeP n) : node_(std::move(n)) {}
    const NodeP& node() const { return node_; }

  private:
    NodeP node_;
};

/// Parses one expression. Coordinates and parameters are resolved by name;
/// any identifier that is neither a coordinate, a declared parameter, nor a
/// known function is a ParseError naming the identifier. Precedence: ^ (right
/// associative) over unary minus over * / over + - (left associative).
Expr parse_expr(std::string_view text,
                const std::vector<std::string>& coord_names,
                const std::set<std::string>& param_names,
                int line_offset = 1);

/// Expression with all parameters bound, flattened to a stack program.
class CompiledExpr {
  public:
    CompiledExpr();                // constant 0
    explicit CompiledExpr(const Expr& bound_expr);

    double operator()(std::span<const double> x) const;

    bool is_known_zero() const { return known_zero_; }

  private:
    struct Instr {
        std::uint8_t op;
        std::int32_t arg;
        double c;
    };
    std::vector<Instr> code_;
    int max_stack_ = 0;
    bool known_zero_ = false;
};

}  // namespace qev
