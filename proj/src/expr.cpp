#include "qev/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qev {

enum class Kind : std::uint8_t {
    Num, Coord, Param,
    Add, Sub, Mul, Div, Pow, Neg,
    Sin, Cos, Sinh, Cosh, Exp, Log, Sqrt
};

struct Expr::Node {
    Kind kind;
    double value = 0.0;
    int index = -1;
    std::string pname;
    NodeP a, b;
};

namespace {

using NodeP = Expr::NodeP;

NodeP mk_num(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Num;
    n->value = v;
    return n;
}

NodeP mk_coord(int i) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Coord;
    n->index = i;
    return n;
}

NodeP mk_param(std::string name) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Param;
    n->pname = std::move(name);
    return n;
}

bool is_num(const NodeP& n, double v) {
    return n->kind == Kind::Num && n->value == v;
}

bool same_tree(const NodeP& x, const NodeP& y) {
    if (x == y) return true;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case Kind::Num: return x->value == y->value;
        case Kind::Coord: return x->index == y->index;
        case Kind::Param: return x->pname == y->pname;
        default: break;
    }
    if (x->a && !same_tree(x->a, y->a)) return false;
    if (x->b && !same_tree(x->b, y->b)) return false;
    return true;
}

double apply_unary(Kind k, double v) {
    switch (k) {
        case Kind::Neg: return -v;
        case Kind::Sin: return std::sin(v);
        case Kind::Cos: return std::cos(v);
        case Kind::Sinh: return std::sinh(v);
        case Kind::Cosh: return std::cosh(v);
        case Kind::Exp: return std::exp(v);
        case Kind::Log: return std::log(v);
        case Kind::Sqrt: return std::sqrt(v);
        default: return v;
    }
}

NodeP mk(Kind k, NodeP a, NodeP b = nullptr);

NodeP mk_simplified(Kind k, const NodeP& a, const NodeP& b) {
    const bool ca = a && a->kind == Kind::Num;
    const bool cb = b && b->kind == Kind::Num;
    switch (k) {
        case Kind::Add:
            if (ca && cb) return mk_num(a->value + b->value);
            if (is_num(a, 0)) return b;
            if (is_num(b, 0)) return a;
            break;
        case Kind::Sub:
            if (ca && cb) return mk_num(a->value - b->value);
            if (is_num(b, 0)) return a;
            if (is_num(a, 0)) return mk(Kind::Neg, b);
            if (same_tree(a, b)) return mk_num(0);
            break;
        case Kind::Mul:
            if (ca && cb) return mk_num(a->value * b->value);
            if (is_num(a, 0) || is_num(b, 0)) return mk_num(0);
            if (is_num(a, 1)) return b;
            if (is_num(b, 1)) return a;
            if (is_num(a, -1)) return mk(Kind::Neg, b);
            if (is_num(b, -1)) return mk(Kind::Neg, a);
            break;
        case Kind::Div:
            if (ca && cb && b->value != 0) return mk_num(a->value / b->value);
            if (is_num(a, 0)) return mk_num(0);
            if (is_num(b, 1)) return a;
            if (same_tree(a, b)) return mk_num(1);
            break;
        case Kind::Pow:
            if (cb && b->value == 0) return mk_num(1);
            if (cb && b->value == 1) return a;
            if (ca && cb) return mk_num(std::pow(a->value, b->value));
            if (is_num(a, 1)) return mk_num(1);
            break;
        case Kind::Neg:
            if (ca) return mk_num(-a->value);
            if (a->kind == Kind::Neg) return a->a;
            break;
        default:
            if (ca) return mk_num(apply_unary(k, a->value));
            break;
    }
    return nullptr;
}

NodeP mk(Kind k, NodeP a, NodeP b) {
    if (NodeP s = mk_simplified(k, a, b)) return s;
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodeP diff_node(const NodeP& n, int idx) {
    switch (n->kind) {
        case Kind::Num:
        case Kind::Param:
            return mk_num(0);
        case Kind::Coord:
            return mk_num(n->index == idx ? 1 : 0);
        case Kind::Add: return mk(Kind::Add, diff_node(n->a, idx), diff_node(n->b, idx));
        case Kind::Sub: return mk(Kind::Sub, diff_node(n->a, idx), diff_node(n->b, idx));
        case Kind::Mul:
            return mk(Kind::Add, mk(Kind::Mul, diff_node(n->a, idx), n->b),
                      mk(Kind::Mul, n->a, diff_node(n->b, idx)));
        case Kind::Div:
            // (a/b)' = a'/b - a b' / b^2
            return mk(Kind::Sub, mk(Kind::Div, diff_node(n->a, idx), n->b),
                      mk(Kind::Div, mk(Kind::Mul, n->a, diff_node(n->b, idx)),
                         mk(Kind::Mul, n->b, n->b)));
        case Kind::Pow: {
            const NodeP da = diff_node(n->a, idx);
            if (n->b->kind == Kind::Num) {
                const double e = n->b->value;
                return mk(Kind::Mul, mk_num(e),
                          mk(Kind::Mul, mk(Kind::Pow, n->a, mk_num(e - 1)), da));
            }
            const NodeP db = diff_node(n->b, idx);
            // f^g (g' log f + g f' / f)
            NodeP t = mk(Kind::Add, mk(Kind::Mul, db, mk(Kind::Log, n->a)),
                         mk(Kind::Div, mk(Kind::Mul, n->b, da), n->a));
            return mk(Kind::Mul, mk(Kind::Pow, n->a, n->b), t);
        }
        case Kind::Neg: return mk(Kind::Neg, diff_node(n->a, idx));
        case Kind::Sin: return mk(Kind::Mul, mk(Kind::Cos, n->a), diff_node(n->a, idx));
        case Kind::Cos:
            return mk(Kind::Neg, mk(Kind::Mul, mk(Kind::Sin, n->a), diff_node(n->a, idx)));
        case Kind::Sinh: return mk(Kind::Mul, mk(Kind::Cosh, n->a), diff_node(n->a, idx));
        case Kind::Cosh: return mk(Kind::Mul, mk(Kind::Sinh, n->a), diff_node(n->a, idx));
        case Kind::Exp: return mk(Kind::Mul, n, diff_node(n->a, idx));
        case Kind::Log: return mk(Kind::Div, diff_node(n->a, idx), n->a);
        case Kind::Sqrt:
            return mk(Kind::Div, diff_node(n->a, idx), mk(Kind::Mul, mk_num(2), n));
    }
    throw Error("diff: bad node");
}

NodeP shift_node(const NodeP& n, int offset) {
    if (n->kind == Kind::Coord) return mk_coord(n->index + offset);
    if (!n->a) return n;
    NodeP a = shift_node(n->a, offset);
    NodeP b = n->b ? shift_node(n->b, offset) : nullptr;
    return mk(n->kind, std::move(a), std::move(b));
}

NodeP bind_node(const NodeP& n, const ParamMap& params) {
    switch (n->kind) {
        case Kind::Num:
        case Kind::Coord:
            return n;
        case Kind::Param: {
            auto it = params.find(n->pname);
            if (it == params.end()) throw Error("unbound parameter '" + n->pname + "'");
            return mk_num(it->second);
        }
        default: {
            NodeP a = n->a ? bind_node(n->a, params) : nullptr;
            NodeP b = n->b ? bind_node(n->b, params) : nullptr;
            return mk(n->kind, std::move(a), std::move(b));
        }
    }
}

double eval_node(const NodeP& n, std::span<const double> x, const ParamMap* params) {
    switch (n->kind) {
        case Kind::Num: return n->value;
        case Kind::Coord:
            if (n->index < 0 || n->index >= static_cast<int>(x.size()))
                throw Error("coordinate index out of range in expression");
            return x[n->index];
        case Kind::Param: {
            if (!params) throw Error("unbound parameter '" + n->pname + "'");
            auto it = params->find(n->pname);
            if (it == params->end()) throw Error("unbound parameter '" + n->pname + "'");
            return it->second;
        }
        case Kind::Add: return eval_node(n->a, x, params) + eval_node(n->b, x, params);
        case Kind::Sub: return eval_node(n->a, x, params) - eval_node(n->b, x, params);
        case Kind::Mul: return eval_node(n->a, x, params) * eval_node(n->b, x, params);
        case Kind::Div: return eval_node(n->a, x, params) / eval_node(n->b, x, params);
        case Kind::Pow: return std::pow(eval_node(n->a, x, params), eval_node(n->b, x, params));
        default: return apply_unary(n->kind, eval_node(n->a, x, params));
    }
}

const char* fn_name(Kind k) {
    switch (k) {
        case Kind::Sin: return "sin";
        case Kind::Cos: return "cos";
        case Kind::Sinh: return "sinh";
        case Kind::Cosh: return "cosh";
        case Kind::Exp: return "exp";
        case Kind::Log: return "log";
        case Kind::Sqrt: return "sqrt";
        default: return "?";
    }
}

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Precedence levels: + - (1), * / (2), unary - (3), ^ (4), atoms (5).
int prec_of(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void print_node(const NodeP& n, std::ostringstream& os, int parent_prec, bool right_side,
                const std::vector<std::string>* names) {
    const int p = prec_of(n->kind);
    bool parens = p < parent_prec || (p == parent_prec && right_side && p != 4) ||
                  (p == parent_prec && !right_side && p == 4);
    switch (n->kind) {
        case Kind::Num: {
            if (n->value < 0) {
                os << '(' << fmt_num(n->value) << ')';
                return;
            }
            os << fmt_num(n->value);
            return;
        }
        case Kind::Coord:
            if (names && n->index >= 0 && n->index < static_cast<int>(names->size()))
                os << (*names)[n->index];
            else
                os << "$" << n->index;
            return;
        case Kind::Param: os << n->pname; return;
        case Kind::Neg:
            if (parens) os << '(';
            os << '-';
            print_node(n->a, os, 3, true, names);
            if (parens) os << ')';
            return;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
        case Kind::Pow: {
            if (parens) os << '(';
            print_node(n->a, os, p, false, names);
            switch (n->kind) {
                case Kind::Add: os << " + "; break;
                case Kind::Sub: os << " - "; break;
                case Kind::Mul: os << "*"; break;
                case Kind::Div: os << "/"; break;
                case Kind::Pow: os << "^"; break;
                default: break;
            }
            print_node(n->b, os, p, true, names);
            if (parens) os << ')';
            return;
        }
        default:
            os << fn_name(n->kind) << '(';
            print_node(n->a, os, 0, false, names);
            os << ')';
            return;
    }
}

void collect(const NodeP& n, std::set<std::string>& out) {
    if (n->kind == Kind::Param) out.insert(n->pname);
    if (n->a) collect(n->a, out);
    if (n->b) collect(n->b, out);
}

bool node_is_const(const NodeP& n) {
    if (n->kind == Kind::Coord) return false;
    if (n->a && !node_is_const(n->a)) return false;
    if (n->b && !node_is_const(n->b)) return false;
    return true;
}

}  // namespace

Expr::Expr() : node_(mk_num(0)) {}
Expr Expr::num(double v) { return Expr(mk_num(v)); }
Expr Expr::coord(int index) { return Expr(mk_coord(index)); }
Expr Expr::param(std::string name) { return Expr(mk_param(std::move(name))); }

Expr operator+(const Expr& a, const Expr& b) { return Expr(mk(Kind::Add, a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(mk(Kind::Sub, a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(mk(Kind::Mul, a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(mk(Kind::Div, a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(mk(Kind::Neg, a.node_)); }
Expr pow(const Expr& a, const Expr& b) { return Expr(mk(Kind::Pow, a.node_, b.node_)); }
Expr pow(const Expr& a, double e) { return pow(a, Expr::num(e)); }
Expr sin(const Expr& a) { return Expr(mk(Kind::Sin, a.node_)); }
Expr cos(const Expr& a) { return Expr(mk(Kind::Cos, a.node_)); }
Expr sinh(const Expr& a) { return Expr(mk(Kind::Sinh, a.node_)); }
Expr cosh(const Expr& a) { return Expr(mk(Kind::Cosh, a.node_)); }
Expr exp(const Expr& a) { return Expr(mk(Kind::Exp, a.node_)); }
Expr log(const Expr& a) { return Expr(mk(Kind::Log, a.node_)); }
Expr sqrt(const Expr& a) { return Expr(mk(Kind::Sqrt, a.node_)); }

Expr Expr::diff(int index) const { return Expr(diff_node(node_, index)); }
Expr Expr::bind(const ParamMap& params) const { return Expr(bind_node(node_, params)); }
Expr Expr::shift_coords(int offset) const { return Expr(shift_node(node_, offset)); }
double Expr::eval(std::span<const double> x, const ParamMap* params) const {
    return eval_node(node_, x, params);
}
void Expr::collect_params(std::set<std::string>& out) const { collect(node_, out); }
bool Expr::is_const() const { return node_is_const(node_); }
bool Expr::is_zero() const { return node_->kind == Kind::Num && node_->value == 0; }

std::string Expr::str(const std::vector<std::string>* coord_names) const {
    std::ostringstream os;
    print_node(node_, os, 0, false, coord_names);
    return os.str();
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Type { Number, Ident, Op, End } type;
    std::string text;
    double value = 0;
    int line, col;
};

class Lexer {
  public:
    Lexer(std::string_view s, int line_offset) : s_(s), line_(line_offset) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= s_.size()) {
            t.type = Token::End;
            return t;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
            size_t end = pos_;
            const char* start = s_.data() + pos_;
            char* out = nullptr;
            t.value = std::strtod(start, &out);
            end = pos_ + static_cast<size_t>(out - start);
            t.type = Token::Number;
            t.text = std::string(s_.substr(pos_, end - pos_));
            advance(end - pos_);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t end = pos_;
            while (end < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
                ++end;
            t.type = Token::Ident;
            t.text = std::string(s_.substr(pos_, end - pos_));
            advance(end - pos_);
            return t;
        }
        if (std::string("+-*/^(),").find(c) != std::string::npos) {
            t.type = Token::Op;
            t.text = std::string(1, c);
            advance(1);
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {  // comment to end of input chunk
                pos_ = s_.size();
                return;
            }
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else {
                return;
            }
        }
    }
    void advance(size_t k) {
        pos_ += k;
        col_ += static_cast<int>(k);
    }

    std::string_view s_;
    size_t pos_ = 0;
    int line_, col_ = 1;
};

class Parser {
  public:
    Parser(std::string_view text, const std::vector<std::string>& coords,
           const std::set<std::string>& params, int line_offset)
        : lex_(text, line_offset), coords_(coords), params_(params) {
        cur_ = lex_.next();
    }

    Expr parse() {
        Expr e = parse_sum();
        if (cur_.type != Token::End)
            throw ParseError("unexpected trailing input '" + cur_.text + "'", cur_.line, cur_.col);
        return e;
    }

  private:
    void bump() { cur_ = lex_.next(); }

    bool eat_op(const char* op) {
        if (cur_.type == Token::Op && cur_.text == op) {
            bump();
            return true;
        }
        return false;
    }

    Expr parse_sum() {
        Expr e = parse_term();
        for (;;) {
            if (eat_op("+"))
                e = e + parse_term();
            else if (eat_op("-"))
                e = e - parse_term();
            else
                return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_unary();
        for (;;) {
            if (eat_op("*"))
                e = e * parse_unary();
            else if (eat_op("/"))
                e = e / parse_unary();
            else
                return e;
        }
    }

    Expr parse_unary() {
        if (eat_op("-")) return -parse_unary();
        if (eat_op("+")) return parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (eat_op("^")) {
            // right associative; exponent may carry a unary sign
            Expr e = parse_unary_power();
            return pow(base, e);
        }
        return base;
    }

    Expr parse_unary_power() {
        if (eat_op("-")) return -parse_unary_power();
        if (eat_op("+")) return parse_unary_power();
        Expr base = parse_atom();
        if (eat_op("^")) return pow(base, parse_unary_power());
        return base;
    }

    Expr parse_atom() {
        if (cur_.type == Token::Number) {
            double v = cur_.value;
            bump();
            return Expr::num(v);
        }
        if (eat_op("(")) {
            Expr e = parse_sum();
            if (!eat_op(")"))
                throw ParseError("expected ')'", cur_.line, cur_.col);
            return e;
        }
        if (cur_.type == Token::Ident) {
            std::string name = cur_.text;
            int line = cur_.line, col = cur_.col;
            bump();
            if (cur_.type == Token::Op && cur_.text == "(") {
                bump();
                Expr arg = parse_sum();
                if (!eat_op(")"))
                    throw ParseError("expected ')'", cur_.line, cur_.col);
                if (name == "sin") return sin(arg);
                if (name == "cos") return cos(arg);
                if (name == "sinh") return sinh(arg);
                if (name == "cosh") return cosh(arg);
                if (name == "exp") return exp(arg);
                if (name == "log") return log(arg);
                if (name == "sqrt") return sqrt(arg);
                throw ParseError("unknown function '" + name + "'", line, col);
            }
            if (name == "pi") return Expr::num(3.14159265358979323846);
            for (size_t i = 0; i < coords_.size(); ++i)
                if (coords_[i] == name) return Expr::coord(static_cast<int>(i));
            if (params_.count(name)) return Expr::param(name);
            throw ParseError("undeclared parameter '" + name + "'", line, col);
        }
        throw ParseError("expected expression, got '" + cur_.text + "'", cur_.line, cur_.col);
    }

    Lexer lex_;
    Token cur_;
    const std::vector<std::string>& coords_;
    const std::set<std::string>& params_;
};

}  // namespace

Expr parse_expr(std::string_view text, const std::vector<std::string>& coord_names,
                const std::set<std::string>& param_names, int line_offset) {
    Parser p(text, coord_names, param_names, line_offset);
    return p.parse();
}

// ---------------------------------------------------------------------------
// Tape compiler
// ---------------------------------------------------------------------------

namespace {
enum VmOp : std::uint8_t {
    VConst, VCoord, VAdd, VSub, VMul, VDiv, VNeg,
    VSin, VCos, VSinh, VCosh, VExp, VLog, VSqrt,
    VPowI, VPowC, VPow
};
}

CompiledExpr::CompiledExpr() { *this = CompiledExpr(Expr::num(0)); }

CompiledExpr::CompiledExpr(const Expr& e) {
    known_zero_ = e.is_zero();
    int depth = 0;
    // post-order flatten
    struct Frame {
        const Expr::Node* n;
        int stage;
    };
    std::vector<Frame> stack{{e.node().get(), 0}};
    while (!stack.empty()) {
        auto [n, stage] = stack.back();
        stack.pop_back();
        if (stage == 0) {
            stack.push_back({n, 1});
            if (n->b) stack.push_back({n->b.get(), 0});
            if (n->a) stack.push_back({n->a.get(), 0});
            continue;
        }
        Instr ins{};
        switch (n->kind) {
            case Kind::Num: ins = {VConst, 0, n->value}; ++depth; break;
            case Kind::Coord: ins = {VCoord, n->index, 0}; ++depth; break;
            case Kind::Param: throw Error("cannot compile expression with unbound parameters");
            case Kind::Add: ins = {VAdd, 0, 0}; --depth; break;
            case Kind::Sub: ins = {VSub, 0, 0}; --depth; break;
            case Kind::Mul: ins = {VMul, 0, 0}; --depth; break;
            case Kind::Div: ins = {VDiv, 0, 0}; --depth; break;
            case Kind::Neg: ins = {VNeg, 0, 0}; break;
            case Kind::Sin: ins = {VSin, 0, 0}; break;
            case Kind::Cos: ins = {VCos, 0, 0}; break;
            case Kind::Sinh: ins = {VSinh, 0, 0}; break;
            case Kind::Cosh: ins = {VCosh, 0, 0}; break;
            case Kind::Exp: ins = {VExp, 0, 0}; break;
            case Kind::Log: ins = {VLog, 0, 0}; break;
            case Kind::Sqrt: ins = {VSqrt, 0, 0}; break;
            case Kind::Pow: {
                if (n->b->kind == Kind::Num) {
                    // folded exponent becomes part of the instruction
                    code_.pop_back();
                    --depth;
                    const double ex = n->b->value;
                    if (ex == std::floor(ex) && std::abs(ex) <= 12)
                        ins = {VPowI, static_cast<std::int32_t>(ex), 0};
                    else
                        ins = {VPowC, 0, ex};
                } else {
                    ins = {VPow, 0, 0};
                    --depth;
                }
                break;
            }
        }
        code_.push_back(ins);
        if (depth > max_stack_) max_stack_ = depth;
    }
    if (max_stack_ > 63) throw Error("expression too deep to compile");
}

double CompiledExpr::operator()(std::span<const double> x) const {
    double st[64];
    int sp = 0;
    for (const Instr& ins : code_) {
        switch (ins.op) {
            case VConst: st[sp++] = ins.c; break;
            case VCoord: st[sp++] = x[ins.arg]; break;
            case VAdd: --sp; st[sp - 1] += st[sp]; break;
            case VSub: --sp; st[sp - 1] -= st[sp]; break;
            case VMul: --sp; st[sp - 1] *= st[sp]; break;
            case VDiv: --sp; st[sp - 1] /= st[sp]; break;
            case VNeg: st[sp - 1] = -st[sp - 1]; break;
            case VSin: st[sp - 1] = std::sin(st[sp - 1]); break;
            case VCos: st[sp - 1] = std::cos(st[sp - 1]); break;
            case VSinh: st[sp - 1] = std::sinh(st[sp - 1]); break;
            case VCosh: st[sp - 1] = std::cosh(st[sp - 1]); break;
            case VExp: st[sp - 1] = std::exp(st[sp - 1]); break;
            case VLog: st[sp - 1] = std::log(st[sp - 1]); break;
            case VSqrt: st[sp - 1] = std::sqrt(st[sp - 1]); break;
            case VPowI: {
                double b = st[sp - 1];
                int e = ins.arg;
                bool inv = e < 0;
                if (inv) e = -e;
                double r = 1;
                while (e) {
                    if (e & 1) r *= b;
                    b *= b;
                    e >>= 1;
                }
                st[sp - 1] = inv ? 1.0 / r : r;
                break;
            }
            case VPowC: st[sp - 1] = std::pow(st[sp - 1], ins.c); break;
            case VPow: --sp; st[sp - 1] = std::pow(st[sp - 1], st[sp]); break;
        }
    }
    return sp ? st[sp - 1] : 0.0;
}

}  // namespace qev
