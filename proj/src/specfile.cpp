#include "qev/specfile.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qev/ops.hpp"

namespace qev {

namespace {

struct Line {
    int no;
    std::string text;
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream is(text);
    std::string s;
    int no = 0;
    while (std::getline(is, s)) {
        ++no;
        if (auto h = s.find('#'); h != std::string::npos) s = s.substr(0, h);
        size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = s.find_last_not_of(" \t\r");
        out.push_back({no, s.substr(b, e - b + 1)});
    }
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> w;
    std::istringstream is(s);
    std::string t;
    while (is >> t) w.push_back(t);
    return w;
}

double parse_number(const std::string& s, int line) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw ParseError("expected a number, got '" + s + "'", line, 1);
    }
}

int coord_index(const std::vector<std::string>& names, const std::string& s, int line) {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == s) return static_cast<int>(i);
    throw ParseError("unknown coordinate '" + s + "'", line, 1);
}

// "g[a,b]" -> {"g", {"a","b"}}
std::pair<std::string, std::vector<std::string>> split_indexed(const std::string& tok, int line) {
    auto lb = tok.find('[');
    if (lb == std::string::npos) return {tok, {}};
    if (tok.back() != ']') throw ParseError("expected ']' in '" + tok + "'", line, 1);
    std::string head = tok.substr(0, lb);
    std::string inner = tok.substr(lb + 1, tok.size() - lb - 2);
    std::vector<std::string> idx;
    std::string cur;
    for (char c : inner) {
        if (c == ',') {
            idx.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) idx.push_back(cur);
    return {head, idx};
}

}  // namespace

GeometryEntry parse_spec(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty geometry file", 1, 1);
    size_t li = 0;
    {
        auto w = words(lines[0].text);
        if (w.size() != 2 || w[0] != "qespec" || w[1] != "1")
            throw ParseError("first line must be 'qespec 1'", lines[0].no, 1);
        ++li;
    }

    // --- chart block ---
    if (li >= lines.size() || words(lines[li].text) != std::vector<std::string>{"chart", "{"})
        throw ParseError("expected 'chart {'", li < lines.size() ? lines[li].no : 0, 1);
    ++li;
    int dim = -1;
    std::string name = "specfile";
    Signature sig = Signature::Riemannian;
    std::vector<Chart::Coord> coords;
    for (; li < lines.size() && lines[li].text != "}"; ++li) {
        auto w = words(lines[li].text);
        const int no = lines[li].no;
        if (w[0] == "dim" && w.size() == 2) {
            dim = static_cast<int>(parse_number(w[1], no));
        } else if (w[0] == "name" && w.size() == 2) {
            name = w[1];
        } else if (w[0] == "coord" && w.size() >= 3) {
            Chart::Coord c;
            c.name = w[1];
            if (w[2] == "interval" && w.size() == 5) {
                c.lo = parse_number(w[3], no);
                c.hi = parse_number(w[4], no);
                c.periodic = false;
            } else if (w[2] == "periodic" && w.size() == 4) {
                c.lo = 0;
                c.hi = parse_number(w[3], no);
                c.periodic = true;
                if (!(c.hi > 0) || !std::isfinite(c.hi))
                    throw ParseError("period must be finite and positive", no, 1);
            } else {
                throw ParseError("coord needs 'interval LO HI' or 'periodic PERIOD'", no, 1);
            }
            coords.push_back(c);
        } else if (w[0] == "signature" && w.size() == 2) {
            if (w[1] == "riemannian")
                sig = Signature::Riemannian;
            else if (w[1] == "lorentzian")
                sig = Signature::Lorentzian;
            else
                throw ParseError("signature must be riemannian or lorentzian", no, 1);
        } else {
            throw ParseError("unexpected chart line '" + lines[li].text + "'", no, 1);
        }
    }
    if (li >= lines.size()) throw ParseError("unterminated chart block", lines.back().no, 1);
    ++li;  // consume "}"
    if (dim < 0) throw ParseError("chart block needs 'dim N'", lines[0].no, 1);
    if (static_cast<int>(coords.size()) != dim)
        throw ParseError("chart declares dim " + std::to_string(dim) + " but has " +
                             std::to_string(coords.size()) + " coords",
                         lines[0].no, 1);
    Chart chart;
    try {
        chart = Chart(coords, sig);
    } catch (const Error& e) {
        throw ParseError(e.what(), lines[0].no, 1);
    }
    const auto cnames = chart.coord_names();

    // --- fields block ---
    if (li >= lines.size() || words(lines[li].text) != std::vector<std::string>{"fields", "{"})
        throw ParseError("expected 'fields {'", li < lines.size() ? lines[li].no : 0, 1);
    ++li;
    ParamMap params;
    std::set<std::string> pnames;
    std::map<std::string, double> expected;
    std::vector<Expr> gcomps(static_cast<size_t>(dim) * dim, Expr::num(0));
    std::vector<bool> gset(static_cast<size_t>(dim) * dim, false);
    std::vector<Expr> xcomps(dim, Expr::num(0));
    bool has_g = false, has_x = false, has_f = false, has_y = false;
    Expr fexpr, yexpr;

    for (; li < lines.size() && lines[li].text != "}"; ++li) {
        const std::string& s = lines[li].text;
        const int no = lines[li].no;
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("expected '=' in '" + s + "'", no, 1);
        auto lhs_words = words(s.substr(0, eq));
        std::string rhs = s.substr(eq + 1);
        if (lhs_words.empty()) throw ParseError("missing left-hand side", no, 1);

        if (lhs_words[0] == "param") {
            if (lhs_words.size() != 2) throw ParseError("param NAME = VALUE", no, 1);
            params[lhs_words[1]] = parse_number(words(rhs).at(0), no);
            pnames.insert(lhs_words[1]);
            continue;
        }
        if (lhs_words[0] == "expect") {
            if (lhs_words.size() != 2) throw ParseError("expect NAME = VALUE", no, 1);
            expected[lhs_words[1]] = parse_number(words(rhs).at(0), no);
            continue;
        }
        if (lhs_words.size() != 1)
            throw ParseError("unexpected left-hand side '" + s.substr(0, eq) + "'", no, 1);
        auto [head, idx] = split_indexed(lhs_words[0], no);
        Expr e;
        try {
            e = parse_expr(rhs, cnames, pnames, no);
        } catch (ParseError& pe) {
            throw ParseError(std::string(pe.what()) + " (line " + std::to_string(no) + ")", no,
                             pe.col);
        }
        if (head == "g") {
            if (idx.size() != 2) throw ParseError("metric components need g[a,b]", no, 1);
            int a = coord_index(cnames, idx[0], no), b = coord_index(cnames, idx[1], no);
            gcomps[a * dim + b] = e;
            gcomps[b * dim + a] = e;
            gset[a * dim + b] = gset[b * dim + a] = true;
            has_g = true;
        } else if (head == "X") {
            if (idx.size() != 1) throw ParseError("one-form components need X[a]", no, 1);
            xcomps[coord_index(cnames, idx[0], no)] = e;
            has_x = true;
        } else if (head == "f") {
            fexpr = e;
            has_f = true;
        } else if (head == "Y") {
            yexpr = e;
            has_y = true;
        } else {
            throw ParseError("unknown field '" + head + "'", no, 1);
        }
    }
    if (li >= lines.size()) throw ParseError("unterminated fields block", lines.back().no, 1);
    ++li;
    if (li < lines.size())
        throw ParseError("unexpected content after fields block", lines[li].no, 1);
    if (!has_g) throw ParseError("fields block must define a metric g", lines[0].no, 1);
    (void)gset;

    GeometryEntry out;
    out.name = name;
    out.params = params;
    out.chart = chart;
    out.g = make_expr_field(chart, {2, 0}, gcomps, params);
    if (has_x) out.X = make_one_form(chart, xcomps, params);
    if (has_f) out.f = make_scalar(chart, fexpr, params);
    if (has_y) out.Y = make_scalar(chart, yexpr, params);
    out.expected = expected;
    out.anchor = "user specfile";
    out.summary = "user-supplied geometry";
    out.quadrature_capable = [&] {
        for (const auto& c : chart.coords())
            if (!c.periodic) return false;
        return true;
    }();

    // probe: finite evaluation and metric signature on the interior
    const auto probes = random_interior_points(chart, 16, 0x9e3779b97f4a7c15ULL);
    for (const auto& p : probes) {
        FieldJets j;
        out.g.eval(p, 0, j);
        for (double v : j.v)
            if (!std::isfinite(v))
                throw ParseError("metric evaluates non-finite at an interior probe point", 0, 0);
        std::vector<double> inv(static_cast<size_t>(dim) * dim);
        double det = 0;
        try {
            invert_matrix(dim, j.v.data(), inv.data(), &det);
        } catch (const Error&) {
            throw ParseError("metric is singular at an interior probe point", 0, 0);
        }
        if (sig == Signature::Riemannian && det <= 0)
            throw ParseError("metric determinant not positive on a riemannian chart", 0, 0);
        if (sig == Signature::Lorentzian && det >= 0)
            throw ParseError("metric determinant not negative on a lorentzian chart", 0, 0);
        if (out.X) {
            FieldJets xj;
            out.X->eval(p, 0, xj);
            for (double v : xj.v)
                if (!std::isfinite(v))
                    throw ParseError("X evaluates non-finite at an interior probe point", 0, 0);
        }
        if (out.f && !std::isfinite(out.f->value(p)[0]))
            throw ParseError("f evaluates non-finite at an interior probe point", 0, 0);
    }
    return out;
}

GeometryEntry parse_spec_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_spec(buf.str());
}

std::string emit_spec(const GeometryEntry& e) {
    std::ostringstream os;
    const auto names = e.chart.coord_names();
    os << "qespec 1\n";
    os << "chart {\n";
    os << "  name " << e.name << "\n";
    os << "  dim " << e.chart.dim() << "\n";
    char buf[64];
    for (const auto& c : e.chart.coords()) {
        if (c.periodic) {
            std::snprintf(buf, sizeof buf, "%.17g", c.period());
            os << "  coord " << c.name << " periodic " << buf << "\n";
        } else {
            os << "  coord " << c.name << " interval ";
            std::snprintf(buf, sizeof buf, "%.17g", c.lo);
            os << buf << " ";
            std::snprintf(buf, sizeof buf, "%.17g", c.hi);
            os << buf << "\n";
        }
    }
    os << "  signature "
       << (e.chart.signature() == Signature::Riemannian ? "riemannian" : "lorentzian") << "\n";
    os << "}\n";
    os << "fields {\n";
    const int n = e.chart.dim();
    const auto& gex = field_exprs(e.g);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (!gex[i * n + j].is_zero())
                os << "  g[" << names[i] << "," << names[j] << "] = " << gex[i * n + j].str(&names)
                   << "\n";
    if (e.X) {
        const auto& xe = field_exprs(*e.X);
        for (int i = 0; i < n; ++i)
            if (!xe[i].is_zero()) os << "  X[" << names[i] << "] = " << xe[i].str(&names) << "\n";
    }
    if (e.f) os << "  f = " << field_exprs(*e.f)[0].str(&names) << "\n";
    if (e.Y) os << "  Y = " << field_exprs(*e.Y)[0].str(&names) << "\n";
    for (const auto& [k, v] : e.expected) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << "  expect " << k << " = " << buf << "\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace qev
