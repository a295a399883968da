#include "egoref/formula.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

namespace egoref {

namespace {

constexpr long long kMaxCount = 2147483647LL;  // 2^31 - 1
constexpr int kMaxRadius = 65536;              // 2^16

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr f_top() { return make({Op::Top, "", 0, 0, nullptr, nullptr}); }
FormulaPtr f_prop(const std::string& name) { return make({Op::Prop, name, 0, 0, nullptr, nullptr}); }
FormulaPtr f_var(const std::string& name) { return make({Op::Var, name, 0, 0, nullptr, nullptr}); }
FormulaPtr f_not(FormulaPtr a) { return make({Op::Not, "", 0, 0, std::move(a), nullptr}); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    return make({Op::And, "", 0, 0, std::move(a), std::move(b)});
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    return make({Op::Or, "", 0, 0, std::move(a), std::move(b)});
}
FormulaPtr f_dia(long long k, FormulaPtr a) {
    if (k < 0 || k > kMaxCount) throw Error("diamond count out of range");
    if (k == 0) return f_top();
    return make({Op::DiaGe, "", k, 0, std::move(a), nullptr});
}
FormulaPtr f_box(FormulaPtr a) { return make({Op::Box, "", 0, 0, std::move(a), nullptr}); }
FormulaPtr f_down(const std::string& x, FormulaPtr a) {
    return make({Op::Down, x, 0, 0, std::move(a), nullptr});
}
FormulaPtr f_within(int r, FormulaPtr a) {
    if (r < 1 || r > kMaxRadius) throw Error("within radius out of range");
    return make({Op::Within, "", 0, r, std::move(a), nullptr});
}
FormulaPtr f_at(const std::string& x, FormulaPtr a) {
    return make({Op::At, x, 0, 0, std::move(a), nullptr});
}

namespace {

struct Token {
    enum Kind { LParen, RParen, Atom, End } kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip();
        if (i_ >= text_.size()) return {Token::End, "", i_};
        std::size_t start = i_;
        char c = text_[i_];
        if (c == '(') {
            ++i_;
            return {Token::LParen, "(", start};
        }
        if (c == ')') {
            ++i_;
            return {Token::RParen, ")", start};
        }
        std::string atom;
        while (i_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i_])) &&
               text_[i_] != '(' && text_[i_] != ')' && text_[i_] != ';')
            atom += text_[i_++];
        return {Token::Atom, atom, start};
    }

  private:
    void skip() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == ';') {
                while (i_ < text_.size() && text_[i_] != '\n') ++i_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t i_ = 0;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lexer_(text) { advance(); }

    FormulaPtr parse() {
        FormulaPtr f = expr();
        if (cur_.kind != Token::End) throw ParseError("trailing content after formula", cur_.pos);
        return f;
    }

  private:
    void advance() { cur_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur_.pos); }

    std::string atom(const char* what) {
        if (cur_.kind != Token::Atom) fail(std::string("expected ") + what);
        std::string s = cur_.text;
        advance();
        return s;
    }

    long long integer(const char* what) {
        std::size_t pos = cur_.pos;
        std::string s = atom(what);
        try {
            std::size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ParseError(std::string("expected ") + what + ", got '" + s + "'", pos);
        }
    }

    FormulaPtr expr() {
        if (cur_.kind == Token::Atom) {
            if (cur_.text == "true") {
                advance();
                return f_top();
            }
            fail("expected formula, got '" + cur_.text + "'");
        }
        if (cur_.kind != Token::LParen) fail("expected formula");
        std::size_t open_pos = cur_.pos;
        advance();
        std::string head = atom("operator");
        FormulaPtr out;
        if (head == "prop") {
            out = f_prop(atom("proposition name"));
        } else if (head == "var") {
            out = f_var(atom("variable name"));
        } else if (head == "not") {
            out = f_not(expr());
        } else if (head == "and") {
            auto a = expr();
            out = f_and(a, expr());
        } else if (head == "or") {
            auto a = expr();
            out = f_or(a, expr());
        } else if (head == "dia") {
            std::size_t kpos = cur_.pos;
            long long k = integer("diamond count");
            if (k < 1) throw ParseError("diamond count must be >= 1", kpos);
            if (k > kMaxCount) throw ParseError("diamond count too large", kpos);
            out = f_dia(k, expr());
        } else if (head == "box") {
            out = f_box(expr());
        } else if (head == "down") {
            std::string x = atom("variable name");
            out = f_down(x, expr());
        } else if (head == "within") {
            std::size_t rpos = cur_.pos;
            long long r = integer("radius");
            if (r < 1 || r > kMaxRadius) throw ParseError("radius out of range", rpos);
            out = f_within(static_cast<int>(r), expr());
        } else if (head == "at") {
            std::string x = atom("variable name");
            out = f_at(x, expr());
        } else {
            throw ParseError("unknown operator '" + head + "'", open_pos);
        }
        if (cur_.kind != Token::RParen) fail("expected ')'");
        advance();
        return out;
    }

    Lexer lexer_;
    Token cur_;
};

void collect_free(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& free) {
    if (!f) return;
    switch (f->op) {
        case Op::Var:
        case Op::At:
            if (!bound.count(f->name)) free.insert(f->name);
            if (f->op == Op::At) collect_free(f->left, bound, free);
            return;
        case Op::Down: {
            bool was_bound = bound.count(f->name) > 0;
            bound.insert(f->name);
            collect_free(f->left, bound, free);
            if (!was_bound) bound.erase(f->name);
            return;
        }
        default:
            collect_free(f->left, bound, free);
            collect_free(f->right, bound, free);
            return;
    }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, bool allow_free) {
    Parser parser(text);
    FormulaPtr f = parser.parse();
    if (!allow_free) {
        std::set<std::string> bound, free;
        collect_free(f, bound, free);
        if (!free.empty()) throw ParseError("free variable in sentence: " + *free.begin(), 0);
    }
    return f;
}

std::string print_formula(const FormulaPtr& f) {
    if (!f) return "";
    std::ostringstream out;
    switch (f->op) {
        case Op::Top: out << "true"; break;
        case Op::Prop: out << "(prop " << f->name << ")"; break;
        case Op::Var: out << "(var " << f->name << ")"; break;
        case Op::Not: out << "(not " << print_formula(f->left) << ")"; break;
        case Op::And:
            out << "(and " << print_formula(f->left) << " " << print_formula(f->right) << ")";
            break;
        case Op::Or:
            out << "(or " << print_formula(f->left) << " " << print_formula(f->right) << ")";
            break;
        case Op::DiaGe: out << "(dia " << f->count << " " << print_formula(f->left) << ")"; break;
        case Op::Box: out << "(box " << print_formula(f->left) << ")"; break;
        case Op::Down: out << "(down " << f->name << " " << print_formula(f->left) << ")"; break;
        case Op::Within:
            out << "(within " << f->radius << " " << print_formula(f->left) << ")";
            break;
        case Op::At: out << "(at " << f->name << " " << print_formula(f->left) << ")"; break;
    }
    return out.str();
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->op == b->op && a->name == b->name && a->count == b->count &&
           a->radius == b->radius && structurally_equal(a->left, b->left) &&
           structurally_equal(a->right, b->right);
}

namespace {

void stats_walk(const FormulaPtr& f, FormulaStats& s, std::set<std::string>& bound, int down_nest,
                int depth) {
    if (!f) return;
    s.op_depth = std::max(s.op_depth, depth);
    switch (f->op) {
        case Op::Top:
            return;
        case Op::Prop:
            return;
        case Op::Var:
            if (!bound.count(f->name)) s.free_vars.insert(f->name);
            return;
        case Op::At:
            if (!bound.count(f->name)) s.free_vars.insert(f->name);
            stats_walk(f->left, s, bound, down_nest, depth + 1);
            return;
        case Op::Down: {
            s.down_depth = std::max(s.down_depth, down_nest + 1);
            bool was_bound = bound.count(f->name) > 0;
            bound.insert(f->name);
            stats_walk(f->left, s, bound, down_nest + 1, depth + 1);
            if (!was_bound) bound.erase(f->name);
            return;
        }
        case Op::Within:
            s.radii.insert(f->radius);
            stats_walk(f->left, s, bound, down_nest, depth + 1);
            return;
        default:
            stats_walk(f->left, s, bound, down_nest, depth + 1);
            stats_walk(f->right, s, bound, down_nest, depth + 1);
            return;
    }
}

}  // namespace

FormulaStats stats(const FormulaPtr& f) {
    FormulaStats s;
    std::set<std::string> bound;
    stats_walk(f, s, bound, 0, 0);
    return s;
}

int modal_depth(const FormulaPtr& f) {
    if (!f) return 0;
    int inner = std::max(modal_depth(f->left), modal_depth(f->right));
    if (f->op == Op::DiaGe || f->op == Op::Box) return inner + 1;
    return inner;
}

bool is_gml(const FormulaPtr& f) {
    if (!f) return true;
    if (f->op == Op::Var || f->op == Op::Down || f->op == Op::Within || f->op == Op::At)
        return false;
    return is_gml(f->left) && is_gml(f->right);
}

namespace {

FormulaPtr dia_chain(int steps, FormulaPtr body) {
    FormulaPtr out = std::move(body);
    for (int i = 0; i < steps; ++i) out = f_dia(1, out);
    return out;
}

FormulaPtr triangle_formula() {
    return f_down("x", dia_chain(3, f_var("x")));
}

FormulaPtr rs_phi() {
    // Degree at least 8, next to a node that lies (within radius 2 of itself)
    // on a triangle avoiding degree-8 nodes.
    FormulaPtr low = f_not(f_dia(8, f_top()));
    FormulaPtr cycle = f_and(low, f_dia(1, f_and(low, f_dia(1, f_and(low, f_dia(1, f_var("x")))))));
    return f_and(f_dia(8, f_top()), f_dia(1, f_down("x", f_within(2, cycle))));
}

FormulaPtr rs_psi() {
    FormulaPtr phi = rs_phi();
    return f_and(phi, f_not(f_dia(1, phi)));
}

FormulaPtr cycle_formula(int r) {
    // Satisfied on a long even cycle but not on the pair of short cycles:
    // the radius-(r+1) ball around the marked node has a degree-1 node at
    // walk distance r+1 only when the ball is a path.
    return f_down("x", f_within(r + 1, dia_chain(r + 1, f_not(f_dia(2, f_top())))));
}

FormulaPtr triangle_cycle_formula() {
    FormulaPtr t = triangle_formula();
    return f_down("x", f_dia(1, f_and(t, f_dia(1, f_and(t, f_and(f_dia(1, t),
                                                                 f_dia(1, f_and(t, f_var("x")))))))));
}

std::optional<int> formula_param(const std::string& s, const std::string& prefix) {
    if (s.size() <= prefix.size() + 2 || s.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    if (s[prefix.size()] != '(' || s.back() != ')') return std::nullopt;
    try {
        std::string arg = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
        std::size_t pos = 0;
        int v = std::stoi(arg, &pos);
        if (pos != arg.size()) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

FormulaPtr builtin_formula(const std::string& name) {
    if (name == "triangle") return triangle_formula();
    if (name == "psi-rs") return rs_psi();
    if (name == "psi-triangle-cycle") return triangle_cycle_formula();
    if (auto r = formula_param(name, "phi-cycle")) {
        if (*r < 0) throw Error("phi-cycle(r) requires r >= 0");
        return cycle_formula(*r);
    }
    throw Error("unknown builtin formula: " + name);
}

std::vector<std::string> builtin_formula_names() {
    return {"triangle", "psi-rs", "phi-cycle(r)", "psi-triangle-cycle"};
}

}  // namespace egoref
