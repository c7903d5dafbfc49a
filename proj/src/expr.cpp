#include "webcas/expr.hpp"

#include <cctype>
#include <sstream>

namespace webcas {

Expr Expr::constant(Rational v) {
    Expr e;
    e.kind = Kind::Const;
    e.value = std::move(v);
    return e;
}

Expr Expr::var(std::string n) {
    Expr e;
    e.kind = Kind::Var;
    e.name = std::move(n);
    return e;
}

Expr Expr::node(Kind k, std::vector<Expr> kids) {
    Expr e;
    e.kind = k;
    e.kids = std::move(kids);
    return e;
}

Expr Expr::pow(Expr base, long exp) {
    Expr e;
    e.kind = Kind::Pow;
    e.exponent = exp;
    e.kids.push_back(std::move(base));
    return e;
}

static void collect_vars(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == Expr::Kind::Var) {
        for (const auto& n : out)
            if (n == e.name) return;
        out.push_back(e.name);
    }
    for (const auto& k : e.kids) collect_vars(k, out);
}

std::vector<std::string> Expr::variables() const {
    std::vector<std::string> out;
    collect_vars(*this, out);
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    Expr expr() {
        Expr acc = term();
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Expr rhs = term();
                acc = Expr::node(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub,
                                 {std::move(acc), std::move(rhs)});
            } else {
                return acc;
            }
        }
    }

    Expr term() {
        Expr acc = factor();
        while (true) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                Expr rhs = factor();
                acc = Expr::node(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div,
                                 {std::move(acc), std::move(rhs)});
            } else {
                return acc;
            }
        }
    }

    Expr factor() {
        Expr b = base();
        if (peek() == '^') {
            ++pos_;
            long e = integer();
            return Expr::pow(std::move(b), e);
        }
        return b;
    }

    long integer() {
        skip_ws();
        size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected integer exponent");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        (void)start;
        return neg ? -v : v;
    }

    Expr base() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return Expr::node(Expr::Kind::Neg, {base()});
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("expected expression");
    }

    Expr rational() {
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits += s_[pos_++];
        // "3/2" at a literal position is a rational token, not a division.
        size_t save = pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            size_t slash = pos_;
            ++pos_;
            skip_ws();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                std::string dd;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    dd += s_[pos_++];
                if (dd.find_first_not_of('0') == std::string::npos) {
                    pos_ = slash;
                    fail("zero literal denominator");
                }
                return Expr::constant(rat_parse(digits + "/" + dd));
            }
            pos_ = save;
        } else {
            pos_ = save;
        }
        return Expr::constant(rat_parse(digits));
    }

    Expr identifier() {
        std::string name;
        int brace_depth = 0;
        name += s_[pos_++];
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ',' ||
                      c == '{' || c == '}' || (c == '-' && brace_depth > 0);
            if (!ok) break;
            if (c == '{') ++brace_depth;
            if (c == '}') {
                if (brace_depth == 0) break;
                --brace_depth;
            }
            name += c;
            ++pos_;
        }
        if (brace_depth != 0) fail("unbalanced '{' in identifier");
        return Expr::var(std::move(name));
    }
};

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void print(const Expr& e, std::ostream& os, int parent_prec, bool right_side) {
    int prec = precedence(e.kind);
    bool paren = prec < parent_prec || (prec == parent_prec && right_side);
    if (e.kind == Expr::Kind::Const && sgn(e.value) < 0) paren = parent_prec > 1;
    if (paren) os << "(";
    switch (e.kind) {
        case Expr::Kind::Const: os << rat_str(e.value); break;
        case Expr::Kind::Var: os << e.name; break;
        case Expr::Kind::Add:
            print(e.kids[0], os, 1, false); os << " + "; print(e.kids[1], os, 1, true);
            break;
        case Expr::Kind::Sub:
            print(e.kids[0], os, 1, false); os << " - "; print(e.kids[1], os, 1, true);
            break;
        case Expr::Kind::Mul:
            print(e.kids[0], os, 2, false); os << "*"; print(e.kids[1], os, 2, true);
            break;
        case Expr::Kind::Div:
            print(e.kids[0], os, 2, false); os << "/"; print(e.kids[1], os, 2, true);
            break;
        case Expr::Kind::Neg:
            // '^' binds tighter than unary minus in the grammar, so a Pow
            // child needs parentheses to survive the round trip
            os << "-"; print(e.kids[0], os, 4, true);
            break;
        case Expr::Kind::Pow:
            print(e.kids[0], os, 4, true);
            os << "^";
            if (e.exponent < 0) os << "(" << e.exponent << ")";
            else os << e.exponent;
            break;
    }
    if (paren) os << ")";
}

} // namespace

std::string Expr::str() const {
    std::ostringstream os;
    print(*this, os, 0, false);
    return os.str();
}

Expr parse_expr(const std::string& text) { return Parser(text).run(); }

RatFunc normalize(const Expr& e, const RingPtr& ring) {
    switch (e.kind) {
        case Expr::Kind::Const: return RatFunc::constant(ring, e.value);
        case Expr::Kind::Var: return RatFunc::variable(ring, e.name);
        case Expr::Kind::Add: return normalize(e.kids[0], ring) + normalize(e.kids[1], ring);
        case Expr::Kind::Sub: return normalize(e.kids[0], ring) - normalize(e.kids[1], ring);
        case Expr::Kind::Mul: return normalize(e.kids[0], ring) * normalize(e.kids[1], ring);
        case Expr::Kind::Div: {
            RatFunc d = normalize(e.kids[1], ring);
            if (d.is_zero()) throw Error("identically zero denominator");
            return normalize(e.kids[0], ring) / d;
        }
        case Expr::Kind::Neg: return -normalize(e.kids[0], ring);
        case Expr::Kind::Pow: {
            RatFunc b = normalize(e.kids[0], ring);
            if (e.exponent < 0 && b.is_zero()) throw Error("identically zero denominator");
            return b.pow(static_cast<int>(e.exponent));
        }
    }
    throw Error("corrupt expression tree");
}

RatFunc parse_ratfunc(const std::string& text, const RingPtr& ring) {
    return normalize(parse_expr(text), ring);
}

Poly parse_poly(const std::string& text, const RingPtr& ring) {
    return parse_ratfunc(text, ring).as_poly();
}

} // namespace webcas
