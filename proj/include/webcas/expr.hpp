#pragma once

#include "webcas/ratfunc.hpp"

#include <memory>

namespace webcas {

struct ParseError : Error {
    ParseError(const std::string& what, size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset(offset) {}
    size_t offset;
};

// Expression tree for the text grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := rational | identifier | '(' expr ')' | '-' base
// Identifiers admit ',', '{', '}' and, inside braces, '-' (T_{1,-1}).
class Expr {
public:
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Pow, Neg };

    Kind kind = Kind::Const;
    Rational value;           // Const
    std::string name;         // Var
    long exponent = 0;        // Pow
    std::vector<Expr> kids;

    static Expr constant(Rational v);
    static Expr var(std::string n);
    static Expr node(Kind k, std::vector<Expr> kids);
    static Expr pow(Expr base, long e);

    // All variable names, in first-appearance order.
    std::vector<std::string> variables() const;

    std::string str() const;
};

Expr parse_expr(const std::string& text);

// Evaluates the tree in RatFunc arithmetic over the given ring.
// Throws on unknown variables and on identically-zero denominators.
RatFunc normalize(const Expr& e, const RingPtr& ring);

// Convenience: parse + normalize in one step.
RatFunc parse_ratfunc(const std::string& text, const RingPtr& ring);
Poly parse_poly(const std::string& text, const RingPtr& ring);

} // namespace webcas
