#pragma once

#include "webcas/ring.hpp"

#include <map>
#include <optional>
#include <vector>

namespace webcas {

using Mono = std::vector<unsigned>;

inline unsigned mono_degree(const Mono& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

// Graded lex, leading term first: higher total degree wins, ties broken by
// the exponent of the earliest declared variable.
struct MonoGrlexDesc {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

class RatFunc;

// Sparse multivariate polynomial with exact rational coefficients.
class Poly {
public:
    using Terms = std::map<Mono, Rational, MonoGrlexDesc>;

    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    Poly(RingPtr ring, const Rational& c);

    static Poly variable(const RingPtr& ring, int var);
    static Poly variable(const RingPtr& ring, const std::string& name);
    static Poly constant(const RingPtr& ring, const Rational& c) { return Poly(ring, c); }

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0); }
    Rational constant_value() const;
    size_t term_count() const { return terms_.size(); }
    int total_degree() const;  // -1 for the zero polynomial
    int degree_in(int var) const;
    bool depends_on(int var) const { return degree_in(var) > 0; }
    std::vector<int> support_vars() const;

    const Rational& leading_coeff() const;
    Rational coeff(const Mono& m) const;

    void add_term(const Mono& m, const Rational& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly operator*(const Rational& c) const;
    Poly pow(unsigned e) const;

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(int var) const;
    Poly derivative(const std::string& var) const;

    // Substitutes one variable; remaining variables keep their slots.
    Poly subst(int var, const Poly& value) const;
    RatFunc subst(int var, const RatFunc& value) const;
    // Simultaneous substitution for the listed variables only.
    Poly subst_all(const std::map<int, Poly>& values) const;
    Rational eval(const std::vector<Rational>& point) const;

    // Collects the polynomial as sum_k coeff_k * var^k.
    std::map<unsigned, Poly> collect(int var) const;

    // Largest rational c with this = c * (integer-coprime-coefficient poly).
    Rational rational_content() const;
    // this / c, exact scaling.
    Poly scaled(const Rational& c) const;
    // Integer-coprime coefficients, positive leading coefficient.
    Poly normalized_primitive(Rational* unit = nullptr) const;

    // Exact division; throws when the division leaves a remainder.
    static Poly divide_exact(const Poly& a, const Poly& b);
    static Poly gcd(const Poly& a, const Poly& b);

    // Canonical serialization: "c*x^2*y - 5*z" with grlex-desc term order.
    std::string str() const;

private:
    RingPtr ring_;
    Terms terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

std::uint64_t poly_hash(const Poly& p);

} // namespace webcas
