#pragma once

#include "webcas/ratfunc.hpp"

namespace webcas {

// Ascending graded lex; series print smallest degree first.
struct MonoGrlexAsc {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

// Truncated multivariate power series: terms of total degree <= cap.
class JetSeries {
public:
    using Terms = std::map<Mono, Rational, MonoGrlexAsc>;

    JetSeries() = default;
    JetSeries(RingPtr ring, unsigned cap) : ring_(std::move(ring)), cap_(cap) {}
    static JetSeries constant(const RingPtr& ring, unsigned cap, const Rational& c);
    static JetSeries variable(const RingPtr& ring, unsigned cap, const std::string& name);

    const RingPtr& ring() const { return ring_; }
    unsigned cap() const { return cap_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Mono& m) const;
    Rational at_origin() const { return coeff(Mono(static_cast<size_t>(ring_->size()), 0u)); }

    void add_term(const Mono& m, const Rational& c);

    JetSeries operator-() const;
    friend JetSeries operator+(JetSeries a, const JetSeries& b);
    friend JetSeries operator-(JetSeries a, const JetSeries& b);
    friend JetSeries operator*(const JetSeries& a, const JetSeries& b);
    JetSeries operator*(const Rational& c) const;
    JetSeries pow(unsigned e) const;

    bool operator==(const JetSeries& o) const { return cap_ == o.cap_ && terms_ == o.terms_; }
    bool operator!=(const JetSeries& o) const { return !(*this == o); }

    // 1/this; requires a nonzero constant term.
    JetSeries reciprocal() const;
    // d/d(var); cap drops by one.
    JetSeries derivative(int var) const;
    JetSeries derivative(const std::string& var) const;
    JetSeries truncated(unsigned new_cap) const;

    // Smallest total degree with nonzero coefficient, or nullopt when the
    // stored jet is identically zero ("vanishes to order >= cap+1").
    std::optional<unsigned> vanishing_order() const;

    std::string str() const;

private:
    RingPtr ring_;
    unsigned cap_ = 0;
    Terms terms_;
};

// Composition of a univariate series (in `var_of(inner)`... the outer series'
// single variable) with a multivariate inner series with zero constant term.
JetSeries compose_univariate(const JetSeries& outer, const JetSeries& inner);

// Taylor expansion of f at `center`, truncated at total degree cap.
// Throws when the denominator vanishes at the center.
JetSeries series_lift(const RatFunc& f, const std::vector<Rational>& center, unsigned cap);

} // namespace webcas
