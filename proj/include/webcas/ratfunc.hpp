#pragma once

#include "webcas/poly.hpp"

namespace webcas {

// Canonical rational function: gcd(num,den) = 1, den has integer coprime
// coefficients with positive leading coefficient.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(RingPtr ring)
        : num_(Poly(ring)), den_(Poly::constant(ring, Rational(1))) {}
    explicit RatFunc(const Poly& num);
    RatFunc(Poly num, Poly den);

    static RatFunc constant(const RingPtr& ring, const Rational& c) {
        return RatFunc(Poly::constant(ring, c));
    }
    static RatFunc variable(const RingPtr& ring, const std::string& name) {
        return RatFunc(Poly::variable(ring, name));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const RingPtr& ring() const { return num_.ring(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.is_constant(); }
    // Requires is_poly(); returns num/den as a polynomial.
    Poly as_poly() const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
    RatFunc operator*(const Rational& c) const;
    RatFunc pow(int e) const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc derivative(int var) const;
    RatFunc derivative(const std::string& var) const;
    RatFunc subst(int var, const RatFunc& value) const;
    Rational eval(const std::vector<Rational>& point) const;  // throws on pole
    bool pole_at(const std::vector<Rational>& point) const { return webcas::is_zero(den_.eval(point)); }

    std::string str() const;

private:
    void normalize();

    Poly num_, den_;
};

// Rebuilds p over `target`, translating variables by name (with optional
// renames). Every variable in use must resolve in the target ring.
Poly transport(const Poly& p, const RingPtr& target,
               const std::map<std::string, std::string>& rename = {});
RatFunc transport(const RatFunc& f, const RingPtr& target,
                  const std::map<std::string, std::string>& rename = {});

} // namespace webcas
