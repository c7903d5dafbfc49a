#include "webcas/ratfunc.hpp"

namespace webcas {

RatFunc::RatFunc(const Poly& num)
    : num_(num), den_(Poly::constant(num.ring(), Rational(1))) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("zero denominator");
    check_same_ring(num_.ring(), den_.ring());
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(den_.ring(), Rational(1));
        return;
    }
    if (!den_.is_constant()) {
        Poly g = Poly::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = Poly::divide_exact(num_, g);
            den_ = Poly::divide_exact(den_, g);
        }
    }
    Rational unit;
    den_ = den_.normalized_primitive(&unit);
    num_ = num_.scaled(unit);
}

Poly RatFunc::as_poly() const {
    if (!is_poly()) throw Error("rational function is not polynomial: " + str());
    if (num_.is_zero()) return num_;
    return num_.scaled(den_.constant_value());
}

RatFunc RatFunc::operator-() const {
    RatFunc out = *this;
    out.num_ = -out.num_;
    return out;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        Poly n = a.num_ + b.num_;
        return RatFunc(std::move(n), a.den_);
    }
    // lcm denominator keeps iterated sums from ballooning
    Poly g = Poly::gcd(a.den_, b.den_);
    if (g.is_constant())
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly da = Poly::divide_exact(a.den_, g);
    Poly db = Poly::divide_exact(b.den_, g);
    return RatFunc(a.num_ * db + b.num_ * da, a.den_ * db);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error("division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::operator*(const Rational& c) const {
    RatFunc out = *this;
    out.num_ = out.num_ * c;
    if (webcas::is_zero(c)) out.den_ = Poly::constant(den_.ring(), Rational(1));
    return out;
}

RatFunc RatFunc::pow(int e) const {
    if (e == 0) return RatFunc::constant(ring(), Rational(1));
    bool inv = e < 0;
    unsigned k = static_cast<unsigned>(inv ? -e : e);
    RatFunc base = *this;
    if (inv) {
        if (base.is_zero()) throw Error("negative power of zero");
        base = RatFunc(base.den_, base.num_);
    }
    RatFunc out = RatFunc::constant(ring(), Rational(1));
    while (k) {
        if (k & 1u) out = out * base;
        base = (k >>= 1) ? base * base : base;
    }
    return out;
}

RatFunc RatFunc::derivative(int var) const {
    // quotient rule; gcd trimming happens in the constructor
    Poly dn = num_.derivative(var), dd = den_.derivative(var);
    if (dd.is_zero()) return RatFunc(dn, den_);
    return RatFunc(dn * den_ - num_ * dd, den_ * den_);
}

RatFunc RatFunc::derivative(const std::string& var) const {
    int i = ring() ? ring()->index(var) : -1;
    if (i < 0) throw Error("unknown variable: " + var);
    return derivative(i);
}

RatFunc RatFunc::subst(int var, const RatFunc& value) const {
    RatFunc n = num_.subst(var, value);
    RatFunc d = den_.subst(var, value);
    if (d.is_zero()) throw Error("substitution produced zero denominator");
    return n / d;
}

Rational RatFunc::eval(const std::vector<Rational>& point) const {
    Rational d = den_.eval(point);
    if (webcas::is_zero(d)) throw Error("pole at evaluation point");
    return num_.eval(point) / d;
}

Poly transport(const Poly& p, const RingPtr& target,
               const std::map<std::string, std::string>& rename) {
    const RingPtr& src = p.ring();
    if (!src) return Poly(target);
    std::vector<int> slot(static_cast<size_t>(src->size()), -1);
    for (int v = 0; v < src->size(); ++v) {
        std::string name = src->name(v);
        auto it = rename.find(name);
        if (it != rename.end()) name = it->second;
        slot[static_cast<size_t>(v)] = target->index(name);
    }
    Poly out(target);
    Mono m(static_cast<size_t>(target->size()), 0u);
    for (const auto& [mono, c] : p.terms()) {
        std::fill(m.begin(), m.end(), 0u);
        for (size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0) continue;
            int s = slot[i];
            if (s < 0) throw Error("variable " + src->name(static_cast<int>(i)) +
                                   " missing from target ring");
            m[static_cast<size_t>(s)] += mono[i];
        }
        out.add_term(m, c);
    }
    return out;
}

RatFunc transport(const RatFunc& f, const RingPtr& target,
                  const std::map<std::string, std::string>& rename) {
    return RatFunc(transport(f.num(), target, rename), transport(f.den(), target, rename));
}

std::string RatFunc::str() const {
    if (is_poly()) return as_poly().str();
    std::string n = num_.str(), d = den_.str();
    bool np = num_.term_count() > 1;
    bool dp = den_.term_count() > 1;
    std::string out = np ? "(" + n + ")" : n;
    out += " / ";
    out += dp ? "(" + d + ")" : d;
    return out;
}

} // namespace webcas
