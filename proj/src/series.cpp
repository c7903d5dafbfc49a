#include "webcas/series.hpp"

#include <sstream>

namespace webcas {

JetSeries JetSeries::constant(const RingPtr& ring, unsigned cap, const Rational& c) {
    JetSeries s(ring, cap);
    s.add_term(Mono(static_cast<size_t>(ring->size()), 0u), c);
    return s;
}

JetSeries JetSeries::variable(const RingPtr& ring, unsigned cap, const std::string& name) {
    int i = ring->index(name);
    if (i < 0) throw Error("unknown variable: " + name);
    JetSeries s(ring, cap);
    Mono m(static_cast<size_t>(ring->size()), 0u);
    m[static_cast<size_t>(i)] = 1;
    s.add_term(m, Rational(1));
    return s;
}

Rational JetSeries::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void JetSeries::add_term(const Mono& m, const Rational& c) {
    if (webcas::is_zero(c) || mono_degree(m) > cap_) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (webcas::is_zero(it->second)) terms_.erase(it);
    }
}

JetSeries JetSeries::operator-() const {
    JetSeries out(ring_, cap_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

static void check_compatible(const JetSeries& a, const JetSeries& b) {
    check_same_ring(a.ring(), b.ring());
    if (a.cap() != b.cap()) throw Error("series order-cap mismatch");
}

JetSeries operator+(JetSeries a, const JetSeries& b) {
    check_compatible(a, b);
    for (const auto& [m, c] : b.terms()) a.add_term(m, c);
    return a;
}

JetSeries operator-(JetSeries a, const JetSeries& b) {
    check_compatible(a, b);
    for (const auto& [m, c] : b.terms()) a.add_term(m, -c);
    return a;
}

JetSeries operator*(const JetSeries& a, const JetSeries& b) {
    check_compatible(a, b);
    JetSeries out(a.ring(), a.cap());
    Mono m(static_cast<size_t>(a.ring()->size()), 0u);
    for (const auto& [ma, ca] : a.terms()) {
        unsigned da = mono_degree(ma);
        for (const auto& [mb, cb] : b.terms()) {
            if (da + mono_degree(mb) > a.cap()) continue;
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

JetSeries JetSeries::operator*(const Rational& c) const {
    JetSeries out(ring_, cap_);
    if (webcas::is_zero(c)) return out;
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

JetSeries JetSeries::pow(unsigned e) const {
    JetSeries out = constant(ring_, cap_, Rational(1));
    JetSeries base = *this;
    while (e) {
        if (e & 1u) out = out * base;
        base = (e >>= 1) ? base * base : base;
    }
    return out;
}

JetSeries JetSeries::reciprocal() const {
    Rational c0 = at_origin();
    if (webcas::is_zero(c0)) throw Error("reciprocal of series with zero constant term");
    // r = (1/c0) sum_k u^k with u = 1 - this/c0 (u has no constant term).
    JetSeries u = constant(ring_, cap_, Rational(1)) - *this * (Rational(1) / c0);
    JetSeries out = constant(ring_, cap_, Rational(1));
    JetSeries upow = constant(ring_, cap_, Rational(1));
    for (unsigned k = 1; k <= cap_; ++k) {
        upow = upow * u;
        if (upow.is_zero()) break;
        out = out + upow;
    }
    return out * (Rational(1) / c0);
}

JetSeries JetSeries::derivative(int var) const {
    if (cap_ == 0) throw Error("derivative underflows series cap");
    JetSeries out(ring_, cap_ - 1);
    for (const auto& [m, c] : terms_) {
        unsigned e = m[static_cast<size_t>(var)];
        if (e == 0) continue;
        Mono dm = m;
        dm[static_cast<size_t>(var)] = e - 1;
        out.add_term(dm, c * Rational(static_cast<long>(e)));
    }
    return out;
}

JetSeries JetSeries::derivative(const std::string& var) const {
    int i = ring_ ? ring_->index(var) : -1;
    if (i < 0) throw Error("unknown variable: " + var);
    return derivative(i);
}

JetSeries JetSeries::truncated(unsigned new_cap) const {
    JetSeries out(ring_, new_cap);
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    return out;
}

std::optional<unsigned> JetSeries::vanishing_order() const {
    if (terms_.empty()) return std::nullopt;
    return mono_degree(terms_.begin()->first);
}

std::string JetSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        bool lead_neg = false;
        if (first) {
            if (sgn(a) < 0) { os << "-"; a = -a; lead_neg = true; }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        bool printed = false;
        if (a != 1 || mono_degree(m) == 0 || lead_neg) { os << rat_str(a); printed = true; }
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (printed) os << "*";
            os << ring_->name(static_cast<int>(i));
            if (m[i] > 1) os << "^" << m[i];
            printed = true;
        }
        first = false;
    }
    return os.str();
}

JetSeries compose_univariate(const JetSeries& outer, const JetSeries& inner) {
    if (!is_zero(inner.at_origin()))
        throw Error("composition requires inner series with zero constant term");
    std::vector<int> sup;
    for (int v = 0; v < outer.ring()->size(); ++v)
        for (const auto& [m, c] : outer.terms()) {
            (void)c;
            if (m[static_cast<size_t>(v)] > 0) { sup.push_back(v); break; }
        }
    if (sup.size() > 1) throw Error("outer series is not univariate");
    JetSeries out(inner.ring(), inner.cap());
    JetSeries ipow = JetSeries::constant(inner.ring(), inner.cap(), Rational(1));
    // Collect outer coefficients by degree, then Horner-free accumulation.
    std::map<unsigned, Rational> co;
    for (const auto& [m, c] : outer.terms()) co[mono_degree(m)] = c;
    unsigned prev = 0;
    for (const auto& [deg, c] : co) {
        for (unsigned k = prev; k < deg; ++k) ipow = ipow * inner;
        prev = deg;
        out = out + ipow * c;
        if (deg >= inner.cap() && !ipow.is_zero() && ipow.vanishing_order() &&
            *ipow.vanishing_order() >= inner.cap())
            break;
    }
    return out;
}

JetSeries series_lift(const RatFunc& f, const std::vector<Rational>& center, unsigned cap) {
    const RingPtr& ring = f.ring();
    if (static_cast<int>(center.size()) != ring->size())
        throw Error("center has wrong dimension");
    if (is_zero(f.den().eval(center))) throw Error("pole at expansion center");

    auto lift_poly = [&](const Poly& p) {
        JetSeries s(ring, cap);
        Mono m(static_cast<size_t>(ring->size()), 0u);
        // Substitute x_i -> x_i + c_i by binomial expansion per term.
        for (const auto& [mono, c] : p.terms()) {
            // iterate over sub-exponent vectors via odometer
            Mono k(mono.size(), 0u);
            while (true) {
                Rational coeff = c;
                unsigned deg = 0;
                for (size_t i = 0; i < mono.size(); ++i) {
                    unsigned e = mono[i], j = k[i];
                    deg += j;
                    // binomial(e, j) * center^(e-j)
                    mpz_class binom;
                    mpz_bin_uiui(binom.get_mpz_t(), e, j);
                    coeff *= Rational(binom);
                    for (unsigned t = 0; t < e - j; ++t) coeff *= center[i];
                }
                if (deg <= cap) {
                    for (size_t i = 0; i < k.size(); ++i) m[i] = k[i];
                    s.add_term(m, coeff);
                }
                // odometer increment bounded by mono
                size_t pos = 0;
                while (pos < k.size() && k[pos] == mono[pos]) { k[pos] = 0; ++pos; }
                if (pos == k.size()) break;
                ++k[pos];
            }
        }
        return s;
    };

    JetSeries n = lift_poly(f.num());
    JetSeries d = lift_poly(f.den());
    return n * d.reciprocal();
}

} // namespace webcas
