#include "webcas/poly.hpp"
#include "webcas/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace webcas {

Poly::Poly(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
    if (!webcas::is_zero(c)) terms_.emplace(Mono(static_cast<size_t>(ring_->size()), 0u), c);
}

Poly Poly::variable(const RingPtr& ring, int var) {
    if (var < 0 || var >= ring->size()) throw Error("variable index out of range");
    Poly p(ring);
    Mono m(static_cast<size_t>(ring->size()), 0u);
    m[static_cast<size_t>(var)] = 1;
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

Poly Poly::variable(const RingPtr& ring, const std::string& name) {
    int i = ring->index(name);
    if (i < 0) throw Error("unknown variable: " + name);
    return variable(ring, i);
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms_.begin()->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(mono_degree(terms_.begin()->first));
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[static_cast<size_t>(var)]));
    return d;
}

std::vector<int> Poly::support_vars() const {
    std::vector<int> out;
    if (!ring_) return out;
    for (int v = 0; v < ring_->size(); ++v)
        if (depends_on(v)) out.push_back(v);
    return out;
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty()) throw Error("leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

Rational Poly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Mono& m, const Rational& c) {
    if (webcas::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (webcas::is_zero(it->second)) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out(ring_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    if (!ring_) ring_ = o.ring_;
    else if (!o.terms_.empty()) check_same_ring(ring_, o.ring_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (!ring_) ring_ = o.ring_;
    else if (!o.terms_.empty()) check_same_ring(ring_, o.ring_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    check_same_ring(a.ring_, b.ring_);
    Poly out(a.ring_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    Mono m(a.terms_.begin()->first.size());
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Poly Poly::operator*(const Rational& c) const {
    Poly out(ring_);
    if (webcas::is_zero(c)) return out;
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

Poly Poly::pow(unsigned e) const {
    Poly out = Poly::constant(ring_, Rational(1));
    Poly base = *this;
    while (e) {
        if (e & 1u) out = out * base;
        base = (e >>= 1) ? base * base : base;
    }
    return out;
}

Poly Poly::derivative(int var) const {
    Poly out(ring_);
    for (const auto& [m, c] : terms_) {
        unsigned e = m[static_cast<size_t>(var)];
        if (e == 0) continue;
        Mono dm = m;
        dm[static_cast<size_t>(var)] = e - 1;
        out.add_term(dm, c * Rational(static_cast<long>(e)));
    }
    return out;
}

Poly Poly::derivative(const std::string& var) const {
    int i = ring_ ? ring_->index(var) : -1;
    if (i < 0) throw Error("unknown variable: " + var);
    return derivative(i);
}

Poly Poly::subst(int var, const Poly& value) const {
    check_same_ring(ring_, value.ring());
    // Horner on the collected powers.
    auto by_pow = collect(var);
    Poly out(ring_);
    Poly acc(ring_);
    int prev = -1;
    for (auto it = by_pow.rbegin(); it != by_pow.rend(); ++it) {
        int k = static_cast<int>(it->first);
        if (prev >= 0)
            for (int j = 0; j < prev - k; ++j) acc = acc * value;
        acc += it->second;
        prev = k;
    }
    if (prev > 0)
        for (int j = 0; j < prev; ++j) acc = acc * value;
    out += acc;
    return out;
}

RatFunc Poly::subst(int var, const RatFunc& value) const {
    auto by_pow = collect(var);
    RatFunc acc(ring_);
    int prev = -1;
    for (auto it = by_pow.rbegin(); it != by_pow.rend(); ++it) {
        int k = static_cast<int>(it->first);
        if (prev >= 0)
            for (int j = 0; j < prev - k; ++j) acc = acc * value;
        acc = acc + RatFunc(it->second);
        prev = k;
    }
    if (prev > 0)
        for (int j = 0; j < prev; ++j) acc = acc * value;
    return acc;
}

Poly Poly::subst_all(const std::map<int, Poly>& values) const {
    Poly out = *this;
    for (const auto& [v, val] : values) out = out.subst(v, val);
    return out;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
    if (ring_ && static_cast<int>(point.size()) != ring_->size())
        throw Error("evaluation point has wrong dimension");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < m.size(); ++i)
            for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
        acc += t;
    }
    return acc;
}

std::map<unsigned, Poly> Poly::collect(int var) const {
    std::map<unsigned, Poly> out;
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        unsigned e = rest[static_cast<size_t>(var)];
        rest[static_cast<size_t>(var)] = 0;
        auto it = out.find(e);
        if (it == out.end()) it = out.emplace(e, Poly(ring_)).first;
        it->second.add_term(rest, c);
    }
    return out;
}

Rational Poly::rational_content() const {
    if (terms_.empty()) return Rational(0);
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(leading_coeff()) < 0) content = -content;
    return content;
}

Poly Poly::scaled(const Rational& c) const {
    if (webcas::is_zero(c)) throw Error("scaling by zero");
    return *this * (Rational(1) / c);
}

Poly Poly::normalized_primitive(Rational* unit) const {
    if (terms_.empty()) {
        if (unit) *unit = Rational(1);
        return *this;
    }
    Rational c = rational_content();
    if (unit) *unit = c;
    return scaled(c);
}

// Long division step helper: true when mb divides ma componentwise.
static bool mono_divides(const Mono& mb, const Mono& ma) {
    for (size_t i = 0; i < ma.size(); ++i)
        if (mb[i] > ma[i]) return false;
    return true;
}

Poly Poly::divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    check_same_ring(a.ring(), b.ring());
    Poly rem = a, quo(a.ring() ? a.ring() : b.ring());
    const auto& bl = *b.terms().begin();
    while (!rem.is_zero()) {
        const auto& rl = *rem.terms().begin();
        if (!mono_divides(bl.first, rl.first)) throw Error("inexact polynomial division");
        Mono q(rl.first.size());
        for (size_t i = 0; i < q.size(); ++i) q[i] = rl.first[i] - bl.first[i];
        Rational qc = rl.second / bl.second;
        Poly qt(rem.ring());
        qt.add_term(q, qc);
        quo += qt;
        rem -= qt * b;
    }
    return quo;
}

// Pseudo-remainder of a by b in the main variable v.
static Poly prem(const Poly& a, const Poly& b, int v) {
    auto bc = b.collect(v);
    int db = bc.rbegin()->first ? static_cast<int>(bc.rbegin()->first) : 0;
    Poly lcb = bc.rbegin()->second;
    Poly r = a;
    Poly xv = Poly::variable(a.ring(), v);
    while (true) {
        if (r.is_zero()) return r;
        auto rc = r.collect(v);
        int dr = static_cast<int>(rc.rbegin()->first);
        if (dr < db) return r;
        Poly lcr = rc.rbegin()->second;
        r = r * lcb - lcr * xv.pow(static_cast<unsigned>(dr - db)) * b;
    }
}

namespace {

// Arithmetic modulo a word-sized prime, for gcd degree certificates.
struct ModP {
    unsigned long long p;
    unsigned long long mul(unsigned long long a, unsigned long long b) const {
        return static_cast<unsigned long long>((static_cast<__uint128_t>(a) * b) % p);
    }
    unsigned long long add(unsigned long long a, unsigned long long b) const {
        unsigned long long s = a + b;
        return s >= p ? s - p : s;
    }
    unsigned long long sub(unsigned long long a, unsigned long long b) const {
        return a >= b ? a - b : a + p - b;
    }
    unsigned long long powmod(unsigned long long a, unsigned long long e) const {
        unsigned long long r = 1 % p;
        while (e) {
            if (e & 1ull) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    unsigned long long inv(unsigned long long a) const { return powmod(a, p - 2); }
    // nullopt when the denominator dies mod p
    std::optional<unsigned long long> rat(const Rational& q) const {
        unsigned long long den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
        if (den == 0) return std::nullopt;
        mpz_class num = q.get_num();
        bool neg = sgn(num) < 0;
        if (neg) num = -num;
        unsigned long long n = mpz_fdiv_ui(num.get_mpz_t(), p);
        unsigned long long v = mul(n, inv(den));
        return neg ? (v ? p - v : 0) : v;
    }
    std::optional<unsigned long long> eval(const Poly& poly,
                                           const std::vector<unsigned long long>& pt) const {
        unsigned long long acc = 0;
        for (const auto& [m, c] : poly.terms()) {
            auto cv = rat(c);
            if (!cv) return std::nullopt;
            unsigned long long t = *cv;
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i]) t = mul(t, powmod(pt[i] % p, m[i]));
            acc = add(acc, t);
        }
        return acc;
    }
};

} // namespace

// Degree of gcd(a,b) in v is bounded by the gcd degree of any evaluation
// image (mod p, other variables specialized) that keeps both leading
// coefficients alive. A zero bound for every variable certifies coprimality
// without running the PRS.
static int gcd_degree_bound(const Poly& a, const Poly& b, int v) {
    auto ca = a.collect(v), cb = b.collect(v);
    const Poly& lca = ca.rbegin()->second;
    const Poly& lcb = cb.rbegin()->second;
    const RingPtr& ring = a.ring();
    static const unsigned long long primes[] = {2305843009213693951ull, 2147483647ull};
    for (unsigned long long pv : primes) {
        ModP mod{pv};
        std::vector<unsigned long long> point(static_cast<size_t>(ring->size()), 1ull);
        for (long attempt = 0; attempt < 24; ++attempt) {
            for (int i = 0; i < ring->size(); ++i)
                point[static_cast<size_t>(i)] =
                    static_cast<unsigned long long>(2 * attempt + 1 + i);
            auto la = mod.eval(lca, point);
            auto lb = mod.eval(lcb, point);
            if (!la || !lb) break;  // denominator hit the prime, switch primes
            if (*la == 0 || *lb == 0) continue;
            auto image = [&](const std::map<unsigned, Poly>& coeffs,
                             unsigned deg) -> std::optional<std::vector<unsigned long long>> {
                std::vector<unsigned long long> u(deg + 1, 0ull);
                for (const auto& [e, c] : coeffs) {
                    auto cv = mod.eval(c, point);
                    if (!cv) return std::nullopt;
                    u[e] = *cv;
                }
                return u;
            };
            auto ua = image(ca, ca.rbegin()->first);
            auto ub = image(cb, cb.rbegin()->first);
            if (!ua || !ub) break;
            auto norm = [](std::vector<unsigned long long>& p) {
                while (!p.empty() && p.back() == 0) p.pop_back();
            };
            norm(*ua);
            norm(*ub);
            while (!ub->empty()) {
                unsigned long long linv = mod.inv(ub->back());
                while (ua->size() >= ub->size() && !ua->empty()) {
                    unsigned long long q = mod.mul(ua->back(), linv);
                    size_t off = ua->size() - ub->size();
                    for (size_t i = 0; i < ub->size(); ++i)
                        (*ua)[off + i] = mod.sub((*ua)[off + i], mod.mul(q, (*ub)[i]));
                    norm(*ua);
                }
                std::swap(*ua, *ub);
            }
            return static_cast<int>(ua->size()) - 1;
        }
    }
    return -1;  // no certificate; fall back to the PRS
}

static Poly content_in(const Poly& p, int v) {
    Poly c;
    for (const auto& [e, coeff] : p.collect(v)) {
        (void)e;
        c = c.is_zero() ? coeff : Poly::gcd(c, coeff);
        if (c.is_constant() && !c.is_zero()) return Poly::constant(p.ring(), Rational(1));
    }
    return c.normalized_primitive();
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.normalized_primitive();
    if (b.is_zero()) return a.normalized_primitive();
    check_same_ring(a.ring(), b.ring());
    const RingPtr& ring = a.ring() ? a.ring() : b.ring();
    if (a.is_constant() || b.is_constant()) return Poly::constant(ring, Rational(1));

    // Monomial fast path: gcd of exponent minima over every term.
    auto mono_gcd_with = [&](const Poly& mono, const Poly& other) {
        Mono g = mono.terms().begin()->first;
        for (const auto& [m, c] : other.terms()) {
            (void)c;
            for (size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], m[i]);
        }
        Poly out(ring);
        out.add_term(g, Rational(1));
        return out;
    };
    if (a.term_count() == 1) return mono_gcd_with(a, b);
    if (b.term_count() == 1) return mono_gcd_with(b, a);

    int v = -1;
    bool all_zero_bound = true;
    for (int i = 0; i < ring->size(); ++i) {
        if (!(a.depends_on(i) || b.depends_on(i))) continue;
        if (v < 0) v = i;
        if (all_zero_bound && a.depends_on(i) && b.depends_on(i)) {
            if (gcd_degree_bound(a, b, i) != 0) all_zero_bound = false;
        } else if (a.depends_on(i) != b.depends_on(i)) {
            // the gcd cannot involve a variable missing from one side
            continue;
        }
    }
    if (v < 0) return Poly::constant(ring, Rational(1));
    if (all_zero_bound) return Poly::constant(ring, Rational(1));
    if (!a.depends_on(v)) return Poly::gcd(a, content_in(b, v));
    if (!b.depends_on(v)) return Poly::gcd(b, content_in(a, v));

    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly pa = divide_exact(a, ca).normalized_primitive();
    Poly pb = divide_exact(b, cb).normalized_primitive();
    Poly cg = Poly::gcd(ca, cb);

    // Primitive PRS.
    while (!pb.is_zero() && pb.depends_on(v)) {
        Poly r = prem(pa, pb, v);
        pa = pb;
        pb = r.is_zero() ? r : divide_exact(r, content_in(r, v)).normalized_primitive();
    }
    if (!pb.is_zero()) return cg;  // last remainder dropped to degree 0 in v
    return (cg * pa).normalized_primitive();
}

std::string Poly::str() const {
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
        // "-x^2" would read back as (-x)^2 under the grammar; keep the
        // explicit unit coefficient on a negative leading term.
        if (a != 1 || mono_degree(m) == 0 || lead_neg) {
            os << rat_str(a);
            printed = true;
        }
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

std::uint64_t poly_hash(const Poly& p) { return fnv1a64(p.str()); }

} // namespace webcas
