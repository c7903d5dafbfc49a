#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace webcas {

// Exact rational scalar. mpq_class keeps gcd(num,den)=1 and den>0 canonical.
using Rational = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Rational rat(long n, long d = 1) {
    if (d == 0) throw Error("rational with zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string rat_str(const Rational& q) { return q.get_str(); }

// Parses "n" or "n/d" with optional leading '-'.
inline Rational rat_parse(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    if (q.get_den() == 0) throw Error("rational with zero denominator: " + s);
    q.canonicalize();
    return q;
}

// FNV-1a 64-bit, used for content hashes of canonical serializations.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(const std::string& s);

} // namespace webcas
