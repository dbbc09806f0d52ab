#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace epsc {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Thrown when an operation would need digits beyond tracked precision.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on domain violations (non-unit inversion, bad catalog tag, ...).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (i64(1) << 62) / (b < 0 ? -b : b))
            throw std::overflow_error("ipow overflow");
        r *= b;
    }
    return r;
}

/// Rational exponent mod 1, reduced, denominator > 0.  Character and additive
/// character values are e^{2*pi*i*r} for such an r.
struct Rat01 {
    i64 num = 0;
    i64 den = 1;

    Rat01() = default;
    Rat01(i64 n, i64 d) {
        if (d == 0) throw domain_error("Rat01: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        n %= d;
        if (n < 0) n += d;
        i64 g = std::gcd(n, d);
        num = n / g;
        den = d / g;
    }
    bool zero() const { return num == 0; }
    Rat01 operator+(const Rat01& o) const {
        i64 g = std::gcd(den, o.den);
        i64 l = den / g * o.den;
        return Rat01(num * (l / den) + o.num * (l / o.den), l);
    }
    Rat01 operator-() const { return Rat01(-num, den); }
    Rat01 operator-(const Rat01& o) const { return *this + (-o); }
    Rat01 scaled(i64 k) const {
        // k may be negative; reduce k mod den first so num*k cannot overflow
        i64 kk = k % den;
        return Rat01(num * kk, den);
    }
    bool operator==(const Rat01& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat01& o) const { return !(*this == o); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Deterministic PRNG (splitmix64): identical streams across platforms.
class SplitMix64 {
    u64 s_;
public:
    explicit SplitMix64(u64 seed) : s_(seed) {}
    u64 next() {
        u64 z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// uniform in [0, n), rejection sampled
    u64 below(u64 n) {
        u64 lim = ~u64(0) - ~u64(0) % n;
        u64 v;
        do { v = next(); } while (v >= lim);
        return v % n;
    }
};

} // namespace epsc
