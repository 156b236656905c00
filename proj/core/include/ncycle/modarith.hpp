#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

// Modular integer helpers used by the exponent bookkeeping throughout the
// library. Exponent towers like r^n are never materialized as plain integers;
// everything is reduced modulo the relevant group order first.
namespace ncycle::modarith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 acc = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) acc = mulmod(acc, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

// Least non-negative representative of v mod m.
inline u64 mod_pos(i64 v, u64 m) {
    i64 r = v % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

// ((r^n - 1) / s) mod m, assuming s | r^n - 1.
//
// r^n does not fit in fixed-width integers even at small field sizes, so the
// quotient is recovered from r^n mod (s*m): writing r^n - 1 = k*s*m + rem with
// rem in [0, s*m), s divides rem and (r^n - 1)/s = k*m + rem/s = rem/s (mod m).
inline u64 pow_minus_one_over(u64 r, u64 n, u64 s, u64 m) {
    const u64 sm = s * m;  // both < 2^32 at supported field sizes
    u64 rem = powmod(r, n, sm);
    rem = (rem + sm - 1 % sm) % sm;
    if (rem % s != 0)
        throw std::invalid_argument("pow_minus_one_over: s does not divide r^n - 1");
    return (rem / s) % m;
}

// Sum_{i=0}^{n-1} r^i mod m.
inline u64 geometric_sum_mod(u64 r, u64 n, u64 m) {
    u64 acc = 0, pw = 1 % m;
    for (u64 i = 0; i < n; ++i) {
        acc = (acc + pw) % m;
        pw = mulmod(pw, r, m);
    }
    return acc;
}

inline std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Inverse of a mod m; requires gcd(a, m) = 1.
inline u64 invmod(u64 a, u64 m) {
    i64 t = 0, newt = 1;
    i64 r = static_cast<i64>(m), newr = static_cast<i64>(a % m);
    while (newr != 0) {
        i64 qq = r / newr;
        std::swap(t, newt); newt -= qq * t;
        std::swap(r, newr); newr -= qq * r;
    }
    if (r != 1) throw std::invalid_argument("invmod: arguments not coprime");
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

}  // namespace ncycle::modarith
