#include "ncycle/field.hpp"

#include <algorithm>
#include <stdexcept>

#include "ncycle/modarith.hpp"

namespace ncycle {

namespace {

using modarith::powmod;

constexpr u64 kMaxFieldOrder = u64{1} << 31;
constexpr u64 kAutoLogTableLimit = u64{1} << 20;

// ---- dense polynomial arithmetic over Z_p (low-degree-first) --------------

using Poly = std::vector<std::uint32_t>;

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] += static_cast<u64>(a[i]) * b[j] % p;
    }
    const std::size_t deg = mod.size() - 1;
    for (std::size_t i = acc.size(); i-- > deg;) {
        const u64 c = acc[i] % p;
        if (c == 0) continue;
        // subtract c * x^(i-deg) * mod; mod is monic
        for (std::size_t j = 0; j < deg; ++j)
            acc[i - deg + j] += c * (p - mod[j]) % p;
        acc[i] = 0;
    }
    Poly out(std::min(acc.size(), deg));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint32_t>(acc[i] % p);
    poly_trim(out);
    return out;
}

Poly poly_pow_mod(Poly base, u64 exp, const Poly& mod, std::uint32_t p) {
    Poly acc = {1};
    while (exp) {
        if (exp & 1) acc = poly_mul_mod(acc, base, mod, p);
        base = poly_mul_mod(base, base, mod, p);
        exp >>= 1;
    }
    return acc;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
    poly_trim(a);
    return a;
}

Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    // b monic after normalization by caller
    const std::size_t deg = b.size() - 1;
    const std::uint32_t lead_inv =
        static_cast<std::uint32_t>(powmod(b.back(), p - 2, p));
    while (a.size() > deg) {
        const u64 c = static_cast<u64>(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        if (c != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = static_cast<std::uint32_t>(
                    (a[shift + j] + c * (p - b[j])) % p);
        a.pop_back();
        poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    while (!b.empty()) {
        Poly r = poly_rem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool is_irreducible_mod_p(const Poly& f, std::uint32_t p) {
    if (f.size() < 2 || f.back() != 1)
        throw std::invalid_argument("is_irreducible_mod_p: polynomial must be monic of degree >= 1");
    const std::size_t m = f.size() - 1;
    if (m == 1) return true;
    if (f[0] == 0) return false;  // divisible by x

    // Frobenius chain: X_k = x^(p^k) mod f for k = 1..m.
    std::vector<Poly> frob(m + 1);
    frob[0] = {0, 1};
    for (std::size_t k = 1; k <= m; ++k)
        frob[k] = poly_pow_mod(frob[k - 1], p, f, p);

    // x^(p^m) must equal x ...
    if (poly_sub(frob[m], frob[0], p) != Poly{}) return false;
    // ... and no proper Frobenius power may share a factor with f.
    for (u64 t : modarith::distinct_prime_factors(m)) {
        Poly d = poly_gcd(f, poly_sub(frob[m / t], frob[0], p), p);
        if (d.size() != 1) return false;
    }
    return true;
}

// ---- FieldCtx member operations -------------------------------------------

void FieldCtx::decode(Elem e, std::uint32_t* coords) const {
    for (std::uint32_t i = 0; i < m; ++i) {
        coords[i] = e % p;
        e /= p;
    }
}

Elem FieldCtx::encode(const std::uint32_t* coords) const {
    u64 e = 0;
    for (std::uint32_t i = m; i-- > 0;) e = e * p + coords[i];
    return static_cast<Elem>(e);
}

Elem FieldCtx::add(Elem a, Elem b) const {
    if (p == 2) return a ^ b;
    u64 out = 0, mult = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        out += mult * ((a % p + b % p) % p);
        a /= p;
        b /= p;
        mult *= p;
    }
    return static_cast<Elem>(out);
}

Elem FieldCtx::neg(Elem a) const {
    if (p == 2) return a;
    u64 out = 0, mult = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        out += mult * ((p - a % p) % p);
        a /= p;
        mult *= p;
    }
    return static_cast<Elem>(out);
}

Elem FieldCtx::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FieldCtx::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (has_log_tables()) {
        u64 k = static_cast<u64>(log_table_[a]) + log_table_[b];
        if (k >= q - 1) k -= q - 1;
        return exp_table_[k];
    }
    std::uint32_t ca[64], cb[64];
    decode(a, ca);
    decode(b, cb);
    u64 acc[127] = {0};
    for (std::uint32_t i = 0; i < m; ++i) {
        if (ca[i] == 0) continue;
        for (std::uint32_t j = 0; j < m; ++j)
            acc[i + j] += static_cast<u64>(ca[i]) * cb[j] % p;
    }
    for (std::uint32_t i = 2 * m - 1; i-- > m;) {
        const u64 c = acc[i] % p;
        if (c == 0) continue;
        for (std::uint32_t j = 0; j < m; ++j)
            acc[i - m + j] += c * (p - modulus[j]) % p;
    }
    std::uint32_t cr[64];
    for (std::uint32_t i = 0; i < m; ++i)
        cr[i] = static_cast<std::uint32_t>(acc[i] % p);
    return encode(cr);
}

Elem FieldCtx::pow_u(Elem x, u64 k) const {
    if (x == 0) return k == 0 ? 1 : 0;
    if (q > 2) k %= (q - 1);
    if (has_log_tables())
        return exp_table_[modarith::mulmod(log_table_[x], k, q - 1)];
    Elem acc = 1;
    while (k) {
        if (k & 1) acc = mul(acc, x);
        x = mul(x, x);
        k >>= 1;
    }
    return acc;
}

Elem FieldCtx::inv(Elem a) const {
    if (a == 0) throw std::domain_error("FieldCtx::inv: zero has no inverse");
    if (q == 2) return 1;
    return pow_u(a, q - 2);
}

u64 FieldCtx::dlog(Elem x) const {
    if (x == 0) throw std::domain_error("FieldCtx::dlog: log of zero");
    if (!has_log_tables()) throw std::logic_error("FieldCtx::dlog: log tables not built");
    return log_table_[x];
}

Elem FieldCtx::exp_beta(u64 k) const {
    if (q == 2) return 1;
    k %= (q - 1);
    if (has_log_tables()) return exp_table_[k];
    return pow_u(beta, k);
}

u64 FieldCtx::order(Elem x) const {
    if (x == 0) throw std::domain_error("FieldCtx::order: zero element");
    u64 ord = q - 1;
    for (u64 t : q1_factors)
        while (ord % t == 0 && pow_u(x, ord / t) == 1) ord /= t;
    return ord;
}

std::string FieldCtx::text() const {
    if (m == 1) return std::to_string(p);
    return std::to_string(p) + "^" + std::to_string(m);
}

// ---- construction ----------------------------------------------------------

namespace {

// Candidates enumerated in lexicographic order of (c_0, c_1, ..., c_{m-1});
// the first irreducible hit is therefore the lexicographically smallest.
Poly default_modulus(std::uint32_t p, std::uint32_t m) {
    if (m == 1) return {0, 1};  // x
    const u64 count = [&] {
        u64 c = 1;
        for (std::uint32_t i = 0; i + 1 < m; ++i) c *= p;
        return c;
    }();
    Poly f(m + 1, 0);
    f[m] = 1;
    for (std::uint32_t c0 = 1; c0 < p; ++c0) {
        for (u64 rest = 0; rest < count; ++rest) {
            f[0] = c0;
            u64 v = rest;
            for (std::uint32_t i = m - 1; i >= 1; --i) {
                f[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            // cheap pre-filter: no roots in Z_p
            bool has_root = false;
            for (std::uint32_t a = 0; a < p && !has_root; ++a) {
                u64 acc = 0;
                for (std::uint32_t i = m + 1; i-- > 0;) acc = (acc * a + f[i]) % p;
                has_root = (acc == 0);
            }
            if (has_root) continue;
            if (is_irreducible_mod_p(f, p)) return f;
        }
    }
    throw std::logic_error("default_modulus: no irreducible polynomial found");
}

}  // namespace

Elem find_primitive(const FieldCtx& ctx) {
    if (ctx.q == 2) return 1;
    for (Elem cand = 2; cand < ctx.q; ++cand) {
        bool generates = true;
        for (u64 t : ctx.q1_factors) {
            if (ctx.pow_u(cand, (ctx.q - 1) / t) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return cand;
    }
    throw std::logic_error("find_primitive: no generator found");
}

FieldCtx make_field(std::uint32_t p, std::uint32_t m,
                    const std::optional<std::vector<std::uint32_t>>& modulus,
                    LogTablePolicy logs) {
    if (!modarith::is_prime(p))
        throw std::invalid_argument("make_field: p must be prime");
    if (m < 1) throw std::invalid_argument("make_field: m must be >= 1");

    u64 q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > kMaxFieldOrder)
            throw std::invalid_argument("make_field: field order exceeds supported range");
    }

    FieldCtx ctx;
    ctx.p = p;
    ctx.m = m;
    ctx.q = q;
    ctx.q1_factors = modarith::distinct_prime_factors(q - 1);

    if (modulus) {
        Poly f = *modulus;
        if (f.size() != static_cast<std::size_t>(m) + 1 || f.back() != 1)
            throw std::invalid_argument("make_field: modulus must be monic of degree m");
        for (auto c : f)
            if (c >= p) throw std::invalid_argument("make_field: modulus coefficient out of range");
        if (!is_irreducible_mod_p(f, p))
            throw std::invalid_argument("make_field: supplied modulus is reducible");
        ctx.modulus = std::move(f);
    } else {
        ctx.modulus = default_modulus(p, m);
    }

    const bool build_logs = logs == LogTablePolicy::Always ||
                            (logs == LogTablePolicy::Auto && q <= kAutoLogTableLimit);

    // The generator search needs multiplication, which consults the log
    // tables once built; find beta first, then fill the tables from it.
    ctx.beta = find_primitive(ctx);

    if (build_logs) {
        // Fill into locals first: FieldCtx::mul consults the tables as soon
        // as they are non-empty.
        std::vector<Elem> exps(q - 1);
        std::vector<std::uint32_t> logs_tab(q, 0);
        Elem acc = 1;
        for (u64 k = 0; k < q - 1; ++k) {
            exps[k] = acc;
            logs_tab[acc] = static_cast<std::uint32_t>(k);
            acc = ctx.mul(acc, ctx.beta);
        }
        if (acc != 1) throw std::logic_error("make_field: generator order mismatch");
        ctx.exp_table_ = std::move(exps);
        ctx.log_table_ = std::move(logs_tab);
    }
    return ctx;
}

Elem field_pow(Elem x, i64 k, const FieldCtx& ctx) {
    if (x == 0) {
        if (k < 0) throw std::domain_error("field_pow: negative exponent of zero");
        return k == 0 ? 1 : 0;
    }
    return ctx.pow_u(x, modarith::mod_pos(k, ctx.q - 1));
}

std::vector<Elem> unity_subgroup(u64 ell, const FieldCtx& ctx) {
    if (ell == 0 || (ctx.q - 1) % ell != 0)
        throw std::invalid_argument("unity_subgroup: ell must divide q-1");
    const u64 s = (ctx.q - 1) / ell;
    const Elem w = ctx.pow_u(ctx.beta, s);
    std::vector<Elem> out(ell);
    Elem acc = 1;
    for (u64 i = 0; i < ell; ++i) {
        out[i] = acc;
        acc = ctx.mul(acc, w);
    }
    return out;
}

}  // namespace ncycle
