#include "ncycle/permpoly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ncycle/modarith.hpp"

namespace ncycle {

namespace {

constexpr u64 kParallelTableThreshold = u64{1} << 16;

void check_bijective(const PermTable& t, const char* who) {
    if (!t.bijective)
        throw std::invalid_argument(std::string(who) + ": table is not a bijection");
}

// Visits each cycle of a bijective table once; fn(length) per cycle.
template <typename Fn>
void for_each_cycle(const PermTable& t, Fn&& fn) {
    const u64 q = t.size();
    std::vector<bool> seen(q, false);
    for (u64 start = 0; start < q; ++start) {
        if (seen[start]) continue;
        u64 len = 0;
        u64 cur = start;
        do {
            seen[cur] = true;
            cur = t.images[cur];
            ++len;
        } while (cur != start);
        fn(len);
    }
}

void flag_bijective(PermTable& t) {
    std::vector<bool> seen(t.size(), false);
    for (Elem y : t.images) {
        if (y >= t.size() || seen[y]) {
            t.bijective = false;
            return;
        }
        seen[y] = true;
    }
    t.bijective = true;
}

template <typename Eval>
PermTable build_table(u64 q, Eval&& eval) {
    PermTable t;
    t.images.resize(q);
    unsigned workers = std::thread::hardware_concurrency();
    if (workers > 8) workers = 8;
    if (q < kParallelTableThreshold || workers < 2) {
        for (u64 x = 0; x < q; ++x) t.images[x] = eval(static_cast<Elem>(x));
    } else {
        std::vector<std::thread> pool;
        const u64 chunk = (q + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const u64 lo = w * chunk, hi = std::min(q, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (u64 x = lo; x < hi; ++x) t.images[x] = eval(static_cast<Elem>(x));
            });
        }
        for (auto& th : pool) th.join();
    }
    flag_bijective(t);
    return t;
}

}  // namespace

SparsePoly make_poly(std::vector<std::pair<u64, Elem>> terms, const FieldCtx& ctx) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparsePoly out;
    for (const auto& [e, c] : terms) {
        if (c == 0) continue;
        if (c >= ctx.q) throw std::invalid_argument("make_poly: coefficient out of range");
        if (!out.terms.empty() && out.terms.back().first == e)
            out.terms.back().second = ctx.add(out.terms.back().second, c);
        else
            out.terms.emplace_back(e, c);
    }
    std::erase_if(out.terms, [](const auto& t) { return t.second == 0; });
    return out;
}

IndexForm make_index_form(u64 r, u64 s, std::vector<Elem> hcoeffs, const FieldCtx& ctx) {
    if (r == 0) throw std::invalid_argument("make_index_form: r must be positive");
    if (s == 0 || (ctx.q - 1) % s != 0)
        throw std::invalid_argument("make_index_form: s must divide q-1");
    if (hcoeffs.size() != (ctx.q - 1) / s)
        throw std::invalid_argument("make_index_form: h must have exactly ell = (q-1)/s coefficients");
    for (Elem c : hcoeffs)
        if (c >= ctx.q) throw std::invalid_argument("make_index_form: coefficient out of range");
    return IndexForm{r, s, std::move(hcoeffs)};
}

Elem evaluate(const SparsePoly& f, Elem x, const FieldCtx& ctx) {
    Elem acc = 0;
    for (const auto& [e, c] : f.terms)
        acc = ctx.add(acc, ctx.mul(c, ctx.pow_u(x, e)));
    return acc;
}

Elem evaluate(const IndexForm& f, Elem x, const FieldCtx& ctx) {
    if (x == 0) return 0;
    const Elem y = ctx.pow_u(x, f.s);
    Elem h = 0;
    // Horner on the dense coefficient vector
    for (std::size_t i = f.hcoeffs.size(); i-- > 0;)
        h = ctx.add(ctx.mul(h, y), f.hcoeffs[i]);
    return ctx.mul(ctx.pow_u(x, f.r), h);
}

Elem evaluate(const PiecewiseForm& f, Elem x, const FieldCtx& ctx) {
    if (x == 0) return 0;
    const u64 ell = f.branches.size();
    const u64 s = (ctx.q - 1) / ell;
    const Elem alpha = ctx.pow_u(x, s);
    for (const auto& [a, mult] : f.branches)
        if (a == alpha) return ctx.mul(mult, ctx.pow_u(x, f.r));
    throw std::logic_error("PiecewiseForm: coset value not found among branches");
}

PermTable to_table(const SparsePoly& f, const FieldCtx& ctx) {
    return build_table(ctx.q, [&](Elem x) { return evaluate(f, x, ctx); });
}

PermTable to_table(const IndexForm& f, const FieldCtx& ctx) {
    const u64 ell = f.ell();
    // Multiplier per coset, then one pow per point. With log tables the
    // whole table is index arithmetic.
    std::vector<Elem> mult(ell);
    {
        const std::vector<Elem> subgroup = unity_subgroup(ell, ctx);
        for (u64 i = 0; i < ell; ++i) {
            Elem h = 0;
            for (std::size_t j = f.hcoeffs.size(); j-- > 0;)
                h = ctx.add(ctx.mul(h, subgroup[i]), f.hcoeffs[j]);
            mult[i] = h;
        }
    }
    if (ctx.has_log_tables()) {
        PermTable t;
        t.images.resize(ctx.q);
        t.images[0] = 0;
        const u64 q1 = ctx.q - 1;
        for (u64 k = 0; k < q1; ++k) {
            const Elem x = ctx.exp_beta(k);
            const Elem mu = mult[k % ell];
            if (mu == 0) {
                t.images[x] = 0;
                continue;
            }
            t.images[x] = ctx.exp_beta((ctx.dlog(mu) + modarith::mulmod(k, f.r, q1)) % q1);
        }
        flag_bijective(t);
        return t;
    }
    return build_table(ctx.q, [&](Elem x) { return evaluate(f, x, ctx); });
}

PermTable identity_table(const FieldCtx& ctx) {
    PermTable t;
    t.images.resize(ctx.q);
    std::iota(t.images.begin(), t.images.end(), 0);
    t.bijective = true;
    return t;
}

PiecewiseForm index_to_piecewise(const IndexForm& f, const FieldCtx& ctx) {
    PiecewiseForm out;
    out.r = f.r;
    const std::vector<Elem> subgroup = unity_subgroup(f.ell(), ctx);
    out.branches.reserve(subgroup.size());
    for (Elem a : subgroup) {
        Elem h = 0;
        for (std::size_t j = f.hcoeffs.size(); j-- > 0;)
            h = ctx.add(ctx.mul(h, a), f.hcoeffs[j]);
        out.branches.emplace_back(a, h);
    }
    return out;
}

SparsePoly expand(const IndexForm& f, const FieldCtx& ctx) {
    std::vector<std::pair<u64, Elem>> terms;
    const u64 q1 = ctx.q - 1;
    for (u64 j = 0; j < f.hcoeffs.size(); ++j) {
        if (f.hcoeffs[j] == 0) continue;
        u64 e = f.r + f.s * j;
        if (e > q1) e = (e - 1) % q1 + 1;  // keep exponents in [1, q-1]
        terms.emplace_back(e, f.hcoeffs[j]);
    }
    return make_poly(std::move(terms), ctx);
}

std::optional<IndexForm> index_decompose(const SparsePoly& f, const FieldCtx& ctx) {
    if (f.is_zero()) return std::nullopt;
    const u64 q1 = ctx.q - 1;
    // normalize exponents into [1, q-1] first (same induced map)
    std::vector<std::pair<u64, Elem>> terms;
    for (auto [e, c] : f.terms) {
        if (e == 0) return std::nullopt;  // constant term: not of shape x^r h(x^s)
        terms.emplace_back((e - 1) % q1 + 1, c);
    }
    SparsePoly norm = make_poly(std::move(terms), ctx);
    if (norm.is_zero()) return std::nullopt;

    const u64 r = norm.terms.front().first;
    u64 s = q1;
    for (const auto& [e, c] : norm.terms) s = std::gcd(s, e - r);
    const u64 ell = q1 / s;
    std::vector<Elem> h(ell, 0);
    for (const auto& [e, c] : norm.terms) {
        const u64 j = (e - r) / s;  // already < ell since e - r <= q-1 - 1 < s*ell
        h[j % ell] = ctx.add(h[j % ell], c);
    }
    return make_index_form(r, s, std::move(h), ctx);
}

CycleStructure cycle_structure(const PermTable& t) {
    check_bijective(t, "cycle_structure");
    CycleStructure cs;
    for_each_cycle(t, [&](u64 len) { ++cs.counts[len]; });
    return cs;
}

u64 min_order(const PermTable& t) {
    check_bijective(t, "min_order");
    u64 l = 1;
    bool overflow = false;
    for_each_cycle(t, [&](u64 len) {
        if (overflow) return;
        const u64 g = std::gcd(l, len);
        const u64 factor = len / g;
        if (l > std::numeric_limits<u64>::max() / factor) {
            overflow = true;
            return;
        }
        l *= factor;
    });
    if (overflow) throw std::overflow_error("min_order: lcm of cycle lengths exceeds 64 bits");
    return l;
}

PermTable functional_power(const PermTable& t, i64 k) {
    const u64 q = t.size();
    if (!t.bijective) {
        if (k <= 0)
            throw std::invalid_argument("functional_power: non-positive power of a non-bijection");
        // plain binary powering under composition
        PermTable acc;
        acc.images.resize(q);
        std::iota(acc.images.begin(), acc.images.end(), 0);
        acc.bijective = true;
        PermTable base = t;
        u64 e = static_cast<u64>(k);
        while (e) {
            if (e & 1) acc = compose(acc, base);
            if (e >>= 1) base = compose(base, base);
        }
        return acc;
    }
    // cycle-leaping: shift each cycle by k mod its length
    PermTable out;
    out.images.resize(q);
    out.bijective = true;
    std::vector<bool> seen(q, false);
    std::vector<u64> cyc;
    for (u64 start = 0; start < q; ++start) {
        if (seen[start]) continue;
        cyc.clear();
        u64 cur = start;
        do {
            seen[cur] = true;
            cyc.push_back(cur);
            cur = t.images[cur];
        } while (cur != start);
        const u64 len = cyc.size();
        const u64 shift = modarith::mod_pos(k, len);
        for (u64 i = 0; i < len; ++i)
            out.images[cyc[i]] = static_cast<Elem>(cyc[(i + shift) % len]);
    }
    return out;
}

bool is_n_cycle_oracle(const PermTable& t, u64 n) {
    check_bijective(t, "is_n_cycle_oracle");
    if (n == 0) throw std::invalid_argument("is_n_cycle_oracle: n must be >= 1");
    const u64 q = t.size();
    std::vector<bool> seen(q, false);
    for (u64 start = 0; start < q; ++start) {
        if (seen[start]) continue;
        u64 len = 0;
        u64 cur = start;
        do {
            seen[cur] = true;
            cur = t.images[cur];
            ++len;
            if (len > n) return false;
        } while (cur != start);
        if (n % len != 0) return false;
    }
    return true;
}

PermTable compose(const PermTable& f, const PermTable& g) {
    if (f.size() != g.size())
        throw std::invalid_argument("compose: table size mismatch");
    PermTable out;
    out.images.resize(f.size());
    for (u64 x = 0; x < f.size(); ++x) out.images[x] = f.images[g.images[x]];
    out.bijective = f.bijective && g.bijective;
    if (!out.bijective) flag_bijective(out);
    return out;
}

PermTable inverse(const PermTable& t) {
    check_bijective(t, "inverse");
    PermTable out;
    out.images.resize(t.size());
    for (u64 x = 0; x < t.size(); ++x) out.images[t.images[x]] = static_cast<Elem>(x);
    out.bijective = true;
    return out;
}

PermTable derive_power(const PermTable& t, i64 k) { return functional_power(t, k); }

PermTable derive_conjugate(const PermTable& t, const PermTable& g) {
    check_bijective(g, "derive_conjugate");
    check_bijective(t, "derive_conjugate");
    return compose(g, compose(t, inverse(g)));
}

PermTable derive_compose(const PermTable& t, const PermTable& g) {
    check_bijective(g, "derive_compose");
    check_bijective(t, "derive_compose");
    if (t.size() != g.size())
        throw std::invalid_argument("derive_compose: table size mismatch");
    for (u64 x = 0; x < t.size(); ++x)
        if (t.images[g.images[x]] != g.images[t.images[x]])
            throw std::invalid_argument("derive_compose: maps do not commute");
    return compose(t, g);
}

}  // namespace ncycle
