#include "ncycle/criteria.hpp"

#include <algorithm>
#include <numeric>

#include "ncycle/modarith.hpp"

namespace ncycle {

using modarith::powmod;

SubgroupIndex::SubgroupIndex(const std::vector<Elem>& subgroup, const FieldCtx& ctx)
    : ctx_(&ctx), ell_(subgroup.size()), s_((ctx.q - 1) / subgroup.size()) {
    if (!ctx.has_log_tables()) {
        sorted_.reserve(ell_);
        for (u64 i = 0; i < ell_; ++i)
            sorted_.emplace_back(subgroup[i], static_cast<std::uint32_t>(i));
        std::sort(sorted_.begin(), sorted_.end());
    }
}

u64 SubgroupIndex::index_of(Elem y) const {
    if (ctx_->has_log_tables()) {
        if (y == 0) throw std::invalid_argument("SubgroupIndex: zero element");
        const u64 k = ctx_->dlog(y);
        if (k % s_ != 0) throw std::invalid_argument("SubgroupIndex: element not in subgroup");
        return k / s_;
    }
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(),
                               std::make_pair(y, std::uint32_t{0}),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == sorted_.end() || it->first != y)
        throw std::invalid_argument("SubgroupIndex: element not in subgroup");
    return it->second;
}

std::vector<Elem> h_values_on_subgroup(const IndexForm& f, const FieldCtx& ctx) {
    const u64 ell = f.ell();
    const std::vector<Elem> subgroup = unity_subgroup(ell, ctx);
    std::vector<Elem> vals(ell);
    // h(w^i) = sum_j h_j w^(ij): index arithmetic on the power table instead
    // of a Horner chain per point.
    for (u64 i = 0; i < ell; ++i) {
        Elem acc = 0;
        for (u64 j = 0; j < ell; ++j) {
            if (f.hcoeffs[j] == 0) continue;
            acc = ctx.add(acc, ctx.mul(f.hcoeffs[j], subgroup[(i * j) % ell]));
        }
        vals[i] = acc;
    }
    return vals;
}

namespace {

// Shared precomputation for the criterion sweeps: h values, the induced map
// as an index permutation, and the subgroup power table.
struct InducedData {
    std::vector<Elem> subgroup;       // w^0 .. w^(ell-1)
    std::vector<Elem> hvals;          // h(w^i)
    std::vector<std::uint32_t> gidx;  // index of g(w^i)
};

InducedData build_induced(const IndexForm& f, const FieldCtx& ctx) {
    InducedData d;
    d.subgroup = unity_subgroup(f.ell(), ctx);
    d.hvals = h_values_on_subgroup(f, ctx);
    const u64 ell = f.ell();
    for (u64 i = 0; i < ell; ++i)
        if (d.hvals[i] == 0) throw HVanishesError(d.subgroup[i]);
    SubgroupIndex index(d.subgroup, ctx);
    d.gidx.resize(ell);
    const u64 r_mod = f.r % ell;
    for (u64 i = 0; i < ell; ++i) {
        const Elem img = ctx.mul(d.subgroup[(i * r_mod) % ell], ctx.pow_u(d.hvals[i], f.s));
        d.gidx[i] = static_cast<std::uint32_t>(index.index_of(img));
    }
    return d;
}

}  // namespace

std::vector<Elem> induced_g(const IndexForm& f, const FieldCtx& ctx) {
    InducedData d = build_induced(f, ctx);
    std::vector<Elem> images(f.ell());
    for (u64 i = 0; i < f.ell(); ++i) images[i] = d.subgroup[d.gidx[i]];
    return images;
}

bool check_permutation(const IndexForm& f, const FieldCtx& ctx) {
    if (std::gcd(f.r, f.s) != 1) return false;
    try {
        InducedData d = build_induced(f, ctx);
        std::vector<bool> hit(f.ell(), false);
        for (auto i : d.gidx) {
            if (hit[i]) return false;
            hit[i] = true;
        }
        return true;
    } catch (const HVanishesError&) {
        return false;
    }
}

Elem phi(Elem y, const IndexForm& f, u64 n, const FieldCtx& ctx) {
    const u64 q1 = ctx.q - 1;
    if (powmod(f.r, n, f.s) != 1 % f.s)
        throw std::invalid_argument("phi: r^n != 1 (mod s)");
    InducedData d = build_induced(f, ctx);
    SubgroupIndex index(d.subgroup, ctx);
    u64 j = index.index_of(y);

    const u64 t = modarith::pow_minus_one_over(f.r, n, f.s, q1);
    Elem acc = ctx.pow_u(y, t);
    u64 cur = j;
    for (u64 i = 0; i < n; ++i) {
        const u64 e = powmod(f.r, n - i - 1, q1);
        acc = ctx.mul(acc, ctx.pow_u(d.hvals[cur], e));
        cur = d.gidx[cur];
    }
    return acc;
}

CriterionVerdict check_ncycle(const IndexForm& f, u64 n, const FieldCtx& ctx) {
    if (n == 0) throw std::invalid_argument("check_ncycle: n must be >= 1");
    const u64 q1 = ctx.q - 1;
    if (std::gcd(f.r, f.s) != 1)
        return CriterionVerdict::fail(FailureKind::not_permutation);
    if (powmod(f.r, n, f.s) != 1 % f.s)
        return CriterionVerdict::fail(FailureKind::congruence);

    InducedData d;
    try {
        d = build_induced(f, ctx);
    } catch (const HVanishesError& e) {
        return CriterionVerdict::fail(FailureKind::h_vanishes, e.witness());
    }
    const u64 ell = f.ell();

    // Exponent data, all reduced mod q-1 before any field exponentiation.
    const u64 t = modarith::pow_minus_one_over(f.r, n, f.s, q1);
    std::vector<u64> rexp(n);
    for (u64 i = 0; i < n; ++i) rexp[i] = powmod(f.r, n - i - 1, q1);

    // h(w^k)^(r^(n-i-1)) for every (i, k): each pair occurs once per sweep,
    // so precompute rather than re-exponentiating along every orbit.
    std::vector<std::vector<Elem>> hpow(n, std::vector<Elem>(ell));
    for (u64 i = 0; i < n; ++i)
        for (u64 k = 0; k < ell; ++k) hpow[i][k] = ctx.pow_u(d.hvals[k], rexp[i]);

    for (u64 j = 0; j < ell; ++j) {
        Elem acc = ctx.pow_u(d.subgroup[j], t);
        u64 cur = j;
        for (u64 i = 0; i < n; ++i) {
            acc = ctx.mul(acc, hpow[i][cur]);
            cur = d.gidx[cur];
        }
        if (acc != 1)
            return CriterionVerdict::fail(FailureKind::phi_witness, d.subgroup[j]);
    }
    return CriterionVerdict::pass();
}

bool necessary_g_ncycle(const IndexForm& f, u64 n, const FieldCtx& ctx) {
    InducedData d = build_induced(f, ctx);  // throws HVanishesError
    const u64 ell = f.ell();
    for (u64 j = 0; j < ell; ++j) {
        u64 cur = j;
        for (u64 i = 0; i < n; ++i) cur = d.gidx[cur];
        if (cur != j) return false;
    }
    return true;
}

}  // namespace ncycle
