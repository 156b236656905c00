#include "ncycle/families.hpp"

#include <numeric>

#include "ncycle/modarith.hpp"
#include "ncycle/textio.hpp"

namespace ncycle {

using modarith::geometric_sum_mod;
using modarith::mod_pos;
using modarith::mulmod;
using modarith::pow_minus_one_over;
using modarith::powmod;

namespace {

bool is_power_of(u64 q, u64 p) {
    if (q < p) return false;
    while (q % p == 0) q /= p;
    return q == 1;
}

// h(w^i) for a dense coefficient vector, via the subgroup power table.
std::vector<Elem> values_on_subgroup(const std::vector<Elem>& hcoeffs,
                                     const std::vector<Elem>& subgroup, const FieldCtx& ctx) {
    const u64 ell = subgroup.size();
    std::vector<Elem> vals(ell);
    for (u64 i = 0; i < ell; ++i) {
        Elem acc = 0;
        for (u64 j = 0; j < hcoeffs.size(); ++j) {
            if (hcoeffs[j] == 0) continue;
            acc = ctx.add(acc, ctx.mul(hcoeffs[j], subgroup[(i * j) % ell]));
        }
        vals[i] = acc;
    }
    return vals;
}

// prod-over-orbit certificate: hvals[i] * hvals[i*v] * hvals[i*v^2] == 1.
bool orbit_product_is_one(const std::vector<Elem>& hvals, u64 v, const FieldCtx& ctx,
                          std::optional<Elem>* witness, const std::vector<Elem>& subgroup) {
    const u64 ell = hvals.size();
    const u64 v1 = v % ell;
    const u64 v2 = mulmod(v1, v1, ell);
    for (u64 i = 0; i < ell; ++i) {
        const Elem prod =
            ctx.mul(hvals[i], ctx.mul(hvals[(i * v1) % ell], hvals[(i * v2) % ell]));
        if (prod != 1) {
            if (witness) *witness = subgroup[i];
            return false;
        }
    }
    return true;
}

std::vector<Elem> dense_h_from_exponents(const std::vector<u64>& exps, u64 ell,
                                         const FieldCtx& ctx) {
    std::vector<Elem> h(ell, 0);
    for (u64 e : exps) h[e % ell] = ctx.add(h[e % ell], 1);
    return h;
}

FamilyResult finish_family(IndexForm form, u64 v, bool cube_certificate, const FieldCtx& ctx,
                           std::string note) {
    const std::vector<Elem> subgroup = unity_subgroup(form.ell(), ctx);
    const std::vector<Elem> hvals = values_on_subgroup(form.hcoeffs, subgroup, ctx);
    bool ok = true;
    for (Elem hv : hvals)
        if (hv == 0) ok = false;
    if (ok) {
        std::optional<Elem> w;
        if (cube_certificate) {
            for (u64 i = 0; i < hvals.size() && ok; ++i)
                if (ctx.mul(hvals[i], ctx.mul(hvals[i], hvals[i])) != 1) ok = false;
        } else {
            ok = orbit_product_is_one(hvals, v, ctx, &w, subgroup);
        }
    }
    if (ok) ok = check_ncycle(form, 3, ctx).passed;
    return FamilyResult{std::move(form), ok, std::move(note)};
}

}  // namespace

bool single_check(const std::vector<Elem>& hvals, Elem a, u64 v, u64 r, const FieldCtx& ctx,
                  SingleCheckReport* report) {
    const u64 ell = hvals.size();
    if (ell == 0 || (ctx.q - 1) % ell != 0)
        throw std::invalid_argument("single_check: value table length must divide q-1");
    const u64 s = (ctx.q - 1) / ell;
    const u64 q1 = ctx.q - 1;
    if (powmod(v, 3, ell) != 1 % ell)
        throw std::invalid_argument("single_check: v^3 != 1 (mod ell)");
    if (powmod(r, 3, s) != 1 % s) throw std::invalid_argument("single_check: r^3 != 1 (mod s)");
    if (std::gcd(r, s) != 1) throw std::invalid_argument("single_check: gcd(r, s) != 1");
    {
        const u64 e = (mulmod(v % q1, v % q1, q1) + v + 1) % q1;
        if (ctx.pow_u(a, e) != 1)
            throw std::invalid_argument("single_check: a^(v^2+v+1) != 1");
    }

    const std::vector<Elem> subgroup = unity_subgroup(ell, ctx);
    const u64 vr = mod_pos(static_cast<i64>(v % ell) - static_cast<i64>(r % ell), ell);

    // pointwise shape identity h(y)^s = a y^(v-r)
    for (u64 i = 0; i < ell; ++i) {
        if (hvals[i] == 0 ||
            ctx.pow_u(hvals[i], s) != ctx.mul(a, subgroup[(i * vr) % ell])) {
            if (report) {
                report->precondition_ok = false;
                report->precondition_witness = subgroup[i];
            }
            return false;
        }
    }
    // the i = 0 identity pins a = h(1)^s, so a lies in mu_ell from here on
    SubgroupIndex index(subgroup, ctx);
    const u64 idx_a = index.index_of(a);

    const u64 t = pow_minus_one_over(r, 3, s, q1);
    const u64 r2 = powmod(r, 2, q1);
    const u64 v1 = v % ell;
    const u64 v2 = mulmod(v1, v1, ell);
    for (u64 i = 0; i < ell; ++i) {
        // y^t * h(y)^(r^2) * h(a y^v)^r * h(a^(v+1) y^(v^2))
        const u64 j1 = (idx_a + i * v1) % ell;
        const u64 j2 = (mulmod(idx_a, (v1 + 1) % ell, ell) + mulmod(i, v2, ell)) % ell;
        Elem acc = ctx.pow_u(subgroup[i], t);
        acc = ctx.mul(acc, ctx.pow_u(hvals[i], r2));
        acc = ctx.mul(acc, ctx.pow_u(hvals[j1], r));
        acc = ctx.mul(acc, hvals[j2]);
        if (acc != 1) {
            if (report) report->condition_witness = subgroup[i];
            return false;
        }
    }
    return true;
}

FamilyResult family_char3(u64 q, const FieldCtx& ctx6) {
    if (!is_power_of(q, 3)) throw std::invalid_argument("family_char3: q must be a power of 3");
    if (ctx6.p != 3 || ctx6.q != q * q * q * q * q * q)
        throw std::invalid_argument("family_char3: context must be GF(q^6)");
    const u64 lp = q * q * q + 1;  // subgroup order
    if ((1 + 3 * q + 2 * q * q) % lp != 0)
        throw std::invalid_argument("family_char3: 1 + 3q + 2q^2 != 0 (mod q^3+1)");
    const i64 qi = static_cast<i64>(q);
    const std::vector<u64> exps = {
        0,
        (1 + q) % lp,
        mod_pos(1 - qi * qi, lp),
        mod_pos(-qi * qi - qi, lp),
    };
    IndexForm form = make_index_form(1, q * q * q - 1, dense_h_from_exponents(exps, lp, ctx6), ctx6);
    return finish_family(std::move(form), (q * q) % lp, /*cube=*/false, ctx6,
                         "h exponents mod q^3+1: " + print_u64_list(exps));
}

FamilyResult family_even_q(u64 q, u64 a, const FieldCtx& ctx2) {
    if (!is_power_of(q, 2)) throw std::invalid_argument("family_even_q: q must be a power of 2");
    if (ctx2.p != 2 || ctx2.q != q * q)
        throw std::invalid_argument("family_even_q: context must be GF(q^2)");
    const u64 lp = q + 1;
    if ((5 * (a % lp)) % lp != 0)
        throw std::invalid_argument("family_even_q: 5a != 0 (mod q+1)");
    const std::vector<u64> exps = {a % lp, (a % lp) * (q % lp) % lp, 0};
    IndexForm form = make_index_form(1, q - 1, dense_h_from_exponents(exps, lp, ctx2), ctx2);
    return finish_family(std::move(form), 1, /*cube=*/true, ctx2,
                         "h exponents mod q+1: " + print_u64_list(exps));
}

FamilyResult family_v_trinomial(u64 q, u64 a, u64 v, const FieldCtx& ctx2) {
    if (!is_power_of(q, 2))
        throw std::invalid_argument("family_v_trinomial: q must be a power of 2");
    if (ctx2.p != 2 || ctx2.q != q * q)
        throw std::invalid_argument("family_v_trinomial: context must be GF(q^2)");
    const u64 lp = q + 1;
    const u64 av = a % lp, vv = v % lp;
    const u64 v2 = mulmod(vv, vv, lp);
    if (powmod(vv, 3, lp) != 1 % lp)
        throw std::invalid_argument("family_v_trinomial: v^3 != 1 (mod q+1)");
    if (mulmod(av, (q - 1) % lp, lp) != mod_pos(static_cast<i64>(vv) - 1, lp))
        throw std::invalid_argument("family_v_trinomial: a(q-1) != v-1 (mod q+1)");

    // The three companion congruences are a sufficient shortcut, not part of
    // the certificate: known good (a, v) pairs violate one of them while the
    // product condition below still holds. Report them, decide pointwise.
    std::string congruences;
    if (mulmod(av, (1 + vv + v2) % lp, lp) != 0)
        congruences += " a(1+v+v^2) != 0;";
    {
        // a + v - v^2 + a v^2 - a v
        u64 lhs = (av + vv) % lp;
        lhs = (lhs + lp - v2) % lp;
        lhs = (lhs + mulmod(av, v2, lp)) % lp;
        lhs = (lhs + lp - mulmod(av, vv, lp)) % lp;
        if (lhs != 0) congruences += " a + v - v^2 + av^2 - av != 0;";
    }
    {
        // a v + v^2 + v - 2
        u64 lhs = (mulmod(av, vv, lp) + v2 + vv) % lp;
        lhs = (lhs + lp - 2 % lp) % lp;
        if (lhs != 0) congruences += " av + v^2 + v - 2 != 0;";
    }
    const std::vector<u64> exps = {av, 0, mod_pos(1 - static_cast<i64>(vv), lp)};
    IndexForm form = make_index_form(1, q - 1, dense_h_from_exponents(exps, lp, ctx2), ctx2);
    std::string note = "h exponents mod q+1: " + print_u64_list(exps) +
                       (congruences.empty() ? "; companion congruences hold"
                                            : "; companion congruences failing (mod q+1):" + congruences);
    return finish_family(std::move(form), vv, /*cube=*/false, ctx2, std::move(note));
}

PhiFamilyVerdict generic_phi_families(const SparsePoly& phi, u64 v, PhiVariant variant,
                                      const FieldCtx& ctx) {
    if (ctx.m % 2 != 0)
        throw std::invalid_argument("generic_phi_families: context must be a quadratic extension");
    u64 qth = 1;
    for (std::uint32_t i = 0; i < ctx.m / 2; ++i) qth *= ctx.p;
    const u64 lp = qth + 1;
    if (variant == PhiVariant::A && powmod(v % lp, 3, lp) != 1 % lp)
        throw std::invalid_argument("generic_phi_families: v^3 != 1 (mod q+1)");

    const std::vector<Elem> subgroup = unity_subgroup(lp, ctx);
    std::vector<Elem> hvals(lp);
    const u64 e1mv = mod_pos(1 - static_cast<i64>(v % lp), lp);
    for (u64 i = 0; i < lp; ++i) {
        const Elem y = subgroup[i];
        const Elem ph = evaluate(phi, y, ctx);
        const Elem phq = ctx.pow_u(ph, qth);
        if (variant == PhiVariant::A)
            hvals[i] = ctx.add(ph, ctx.mul(phq, subgroup[(i * e1mv) % lp]));
        else
            hvals[i] = ctx.add(ctx.add(ph, phq), 1);
    }
    for (u64 i = 0; i < lp; ++i)
        if (hvals[i] == 0)
            return PhiFamilyVerdict{false, subgroup[i], "h vanishes on the subgroup"};

    std::optional<Elem> w;
    bool ok;
    if (variant == PhiVariant::A) {
        ok = orbit_product_is_one(hvals, v, ctx, &w, subgroup);
    } else {
        ok = true;
        for (u64 i = 0; i < lp && ok; ++i)
            if (ctx.mul(hvals[i], ctx.mul(hvals[i], hvals[i])) != 1) {
                ok = false;
                w = subgroup[i];
            }
    }
    return PhiFamilyVerdict{ok, ok ? std::nullopt : w,
                            ok ? "" : "product condition fails on the subgroup"};
}

BinomialResult index2_binomial(const BinomialParams& p, const FieldCtx& ctx) {
    if (ctx.p == 2) throw std::invalid_argument("index2_binomial: q must be odd");
    const u64 q1 = ctx.q - 1;
    const u64 s = q1 / 2;
    const Elem two = ctx.add(1, 1);
    const Elem inv2 = ctx.inv(two);
    const Elem h0 = ctx.mul(ctx.add(p.a, p.b), inv2);
    const Elem h1 = ctx.mul(ctx.sub(p.a, p.b), inv2);

    BinomialResult out;
    out.form = make_index_form(p.r, s, {h0, h1}, ctx);

    const Elem neg1 = ctx.neg(1);
    if (p.a == 0 || p.b == 0) {
        out.induced = Mu2Action::collapse;
        return out;  // h vanishes on mu_2; nothing to certify
    }
    const Elem g1 = ctx.pow_u(p.a, s);
    const Elem gm1 = ctx.mul(ctx.pow_u(neg1, p.r % 2), ctx.pow_u(p.b, s));
    if (g1 == 1 && gm1 == neg1)
        out.induced = Mu2Action::identity;
    else if (g1 == neg1 && gm1 == 1)
        out.induced = Mu2Action::swap;
    else
        out.induced = Mu2Action::collapse;

    if (std::gcd(p.r, s) != 1 || powmod(p.r, p.n, s) != 1 % s) return out;

    const u64 t = pow_minus_one_over(p.r, p.n, s, q1);
    const Elem sign = ctx.pow_u(neg1, t % 2);
    const u64 esum = geometric_sum_mod(p.r, p.n, q1);
    out.identity_shape =
        ctx.pow_u(p.a, esum) == 1 && ctx.mul(sign, ctx.pow_u(p.b, esum)) == 1;
    if (p.n % 2 == 0) {
        u64 odd = 0, even = 0;  // sums of r^(2k-1) and r^(2k-2), k = 1..n/2
        u64 pw = 1 % q1;
        for (u64 k = 0; k < p.n; ++k) {
            if (k % 2 == 0)
                even = (even + pw) % q1;
            else
                odd = (odd + pw) % q1;
            pw = mulmod(pw, p.r % q1, q1);
        }
        out.swap_shape = ctx.mul(ctx.pow_u(p.a, odd), ctx.pow_u(p.b, even)) == 1 &&
                         ctx.mul(sign, ctx.mul(ctx.pow_u(p.a, even), ctx.pow_u(p.b, odd))) == 1;
    }

    switch (out.induced) {
        case Mu2Action::identity: out.verdict = out.identity_shape; break;
        case Mu2Action::swap: out.verdict = p.n % 2 == 0 && out.swap_shape; break;
        case Mu2Action::collapse: out.verdict = false; break;
    }
    return out;
}

TrinomialResult index3_trinomial(const TrinomialParams& p, const FieldCtx& ctx) {
    const u64 q1 = ctx.q - 1;
    if (q1 % 3 != 0) throw std::invalid_argument("index3_trinomial: q != 1 (mod 3)");
    const u64 s = q1 / 3;
    const std::vector<Elem> subgroup = unity_subgroup(3, ctx);
    const Elem w = subgroup[1], w2 = subgroup[2];

    const Elem d = ctx.sub(w, 1);          // w - 1
    const Elem opo = ctx.add(1, w);        // 1 + w = -w^2, nonzero for order-3 w
    if (d == 0 || w == 0 || opo == 0)
        throw std::domain_error("index3_trinomial: interpolation denominator vanishes");
    const Elem d2 = ctx.mul(d, d);

    // quadratic through (1, a), (w, b), (w^2, c):
    //   h2 = (c - b - a w^2 + c w^2) / ((w-1)^2 w)
    //   h1 = (b + a w - c(1+w))     / ((w-1)^2 w (1+w))
    //   h0 = (b + a - c w (1+w))    / ((w-1)^2 (1+w))
    const Elem h2 = ctx.mul(ctx.add(ctx.sub(p.c, p.b), ctx.mul(w2, ctx.sub(p.c, p.a))),
                            ctx.inv(ctx.mul(d2, w)));
    const Elem h1 =
        ctx.mul(ctx.sub(ctx.add(p.b, ctx.mul(p.a, w)), ctx.mul(p.c, opo)),
                ctx.inv(ctx.mul(ctx.mul(d2, w), opo)));
    const Elem h0 =
        ctx.mul(ctx.sub(ctx.add(p.b, p.a), ctx.mul(ctx.mul(p.c, w), opo)),
                ctx.inv(ctx.mul(d2, opo)));

    TrinomialResult out;
    out.form = make_index_form(p.r, s, {h0, h1, h2}, ctx);

    // the interpolation targets are part of the contract
    {
        auto at = [&](Elem x) {
            return ctx.add(h0, ctx.add(ctx.mul(h1, x), ctx.mul(h2, ctx.mul(x, x))));
        };
        if (at(1) != p.a || at(w) != p.b || at(w2) != p.c)
            throw std::logic_error("index3_trinomial: interpolation targets not met");
    }

    if (p.a == 0 || p.b == 0 || p.c == 0) {
        out.induced = Mu3Action::other;
        return out;
    }

    // induced map on mu_3 as an index map
    const auto idx_of = [&](Elem y) -> int {
        for (int i = 0; i < 3; ++i)
            if (subgroup[i] == y) return i;
        return -1;
    };
    const int i0 = idx_of(ctx.pow_u(p.a, s));
    const int i1 = idx_of(ctx.mul(subgroup[p.r % 3], ctx.pow_u(p.b, s)));
    const int i2 = idx_of(ctx.mul(subgroup[(2 * (p.r % 3)) % 3], ctx.pow_u(p.c, s)));
    if (i0 == 0 && i1 == 1 && i2 == 2)
        out.induced = Mu3Action::identity;
    else if (i0 == 1 && i1 == 2 && i2 == 0)
        out.induced = Mu3Action::rotate_fwd;
    else if (i0 == 2 && i1 == 0 && i2 == 1)
        out.induced = Mu3Action::rotate_rev;
    else
        out.induced = Mu3Action::other;

    if (std::gcd(p.r, s) != 1 || powmod(p.r, p.n, s) != 1 % s) return out;

    const u64 t = pow_minus_one_over(p.r, p.n, s, q1);
    const Elem wt = ctx.pow_u(w, t);
    const Elem wt2 = ctx.mul(wt, wt);

    if (p.n == 3) {
        const u64 r2 = powmod(p.r, 2, q1);
        auto triple = [&](Elem x, Elem y, Elem z) {
            return ctx.mul(ctx.pow_u(x, r2), ctx.mul(ctx.pow_u(y, p.r), z));
        };
        switch (out.induced) {
            case Mu3Action::identity: {
                const u64 e = geometric_sum_mod(p.r, 3, q1);
                out.verdict = ctx.pow_u(p.a, e) == 1 &&
                              ctx.mul(wt, ctx.pow_u(p.b, e)) == 1 &&
                              ctx.mul(wt2, ctx.pow_u(p.c, e)) == 1;
                break;
            }
            case Mu3Action::rotate_fwd:
                out.verdict = triple(p.a, p.b, p.c) == 1 &&
                              ctx.mul(wt, triple(p.b, p.c, p.a)) == 1 &&
                              ctx.mul(wt2, triple(p.c, p.a, p.b)) == 1;
                break;
            case Mu3Action::rotate_rev:
                out.verdict = triple(p.a, p.c, p.b) == 1 &&
                              ctx.mul(wt, triple(p.b, p.a, p.c)) == 1 &&
                              ctx.mul(wt2, triple(p.c, p.b, p.a)) == 1;
                break;
            case Mu3Action::other: out.verdict = false; break;
        }
        return out;
    }

    // general n: identity-map sufficiency only
    if (out.induced == Mu3Action::identity) {
        const u64 e = geometric_sum_mod(p.r, p.n, q1);
        out.verdict = ctx.pow_u(p.a, e) == 1 && ctx.mul(wt, ctx.pow_u(p.b, e)) == 1 &&
                      ctx.mul(wt2, ctx.pow_u(p.c, e)) == 1;
    }
    return out;
}

namespace {

PermTable subfield_side_table(const std::vector<u64>& h_exponents, u64 power,
                              const FieldCtx& base) {
    // x * h(x)^power with h = sum of x^e over the exponent list (coefficients 1)
    PermTable t;
    t.images.resize(base.q);
    t.images[0] = 0;
    for (u64 x = 1; x < base.q; ++x) {
        Elem h = 0;
        for (u64 e : h_exponents)
            h = base.add(h, base.pow_u(static_cast<Elem>(x), e));
        t.images[x] = base.mul(static_cast<Elem>(x), base.pow_u(h, power));
    }
    std::vector<bool> seen(base.q, false);
    t.bijective = true;
    for (Elem y : t.images) {
        if (seen[y]) {
            t.bijective = false;
            break;
        }
        seen[y] = true;
    }
    return t;
}

LiftedFamilyResult finish_lift(IndexForm form, const PermTable& base_side, const FieldCtx& ext) {
    LiftedFamilyResult out;
    out.base_ok = base_side.bijective && is_n_cycle_oracle(base_side, 3);
    out.criterion_ok = check_ncycle(form, 3, ext).passed;
    if (ext.q <= (u64{1} << 20)) {
        PermTable t = to_table(form, ext);
        out.full_oracle = t.bijective && is_n_cycle_oracle(t, 3);
        out.mode = "full";
    } else {
        out.mode = "subgroup";
    }
    out.valid = out.base_ok && out.criterion_ok && out.full_oracle.value_or(true);
    out.form = std::move(form);
    return out;
}

}  // namespace

LiftedFamilyResult lifted_family_even_q(u64 q, u64 a, const FieldCtx& base2,
                                        const FieldCtx& ext4) {
    FamilyResult base = family_even_q(q, a, base2);  // validates q, a
    if (ext4.p != 2 || ext4.q != base2.q * base2.q)
        throw std::invalid_argument("lifted_family_even_q: extension must be GF(q^4)");
    const u64 L2 = q * q - 1;
    const std::vector<u64> exps = {mulmod(a % L2, (q - 1) % L2, L2),
                                   mulmod(mulmod(a % L2, q % L2, L2), (q - 1) % L2, L2), 0};
    IndexForm form = make_index_form(1, q * q + 1, dense_h_from_exponents(exps, L2, ext4), ext4);
    LiftedFamilyResult out =
        finish_lift(std::move(form), subfield_side_table(exps, 2, base2), ext4);
    out.valid = out.valid && base.verdict;
    return out;
}

LiftedFamilyResult lifted_family_char3(u64 q, const FieldCtx& base6, const FieldCtx& ext18) {
    FamilyResult base = family_char3(q, base6);  // validates q and the congruence
    if (ext18.p != 3 || ext18.m != base6.m * 3)
        throw std::invalid_argument("lifted_family_char3: extension must be GF(q^18)");
    const i64 qi = static_cast<i64>(q);
    const i64 q3 = qi * qi * qi, q6 = q3 * q3;
    const u64 L6 = static_cast<u64>(q6 - 1);
    const i64 nums[3] = {
        (1 + qi) * (q3 - 1) + 2 * (q6 - 1),
        (1 - qi * qi) * (q3 - 1) + 2 * (q6 - 1),
        (-qi * qi - qi) * (q3 - 1),
    };
    std::vector<u64> exps = {0};
    for (i64 num : nums) {
        if (mod_pos(num, 3) != 0)
            throw std::logic_error("lifted_family_char3: exponent not divisible by 3");
        exps.push_back(mod_pos(num / 3, L6));
    }
    IndexForm form =
        make_index_form(1, (ext18.q - 1) / L6, dense_h_from_exponents(exps, L6, ext18), ext18);
    LiftedFamilyResult out =
        finish_lift(std::move(form), subfield_side_table(exps, 3, base6), ext18);
    out.valid = out.valid && base.verdict;
    return out;
}

}  // namespace ncycle
