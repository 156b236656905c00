#include "ncycle/constructor.hpp"

#include <algorithm>
#include <numeric>

#include "ncycle/modarith.hpp"

namespace ncycle {

using modarith::mod_pos;
using modarith::powmod;

void validate_gspec(const GSpec& spec, u64 n) {
    const u64 ell = spec.sigma.size();
    if (ell == 0) throw std::invalid_argument("GSpec: empty rearrangement");
    if (spec.mvec.size() != ell)
        throw std::invalid_argument("GSpec: mvec length must equal sigma length");
    std::vector<bool> hit(ell, false);
    for (auto v : spec.sigma) {
        if (v >= ell || hit[v])
            throw std::invalid_argument("GSpec: sigma is not a permutation");
        hit[v] = true;
    }
    for (u64 i = 0; i < ell; ++i) {
        u64 cur = i;
        for (u64 k = 0; k < n; ++k) cur = spec.sigma[cur];
        if (cur != i)
            throw std::invalid_argument("GSpec: sigma^n is not the identity");
    }
}

GSpec normalize_mvec(GSpec spec, u64 s) {
    for (auto& m : spec.mvec) m %= s;
    return spec;
}

bool check_solution_congruences(const GSpec& spec, u64 r, u64 n, u64 s) {
    validate_gspec(spec, n);
    if (powmod(r, n, s) != 1 % s) return false;
    std::vector<u64> rpow(n);  // r^(n-k-1) mod s
    for (u64 k = 0; k < n; ++k) rpow[k] = powmod(r, n - k - 1, s);
    for (u64 i = 0; i < spec.sigma.size(); ++i) {
        u64 acc = 0;
        u64 cur = i;
        for (u64 k = 0; k < n; ++k) {
            acc = (acc + modarith::mulmod(rpow[k], spec.mvec[cur] % s, s)) % s;
            cur = spec.sigma[cur];
        }
        if (acc != 0) return false;
    }
    return true;
}

std::vector<Elem> interpolate(const std::vector<Elem>& nodes, const std::vector<Elem>& values,
                              const FieldCtx& ctx) {
    const std::size_t k = nodes.size();
    if (values.size() != k) throw std::invalid_argument("interpolate: length mismatch");
    // master(x) = prod (x - node_j), coefficients low-degree-first
    std::vector<Elem> master(k + 1, 0);
    master[0] = 1;
    for (std::size_t j = 0; j < k; ++j) {
        const Elem neg = ctx.neg(nodes[j]);
        for (std::size_t d = j + 1; d-- > 0;) {
            master[d + 1] = ctx.add(master[d + 1], master[d]);
            master[d] = ctx.mul(master[d], neg);
        }
    }
    std::vector<Elem> out(k, 0);
    std::vector<Elem> basis(k);  // master / (x - node_j), by synthetic division
    for (std::size_t j = 0; j < k; ++j) {
        Elem carry = master[k];
        for (std::size_t d = k; d-- > 0;) {
            basis[d] = carry;
            carry = ctx.add(master[d], ctx.mul(carry, nodes[j]));
        }
        // carry is now master(node_j), which is 0 for distinct nodes
        Elem denom = 0;
        {
            // basis evaluated at node_j
            Elem acc = 0;
            for (std::size_t d = k; d-- > 0;) acc = ctx.add(ctx.mul(acc, nodes[j]), basis[d]);
            denom = acc;
        }
        if (denom == 0) throw std::invalid_argument("interpolate: repeated node");
        const Elem scale = ctx.mul(values[j], ctx.inv(denom));
        for (std::size_t d = 0; d < k; ++d)
            out[d] = ctx.add(out[d], ctx.mul(scale, basis[d]));
    }
    return out;
}

namespace {

Constructed build_from_targets(const std::vector<Elem>& targets, u64 r, u64 s, bool admissible,
                               std::string why, const FieldCtx& ctx) {
    const u64 ell = targets.size();
    const std::vector<Elem> nodes = unity_subgroup(ell, ctx);
    std::vector<Elem> h = interpolate(nodes, targets, ctx);
    Constructed out{make_index_form(r, s, std::move(h), ctx), admissible, std::move(why)};
    return out;
}

}  // namespace

Constructed cyclotomic_construct(const GSpec& spec_in, u64 r, u64 n, const FieldCtx& ctx) {
    if (r == 0) throw std::invalid_argument("cyclotomic_construct: r must be positive");
    const u64 ell = spec_in.ell();
    if (ell == 0 || (ctx.q - 1) % ell != 0)
        throw std::invalid_argument("cyclotomic_construct: sigma length must divide q-1");
    const u64 s = (ctx.q - 1) / ell;
    const GSpec spec = normalize_mvec(spec_in, s);
    validate_gspec(spec, n);

    const bool admissible = check_solution_congruences(spec, r, n, s) && std::gcd(r, s) == 1;
    std::string why = admissible ? "" : "solution congruences fail: output is not an n-cycle permutation";

    const u64 q1 = ctx.q - 1;
    std::vector<Elem> targets(ell);
    for (u64 i = 0; i < ell; ++i) {
        // beta^(ell*m_i + sigma(i) - i*r), exponent mod q-1
        u64 e = (modarith::mulmod(ell % q1, spec.mvec[i] % q1, q1) + spec.sigma[i]) % q1;
        e = (e + q1 - modarith::mulmod(i % q1, r % q1, q1)) % q1;
        targets[i] = ctx.exp_beta(e);
    }
    return build_from_targets(targets, r, s, admissible, std::move(why), ctx);
}

Constructed cyclotomic_identity(const std::vector<u64>& mvec, u64 r, u64 n, const FieldCtx& ctx) {
    GSpec spec;
    spec.sigma.resize(mvec.size());
    std::iota(spec.sigma.begin(), spec.sigma.end(), 0);
    spec.mvec = mvec;
    return cyclotomic_construct(spec, r, n, ctx);
}

SubfieldEmbedding::SubfieldEmbedding(const FieldCtx& base, const FieldCtx& ext) {
    if (ext.p != base.p || ext.m % base.m != 0)
        throw std::invalid_argument("SubfieldEmbedding: not an extension of the base field");
    // Candidates for a root of the base modulus: exactly the elements of the
    // unique subfield of size q, i.e. {0} and the (q-1)-th roots of unity.
    std::vector<Elem> candidates = unity_subgroup(base.q - 1, ext);
    std::sort(candidates.begin(), candidates.end());

    auto eval_base_modulus = [&](Elem x) {
        Elem acc = 0;
        for (std::size_t i = base.modulus.size(); i-- > 0;) {
            // modulus coefficients live in Z_p, which embeds as constants
            acc = ext.add(ext.mul(acc, x), static_cast<Elem>(base.modulus[i]));
        }
        return acc;
    };

    Elem root = 0;
    bool found = false;
    for (Elem cand : candidates) {
        if (eval_base_modulus(cand) == 0) {
            root = cand;
            found = true;
            break;
        }
    }
    if (!found && eval_base_modulus(0) == 0) {
        root = 0;
        found = true;
    }
    if (!found) throw std::logic_error("SubfieldEmbedding: no root of the base modulus found");

    std::vector<Elem> root_pows(base.m);
    root_pows[0] = 1;
    for (std::uint32_t i = 1; i < base.m; ++i) root_pows[i] = ext.mul(root_pows[i - 1], root);

    map_.resize(base.q);
    std::vector<std::uint32_t> coords(base.m);
    for (u64 e = 0; e < base.q; ++e) {
        base.decode(static_cast<Elem>(e), coords.data());
        Elem acc = 0;
        for (std::uint32_t i = 0; i < base.m; ++i) {
            Elem term = ext.mul(root_pows[i], static_cast<Elem>(coords[i]));
            acc = ext.add(acc, term);
        }
        map_[e] = acc;
    }
}

LiftResult lift_subfield(const IndexForm& base_form, u64 m, u64 n, const FieldCtx& base,
                         const FieldCtx& ext) {
    if (m < 1) throw std::invalid_argument("lift_subfield: m must be >= 1");
    if (ext.p != base.p || ext.m != base.m * m)
        throw std::invalid_argument("lift_subfield: extension field must be GF(q^m)");
    if (std::gcd(base.q - 1, m) != 1)
        throw std::invalid_argument("lift_subfield: gcd(q-1, m) must be 1");
    const u64 s_ext = (ext.q - 1) / (base.q - 1);
    if (powmod(base_form.r, n, s_ext) != 1 % s_ext)
        throw std::invalid_argument("lift_subfield: r^n != 1 (mod (q^m-1)/(q-1))");

    // Subfield side: x^r h(x)^m must be an n-cycle permutation of GF(q).
    PermTable g_table;
    g_table.images.resize(base.q);
    g_table.images[0] = 0;
    for (u64 x = 1; x < base.q; ++x) {
        Elem h = 0;
        for (std::size_t j = base_form.hcoeffs.size(); j-- > 0;)
            h = base.add(base.mul(h, static_cast<Elem>(x)), base_form.hcoeffs[j]);
        g_table.images[x] =
            base.mul(base.pow_u(static_cast<Elem>(x), base_form.r), base.pow_u(h, m));
    }
    {
        std::vector<bool> seen(base.q, false);
        bool bij = true;
        for (Elem y : g_table.images) {
            if (seen[y]) {
                bij = false;
                break;
            }
            seen[y] = true;
        }
        g_table.bijective = bij;
    }
    const bool subfield_ok = g_table.bijective && is_n_cycle_oracle(g_table, n);

    SubfieldEmbedding embed(base, ext);
    std::vector<Elem> h_ext(base.q - 1, 0);
    for (std::size_t j = 0; j < base_form.hcoeffs.size(); ++j)
        h_ext[j % (base.q - 1)] =
            ext.add(h_ext[j % (base.q - 1)], embed(base_form.hcoeffs[j]));

    LiftResult out;
    out.form = make_index_form(base_form.r, s_ext, std::move(h_ext), ext);
    out.valid = subfield_ok;
    out.diagnostics = subfield_ok ? "" : "x^r h(x)^m fails the n-cycle check over the base field";
    return out;
}

bool frobenius_lift_check(const SparsePoly& h, u64 n, const FieldCtx& ext,
                          Elem* outside_witness) {
    if (n == 0 || ext.m % n != 0)
        throw std::invalid_argument("frobenius_lift_check: n must divide the extension degree");
    u64 q = 1;
    for (std::uint32_t i = 0; i < ext.m / n; ++i) q *= ext.p;
    const u64 ell = (ext.q - 1) / (q - 1);
    const std::vector<Elem> subgroup = unity_subgroup(ell, ext);
    SubgroupIndex index(subgroup, ext);

    bool inside = true;
    Elem witness = 0;
    for (Elem y : subgroup) {
        const Elem hy = evaluate(h, y, ext);
        // h(y)^(q-1) must equal y^(1-q)
        const Elem lhs = ext.pow_u(hy, q - 1);
        const Elem rhs = ext.inv(ext.pow_u(y, q - 1));
        if (hy == 0 || lhs != rhs)
            throw IdentityPreconditionError(
                y, "frobenius_lift_check: h(y)^(q-1) = y^(1-q) fails at element " +
                       std::to_string(y));
        if (inside && ext.pow_u(hy, ell) != 1) {
            inside = false;
            witness = y;
        }
    }
    if (!inside && outside_witness) *outside_witness = witness;
    return inside;
}

}  // namespace ncycle
