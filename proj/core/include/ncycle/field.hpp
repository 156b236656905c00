#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ncycle {

// Canonical integer encoding of a field element: e = sum coords[i] * p^i,
// a bijection onto [0, q).
using Elem = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Controls construction of the discrete-log acceleration tables (exp/log of
// size q). They are optional; `Auto` builds them only for q <= 2^20, where
// the memory cost is negligible and dense sweeps benefit the most.
enum class LogTablePolicy { Auto, Always, Never };

// Immutable description of GF(p^m). Safe to share across threads; every
// operation below is a pure function of its arguments.
class FieldCtx {
  public:
    std::uint32_t p = 0;  // prime characteristic
    std::uint32_t m = 0;  // extension degree >= 1
    u64 q = 0;            // p^m
    // Monic irreducible modulus, length m+1, coefficients low-degree-first.
    std::vector<std::uint32_t> modulus;
    // Smallest-encoding generator of the multiplicative group.
    Elem beta = 0;
    // Distinct prime factors of q-1 (used for order checks).
    std::vector<u64> q1_factors;

    bool has_log_tables() const { return !exp_table_.empty(); }

    // --- element codec ---------------------------------------------------
    void decode(Elem e, std::uint32_t* coords) const;
    Elem encode(const std::uint32_t* coords) const;

    // --- arithmetic ------------------------------------------------------
    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;  // throws on zero
    // x^k for non-negative k; 0^0 = 1, 0^k = 0 for k > 0.
    Elem pow_u(Elem x, u64 k) const;
    // Discrete log base beta for nonzero x; only when log tables are built.
    u64 dlog(Elem x) const;
    Elem exp_beta(u64 k) const;  // beta^k, k reduced mod q-1

    // Multiplicative order of a nonzero element.
    u64 order(Elem x) const;

    std::string text() const;  // "p^m"

  private:
    friend FieldCtx make_field(std::uint32_t, std::uint32_t,
                               const std::optional<std::vector<std::uint32_t>>&,
                               LogTablePolicy);
    std::vector<Elem> exp_table_;           // k -> beta^k, size q-1
    std::vector<std::uint32_t> log_table_;  // elem -> k, size q (slot 0 unused)
};

// Builds GF(p^m). When no modulus is supplied, the default is the
// lexicographically smallest monic irreducible of degree m over Z_p,
// coefficients compared low-degree-first; the result is deterministic for
// fixed (p, m). A supplied modulus must be monic of degree m and irreducible.
FieldCtx make_field(std::uint32_t p, std::uint32_t m,
                    const std::optional<std::vector<std::uint32_t>>& modulus = std::nullopt,
                    LogTablePolicy logs = LogTablePolicy::Auto);

// x^k with the exponent taken mod (q-1) for nonzero x; for x = 0 requires
// k >= 0 and returns 0 (k > 0) or 1 (k = 0).
Elem field_pow(Elem x, i64 k, const FieldCtx& ctx);

// Smallest-encoding generator of the multiplicative group.
Elem find_primitive(const FieldCtx& ctx);

// The subgroup mu_ell = {x : x^ell = 1}, listed as (w^0, w^1, ..., w^{ell-1})
// with w = beta^((q-1)/ell). Requires ell | q-1.
std::vector<Elem> unity_subgroup(u64 ell, const FieldCtx& ctx);

// Irreducibility test for a monic polynomial over Z_p (dense coefficients,
// low-degree-first, length = degree+1).
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& f, std::uint32_t p);

}  // namespace ncycle
