#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ncycle/field.hpp"
#include "ncycle/permpoly.hpp"

namespace ncycle {

// Raised when h vanishes somewhere on mu_ell; carries the offending root of
// unity. A vanishing h makes x^r h(x^s) collapse a whole coset to zero, so
// no permutation question remains to be asked.
class HVanishesError : public std::domain_error {
  public:
    explicit HVanishesError(Elem witness)
        : std::domain_error("h vanishes on the subgroup at element " + std::to_string(witness)),
          witness_(witness) {}
    Elem witness() const { return witness_; }

  private:
    Elem witness_;
};

enum class FailureKind {
    none,
    not_permutation,  // gcd(r, s) != 1 or the induced map fails to permute
    congruence,       // r^n != 1 (mod s)
    h_vanishes,
    phi_witness,
};

struct CriterionVerdict {
    bool passed = false;
    FailureKind kind = FailureKind::none;
    std::optional<Elem> witness;  // subgroup element, for h_vanishes / phi_witness

    static CriterionVerdict pass() { return {true, FailureKind::none, std::nullopt}; }
    static CriterionVerdict fail(FailureKind k, std::optional<Elem> w = std::nullopt) {
        return {false, k, w};
    }
};

// h evaluated on mu_ell in w-power order: out[i] = h(w^i).
std::vector<Elem> h_values_on_subgroup(const IndexForm& f, const FieldCtx& ctx);

// The induced map g(y) = y^r * h(y)^s on mu_ell, returned as the image list
// (g(w^0), ..., g(w^{ell-1})). Throws HVanishesError if h has a root there.
// The images always land back in mu_ell: g(y)^ell = (y^ell)^r * h(y)^(q-1) = 1.
std::vector<Elem> induced_g(const IndexForm& f, const FieldCtx& ctx);

// gcd(r, s) = 1 and the induced map permutes mu_ell; equivalent to full-table
// bijectivity of f. A vanishing h reports as false.
bool check_permutation(const IndexForm& f, const FieldCtx& ctx);

// phi(y) = y^((r^n - 1)/s) * prod_{i=0}^{n-1} h(g^(i)(y))^(r^(n-i-1)).
// Requires y in mu_ell, r^n = 1 (mod s), and h nonvanishing on mu_ell.
Elem phi(Elem y, const IndexForm& f, u64 n, const FieldCtx& ctx);

// Full analytic test: f is an n-cycle permutation iff gcd(r, s) = 1,
// r^n = 1 (mod s), h does not vanish on mu_ell, and phi(y) = 1 for every
// y in mu_ell. Failures come back as verdicts, never exceptions; the phi
// witness is the first offender in w-power order.
CriterionVerdict check_ncycle(const IndexForm& f, u64 n, const FieldCtx& ctx);

// Necessary condition: the n-th functional power of the induced map is the
// identity on mu_ell. Necessary but not sufficient for f itself.
bool necessary_g_ncycle(const IndexForm& f, u64 n, const FieldCtx& ctx);

// Index of each mu_ell element in w-power order; lookups by element value.
class SubgroupIndex {
  public:
    SubgroupIndex(const std::vector<Elem>& subgroup, const FieldCtx& ctx);
    u64 index_of(Elem y) const;  // throws std::invalid_argument if absent

  private:
    const FieldCtx* ctx_;
    u64 ell_;
    u64 s_;
    std::vector<std::pair<Elem, std::uint32_t>> sorted_;  // fallback without log tables
};

}  // namespace ncycle
