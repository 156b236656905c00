#pragma once

#include <string>
#include <vector>

#include "ncycle/criteria.hpp"
#include "ncycle/field.hpp"
#include "ncycle/permpoly.hpp"

namespace ncycle {

// Target data for the cyclotomic construction: a rearrangement sigma of the
// subgroup indices {0, ..., ell-1} (the wanted induced map, w^i -> w^sigma(i))
// together with integer offsets mvec, one per index, each in [0, s-1].
struct GSpec {
    std::vector<std::uint32_t> sigma;
    std::vector<u64> mvec;

    u64 ell() const { return sigma.size(); }
};

// sigma must be a permutation whose n-th power is the identity and mvec must
// match its length. Throws std::invalid_argument otherwise.
void validate_gspec(const GSpec& spec, u64 n);

// Offsets reduced into [0, s-1]; offsets only ever enter exponents of the
// form ell*m_i, and ell*s = q-1, so representatives mod s induce the same h.
GSpec normalize_mvec(GSpec spec, u64 s);

// The admissibility congruences: r^n = 1 (mod s) and, for every i,
// sum_{k=0}^{n-1} r^(n-k-1) * mvec[sigma^k(i)] = 0 (mod s).
bool check_solution_congruences(const GSpec& spec, u64 r, u64 n, u64 s);

// A constructed form plus its admissibility flag. Inadmissible parameter
// choices still produce the form (they are useful negative instances), with
// valid = false and the reason recorded.
struct Constructed {
    IndexForm form;
    bool valid = false;
    std::string diagnostics;
};

// Builds h by interpolation through the targets h(w^i) = beta^(ell*m_i +
// sigma(i) - i*r) and returns x^r h(x^s) with s = (q-1)/ell. The construction
// realizes g(w^i) = w^sigma(i), and the result is an n-cycle permutation
// exactly when check_solution_congruences holds. Requires gcd(r, s) = 1 for a
// valid flag (the congruences already force it).
Constructed cyclotomic_construct(const GSpec& spec, u64 r, u64 n, const FieldCtx& ctx);

// Identity-map special case: h(w^i) = beta^(ell*m_i + i*(1-r)); n-cycle iff
// r^n = 1 (mod s) and (sum_k r^(n-k-1)) * m_i = 0 (mod s) for every i.
Constructed cyclotomic_identity(const std::vector<u64>& mvec, u64 r, u64 n, const FieldCtx& ctx);

// Unique polynomial of degree < #nodes through (nodes[i], values[i]), by
// Lagrange interpolation; exact over GF(q), never singular for distinct nodes.
std::vector<Elem> interpolate(const std::vector<Elem>& nodes, const std::vector<Elem>& values,
                              const FieldCtx& ctx);

// Field embedding GF(q) -> GF(q^m): coefficients of the base modulus are
// mapped through the prime field and the base generator's polynomial basis is
// sent over the smallest root of the base modulus in the extension.
class SubfieldEmbedding {
  public:
    SubfieldEmbedding(const FieldCtx& base, const FieldCtx& ext);
    Elem operator()(Elem base_elem) const { return map_[base_elem]; }

  private:
    std::vector<Elem> map_;
};

struct LiftResult {
    IndexForm form;  // over the extension field
    bool valid = false;
    std::string diagnostics;
};

// Lifts h (the coefficient vector of base_form, exponents taken mod q-1) to
// f(x) = x^r h(x^((q^m-1)/(q-1))) over GF(q^m). The lift is an n-cycle
// permutation exactly when x^r h(x)^m is one over GF(q); that side is checked
// by exhaustive table before emitting, and failures come back flagged.
// Requires gcd(q-1, m) = 1 and r^n = 1 (mod (q^m-1)/(q-1)); violations throw.
LiftResult lift_subfield(const IndexForm& base_form, u64 m, u64 n, const FieldCtx& base,
                         const FieldCtx& ext);

// Raised when the h(y)^(q-1) = y^(1-q) identity fails on the subgroup.
class IdentityPreconditionError : public std::domain_error {
  public:
    IdentityPreconditionError(Elem witness, std::string msg)
        : std::domain_error(std::move(msg)), witness_(witness) {}
    Elem witness() const { return witness_; }

  private:
    Elem witness_;
};

// For h over GF(q^n) satisfying h(y)^(q-1) = y^(1-q) on mu_ell with
// ell = (q^n-1)/(q-1): returns whether h maps mu_ell into itself, which is
// exactly when x^q h(x^(q-1)) is an n-cycle permutation of GF(q^n).
// The y-identity is asserted pointwise first; a violation throws
// IdentityPreconditionError with the witness. When the return is false,
// *outside_witness (if given) receives an element mapped outside mu_ell.
bool frobenius_lift_check(const SparsePoly& h, u64 n, const FieldCtx& ext,
                          Elem* outside_witness = nullptr);

}  // namespace ncycle
