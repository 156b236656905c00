#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncycle/criteria.hpp"
#include "ncycle/field.hpp"
#include "ncycle/permpoly.hpp"

namespace ncycle {

// ---------------------------------------------------------------------------
// Monomial-induced-map check: given h as a value table on mu_ell and a target
// induced map y -> a*y^v, decides the triple-cycle product condition
//   y^((r^3-1)/s) * h(y)^(r^2) * h(a*y^v)^r * h(a^(v+1)*y^(v^2)) = 1
// for every y in mu_ell.
//
// Integer-shaped preconditions (v^3 = 1 mod ell, a^(v^2+v+1) = 1,
// r^3 = 1 mod s, gcd(r, s) = 1) throw on violation. The pointwise identity
// h(y)^s = a*y^(v-r) is asserted on mu_ell; a failure returns false and
// reports the witness. A true return certifies x^r h(x^s) triple-cycle.
struct SingleCheckReport {
    bool precondition_ok = true;
    std::optional<Elem> precondition_witness;
    std::optional<Elem> condition_witness;
};
bool single_check(const std::vector<Elem>& hvals, Elem a, u64 v, u64 r, const FieldCtx& ctx,
                  SingleCheckReport* report = nullptr);

// ---------------------------------------------------------------------------
// Explicit triple-cycle families over quadratic extensions. Each builder
// validates its congruences (throwing with the failing congruence named),
// assembles h, re-verifies the product condition pointwise on the subgroup
// and the full n-cycle criterion, and reports the outcome.

struct FamilyResult {
    IndexForm form;
    bool verdict = false;    // product condition + criterion both pass
    std::string note;
};

// q a power of 3 with 1 + 3q + 2q^2 = 0 (mod q^3+1):
// h = 1 + x^(1+q) + x^(1-q^2) + x^(-q^2-q), exponents mod q^3+1,
// f = x h(x^(q^3-1)) over GF(q^6).
FamilyResult family_char3(u64 q, const FieldCtx& ctx6);

// q even with 5a = 0 (mod q+1): h = x^a + x^(aq) + 1 (exponents mod q+1),
// f = x h(x^(q-1)) over GF(q^2). Verified via h(x)^3 = 1 on mu_(q+1).
FamilyResult family_even_q(u64 q, u64 a, const FieldCtx& ctx2);

// q even, v^3 = 1 (mod q+1), a(q-1) = v-1 (mod q+1), plus
//   a(1+v+v^2) = 0,  a + v - v^2 + av^2 - av = 0,  av + v^2 + v - 2 = 0
// (all mod q+1): h = x^a + 1 + x^(1-v), f = x h(x^(q-1)) over GF(q^2).
// Verified via h(x) h(x^v) h(x^(v^2)) = 1 on mu_(q+1).
FamilyResult family_v_trinomial(u64 q, u64 a, u64 v, const FieldCtx& ctx2);

// ---------------------------------------------------------------------------
// Generic phi-shaped h builders over GF(q^2), checked pointwise on mu_(q+1).
// Variant A: h = phi(x) + phi(x)^q x^(1-v), needs v^3 = 1 (mod q+1); the
// certificate is h(x) h(x^v) h(x^(v^2)) = 1. Variant B: h = phi + phi^q + 1;
// the certificate is h(x)^3 = 1. A vanishing h reports false with witness.
enum class PhiVariant { A, B };
struct PhiFamilyVerdict {
    bool triple_cycle = false;
    std::optional<Elem> witness;
    std::string reason;
};
PhiFamilyVerdict generic_phi_families(const SparsePoly& phi, u64 v, PhiVariant variant,
                                      const FieldCtx& ctx);

// ---------------------------------------------------------------------------
// Index-2 binomials over odd q: f = ((a-b)/2) x^(s+r) + ((a+b)/2) x^r with
// s = (q-1)/2, so h(1) = a and h(-1) = b.
//
// The n-cycle conditions come in two shapes, one per permutation the induced
// map can realize on mu_2 (identity or the swap); the verdict evaluates the
// shape matching the map actually induced by (a, b, r). Taking a bare OR of
// the two shapes over-accepts: each shape certifies phi = 1 only against its
// own induced map.
struct BinomialParams {
    Elem a = 0;
    Elem b = 0;
    u64 r = 1;
    u64 n = 2;
};
enum class Mu2Action { identity, swap, collapse };
struct BinomialResult {
    IndexForm form;
    bool verdict = false;
    Mu2Action induced = Mu2Action::collapse;
    bool identity_shape = false;  // a^E = (-1)^t b^E = 1, E = sum r^i
    bool swap_shape = false;      // n even: a^O b^V = (-1)^t a^V b^O = 1
};
BinomialResult index2_binomial(const BinomialParams& p, const FieldCtx& ctx);

// ---------------------------------------------------------------------------
// Index-3 trinomials over q = 1 (mod 3): h is the quadratic through
// h(1) = a, h(w) = b, h(w^2) = c with w = beta^((q-1)/3), built by the
// explicit interpolation coefficients (denominators asserted nonzero).
//
// For n = 3 the verdict is exact: the induced map on mu_3 must be the
// identity or one of the two rotations, and the matching product conditions
// are evaluated (the reverse rotation has its own conditions, obtained from
// the forward ones by swapping b <-> c and w <-> w^2). For n != 3 the
// verdict is the identity-map sufficiency test: true certifies an n-cycle
// permutation, false certifies nothing.
struct TrinomialParams {
    Elem a = 0;
    Elem b = 0;
    Elem c = 0;
    u64 r = 1;
    u64 n = 3;
};
enum class Mu3Action { identity, rotate_fwd, rotate_rev, other };
struct TrinomialResult {
    IndexForm form;
    bool verdict = false;
    Mu3Action induced = Mu3Action::other;
};
TrinomialResult index3_trinomial(const TrinomialParams& p, const FieldCtx& ctx);

// ---------------------------------------------------------------------------
// Lifted families: the quadratic-extension families transported up one more
// extension. Validation is the subfield-side oracle plus the criterion over
// the extension; the full extension-field oracle runs only when the table
// fits the exhaustive budget (q <= 2^20), and the mode records which.
struct LiftedFamilyResult {
    IndexForm form;           // over the extension field
    bool valid = false;       // subfield oracle + criterion
    bool base_ok = false;     // subfield-side n-cycle oracle
    bool criterion_ok = false;
    std::optional<bool> full_oracle;  // set when the extension was exhaustively checked
    std::string mode;                 // "full" or "subgroup"
};

// h = x^(a(q-1)) + x^(aq(q-1)) + 1 over GF(q^4), f = x h(x^(q^2+1)).
LiftedFamilyResult lifted_family_even_q(u64 q, u64 a, const FieldCtx& base2,
                                        const FieldCtx& ext4);

// h with exponents ((1+q)(q^3-1) + 2(q^6-1))/3, ((1-q^2)(q^3-1) + 2(q^6-1))/3,
// (-(q^2+q)(q^3-1))/3 and 0, over GF(q^18), f = x h(x^((q^18-1)/(q^6-1))).
LiftedFamilyResult lifted_family_char3(u64 q, const FieldCtx& base6, const FieldCtx& ext18);

}  // namespace ncycle
