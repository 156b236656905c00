#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncycle/field.hpp"

namespace ncycle {

// Polynomial over GF(q) as a sparse term list, exponents strictly increasing,
// no zero coefficients. The empty list is the zero polynomial.
struct SparsePoly {
    std::vector<std::pair<u64, Elem>> terms;  // (exponent, coefficient)

    bool is_zero() const { return terms.empty(); }
};

// Normalizes an arbitrary term list: merges duplicate exponents (coefficients
// added in the field), drops zero coefficients, sorts ascending.
SparsePoly make_poly(std::vector<std::pair<u64, Elem>> terms, const FieldCtx& ctx);

// f(x) = x^r * h(x^s) with h stored as a dense coefficient vector of length
// ell = (q-1)/s, i.e. h reduced mod x^ell - 1.
struct IndexForm {
    u64 r = 1;
    u64 s = 1;
    std::vector<Elem> hcoeffs;

    u64 ell() const { return hcoeffs.size(); }
};

// Validates s | q-1, s * hcoeffs.size() == q-1, r >= 1.
IndexForm make_index_form(u64 r, u64 s, std::vector<Elem> hcoeffs, const FieldCtx& ctx);

// Branch table of the cyclotomic piecewise map: x in S_{alpha_i} goes to
// multiplier_i * x^r, 0 goes to 0. Branches listed in w-power order, so
// branches[i].first == w^i.
struct PiecewiseForm {
    u64 r = 1;
    std::vector<std::pair<Elem, Elem>> branches;  // (alpha_i, h(alpha_i))
};

// Dense image array over all q encoded elements.
struct PermTable {
    std::vector<Elem> images;
    bool bijective = false;

    u64 size() const { return images.size(); }
};

// Multiset of cycle lengths; sum of length * multiplicity equals q.
struct CycleStructure {
    std::map<u64, u64> counts;
};

Elem evaluate(const SparsePoly& f, Elem x, const FieldCtx& ctx);
Elem evaluate(const IndexForm& f, Elem x, const FieldCtx& ctx);
Elem evaluate(const PiecewiseForm& f, Elem x, const FieldCtx& ctx);

// Full image table over all q elements; flags bijectivity by duplicate scan.
// Large domains are partitioned across threads (the slots are independent).
PermTable to_table(const SparsePoly& f, const FieldCtx& ctx);
PermTable to_table(const IndexForm& f, const FieldCtx& ctx);
PermTable identity_table(const FieldCtx& ctx);

PiecewiseForm index_to_piecewise(const IndexForm& f, const FieldCtx& ctx);

// x^r * h(x^s) expanded to a sparse polynomial; exponents of nonconstant
// terms are normalized into [1, q-1], which never changes the induced map.
SparsePoly expand(const IndexForm& f, const FieldCtx& ctx);

// Canonical minimal-index decomposition of f with f(0) = 0: r is the lowest
// exponent, s = gcd(q-1, all exponent differences), ell = (q-1)/s. Returns
// nullopt for the zero polynomial or when a constant term is present.
std::optional<IndexForm> index_decompose(const SparsePoly& f, const FieldCtx& ctx);

CycleStructure cycle_structure(const PermTable& t);  // requires bijective

// lcm of all cycle lengths: the least n with the n-th functional power equal
// to the identity. Throws std::overflow_error if the lcm exceeds 64 bits.
u64 min_order(const PermTable& t);

// k-fold composition; k = 0 gives the identity, negative k inverse powers.
// Bijective tables use cycle-leaping (O(q) independent of k); non-bijective
// tables admit only k >= 0.
PermTable functional_power(const PermTable& t, i64 k);

// True iff every cycle length divides n, equivalently the n-th functional
// power is the identity. Short-circuits on the first offending cycle.
bool is_n_cycle_oracle(const PermTable& t, u64 n);

// compose(f, g)[x] = f[g[x]].
PermTable compose(const PermTable& f, const PermTable& g);
PermTable inverse(const PermTable& t);

// Transforms that preserve the n-cycle property.
PermTable derive_power(const PermTable& t, i64 k);
PermTable derive_conjugate(const PermTable& t, const PermTable& g);  // g o t o g^-1
// Composition with a commuting n-cycle partner; throws if f o g != g o f.
PermTable derive_compose(const PermTable& t, const PermTable& g);

}  // namespace ncycle
