#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncycle/criteria.hpp"
#include "ncycle/field.hpp"
#include "ncycle/permpoly.hpp"

namespace ncycle {

// Exhaustive sweep over x^r h(x^s) candidates with a fixed subgroup size ell:
// r runs over [r_lo, r_hi], the h value table runs over all assignments
// mu_ell -> GF(q)*. Hits are the candidates passing the analytic n-cycle
// criterion; every hit is re-verified against the exhaustive table before it
// is reported. Ordering is lexicographic in (r, h-values), independent of the
// worker count.
struct SearchParams {
    u64 ell = 1;
    u64 n = 2;
    u64 r_lo = 1;
    u64 r_hi = 0;  // 0 = q-1
    u64 budget = 100'000'000;  // max candidate evaluations
    unsigned threads = 1;
};

struct SearchHit {
    u64 r = 0;
    std::vector<Elem> hvals;  // multipliers on mu_ell in w-power order
    IndexForm form;           // interpolated coefficient form
    CycleStructure cycles;
    u64 min_order = 0;
};

struct SearchResult {
    std::vector<SearchHit> hits;
    u64 candidates = 0;        // candidates actually evaluated
    bool budget_exhausted = false;
};

SearchResult run_search(const FieldCtx& ctx, const SearchParams& params);

// ---------------------------------------------------------------------------
// Textual job description for the command-line tool. A JobSpec round-trips
// through its flag representation: parse_jobspec(spec.to_args()) == spec.
struct JobSpec {
    std::string command;  // verify | cycles | construct | family | search | info
    std::string field;
    std::optional<std::string> modulus;
    std::optional<std::string> poly;
    std::optional<u64> n;
    std::optional<std::string> family;
    std::vector<std::pair<std::string, std::string>> params;  // repeated --param k=v
    std::optional<u64> ell;
    std::optional<u64> r_lo, r_hi;
    std::string format = "text";  // text | jsonl
    std::optional<u64> budget;
    std::optional<unsigned> threads;

    std::vector<std::string> to_args() const;
    bool operator==(const JobSpec&) const = default;
};

// Throws std::invalid_argument with a usable message on malformed input.
JobSpec parse_jobspec(const std::vector<std::string>& args);

// Value of a --param key, if present.
std::optional<std::string> job_param(const JobSpec& job, const std::string& key);

}  // namespace ncycle
