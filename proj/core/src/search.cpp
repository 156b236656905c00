#include "ncycle/search.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <numeric>

#include "ncycle/constructor.hpp"
#include "ncycle/modarith.hpp"

namespace ncycle {

using modarith::mulmod;
using modarith::powmod;

namespace {

// Per-r precomputation for the criterion sweep over value tables.
struct RContext {
    u64 r = 0;
    u64 t = 0;                 // (r^n - 1)/s mod q-1
    std::vector<u64> rexp;     // r^(n-i-1) mod q-1
    std::vector<Elem> omega_t; // w^(j*t) for each subgroup index j
};

// Criterion specialized to a value table: builds the induced index map and
// sweeps phi. hvals entries must all be nonzero (the enumeration guarantees
// it).
bool value_table_passes(const std::vector<Elem>& hvals, const RContext& rc, u64 n, u64 s,
                        const std::vector<Elem>& subgroup, const SubgroupIndex& index,
                        const FieldCtx& ctx) {
    const u64 ell = hvals.size();
    const u64 r_mod = rc.r % ell;
    thread_local std::vector<std::uint32_t> gidx;
    gidx.resize(ell);
    for (u64 i = 0; i < ell; ++i) {
        const Elem img = ctx.mul(subgroup[(i * r_mod) % ell], ctx.pow_u(hvals[i], s));
        gidx[i] = static_cast<std::uint32_t>(index.index_of(img));
    }
    for (u64 j = 0; j < ell; ++j) {
        Elem acc = rc.omega_t[j];
        u64 cur = j;
        for (u64 i = 0; i < n; ++i) {
            acc = ctx.mul(acc, ctx.pow_u(hvals[cur], rc.rexp[i]));
            cur = gidx[cur];
        }
        if (acc != 1) return false;
    }
    return true;
}

// Exhaustive re-verification of a criterion hit, plus the reporting payload.
std::optional<SearchHit> verify_hit(u64 r, const std::vector<Elem>& hvals, u64 s,
                                    const std::vector<Elem>& subgroup, u64 n,
                                    const FieldCtx& ctx) {
    const u64 ell = hvals.size();
    PermTable t;
    t.images.resize(ctx.q);
    t.images[0] = 0;
    if (ctx.has_log_tables()) {
        const u64 q1 = ctx.q - 1;
        for (u64 k = 0; k < q1; ++k) {
            const Elem x = ctx.exp_beta(k);
            const Elem mu = hvals[k % ell];
            t.images[x] = ctx.exp_beta((ctx.dlog(mu) + mulmod(k, r, q1)) % q1);
        }
    } else {
        for (u64 x = 1; x < ctx.q; ++x) {
            const Elem y = ctx.pow_u(static_cast<Elem>(x), s);
            Elem mu = 0;
            for (u64 i = 0; i < ell; ++i)
                if (subgroup[i] == y) {
                    mu = hvals[i];
                    break;
                }
            t.images[x] = ctx.mul(mu, ctx.pow_u(static_cast<Elem>(x), r));
        }
    }
    std::vector<bool> seen(ctx.q, false);
    t.bijective = true;
    for (Elem y : t.images) {
        if (seen[y]) {
            t.bijective = false;
            break;
        }
        seen[y] = true;
    }
    if (!t.bijective || !is_n_cycle_oracle(t, n)) return std::nullopt;

    SearchHit hit;
    hit.r = r;
    hit.hvals = hvals;
    hit.form = make_index_form(r, s, interpolate(subgroup, hvals, ctx), ctx);
    hit.cycles = cycle_structure(t);
    hit.min_order = min_order(t);
    return hit;
}

// One stratum = a fixed rank of the first h coordinate; the remaining
// coordinates run a lexicographic odometer. Stops at `quota` candidates.
struct StratumResult {
    std::vector<SearchHit> hits;
    u64 evaluated = 0;
    bool completed = false;  // odometer ran to the end
};

StratumResult sweep_stratum(const RContext& rc, u64 first, u64 quota, u64 n, u64 s,
                            const std::vector<Elem>& subgroup, const SubgroupIndex& index,
                            const FieldCtx& ctx) {
    const u64 ell = subgroup.size();
    const u64 q1 = ctx.q - 1;
    StratumResult out;
    std::vector<Elem> hvals(ell);
    std::vector<u64> rank(ell, 0);  // hvals[i] has encoding rank[i] + 1
    rank[0] = first;
    while (true) {
        if (out.evaluated == quota) return out;  // completed stays false
        for (u64 i = 0; i < ell; ++i) hvals[i] = static_cast<Elem>(rank[i] + 1);
        ++out.evaluated;
        if (value_table_passes(hvals, rc, n, s, subgroup, index, ctx)) {
            if (auto hit = verify_hit(rc.r, hvals, s, subgroup, n, ctx))
                out.hits.push_back(std::move(*hit));
        }
        bool carry = true;
        for (u64 i = ell; i-- > 1;) {
            if (++rank[i] < q1) {
                carry = false;
                break;
            }
            rank[i] = 0;
        }
        if (carry) {
            out.completed = true;
            return out;
        }
    }
}

}  // namespace

SearchResult run_search(const FieldCtx& ctx, const SearchParams& params) {
    const u64 q1 = ctx.q - 1;
    if (params.ell == 0 || q1 % params.ell != 0)
        throw std::invalid_argument("run_search: ell must divide q-1");
    if (params.n == 0) throw std::invalid_argument("run_search: n must be >= 1");
    const u64 ell = params.ell;
    const u64 s = q1 / ell;
    const u64 r_hi = params.r_hi == 0 ? q1 : params.r_hi;
    if (params.r_lo == 0 || params.r_lo > r_hi)
        throw std::invalid_argument("run_search: empty r range");

    const std::vector<Elem> subgroup = unity_subgroup(ell, ctx);
    const SubgroupIndex index(subgroup, ctx);

    // candidates per first-coordinate stratum: (q-1)^(ell-1), saturating
    u64 per_first = 1;
    for (u64 i = 1; i < ell; ++i) {
        if (per_first > std::numeric_limits<u64>::max() / q1) {
            per_first = std::numeric_limits<u64>::max();
            break;
        }
        per_first *= q1;
    }

    SearchResult result;
    u64 remaining = params.budget;
    const unsigned workers = std::max(1u, params.threads);

    for (u64 r = params.r_lo; r <= r_hi; ++r) {
        if (std::gcd(r, s) != 1) continue;
        if (powmod(r, params.n, s) != 1 % s) continue;

        RContext rc;
        rc.r = r;
        rc.t = modarith::pow_minus_one_over(r, params.n, s, q1);
        rc.rexp.resize(params.n);
        for (u64 i = 0; i < params.n; ++i) rc.rexp[i] = powmod(r, params.n - i - 1, q1);
        rc.omega_t.resize(ell);
        for (u64 j = 0; j < ell; ++j) rc.omega_t[j] = ctx.pow_u(subgroup[j], rc.t);

        // Strata are independent; quotas are assigned in canonical order
        // before launching, so the evaluated candidate set (the first
        // `budget` candidates) does not depend on the worker count.
        u64 first = 0;
        while (first < q1) {
            if (remaining == 0) {
                result.budget_exhausted = true;
                return result;
            }
            std::vector<std::pair<u64, u64>> plan;  // (first, quota)
            u64 rem_plan = remaining;
            while (plan.size() < workers && first < q1 && rem_plan > 0) {
                const u64 quota = std::min(per_first, rem_plan);
                plan.emplace_back(first, quota);
                rem_plan -= quota;
                ++first;
            }
            std::vector<std::future<StratumResult>> batch;
            batch.reserve(plan.size());
            for (auto [f, quota] : plan)
                batch.push_back(std::async(
                    workers == 1 ? std::launch::deferred : std::launch::async,
                    [&, f = f, quota = quota] {
                        return sweep_stratum(rc, f, quota, params.n, s, subgroup, index, ctx);
                    }));
            for (auto& fut : batch) {
                StratumResult sr = fut.get();
                result.candidates += sr.evaluated;
                remaining -= sr.evaluated;
                for (auto& h : sr.hits) result.hits.push_back(std::move(h));
                if (!sr.completed) {
                    result.budget_exhausted = true;
                    return result;
                }
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

namespace {

u64 to_u64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        u64 v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("invalid value for ") + what + ": '" + s + "'");
    }
}

}  // namespace

std::vector<std::string> JobSpec::to_args() const {
    std::vector<std::string> a;
    a.push_back(command);
    if (!field.empty()) {
        a.push_back("--field");
        a.push_back(field);
    }
    if (modulus) {
        a.push_back("--modulus");
        a.push_back(*modulus);
    }
    if (poly) {
        a.push_back("--poly");
        a.push_back(*poly);
    }
    if (n) {
        a.push_back("--n");
        a.push_back(std::to_string(*n));
    }
    if (family) {
        a.push_back("--family");
        a.push_back(*family);
    }
    for (const auto& [k, v] : params) {
        a.push_back("--param");
        a.push_back(k + "=" + v);
    }
    if (ell) {
        a.push_back("--ell");
        a.push_back(std::to_string(*ell));
    }
    if (r_lo) {
        a.push_back("--r-range");
        a.push_back(std::to_string(*r_lo) + ".." + std::to_string(r_hi.value_or(*r_lo)));
    }
    a.push_back("--format");
    a.push_back(format);
    if (budget) {
        a.push_back("--budget");
        a.push_back(std::to_string(*budget));
    }
    if (threads) {
        a.push_back("--threads");
        a.push_back(std::to_string(*threads));
    }
    return a;
}

JobSpec parse_jobspec(const std::vector<std::string>& args) {
    if (args.empty())
        throw std::invalid_argument(
            "usage: ncycle <verify|cycles|construct|family|search|info> [flags]");
    JobSpec job;
    job.command = args[0];
    static const char* commands[] = {"verify", "cycles", "construct", "family", "search", "info"};
    if (std::find_if(std::begin(commands), std::end(commands),
                     [&](const char* c) { return job.command == c; }) == std::end(commands))
        throw std::invalid_argument("unknown command '" + job.command + "'");

    auto need_value = [&](std::size_t& i, const std::string& flag) -> const std::string& {
        if (i + 1 >= args.size())
            throw std::invalid_argument("flag " + flag + " expects a value");
        return args[++i];
    };
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& f = args[i];
        if (f == "--field") job.field = need_value(i, f);
        else if (f == "--modulus") job.modulus = need_value(i, f);
        else if (f == "--poly") job.poly = need_value(i, f);
        else if (f == "--n") job.n = to_u64(need_value(i, f), "--n");
        else if (f == "--family") job.family = need_value(i, f);
        else if (f == "--param") {
            const std::string& kv = need_value(i, f);
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
            job.params.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        } else if (f == "--ell") job.ell = to_u64(need_value(i, f), "--ell");
        else if (f == "--r-range") {
            const std::string& v = need_value(i, f);
            const auto dots = v.find("..");
            if (dots == std::string::npos) {
                job.r_lo = job.r_hi = to_u64(v, "--r-range");
            } else {
                job.r_lo = to_u64(v.substr(0, dots), "--r-range");
                job.r_hi = to_u64(v.substr(dots + 2), "--r-range");
            }
        } else if (f == "--format") {
            job.format = need_value(i, f);
            if (job.format != "text" && job.format != "jsonl")
                throw std::invalid_argument("--format must be text or jsonl");
        } else if (f == "--budget") job.budget = to_u64(need_value(i, f), "--budget");
        else if (f == "--threads")
            job.threads = static_cast<unsigned>(to_u64(need_value(i, f), "--threads"));
        else
            throw std::invalid_argument("unknown flag '" + f + "'");
    }
    return job;
}

std::optional<std::string> job_param(const JobSpec& job, const std::string& key) {
    for (const auto& [k, v] : job.params)
        if (k == key) return v;
    return std::nullopt;
}

}  // namespace ncycle
