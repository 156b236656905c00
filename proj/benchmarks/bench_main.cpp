#include <benchmark/benchmark.h>

#include <random>

#include "ncycle/constructor.hpp"
#include "ncycle/criteria.hpp"
#include "ncycle/families.hpp"
#include "ncycle/search.hpp"

using namespace ncycle;

namespace {

const FieldCtx& f4096() {
    static const FieldCtx ctx = make_field(2, 12);
    return ctx;
}

const FieldCtx& f4096_nolog() {
    static const FieldCtx ctx = make_field(2, 12, std::nullopt, LogTablePolicy::Never);
    return ctx;
}

const FieldCtx& f729() {
    static const FieldCtx ctx = make_field(3, 6);
    return ctx;
}

IndexForm even_q_form() {
    std::vector<Elem> h(65, 0);
    h[39] = h[26] = h[0] = 1;
    return make_index_form(1, 63, h, f4096());
}

void BM_field_mul_logtable(benchmark::State& state) {
    const FieldCtx& ctx = f4096();
    std::mt19937_64 rng(1);
    std::vector<Elem> xs(1024);
    for (auto& x : xs) x = static_cast<Elem>(rng() % ctx.q);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctx.mul(xs[i & 1023], xs[(i + 1) & 1023]));
        ++i;
    }
}
BENCHMARK(BM_field_mul_logtable);

void BM_field_mul_coordinates(benchmark::State& state) {
    const FieldCtx& ctx = f4096_nolog();
    std::mt19937_64 rng(1);
    std::vector<Elem> xs(1024);
    for (auto& x : xs) x = static_cast<Elem>(rng() % ctx.q);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctx.mul(xs[i & 1023], xs[(i + 1) & 1023]));
        ++i;
    }
}
BENCHMARK(BM_field_mul_coordinates);

void BM_field_pow(benchmark::State& state) {
    const FieldCtx& ctx = f729();
    std::mt19937_64 rng(2);
    std::size_t i = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctx.pow_u(static_cast<Elem>(1 + (i % (ctx.q - 1))), 2458));
        ++i;
    }
}
BENCHMARK(BM_field_pow);

void BM_to_table_gf4096(benchmark::State& state) {
    const IndexForm form = even_q_form();
    for (auto _ : state) {
        PermTable t = to_table(form, f4096());
        benchmark::DoNotOptimize(t.bijective);
    }
}
BENCHMARK(BM_to_table_gf4096);

void BM_oracle_triple_cycle_gf4096(benchmark::State& state) {
    const PermTable t = to_table(even_q_form(), f4096());
    for (auto _ : state) benchmark::DoNotOptimize(is_n_cycle_oracle(t, 3));
}
BENCHMARK(BM_oracle_triple_cycle_gf4096);

void BM_check_ncycle_gf4096(benchmark::State& state) {
    const IndexForm form = even_q_form();
    for (auto _ : state) benchmark::DoNotOptimize(check_ncycle(form, 3, f4096()).passed);
}
BENCHMARK(BM_check_ncycle_gf4096);

void BM_cyclotomic_construct(benchmark::State& state) {
    const FieldCtx& ctx = f4096();
    std::vector<u64> mvec(65, 0);
    for (u64 i = 0; i < 65; ++i) mvec[i] = i % 3;
    for (auto _ : state) {
        Constructed c = cyclotomic_identity(mvec, 1, 3, ctx);
        benchmark::DoNotOptimize(c.valid);
    }
}
BENCHMARK(BM_cyclotomic_construct);

void BM_search_gf13(benchmark::State& state) {
    const FieldCtx ctx = make_field(13, 1);
    SearchParams p;
    p.ell = 3;
    p.n = 2;
    for (auto _ : state) {
        SearchResult r = run_search(ctx, p);
        benchmark::DoNotOptimize(r.hits.size());
    }
}
BENCHMARK(BM_search_gf13);

}  // namespace

BENCHMARK_MAIN();
