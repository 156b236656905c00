#include <doctest.h>

#include <set>

#include "ncycle/families.hpp"
#include "ncycle/modarith.hpp"
#include "ncycle/search.hpp"
#include "test_util.hpp"

using namespace ncycle;
using namespace testutil;

TEST_CASE("search GF(7), ell=2, n=3, r=1: exactly the cube-root binomials") {
    const FieldCtx f7 = make_field(7, 1);
    SearchParams p;
    p.ell = 2;
    p.n = 3;
    p.r_lo = p.r_hi = 1;
    SearchResult res = run_search(f7, p);
    CHECK(!res.budget_exhausted);
    CHECK(res.candidates == 36);
    REQUIRE(res.hits.size() == 9);
    for (const SearchHit& hit : res.hits) {
        // hits are exactly the (a, b) with a^3 = b^3 = 1
        CHECK(f7.pow_u(hit.hvals[0], 3) == 1);
        CHECK(f7.pow_u(hit.hvals[1], 3) == 1);
        // and each agrees with the binomial family verdict
        BinomialResult bin = index2_binomial({hit.hvals[0], hit.hvals[1], 1, 3}, f7);
        CHECK(bin.verdict);
    }
}

TEST_CASE("search GF(7), ell=1, n=2: involutory monomials c*x^r") {
    const FieldCtx f7 = make_field(7, 1);
    // the admissible exponents solve r^2 = 1 mod 6 with gcd(r, 6) = 1
    std::set<u64> expect_r;
    for (u64 r = 1; r <= 6; ++r)
        if (std::gcd(r, u64{6}) == 1 && (r * r) % 6 == 1) expect_r.insert(r);
    CHECK(expect_r == std::set<u64>{1, 5});

    SearchParams p;
    p.ell = 1;
    p.n = 2;
    SearchResult res = run_search(f7, p);
    std::set<u64> got_r;
    for (const SearchHit& hit : res.hits) got_r.insert(hit.r);
    CHECK(got_r == expect_r);
    // r=1 admits c in {1, 6}; r=5 admits every nonzero c (c^6 = 1)
    CHECK(res.hits.size() == 8);
    for (const SearchHit& hit : res.hits) {
        PermTable t = table_from_values(hit.r, hit.hvals, f7);
        CHECK(t.bijective);
        CHECK(is_n_cycle_oracle(t, 2));
    }
}

TEST_CASE("search GF(13), ell=3, n=2: every hit has an involutory induced map") {
    const FieldCtx f13 = make_field(13, 1);
    SearchParams p;
    p.ell = 3;
    p.n = 2;
    SearchResult res = run_search(f13, p);
    CHECK(!res.budget_exhausted);
    CHECK(res.hits.size() > 0);
    for (const SearchHit& hit : res.hits) {
        CHECK(necessary_g_ncycle(hit.form, 2, f13));
        CHECK(hit.min_order <= 2);
    }
}

TEST_CASE("search budget truncates deterministically") {
    const FieldCtx f7 = make_field(7, 1);
    SearchParams p;
    p.ell = 2;
    p.n = 3;
    p.r_lo = p.r_hi = 1;
    p.budget = 10;
    SearchResult res = run_search(f7, p);
    CHECK(res.budget_exhausted);
    CHECK(res.candidates == 10);

    // the evaluated prefix is canonical: hits are those of the full run that
    // fall within the first 10 candidates (a = 1, b in 1..6 then a = 2, ...)
    SearchParams full = p;
    full.budget = 100000;
    SearchResult all = run_search(f7, full);
    std::vector<std::vector<Elem>> expect;
    for (const SearchHit& hit : all.hits) {
        const u64 ordinal = (hit.hvals[0] - 1) * 6 + (hit.hvals[1] - 1);
        if (ordinal < 10) expect.push_back(hit.hvals);
    }
    REQUIRE(res.hits.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(res.hits[i].hvals == expect[i]);
}

TEST_CASE("search results are independent of the worker count") {
    const FieldCtx f13 = make_field(13, 1);
    SearchParams p;
    p.ell = 2;
    p.n = 2;
    SearchParams p4 = p;
    p4.threads = 4;
    SearchResult a = run_search(f13, p);
    SearchResult b = run_search(f13, p4);
    REQUIRE(a.hits.size() == b.hits.size());
    CHECK(a.candidates == b.candidates);
    for (std::size_t i = 0; i < a.hits.size(); ++i) {
        CHECK(a.hits[i].r == b.hits[i].r);
        CHECK(a.hits[i].hvals == b.hits[i].hvals);
        CHECK(a.hits[i].form.hcoeffs == b.hits[i].form.hcoeffs);
    }
}

TEST_CASE("search rejects bad parameters") {
    const FieldCtx f7 = make_field(7, 1);
    SearchParams p;
    p.ell = 4;  // does not divide 6
    CHECK_THROWS_AS(run_search(f7, p), std::invalid_argument);
    SearchParams p2;
    p2.ell = 2;
    p2.n = 2;
    p2.r_lo = 0;
    CHECK_THROWS_AS(run_search(f7, p2), std::invalid_argument);
}

TEST_CASE("every hit is criterion- and oracle-consistent") {
    const FieldCtx f9 = make_field(3, 2);
    SearchParams p;
    p.ell = 4;
    p.n = 2;
    SearchResult res = run_search(f9, p);
    CHECK(res.hits.size() > 0);
    for (const SearchHit& hit : res.hits) {
        CHECK(check_ncycle(hit.form, 2, f9).passed);
        PermTable t = to_table(hit.form, f9);
        REQUIRE(t.bijective);
        CHECK(is_n_cycle_oracle(t, 2));
        u64 total = 0;
        for (auto [len, cnt] : hit.cycles.counts) total += len * cnt;
        CHECK(total == f9.q);
    }
}
