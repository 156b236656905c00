#include <doctest.h>

#include <random>

#include "ncycle/permpoly.hpp"
#include "ncycle/textio.hpp"
#include "test_util.hpp"

using namespace ncycle;
using namespace testutil;

namespace {

SparsePoly poly(const std::string& text, const FieldCtx& ctx) { return parse_poly(text, ctx); }

// per-point period by direct iteration; independent of the cycle traversal
std::map<u64, u64> cycle_counts_by_iteration(const PermTable& t) {
    std::map<u64, u64> point_period;
    for (u64 x = 0; x < t.size(); ++x) {
        u64 cur = t.images[x], k = 1;
        while (cur != x) {
            cur = t.images[cur];
            ++k;
        }
        ++point_period[k];
    }
    std::map<u64, u64> counts;  // length -> number of cycles
    for (auto [len, pts] : point_period) counts[len] = pts / len;
    return counts;
}

}  // namespace

TEST_CASE("evaluate") {
    const FieldCtx f7 = make_field(7, 1);
    const SparsePoly id = poly("x", f7);
    for (Elem x = 0; x < 7; ++x) CHECK(evaluate(id, x, f7) == x);

    // 6*1^4 + 3*1 = 9 = 2 in Z_7
    CHECK(evaluate(poly("6*x^4 + 3*x", f7), 1, f7) == (6 + 3) % 7);

    const FieldCtx f4096 = make_field(2, 12);
    CHECK(evaluate(poly("x^2458 + x^1639 + x", f4096), 0, f4096) == 0);
}

TEST_CASE("to_table and bijectivity") {
    const FieldCtx f5 = make_field(5, 1);
    PermTable ident = to_table(poly("x", f5), f5);
    CHECK(ident.bijective);
    CHECK(is_identity(ident));

    PermTable sq = to_table(poly("x^2", f5), f5);
    CHECK(!sq.bijective);  // 1 and 4 collide at 1

    const FieldCtx f729 = make_field(3, 6);
    CHECK(to_table(poly("x^521 + x^417 + x^105 + x", f729), f729).bijective);
}

TEST_CASE("index form evaluation and piecewise form") {
    const FieldCtx f7 = make_field(7, 1);
    // h == 1: all multipliers 1
    IndexForm triv = make_index_form(2, 3, {1, 0}, f7);
    for (auto [alpha, mult] : index_to_piecewise(triv, f7).branches) CHECK(mult == 1);

    // r=1, s=3 (ell=2), h = 6x + 3: multipliers (h(1), h(6)) = (2, 4)
    IndexForm f = make_index_form(1, 3, {3, 6}, f7);
    PiecewiseForm pw = index_to_piecewise(f, f7);
    REQUIRE(pw.branches.size() == 2);
    CHECK(pw.branches[0].first == 1);
    CHECK(pw.branches[0].second == (6 * 1 + 3) % 7);
    CHECK(pw.branches[1].first == 6);
    CHECK(pw.branches[1].second == (6 * 6 + 3) % 7);

    // GF(2^12), s=63: 65 branches, pointwise agreement with direct evaluation
    const FieldCtx f4096 = make_field(2, 12);
    std::vector<Elem> h(65, 0);
    h[39] = h[26] = h[0] = 1;
    IndexForm fam = make_index_form(1, 63, h, f4096);
    PiecewiseForm fam_pw = index_to_piecewise(fam, f4096);
    CHECK(fam_pw.branches.size() == 65);
    for (u64 x = 0; x < f4096.q; ++x)
        CHECK(evaluate(fam_pw, static_cast<Elem>(x), f4096) ==
              evaluate(fam, static_cast<Elem>(x), f4096));
}

TEST_CASE("piecewise agreement on random index forms") {
    std::mt19937_64 rng(23);
    for (const FieldCtx& ctx : {make_field(13, 1), make_field(3, 2)}) {
        std::uniform_int_distribution<u64> coeff(0, ctx.q - 1);
        for (u64 s : {1u, 2u, 4u}) {
            if ((ctx.q - 1) % s) continue;
            const u64 ell = (ctx.q - 1) / s;
            for (int it = 0; it < 10; ++it) {
                std::vector<Elem> h(ell);
                for (auto& c : h) c = static_cast<Elem>(coeff(rng));
                IndexForm f = make_index_form(1 + it % 5, s, h, ctx);
                PiecewiseForm pw = index_to_piecewise(f, ctx);
                SparsePoly ex = expand(f, ctx);
                for (u64 x = 0; x < ctx.q; ++x) {
                    const Elem direct = evaluate(f, static_cast<Elem>(x), ctx);
                    CHECK(evaluate(pw, static_cast<Elem>(x), ctx) == direct);
                    CHECK(evaluate(ex, static_cast<Elem>(x), ctx) == direct);
                }
            }
        }
    }
}

TEST_CASE("cycle structure") {
    const FieldCtx f5 = make_field(5, 1);
    CycleStructure ident = cycle_structure(identity_table(f5));
    CHECK(ident.counts == std::map<u64, u64>{{1, 5}});

    const FieldCtx f7 = make_field(7, 1);
    PermTable inv7 = to_table(poly("x^5", f7), f7);
    CHECK(cycle_structure(inv7).counts == cycle_counts_by_iteration(inv7));
    CHECK(cycle_structure(inv7).counts == std::map<u64, u64>{{1, 3}, {2, 2}});

    PermTable tri = to_table(poly("6*x^4 + 3*x", f7), f7);
    CHECK(cycle_structure(tri).counts == cycle_counts_by_iteration(tri));
    CHECK(cycle_structure(tri).counts == std::map<u64, u64>{{1, 1}, {3, 2}});

    PermTable sq = to_table(poly("x^2", f5), f5);
    CHECK_THROWS_AS(cycle_structure(sq), std::invalid_argument);
    CHECK_THROWS_AS(min_order(sq), std::invalid_argument);
}

TEST_CASE("min_order equals lcm of cycle lengths and direct iteration") {
    const FieldCtx f7 = make_field(7, 1);
    CHECK(min_order(identity_table(f7)) == 1);
    CHECK(min_order(to_table(poly("x^5", f7), f7)) == 2);
    CHECK(min_order(to_table(poly("6*x^4 + 3*x", f7), f7)) == 3);

    std::mt19937_64 rng(29);
    for (u64 q : {8u, 9u, 16u}) {
        for (int it = 0; it < 25; ++it) {
            PermTable t = random_permutation(q, rng);
            CHECK(min_order(t) == naive_min_order(t));
        }
    }
}

TEST_CASE("functional_power") {
    const FieldCtx f7 = make_field(7, 1);
    PermTable inv7 = to_table(poly("x^5", f7), f7);
    PermTable tri = to_table(poly("6*x^4 + 3*x", f7), f7);

    CHECK(is_identity(functional_power(tri, 0)));
    CHECK(is_identity(functional_power(inv7, 2)));
    CHECK(tables_equal(functional_power(tri, 2), functional_power(tri, -1)));
    CHECK(tables_equal(functional_power(tri, -1), inverse(tri)));

    // cycle-leaping vs plain repeated composition
    std::mt19937_64 rng(31);
    PermTable t = random_permutation(16, rng);
    PermTable acc = identity_table(make_field(2, 4));
    for (i64 k = 0; k <= 6; ++k) {
        CHECK(tables_equal(functional_power(t, k), acc));
        acc = compose(t, acc);
    }
    CHECK(tables_equal(functional_power(t, -3), inverse(functional_power(t, 3))));

    // non-bijective tables admit only positive powers
    const FieldCtx f5 = make_field(5, 1);
    PermTable sq = to_table(poly("x^2", f5), f5);
    CHECK_THROWS_AS(functional_power(sq, -1), std::invalid_argument);
    CHECK_THROWS_AS(functional_power(sq, 0), std::invalid_argument);
    PermTable sq2 = functional_power(sq, 2);
    for (u64 x = 0; x < 5; ++x) CHECK(sq2.images[x] == sq.images[sq.images[x]]);
}

TEST_CASE("min_order overflows loudly when the lcm leaves 64 bits") {
    // disjoint cycles with prime lengths 2, 3, ..., 59: the lcm is their
    // product, about 1.9e21 > 2^64
    const std::vector<u64> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
                                     31, 37, 41, 43, 47, 53, 59};
    u64 total = 0;
    for (u64 p : primes) total += p;
    PermTable t;
    t.images.resize(total);
    u64 base = 0;
    for (u64 p : primes) {
        for (u64 i = 0; i < p; ++i) t.images[base + i] = static_cast<Elem>(base + (i + 1) % p);
        base += p;
    }
    t.bijective = true;
    CHECK_THROWS_AS(min_order(t), std::overflow_error);
    CHECK(is_n_cycle_oracle(t, 59) == false);
}

TEST_CASE("is_n_cycle_oracle") {
    const FieldCtx f7 = make_field(7, 1);
    CHECK(is_n_cycle_oracle(identity_table(f7), 1));
    PermTable inv7 = to_table(poly("x^5", f7), f7);
    CHECK(!is_n_cycle_oracle(inv7, 3));
    CHECK(is_n_cycle_oracle(inv7, 2));

    const FieldCtx f4096 = make_field(2, 12);
    PermTable f1 = to_table(poly("x^2458 + x^1639 + x", f4096), f4096);
    REQUIRE(f1.bijective);
    CHECK(is_n_cycle_oracle(f1, 3));
    CHECK(tables_equal(functional_power(f1, 3), identity_table(f4096)));
}

TEST_CASE("derive transforms") {
    const FieldCtx f7 = make_field(7, 1);
    PermTable ident = identity_table(f7);
    PermTable scale3 = to_table(poly("3*x", f7), f7);
    CHECK(tables_equal(derive_conjugate(ident, scale3), ident));

    PermTable inv7 = to_table(poly("x^5", f7), f7);
    PermTable conj = derive_conjugate(inv7, scale3);
    CHECK(is_n_cycle_oracle(conj, 2));
    CHECK(cycle_structure(conj).counts == cycle_structure(inv7).counts);

    PermTable tri = to_table(poly("6*x^4 + 3*x", f7), f7);
    PermTable sq = derive_compose(tri, tri);  // self-commuting
    CHECK(is_n_cycle_oracle(sq, 3));

    // non-commuting pair: f = x+1, g = 2x over GF(5)
    const FieldCtx f5 = make_field(5, 1);
    PermTable shift = to_table(poly("x + 1", f5), f5);
    PermTable twice = to_table(poly("2*x", f5), f5);
    CHECK_THROWS_AS(derive_compose(shift, twice), std::invalid_argument);

    CHECK(is_n_cycle_oracle(derive_power(tri, 2), 3));
}

TEST_CASE("index decomposition") {
    const FieldCtx f7 = make_field(7, 1);
    auto f = index_decompose(poly("6*x^4 + 3*x", f7), f7);
    REQUIRE(f.has_value());
    CHECK(f->r == 1);
    CHECK(f->s == 3);
    CHECK(f->hcoeffs == std::vector<Elem>{3, 6});

    auto ident = index_decompose(poly("x", f7), f7);
    REQUIRE(ident.has_value());
    CHECK(ident->s == 6);  // minimal index 1
    CHECK(ident->hcoeffs == std::vector<Elem>{1});

    auto mono = index_decompose(poly("3*x^2", f7), f7);
    REQUIRE(mono.has_value());
    CHECK(mono->r == 2);
    CHECK(mono->ell() == 1);

    CHECK(!index_decompose(poly("x + 1", f7), f7).has_value());
    CHECK(!index_decompose(poly("0", f7), f7).has_value());

    // representative choice never changes the induced map: x^8 == x^2 on GF(7)
    auto a = index_decompose(poly("x^8", f7), f7);
    auto b = index_decompose(poly("x^2", f7), f7);
    REQUIRE(a.has_value());
    CHECK(a->r == b->r);
    CHECK(a->s == b->s);
    CHECK(a->hcoeffs == b->hcoeffs);
}

TEST_CASE("decompose-then-expand is pointwise faithful") {
    std::mt19937_64 rng(37);
    const FieldCtx ctx = make_field(13, 1);
    std::uniform_int_distribution<u64> coeff(0, 12), expo(1, 40);
    for (int it = 0; it < 50; ++it) {
        std::vector<std::pair<u64, Elem>> terms;
        for (int t = 0; t < 4; ++t) terms.emplace_back(expo(rng), static_cast<Elem>(coeff(rng)));
        SparsePoly f = make_poly(std::move(terms), ctx);
        auto form = index_decompose(f, ctx);
        if (!form) continue;
        for (u64 x = 0; x < ctx.q; ++x)
            CHECK(evaluate(*form, static_cast<Elem>(x), ctx) ==
                  evaluate(f, static_cast<Elem>(x), ctx));
    }
}

TEST_CASE("large tables are built by partitioned workers and stay correct") {
    // q = 2^17 crosses the threading threshold; q-1 is prime, so x^3 permutes
    const FieldCtx ctx = make_field(2, 17);
    SparsePoly cube = make_poly({{3, 1}}, ctx);
    PermTable t = to_table(cube, ctx);
    CHECK(t.bijective);
    std::mt19937_64 rng(101);
    for (int it = 0; it < 200; ++it) {
        const Elem x = static_cast<Elem>(rng() % ctx.q);
        CHECK(t.images[x] == evaluate(cube, x, ctx));
    }
}

TEST_CASE("index form validation") {
    const FieldCtx f7 = make_field(7, 1);
    CHECK_THROWS_AS(make_index_form(1, 4, {1, 1}, f7), std::invalid_argument);   // 4 does not divide 6
    CHECK_THROWS_AS(make_index_form(1, 3, {1, 1, 1}, f7), std::invalid_argument);  // wrong length
    CHECK_THROWS_AS(make_index_form(0, 3, {1, 1}, f7), std::invalid_argument);
}
