#include <doctest.h>

#include <numeric>
#include <random>

#include "ncycle/families.hpp"
#include "ncycle/textio.hpp"
#include "test_util.hpp"

using namespace ncycle;
using namespace testutil;

TEST_CASE("single_check") {
    const FieldCtx f7 = make_field(7, 1);
    // h == 1 on mu_2 (s=3), a=1, v=1, r=1
    CHECK(single_check({1, 1}, 1, 1, 1, f7));
    // h values (2, 4): h(y)^3 = 1 = a*y^0 pointwise, and 2^3 = 4^3 = 1
    CHECK(single_check({2, 4}, 1, 1, 1, f7));
    // h(1) = 3 breaks the shape identity: 3^3 = 6 != 1; witness is y = 1
    SingleCheckReport rep;
    CHECK(!single_check({3, 4}, 1, 1, 1, f7, &rep));
    CHECK(!rep.precondition_ok);
    CHECK(rep.precondition_witness == 1);
    // structural misuse throws
    CHECK_THROWS_AS(single_check({1, 1, 1}, 1, 2, 1, f7), std::invalid_argument);  // v^3 != 1 mod 3
}

TEST_CASE("char-3 quadrinomial family at q = 3") {
    const FieldCtx f729 = make_field(3, 6);
    FamilyResult fam = family_char3(3, f729);
    CHECK(fam.verdict);
    CHECK(fam.form.r == 1);
    CHECK(fam.form.s == 26);
    REQUIRE(fam.form.ell() == 28);
    std::vector<u64> nonzero;
    for (u64 j = 0; j < 28; ++j)
        if (fam.form.hcoeffs[j]) {
            CHECK(fam.form.hcoeffs[j] == 1);
            nonzero.push_back(j);
        }
    CHECK(nonzero == std::vector<u64>{0, 4, 16, 20});  // x^20 + x^16 + x^4 + 1
    CHECK(print_poly(expand(fam.form, f729)) == "x^521 + x^417 + x^105 + x");

    PermTable t = to_table(fam.form, f729);
    REQUIRE(t.bijective);
    CHECK(is_n_cycle_oracle(t, 3));

    // q = 9 fails the congruence: 1 + 27 + 162 = 190 != 0 mod 730
    CHECK((1 + 3 * 9 + 2 * 81) % (9 * 9 * 9 + 1) != 0);
    CHECK_THROWS_AS(family_char3(9, make_field(3, 12, std::nullopt, LogTablePolicy::Never)),
                    std::invalid_argument);
}

TEST_CASE("even-q trinomial family") {
    const FieldCtx f4096 = make_field(2, 12);
    FamilyResult f1 = family_even_q(64, 26, f4096);
    CHECK(f1.verdict);
    CHECK(print_poly(expand(f1.form, f4096)) == "x^2458 + x^1639 + x");

    FamilyResult f2 = family_even_q(64, 13, f4096);
    CHECK(f2.verdict);
    CHECK(print_poly(expand(f2.form, f4096)) == "x^3277 + x^820 + x");

    const FieldCtx f16 = make_field(2, 4);
    FamilyResult small = family_even_q(4, 1, f16);
    CHECK(small.verdict);
    PermTable t = to_table(small.form, f16);
    REQUIRE(t.bijective);
    CHECK(is_n_cycle_oracle(t, 3));

    CHECK_THROWS_AS(family_even_q(8, 1, make_field(2, 6)), std::invalid_argument);  // 5 != 0 mod 9
    CHECK_THROWS_AS(family_even_q(7, 1, make_field(2, 6)), std::invalid_argument);  // q not a 2-power
}

TEST_CASE("v-shaped trinomial family") {
    const FieldCtx f4096 = make_field(2, 12);
    FamilyResult f1 = family_v_trinomial(64, 35, 61, f4096);
    CHECK(f1.verdict);
    CHECK(print_poly(expand(f1.form, f4096)) == "x^2206 + x^316 + x");

    // (a, v) = (25, 16): the av + v^2 + v - 2 companion congruence fails
    // (670 = 20 mod 65), yet the product condition holds and the polynomial
    // is a genuine triple-cycle; the builder reports the congruence and
    // certifies pointwise.
    FamilyResult f2 = family_v_trinomial(64, 25, 16, f4096);
    CHECK(f2.verdict);
    CHECK(print_poly(expand(f2.form, f4096)) == "x^3151 + x^1576 + x");
    CHECK(f2.note.find("av + v^2 + v - 2") != std::string::npos);
    CHECK(f1.note.find("companion congruences hold") != std::string::npos);
    PermTable t2 = to_table(f2.form, f4096);
    REQUIRE(t2.bijective);
    CHECK(is_n_cycle_oracle(t2, 3));

    CHECK_THROWS_AS(family_v_trinomial(64, 35, 60, f4096), std::invalid_argument);
}

TEST_CASE("generic phi-shaped families") {
    // phi == 0, variant B: h == 1, trivially a triple-cycle certificate
    const FieldCtx f64 = make_field(2, 6);
    CHECK(generic_phi_families(SparsePoly{}, 1, PhiVariant::B, f64).triple_cycle);

    // the char-3 frame: phi = 1 + x^4, v = 9 over GF(3^6)
    const FieldCtx f729 = make_field(3, 6);
    SparsePoly phi36 = parse_poly("x^4 + 1", f729);
    CHECK(generic_phi_families(phi36, 9, PhiVariant::A, f729).triple_cycle);

    // phi = x with 5*1 != 0 mod 9 over GF(64): the cube condition fails
    PhiFamilyVerdict bad = generic_phi_families(parse_poly("x", f64), 1, PhiVariant::B, f64);
    CHECK(!bad.triple_cycle);
    CHECK(bad.witness.has_value());
}

TEST_CASE("index-2 binomials: reference instances") {
    const FieldCtx f7 = make_field(7, 1);

    // a = b = 1: f = x, an n-cycle for every n
    for (u64 n : {1u, 2u, 3u, 4u, 5u}) {
        BinomialResult r = index2_binomial({1, 1, 1, n}, f7);
        CHECK(r.verdict);
        CHECK(print_poly(expand(r.form, f7)) == "x");
    }

    // (a, b, r) = (2, 4, 1) with n = 3: the b = a^2, a^3 = 1 instance
    BinomialResult tri = index2_binomial({2, 4, 1, 3}, f7);
    CHECK(tri.verdict);
    CHECK(tri.induced == Mu2Action::identity);
    CHECK(print_poly(expand(tri.form, f7)) == "6*x^4 + 3*x");
    PermTable t = to_table(tri.form, f7);
    CHECK(cycle_structure(t).counts == std::map<u64, u64>{{1, 1}, {3, 2}});

    // same (a, b, r) with n = 2: the swap-shape algebra holds, but the induced
    // map is the identity, so the resolved verdict is false -- and the table
    // really is a triple-cycle, not an involution
    BinomialResult not_inv = index2_binomial({2, 4, 1, 2}, f7);
    CHECK(!not_inv.verdict);
    CHECK(not_inv.induced == Mu2Action::identity);
    CHECK(not_inv.swap_shape);       // the bare disjunction would over-accept here
    CHECK(!not_inv.identity_shape);
    CHECK(!is_n_cycle_oracle(t, 2));

    CHECK_THROWS_AS(index2_binomial({1, 1, 1, 2}, make_field(2, 4)), std::invalid_argument);
}

TEST_CASE("index-2 binomials match the oracle exhaustively over GF(7)") {
    const FieldCtx f7 = make_field(7, 1);
    for (u64 n : {2u, 3u, 4u})
        for (u64 r = 1; r <= 6; ++r) {
            if (std::gcd(r, u64{3}) != 1) continue;
            for (Elem a = 0; a < 7; ++a)
                for (Elem b = 0; b < 7; ++b) {
                    BinomialResult res = index2_binomial({a, b, r, n}, f7);
                    PermTable t = to_table(res.form, f7);
                    CHECK(res.verdict == (t.bijective && is_n_cycle_oracle(t, n)));
                }
        }
}

TEST_CASE("shape verdicts coincide with the general criterion for any n") {
    std::mt19937_64 rng(103);
    for (const FieldCtx& ctx : {make_field(7, 1), make_field(11, 1), make_field(13, 1)}) {
        std::uniform_int_distribution<u64> el(0, ctx.q - 1), rr(1, 3 * ctx.q), nn(1, 8);
        for (int it = 0; it < 600; ++it) {
            BinomialParams p{static_cast<Elem>(el(rng)), static_cast<Elem>(el(rng)), rr(rng),
                             nn(rng)};
            BinomialResult res = index2_binomial(p, ctx);
            CHECK(res.verdict == check_ncycle(res.form, p.n, ctx).passed);
        }
        if ((ctx.q - 1) % 3 != 0) continue;
        for (int it = 0; it < 600; ++it) {
            TrinomialParams p{static_cast<Elem>(el(rng)), static_cast<Elem>(el(rng)),
                              static_cast<Elem>(el(rng)), rr(rng), 3};
            TrinomialResult res = index3_trinomial(p, ctx);
            CHECK(res.verdict == check_ncycle(res.form, 3, ctx).passed);
        }
    }
}

TEST_CASE("index-3 trinomials: reference instances") {
    const FieldCtx f7 = make_field(7, 1);
    const FieldCtx f13 = make_field(13, 1);

    TrinomialResult ident = index3_trinomial({1, 1, 1, 1, 3}, f7);
    CHECK(ident.verdict);
    CHECK(print_poly(expand(ident.form, f7)) == "x");

    // abc = 1 with a non-identity induced rotation: (2, 2, 2) over GF(7)
    TrinomialResult rot = index3_trinomial({2, 2, 2, 1, 3}, f7);
    CHECK(rot.verdict);
    CHECK(rot.induced == Mu3Action::rotate_rev);
    PermTable t = to_table(rot.form, f7);
    REQUIRE(t.bijective);
    CHECK(is_n_cycle_oracle(t, 3));

    // abc = 1 members where the induced map is the identity but a^3 != 1:
    // not triple-cycles, and the verdict agrees
    TrinomialResult c1 = index3_trinomial({6, 1, 6, 1, 3}, f7);
    CHECK(c1.induced == Mu3Action::identity);
    CHECK(!c1.verdict);
    CHECK(!is_n_cycle_oracle(to_table(c1.form, f7), 3));

    TrinomialResult c2 = index3_trinomial({5, 5, 12, 1, 3}, f13);
    CHECK(c2.induced == Mu3Action::identity);
    CHECK(!c2.verdict);
    PermTable t2 = to_table(c2.form, f13);
    REQUIRE(t2.bijective);
    CHECK(!is_n_cycle_oracle(t2, 3));
    CHECK(min_order(t2) == 4);  // contains a 4-cycle

    // abc = 1 with a transposition induced map: not even mu_3-compatible
    TrinomialResult c3 = index3_trinomial({1, 2, 7, 1, 3}, f13);
    CHECK(c3.induced == Mu3Action::other);
    CHECK(!c3.verdict);

    // interpolation targets: h(1) = a, h(w) = b, h(w^2) = c
    const std::vector<Elem> mu3 = unity_subgroup(3, f13);
    TrinomialResult gen = index3_trinomial({7, 11, 3, 2, 3}, f13);
    auto h_at = [&](Elem x) {
        Elem acc = 0;
        for (u64 j = 3; j-- > 0;) acc = f13.add(f13.mul(acc, x), gen.form.hcoeffs[j]);
        return acc;
    };
    CHECK(h_at(1) == 7);
    CHECK(h_at(mu3[1]) == 11);
    CHECK(h_at(mu3[2]) == 3);

    CHECK_THROWS_AS(index3_trinomial({1, 1, 1, 1, 3}, make_field(5, 1)), std::invalid_argument);
}

TEST_CASE("index-3 sufficiency for n != 3 never over-accepts") {
    for (const FieldCtx& ctx : {make_field(7, 1), make_field(13, 1)}) {
        std::mt19937_64 rng(61);
        std::uniform_int_distribution<u64> el(1, ctx.q - 1), rr(1, ctx.q - 1);
        for (u64 n : {2u, 4u}) {
            for (int it = 0; it < 400; ++it) {
                TrinomialParams p{static_cast<Elem>(el(rng)), static_cast<Elem>(el(rng)),
                                  static_cast<Elem>(el(rng)), rr(rng), n};
                TrinomialResult res = index3_trinomial(p, ctx);
                if (res.verdict) {
                    PermTable t = to_table(res.form, ctx);
                    REQUIRE(t.bijective);
                    CHECK(is_n_cycle_oracle(t, n));
                }
            }
        }
    }
}

TEST_CASE("lifted even-q family") {
    const FieldCtx f16 = make_field(2, 4);
    const FieldCtx f256 = make_field(2, 8);
    LiftedFamilyResult lift = lifted_family_even_q(4, 1, f16, f256);
    CHECK(lift.valid);
    CHECK(lift.base_ok);
    CHECK(lift.criterion_ok);
    CHECK(lift.mode == "full");
    REQUIRE(lift.full_oracle.has_value());
    CHECK(*lift.full_oracle);
    CHECK(lift.form.s == 17);

    // degenerate instance: q = 2, a = 3 = 0 mod 3 gives h = 3 = 1, f = x
    const FieldCtx f4 = make_field(2, 2);
    LiftedFamilyResult degen = lifted_family_even_q(2, 3, f4, f16);
    CHECK(degen.valid);
    CHECK(print_poly(expand(degen.form, f16)) == "x");
}
