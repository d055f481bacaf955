#include <doctest.h>

#include "fbar/lambda.hpp"
#include "testutil.hpp"

using namespace fbar;
using testutil::Rng;

TEST_CASE("shift on examples") {
    // \xyz. y (\u. x) == \\\ #1 (\ #3)
    Lam t = parse_lam("\\ \\ \\ #1 (\\ #3)");
    CHECK(lam_to_string(t) == "\\ \\ \\ #1 (\\ #3)");
    // shifting a closed term changes nothing
    CHECK(lam_eq(shift(0, t), t));
    // free variables move, bound ones do not
    Lam u = parse_lam("\\ #0 #1 #2");
    CHECK(lam_eq(shift(0, u), parse_lam("\\ #0 #2 #3")));
    CHECK(lam_eq(shift(1, u), parse_lam("\\ #0 #1 #3")));
    CHECK(lam_eq(shift(2, u), parse_lam("\\ #0 #1 #2")));
}

TEST_CASE("parallel substitution base cases") {
    LamList l = {parse_lam("\\ #0"), parse_lam("#7")};
    CHECK(lam_eq(psubst(lam_var(0), 0, l), parse_lam("\\ #0")));
    CHECK(lam_eq(psubst(lam_var(1), 0, l), parse_lam("#7")));
    CHECK(lam_eq(psubst(lam_var(2), 0, l), parse_lam("#0")));
    CHECK(lam_eq(psubst(lam_var(0), 1, l), parse_lam("#0")));
    CHECK(lam_eq(psubst(lam_var(1), 1, l), parse_lam("\\ #0")));
    // under a binder the cut moves and the list is shifted
    CHECK(lam_eq(psubst(parse_lam("\\ #1 #0"), 0, {parse_lam("#3")}),
                 parse_lam("\\ #4 #0")));
}

TEST_CASE("single substitution and weak head steps") {
    Lam redex = parse_lam("(\\ #0 #0) (\\ #0)");
    auto s = wh_step(redex);
    REQUIRE(s.has_value());
    CHECK(lam_eq(*s, parse_lam("(\\ #0) (\\ #0)")));
    auto s2 = wh_step(*s);
    REQUIRE(s2.has_value());
    CHECK(lam_eq(*s2, parse_lam("\\ #0")));
    CHECK(!wh_step(*s2).has_value());
    CHECK(is_whnf(*s2));
    // the head redex fires under a spine of arguments
    Lam spined = parse_lam("(\\ #1) #5 #6 #7");
    auto s3 = wh_step(spined);
    REQUIRE(s3.has_value());
    CHECK(lam_eq(*s3, parse_lam("#0 #6 #7")));
    // no reduction under binders
    CHECK(!wh_step(parse_lam("\\ (\\ #0) #1")).has_value());
    // no reduction inside arguments of a variable-headed spine
    CHECK(!wh_step(parse_lam("#0 ((\\ #0) #1)")).has_value());
}

TEST_CASE("normalize_wh counts steps and respects fuel") {
    WhResult r = normalize_wh(parse_lam("(\\ #0) ((\\ #0) (\\ #0))"), 100);
    CHECK(r.steps == 2);
    CHECK(lam_eq(r.nf, parse_lam("\\ #0")));
    WhResult omega = normalize_wh(parse_lam("(\\ #0 #0) (\\ #0 #0)"), 50);
    CHECK(omega.fuel_exhausted);
    CHECK(omega.steps == 50);
    CHECK(can_reduce(parse_lam("(\\ #0 #0) (\\ #0 #0)"), 1000));
    CHECK(!can_reduce(parse_lam("\\ #0"), 1));
}

TEST_CASE("parser and printer round-trip") {
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        Lam t = testutil::random_lam(rng, 1 + static_cast<int>(rng() % 14));
        Lam back = parse_lam(lam_to_string(t));
        CHECK(lam_eq(t, back));
    }
    CHECK_THROWS_AS(parse_lam("(\\ #0"), ParseError);
    CHECK_THROWS_AS(parse_lam("#"), ParseError);
    CHECK_THROWS_AS(parse_lam(""), ParseError);
}

TEST_CASE("shift commutation") {
    Rng rng(11);
    for (int i = 0; i < 400; ++i) {
        Lam t = testutil::random_lam(rng, 1 + static_cast<int>(rng() % 10));
        int k = static_cast<int>(rng() % 4);
        CHECK(lam_eq(shift(0, shift(k, t)), shift(k + 1, shift(0, t))));
    }
}

TEST_CASE("substitution composition identity") {
    // t[k := u :: l] == t[k+1 := shift_list(k, l)][k := <u>]
    Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        Lam t = testutil::random_lam(rng, 1 + static_cast<int>(rng() % 12));
        Lam u = testutil::random_lam(rng, 1 + static_cast<int>(rng() % 6));
        LamList l = testutil::random_list(
            rng, static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 6));
        int k = static_cast<int>(rng() % 4);
        LamList cons_ul;
        cons_ul.push_back(u);
        for (auto& x : l) cons_ul.push_back(x);
        Lam lhs = psubst(t, k, cons_ul);
        Lam rhs = psubst(psubst(t, k + 1, shift_list(k, l)), k, {u});
        CHECK(lam_eq(lhs, rhs));
    }
}

TEST_CASE("spine view is a retract") {
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        Lam t = testutil::random_lam(rng, 1 + static_cast<int>(rng() % 12));
        LamSpine sp = lam_spine(t);
        CHECK(sp.head->kind != LamKind::App);
        CHECK(lam_eq(lam_apply(sp.head, sp.args), t));
    }
}
