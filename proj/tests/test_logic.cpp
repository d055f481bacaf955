#include <doctest.h>

#include "fbar/logic.hpp"
#include "fbar/ltlib.hpp"
#include "fbar/systemf.hpp"
#include "testutil.hpp"

using namespace fbar;

namespace {

Fo tvar(const char* n) { return fo_var(n, Sort::TermS); }
Fo lvar(const char* n) { return fo_var(n, Sort::ListS); }

} // namespace

TEST_CASE("sorted term builders enforce sorts") {
    CHECK(fo_tmvar(fo_nat(2))->sort == Sort::TermS);
    CHECK(fo_snoc(fo_nil(), tvar("t"))->sort == Sort::ListS);
    CHECK(fo_in(tvar("t"), "X")->sort == Sort::BoolS);
    CHECK_THROWS_AS(fo_succ(tvar("t")), LogicError);
    CHECK_THROWS_AS(fo_tmapp(tvar("t"), tvar("u")), LogicError);
    CHECK_THROWS_AS(fo_snoc(tvar("t"), fo_nil()), LogicError);
    CHECK(sort_computational(Sort::NatS));
    CHECK(sort_computational(Sort::TermS));
    CHECK(sort_computational(Sort::ListS));
    CHECK(!sort_computational(Sort::SetS));
    CHECK(!sort_computational(Sort::BoolS));
}

TEST_CASE("free variables and printing") {
    Fm f = fm_forall("a", Sort::TermS,
                     fm_imp(fm_atom(fo_in(tvar("a"), "X")),
                            fm_atom(fo_in(fo_tmapp(tvar("t"), lvar("l")), "X"))));
    VarSet fv = fm_free(f);
    CHECK(fv.count({"t", Sort::TermS}) == 1);
    CHECK(fv.count({"l", Sort::ListS}) == 1);
    CHECK(fv.count({"X", Sort::SetS}) == 1);
    CHECK(fv.count({"a", Sort::TermS}) == 0);
    CHECK(fm_to_string(f) ==
          "forall a:tm. (in(a, X) -> in(app(t, l), X))");
    CHECK(!fm_has_hole(f));
    Formula1 p = pvar_formula("X");
    CHECK(fm_has_hole(p.body));
}

TEST_CASE("alpha-equivalence of formulas") {
    Fm a = fm_forall("a", Sort::TermS, fm_atom(fo_in(tvar("a"), "X")));
    Fm b = fm_forall("b", Sort::TermS, fm_atom(fo_in(tvar("b"), "X")));
    Fm c = fm_forall("b", Sort::TermS, fm_atom(fo_in(tvar("b"), "Y")));
    CHECK(fm_alpha_eq(a, b));
    CHECK(!fm_alpha_eq(a, c));
    // quantified set variables are renamed too
    Fm d = fm_forall("X", Sort::SetS, fm_forall("a", Sort::TermS,
                                               fm_atom(fo_in(tvar("a"), "X"))));
    Fm e = fm_forall("Y", Sort::SetS, fm_forall("a", Sort::TermS,
                                               fm_atom(fo_in(tvar("a"), "Y"))));
    CHECK(fm_alpha_eq(d, e));
}

TEST_CASE("instantiation renames captured binders") {
    // template: forall l (in(app(_, l), X) -> _bool), plugged with
    // term app(t, l) and boolean in(t, X)
    Formula1 f{fm_forall(
        "l", Sort::ListS,
        fm_imp(fm_atom(fo_in(fo_tmapp(fo_hole(Sort::TermS), lvar("l")), "X")),
               fm_atom(fo_hole(Sort::BoolS))))};
    Fm got = instantiate2(f, fo_in(tvar("t"), "X"),
                          fo_tmapp(tvar("t"), lvar("l")));
    Fm want = fm_forall(
        "l'", Sort::ListS,
        fm_imp(fm_atom(fo_in(fo_tmapp(fo_tmapp(tvar("t"), lvar("l")), lvar("l'")), "X")),
               fm_atom(fo_in(tvar("t"), "X"))));
    CHECK(fm_alpha_eq(got, want));
    // no clash: binders stay put
    Fm plain = instantiate(f, tvar("u"));
    CHECK(fm_alpha_eq(
        plain, fm_forall("l", Sort::ListS,
                         fm_imp(fm_atom(fo_in(fo_tmapp(tvar("u"), lvar("l")), "X")),
                                fm_atom(fo_hole(Sort::BoolS))))));
}

TEST_CASE("2-formula application avoids capture") {
    // A = (X' |-> forall l (in(app(t, l), X') -> in(var(0), X)))
    Formula2 A{"X'",
               fm_forall("l", Sort::ListS,
                         fm_imp(fm_atom(fo_in(fo_tmapp(tvar("t"), lvar("l")), "X'")),
                                fm_atom(fo_in(fo_tmvar(fo_zero()), "X"))))};
    // B = (u |-> in(app(u, l), X) -> in(u, X)), with l free
    Formula1 B{fm_imp(
        fm_atom(fo_in(fo_tmapp(fo_hole(Sort::TermS), lvar("l")), "X")),
        fm_atom(fo_in(fo_hole(Sort::TermS), "X")))};
    Fm got = apply2(A, B);
    Fm inner_imp = fm_imp(
        fm_atom(fo_in(fo_tmapp(fo_tmapp(tvar("t"), lvar("l'")), lvar("l")), "X")),
        fm_atom(fo_in(fo_tmapp(tvar("t"), lvar("l'")), "X")));
    Fm want = fm_forall(
        "l'", Sort::ListS,
        fm_imp(inner_imp, fm_atom(fo_in(fo_tmvar(fo_zero()), "X"))));
    CHECK(fm_alpha_eq(got, want));
}

TEST_CASE("candidate membership formula by type shape") {
    NameSupply supply;
    // variable type: plain membership
    Formula1 fx = rc_formula(parse_ftype("X"), supply);
    CHECK(fm_alpha_eq(instantiate(fx, tvar("t")),
                      fm_atom(fo_in(tvar("t"), "X"))));
    // arrow type
    NameSupply s2;
    Formula1 farr = rc_formula(parse_ftype("X -> Y"), s2);
    Fm got = instantiate(farr, tvar("t"));
    Fm want = fm_forall(
        "a", Sort::TermS,
        fm_imp(fm_atom(fo_in(tvar("a"), "X")),
               fm_atom(fo_in(fo_tmapp(tvar("t"), fo_snoc(fo_nil(), tvar("a"))), "Y"))));
    CHECK(fm_alpha_eq(got, want));
    // quantified type: guarded by the candidate property of the bound set
    NameSupply s3;
    Formula1 fall = rc_formula(parse_ftype("forall X. X"), s3);
    Fm inst = instantiate(fall, tvar("t"));
    REQUIRE(inst->kind == FmKind::Forall);
    CHECK(inst->var_sort == Sort::SetS);
    REQUIRE(inst->a->kind == FmKind::Imp);
    NameSupply s4;
    CHECK(fm_alpha_eq(inst->a->a, redcand_formula(pvar_formula(inst->var), s4)));
    CHECK(fm_alpha_eq(inst->a->b, fm_atom(fo_in(tvar("t"), inst->var))));
}

TEST_CASE("candidate membership commutes with type substitution") {
    // rc of r[X := s] is (X |-> rc r) applied to (rc s)
    const char* rhos[] = {"X -> X", "X -> Y", "forall Z. X -> Z"};
    const char* sigmas[] = {"Y -> Y", "forall W. W"};
    for (const char* r : rhos) {
        for (const char* s : sigmas) {
            CAPTURE(r);
            CAPTURE(s);
            NameSupply s1;
            Formula1 direct =
                rc_formula(type_subst(parse_ftype(r), "X", parse_ftype(s)), s1);
            NameSupply s2a, s2b;
            Formula2 outer{"X", rc_formula(parse_ftype(r), s2a).body};
            Fm composed = apply2(outer, rc_formula(parse_ftype(s), s2b));
            CHECK(fm_alpha_eq(instantiate(direct, tvar("t")),
                              instantiate(Formula1{composed}, tvar("t"))));
        }
    }
}

TEST_CASE("realizer types of formulas") {
    // Norm t erases to (i -> i) -> i
    CHECK(lt_type_eq(erase_type(fm_norm(tvar("t"))),
                     parse_lt_type("(-> (-> i i) i)")));
    // candidate property of a set variable erases to the candidate data type
    NameSupply supply;
    Fm rc = redcand_formula(pvar_formula("X"), supply);
    CHECK(lt_type_eq(
        erase_type(rc),
        parse_lt_type("(* (* (-> tms i) (-> tm (-> i (-> (-> i i) i)))) "
                      "(-> tm (-> tm (-> tms (-> i i)))))")));
    // set and boolean quantifiers vanish; computational ones become arrows
    Fm f = fm_forall("X", Sort::SetS,
                     fm_forall("n", Sort::NatS,
                               fm_imp(fm_atom(fo_tt()), fm_atom(fo_in(tvar("t"), "X")))));
    CHECK(lt_type_eq(erase_type(f), parse_lt_type("(-> i (-> i i))")));
    // erase_type_at gives free in(_, X) atoms a custom type
    Fm f_open = fm_forall(
        "n", Sort::NatS, fm_imp(fm_atom(fo_tt()), fm_atom(fo_in(tvar("t"), "X"))));
    CHECK(lt_type_eq(erase_type_at(f_open, "X", parse_lt_type("(-> tm i)")),
                     parse_lt_type("(-> i (-> i (-> tm i)))")));
    // under a rebinding of X the atoms revert to the numeral type
    CHECK(lt_type_eq(erase_type_at(f, "X", parse_lt_type("(-> tm i)")),
                     parse_lt_type("(-> i (-> i i))")));
    // shadowing: a rebinding of X returns to the numeral type
    Fm g = fm_forall("X", Sort::SetS, fm_atom(fo_in(tvar("t"), "X")));
    Fm h = fm_imp(fm_atom(fo_in(tvar("t"), "X")), g);
    CHECK(lt_type_eq(erase_type_at(h, "X", parse_lt_type("tm")),
                     parse_lt_type("(-> tm i)")));
}

TEST_CASE("erasure of first-order terms into programs") {
    LTEnv env;
    env["n"] = nat_t();
    env["t"] = lam_t();
    env["l"] = lamlist_t();
    struct Case {
        Fo e;
        const char* ty;
    } cases[] = {
        {fo_succ(fo_var("n", Sort::NatS)), "i"},
        {fo_tmvar(fo_nat(2)), "tm"},
        {fo_tmabs(tvar("t")), "tm"},
        {fo_tmapp(tvar("t"), lvar("l")), "tm"},
        {fo_tmsubst(tvar("t"), lvar("l")), "tm"},
        {fo_snoc(lvar("l"), tvar("t")), "tms"},
    };
    for (const auto& c : cases) {
        LT p = erase_foterm(c.e);
        CHECK(lt_type_eq(lt_typecheck(env, p), parse_lt_type(c.ty)));
    }
    // the programs compute the intended operations
    Fo e = fo_tmapp(fo_tmabs(fo_tmvar(fo_zero())), fo_snoc(fo_nil(), fo_tmvar(fo_nat(3))));
    Lam got = testutil::eval_decode(erase_foterm(e));
    CHECK(lam_eq(got, lam_apply(parse_lam("\\ #0"), {parse_lam("#3")})));
    Fo sub = fo_tmsubst(fo_tmvar(fo_zero()), fo_snoc(fo_nil(), fo_tmabs(fo_tmvar(fo_zero()))));
    CHECK(lam_eq(testutil::eval_decode(erase_foterm(sub)), parse_lam("\\ #0")));
}
