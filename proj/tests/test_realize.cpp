#include <doctest.h>

#include "fbar/extract.hpp"
#include "fbar/lteval.hpp"
#include "fbar/ltlib.hpp"
#include "fbar/realize.hpp"
#include "testutil.hpp"

using namespace fbar;

namespace {

Fo tvar(const char* n) { return fo_var(n, Sort::TermS); }

// Environment giving each free set variable's realizer variable the type it
// needs; for formulas without free sets this is empty.
LTType check_type(const LT& prog, const LTEnv& env = {}) {
    return lt_typecheck(env, prog);
}

} // namespace

TEST_CASE("realizer type of candidate membership follows the type structure") {
    CHECK(lt_type_eq(rc_type(parse_ftype("X")), nat_t()));
    CHECK(lt_type_eq(rc_type(parse_ftype("X -> Y")),
                     arrow_t(lam_t(), arrow_t(nat_t(), nat_t()))));
    CHECK(lt_type_eq(rc_type(parse_ftype("forall X. X -> X")),
                     arrow_t(redcand_type(nat_t()),
                             arrow_t(lam_t(), arrow_t(nat_t(), nat_t())))));
    CHECK(lt_type_eq(norm_type(), parse_lt_type("(-> (-> i i) i)")));
    // agreement with formula erasure
    NameSupply s;
    Formula1 f = rc_formula(parse_ftype("forall X. X -> X"), s);
    CHECK(lt_type_eq(erase_type(instantiate(f, tvar("t"))),
                     rc_type(parse_ftype("forall X. X -> X"))));
    NameSupply s2;
    CHECK(lt_type_eq(erase_type(redcand_formula(pvar_formula("X"), s2)),
                     redcand_type(nat_t())));
}

TEST_CASE("double-negation elimination realizers typecheck") {
    const Fm cases[] = {
        fm_atom(fo_in(tvar("t"), "X")),
        fm_norm(tvar("t")),
        fm_imp(fm_atom(fo_tt()), fm_norm(tvar("t"))),
        fm_and(fm_norm(tvar("t")), fm_atom(fo_in(tvar("t"), "X"))),
        fm_forall("a", Sort::TermS, fm_norm(tvar("a"))),
        fm_forall("X", Sort::SetS, fm_norm(tvar("t"))),
        fm_forall("b", Sort::BoolS, fm_atom(fo_tt())),
    };
    for (const Fm& a : cases) {
        CAPTURE(fm_to_string(a));
        NameSupply s;
        LT d = gen_dne(a, s);
        LTType ta = erase_type(a);
        LTType want = arrow_t(arrow_t(arrow_t(ta, nat_t()), nat_t()), ta);
        CHECK(lt_type_eq(check_type(d), want));
        CHECK(lt_closed(d));
    }
}

TEST_CASE("double-negation elimination computes on atoms") {
    // at an atomic formula, dne(k) = k(identity): feeding the numeral 4
    // through the double negation returns 4
    NameSupply s;
    LT d = gen_dne(fm_atom(fo_tt()), s);
    LT k = lt_lam("h", arrow_t(nat_t(), nat_t()), lt_app(lt_var("h"), lt_nat(4)));
    CHECK(testutil::eval_numeral(lt_app(d, k)) == 4);
}

TEST_CASE("ex falso realizers typecheck and terminate") {
    const Fm cases[] = {
        fm_atom(fo_tt()),
        fm_norm(tvar("t")),
        fm_forall("a", Sort::TermS, fm_norm(tvar("a"))),
    };
    for (const Fm& a : cases) {
        CAPTURE(fm_to_string(a));
        NameSupply s;
        LT e = gen_exf(a, s);
        CHECK(lt_type_eq(check_type(e), arrow_t(nat_t(), erase_type(a))));
        CHECK(lt_closed(e));
    }
    // exf into Norm applied to the identity continuation terminates
    NameSupply s;
    LT e = gen_exf(fm_norm(tvar("t")), s);
    LT probe = lt_app(e, {lt_nat(0), lt_lam("u", nat_t(), lt_var("u"))});
    EvalResult r = lt_eval(probe, 100000);
    CHECK(!r.fuel_exhausted);
}

TEST_CASE("comprehension realizers typecheck") {
    const Formula1 phis[] = {
        Formula1{fm_atom(fo_tt())},
        norm_formula(),
        Formula1{fm_forall("l", Sort::ListS,
                           fm_norm(fo_tmapp(fo_hole(Sort::TermS),
                                            fo_var("l", Sort::ListS))))},
    };
    for (const Formula1& phi : phis) {
        NameSupply s;
        LT c = gen_comp(phi, s);
        // [exists X forall a (in(a,X) <-> phi(a))] with witness type
        // tau = (i -> [phi]) x ([phi] -> i)
        LTType tphi = erase_type(instantiate(phi, tvar("a")));
        LTType tau = prod_t(arrow_t(nat_t(), tphi), arrow_t(tphi, nat_t()));
        LTType want = arrow_t(arrow_t(arrow_t(lam_t(), tau), nat_t()), nat_t());
        CHECK(lt_type_eq(check_type(c), want));
        CHECK(lt_closed(c));
    }
}

TEST_CASE("comprehension on a trivial predicate computes") {
    // take the comprehension witness for (a |-> tt) and immediately return a
    // constant: the bar recursion must terminate
    NameSupply s;
    LT c = gen_comp(Formula1{fm_atom(fo_tt())}, s);
    LTType tau = prod_t(arrow_t(nat_t(), nat_t()), arrow_t(nat_t(), nat_t()));
    LT k = lt_lam("w", arrow_t(lam_t(), tau), lt_nat(5));
    CHECK(testutil::eval_numeral(lt_app(c, k)) == 5);
    // and a use that actually queries the witness at one point
    LT k2 = lt_lam(
        "w", arrow_t(lam_t(), tau),
        lt_app(lt_p2(lt_app(lt_var("w"), encode_lam(parse_lam("\\ #0")))),
               lt_app(lt_p1(lt_app(lt_var("w"), encode_lam(parse_lam("\\ #0")))),
                      lt_nat(0))));
    EvalResult r = lt_eval(lt_app(c, k2), 2000000);
    REQUIRE(!r.fuel_exhausted);
    CHECK(read_numeral(r.result) >= 0);
}

TEST_CASE("replacement realizers typecheck") {
    // F = (X |-> forall a (in(a, X) => Norm a) & tt)
    Formula2 F{"X", fm_and(fm_forall("a", Sort::TermS,
                                     fm_imp(fm_atom(fo_in(tvar("a"), "X")),
                                            fm_norm(tvar("a")))),
                           fm_atom(fo_tt()))};
    LTType tb = nat_t();
    LTType tc = arrow_t(nat_t(), nat_t());
    NameSupply s;
    LT r = gen_repl(F, tb, tc, s);
    LTType iff = prod_t(arrow_t(tb, tc), arrow_t(tc, tb));
    LTType tab = erase_type_at(F.body, "X", tb);
    LTType tac = erase_type_at(F.body, "X", tc);
    LTType want = arrow_t(arrow_t(lam_t(), iff),
                          prod_t(arrow_t(tab, tac), arrow_t(tac, tab)));
    CHECK(lt_type_eq(check_type(r), want));
    CHECK(lt_closed(r));

    // with a shadowing inner set quantifier the inner atoms are untouched
    Formula2 G{"X", fm_forall("X", Sort::SetS,
                              fm_imp(fm_atom(fo_in(tvar("a"), "X")),
                                     fm_atom(fo_in(tvar("a"), "X"))))};
    NameSupply s2;
    LT r2 = gen_repl(G, tb, tc, s2);
    LTType tg = erase_type(G.body);
    LTType want2 = arrow_t(arrow_t(lam_t(), iff), prod_t(arrow_t(tg, tg), arrow_t(tg, tg)));
    CHECK(lt_type_eq(check_type(r2), want2));
}

TEST_CASE("replacement composes the exchanged realizers") {
    // F = (X |-> in(t, X)): replacement is just application of the given
    // conversion at t
    Formula2 F{"X", fm_atom(fo_in(tvar("t"), "X"))};
    NameSupply s;
    LT r = gen_repl(F, nat_t(), nat_t(), s);
    // conversion doubling on the way there, adding one on the way back
    LT dbl = lt_lam("n", nat_t(),
                    lt_app(lt_const(LTConst::NatIt),
                           {lt_nat(0),
                            lt_lam("m", nat_t(), lt_app(lt_const(LTConst::Succ),
                                                        lt_app(lt_const(LTConst::Succ),
                                                               lt_var("m")))),
                            lt_var("n")}));
    LT inc = lt_lam("n", nat_t(), lt_app(lt_const(LTConst::Succ), lt_var("n")));
    LT conv = lt_lam("u", lam_t(), lt_pair(dbl, inc));
    LT applied = lt_app(r, conv);
    CHECK(testutil::eval_numeral(lt_app(lt_p1(applied), lt_nat(3))) == 6);
    CHECK(testutil::eval_numeral(lt_app(lt_p2(applied), lt_nat(3))) == 4);
}

TEST_CASE("normalizing terms form a candidate") {
    NameSupply s;
    LT w = gen_normrc(s);
    CHECK(lt_type_eq(check_type(w), redcand_type(norm_type())));
    CHECK(lt_closed(w));
    // first component: variables applied to lists normalize with bound 0
    LT c1 = lt_p1(lt_p1(w));
    CHECK(testutil::eval_numeral(
              lt_app(c1, {lt_const(LTConst::Nil),
                          lt_lam("u", nat_t(), lt_var("u"))})) == 0);
    // second component: membership already is normalization
    LT c2 = lt_p2(lt_p1(w));
    LT norm0 = lt_lam("k", arrow_t(nat_t(), nat_t()), lt_app(lt_var("k"), lt_nat(0)));
    CHECK(testutil::eval_numeral(
              lt_app(c2, {encode_lam(parse_lam("\\ #0")), norm0,
                          lt_lam("u", nat_t(), lt_var("u"))})) == 0);
    // third component: beta expansion adds one step to the bound
    LT c3 = lt_p2(w);
    CHECK(testutil::eval_numeral(
              lt_app(c3, {encode_lam(parse_lam("#0")), encode_lam(parse_lam("#1")),
                          lt_const(LTConst::Nil), norm0,
                          lt_lam("u", nat_t(), lt_var("u"))})) == 1);
}

TEST_CASE("candidate witnesses for types typecheck in their set context") {
    NameSupply supply;
    GenContext ctx(supply);
    LTEnv env;
    env[ctx.var_for("X")] = redcand_type(nat_t());
    env[ctx.var_for("Y")] = redcand_type(nat_t());
    for (const char* ty :
         {"X", "X -> Y", "forall Z. Z", "forall Z. Z -> X", "(X -> Y) -> X"}) {
        CAPTURE(ty);
        FType rho = parse_ftype(ty);
        LT w = gen_isrc(rho, ctx);
        CHECK(lt_type_eq(lt_typecheck(env, w), redcand_type(rc_type(rho))));
    }
}

TEST_CASE("adequacy realizers typecheck for the corpus") {
    for (const auto& f : testutil::corpus_files()) {
        CAPTURE(f);
        Deriv d = testutil::corpus_deriv(f);
        NameSupply supply;
        Deriv fresh = freshen_type_binders(d, supply);
        GenContext ctx(supply);
        LT a = gen_adeq(fresh, ctx);
        CHECK(lt_type_eq(lt_typecheck({}, a), rc_type(fresh->ty)));
        CHECK(lt_closed(a));
    }
}

TEST_CASE("normalization programs typecheck and are deterministic") {
    for (const auto& f : testutil::corpus_files()) {
        CAPTURE(f);
        Deriv d = testutil::corpus_deriv(f);
        NameSupply s1, s2;
        LT p1 = gen_norm(d, s1);
        LT p2 = gen_norm(d, s2);
        CHECK(lt_type_eq(lt_typecheck({}, p1), norm_type()));
        CHECK(lt_closed(p1));
        CHECK(lt_to_string(p1) == lt_to_string(p2));
    }
    // open derivations are rejected
    Deriv open_d = elaborate(parse_church("fn (X) #0"));
    NameSupply s;
    CHECK_THROWS_AS(gen_norm(open_d, s), OpenDerivation);
}

TEST_CASE("extraction meets its oracle contracts") {
    for (const char* f : {"identity.sf", "idid.sf", "k_app.sf"}) {
        CAPTURE(f);
        Deriv d = testutil::corpus_deriv(f);
        NameSupply s;
        ExtractResult r = extract_normal_form(d, 100000000, s);
        REQUIRE(!r.fuel_exhausted);
        CHECK(r.bound_ok);
        CHECK(r.nf_ok);
        CHECK(r.bound >= r.steps_oracle);
        CHECK(lam_eq(r.nf, r.oracle_nf));
    }
}
