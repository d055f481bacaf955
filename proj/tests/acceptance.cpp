// Acceptance checks for the extraction toolchain: one line per criterion.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fbar/extract.hpp"
#include "fbar/lambda.hpp"
#include "fbar/lteval.hpp"
#include "fbar/ltlib.hpp"
#include "fbar/realize.hpp"
#include "testutil.hpp"

using namespace fbar;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, const char* what, bool ok, double secs) {
    std::printf("criterion %d: %-4s %s (%.2fs)\n", n, ok ? "PASS" : "FAIL", what, secs);
    if (!ok) ++failures;
}

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. substitution composition law on random instances
void criterion1() {
    auto t0 = Clock::now();
    bool ok = true;
    testutil::Rng rng(1);
    for (int i = 0; i < 1000 && ok; ++i) {
        Lam t = testutil::random_lam(rng, 2 + (int)(rng() % 11));
        int k = (int)(rng() % 4);
        Lam u = testutil::random_lam(rng, 1 + (int)(rng() % 6));
        LamList l = testutil::random_list(rng, (int)(rng() % 4), 1 + (int)(rng() % 6));
        LamList ul;
        ul.push_back(u);
        for (const Lam& e : l) ul.push_back(e);
        Lam lhs = psubst(t, k, ul);
        Lam rhs = psubst(psubst(t, k + 1, shift_list(k, l)), k, {u});
        ok = lam_eq(lhs, rhs);
    }
    double s = since(t0);
    report(1, "substitution composition law, 1000 random instances", ok && s < 5.0, s);
}

// 2. every reduction rule and every evaluation-context placement
void criterion2() {
    auto t0 = Clock::now();
    bool ok = true;
    auto step_to = [&](const char* from, const char* to) {
        auto s = lt_step(parse_lt(from));
        if (!s || !lt_eq(*s, parse_lt(to))) ok = false;
    };
    auto stuck = [&](const char* src) {
        if (lt_step(parse_lt(src)).has_value()) ok = false;
    };
    // contraction rules
    step_to("((lam (x {i}) (succ x)) (p1 (pair zero zero)))", "(succ (p1 (pair zero zero)))");
    step_to("(p1 (pair (succ zero) zero))", "(succ zero)");
    step_to("(p2 (pair (succ zero) zero))", "zero");
    step_to("(natit a f zero)", "a");
    step_to("(natit a f (succ zero))", "(f (natit a f zero))");
    step_to("(lamit f g h (var zero))", "(f zero)");
    step_to("(lamit f g h (abs (var zero)))", "(g (lamit f g h (var zero)))");
    step_to("(lamit f g h (app (var zero) (var zero)))",
            "(h (lamit f g h (var zero)) (lamit f g h (var zero)))");
    step_to("(listit a f nil)", "a");
    step_to("(listit a f (cons nil (var zero)))", "(f (listit a f nil) (var zero))");
    // the congruence rule: contraction inside an evaluation context
    step_to("(succ (p1 (pair zero zero)))", "(succ zero)");
    // bar recursion
    {
        LTType tau = nat_t();
        LT a = parse_lt("(lam (k {(-> i i)}) (k zero))");
        LT b = parse_lt("(lam (g {(-> tm i)}) (g (var zero)))");
        LT c = empty_fn(tau);
        LT t = lt_app(lt_bbc(tau), {a, b, c});
        auto s = lt_step(t);
        if (!s) ok = false;
        else {
            std::string y = lt_fresh_for("y", {a, b, c});
            std::string z = lt_fresh_for("z", {a, b, c});
            LT ext = extend(c, lt_var(y), lt_var(z), tau);
            LT g = lt_lam(y, lam_t(),
                          lt_app(a, lt_lam(z, tau, lt_app(lt_bbc(tau), {a, b, ext}))));
            if (!lt_eq(*s, lt_app(b, complete(c, g, tau)))) ok = false;
        }
    }
    // context placements
    step_to("(natit a f ((lam (x {i}) x) zero))", "(natit a f zero)");
    step_to("((p1 (pair (lam (x {i}) x) zero)) a)", "((lam (x {i}) x) a)");
    step_to("(p1 ((lam (p {(* i i)}) p) (pair zero zero)))", "(p1 (pair zero zero))");
    step_to("(succ ((lam (x {i}) x) zero))", "(succ zero)");
    step_to("(cons ((lam (l {tms}) l) nil) ((lam (x {tm}) x) (var zero)))",
            "(cons nil ((lam (x {tm}) x) (var zero)))");
    step_to("(cons nil ((lam (x {tm}) x) (var zero)))", "(cons nil (var zero))");
    step_to("((natit (lam (x {i}) x) f zero) (succ zero))", "((lam (x {i}) x) (succ zero))");
    stuck("(f ((lam (x {i}) x) zero))");
    stuck("(lam (x {i}) ((lam (y {i}) y) x))");
    stuck("(pair ((lam (x {i}) x) zero) zero)");
    double s = since(t0);
    report(2, "reduction rules and evaluation contexts", ok && s < 1.0, s);
}

// 3. library programs against the reference implementation
void criterion3() {
    auto t0 = Clock::now();
    bool ok = true;
    testutil::Rng rng(3);
    int n = 0;
    try {
        for (int i = 0; i < 110 && ok; ++i, ++n) {
            Lam t = testutil::random_lam(rng, 1 + (int)(rng() % 10));
            LamList l = testutil::random_list(rng, (int)(rng() % 4), 1 + (int)(rng() % 8));
            LT prog = lt_app(build_listapp(), {encode_lam(t), encode_list(l)});
            ok = lam_eq(testutil::eval_decode(prog), lam_apply(t, l));
        }
        for (int i = 0; i < 100 && ok; ++i, ++n) {
            LamList l = testutil::random_list(rng, (int)(rng() % 4), 1 + (int)(rng() % 10));
            LamList want = shift_list(0, l);
            LamList got =
                testutil::eval_decode_list(lt_app(build_lshift(), encode_list(l)));
            ok = got.size() == want.size();
            for (std::size_t j = 0; ok && j < want.size(); ++j)
                ok = lam_eq(got[j], want[j]);
        }
        for (int i = 0; i < 110 && ok; ++i, ++n) {
            Lam t = testutil::random_lam(rng, 1 + (int)(rng() % 10));
            int k = (int)(rng() % 4);
            LamList l = testutil::random_list(rng, (int)(rng() % 4), 1 + (int)(rng() % 8));
            LT prog = lt_app(build_lsubst(), {encode_lam(t), lt_nat(k), encode_list(l)});
            ok = lam_eq(testutil::eval_decode(prog), psubst(t, k, l));
        }
        for (int i = 0; i < 110 && ok; ++i, ++n) {
            Lam a = testutil::random_lam(rng, 1 + (int)(rng() % 10));
            Lam b = rng() % 2 ? a : testutil::random_lam(rng, 1 + (int)(rng() % 10));
            long got = testutil::eval_numeral(
                lt_app(build_eqdec(), {encode_lam(a), encode_lam(b)}));
            ok = got == (lam_eq(a, b) ? 0 : 1);
        }
        for (int i = 0; i < 110 && ok; ++i, ++n) {
            Lam t = testutil::random_lam(rng, 1 + (int)(rng() % 10));
            Lam want = t;
            if (auto st = wh_step(t)) want = *st;
            ok = lam_eq(testutil::eval_decode(lt_app(build_red(), encode_lam(t))), want);
        }
    } catch (const std::exception&) {
        ok = false;
    }
    double s = since(t0);
    report(3, "library programs vs reference, 540 random inputs",
           ok && n >= 500 && s < 60.0, s);
}

// 4. generated realizers typecheck at their computed types
void criterion4() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        for (const auto& f : testutil::corpus_files()) {
            Deriv d = testutil::corpus_deriv(f);
            NameSupply supply;
            Deriv fr = freshen_type_binders(d, supply);
            GenContext ctx(supply);
            LT adeq = gen_adeq(fr, ctx);
            if (!lt_type_eq(lt_typecheck({}, adeq), rc_type(fr->ty))) ok = false;
            NameSupply s2;
            LT norm = gen_norm(d, s2);
            if (!lt_type_eq(lt_typecheck({}, norm), norm_type())) ok = false;
            NameSupply s3;
            GenContext ctx3(s3);
            LT isrc = gen_isrc(fr->ty, ctx3);
            LTEnv env;
            for (const auto& [sv, xv] : ctx3.xvar) env[xv] = redcand_type(nat_t());
            if (!lt_type_eq(lt_typecheck(env, isrc), redcand_type(rc_type(fr->ty))))
                ok = false;
        }
    } catch (const std::exception&) {
        ok = false;
    }
    double s = since(t0);
    report(4, "generated programs typecheck, full corpus", ok && s < 10.0, s);
}

struct EndToEnd {
    const char* file;
    bool done = false;
    ExtractResult res;
};

std::vector<EndToEnd> e2e = {{"identity.sf"}, {"idid.sf"}, {"k_app.sf"}};

// 5. end-to-end extraction on the small corpus
void criterion5() {
    auto t0 = Clock::now();
    bool ok = true;
    bool identity_done = false;
    for (auto& c : e2e) {
        try {
            Deriv d = testutil::corpus_deriv(c.file);
            NameSupply s;
            c.res = extract_normal_form(d, 100000000, s);
            c.done = !c.res.fuel_exhausted;
            bool this_ok = c.done && c.res.bound_ok && c.res.nf_ok;
            if (std::string(c.file) == "identity.sf") {
                identity_done = this_ok;
                if (!this_ok) ok = false;
            } else if (c.done && !(c.res.bound_ok && c.res.nf_ok)) {
                ok = false; // finished runs must meet both contracts
            }
        } catch (const std::exception&) {
            ok = false;
        }
    }
    ok = ok && identity_done;
    // all three are expected to finish within the budget
    for (const auto& c : e2e)
        if (!c.done) ok = false;
    double s = since(t0);
    report(5, "end-to-end extraction with verified bounds", ok, s);
}

// 6. subject reduction along the first 100 steps of each run
void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        for (auto& c : e2e) {
            if (!c.done) continue;
            Deriv d = testutil::corpus_deriv(c.file);
            NameSupply s;
            LT norm = gen_norm(d, s);
            LT phase1 = lt_app(norm, lt_lam("u", nat_t(), lt_var("u")));
            if (!lt_type_eq(lt_typecheck({}, phase1), nat_t())) ok = false;
            lt_eval_traced(phase1, 100, [&](long, const LT& u) {
                if (!lt_type_eq(lt_typecheck({}, u), nat_t())) ok = false;
                return ok;
            });
            LT phase2 = lt_app(lt_const(LTConst::NatIt),
                               {encode_lam(d->subject), build_red(), lt_nat(c.res.bound)});
            if (!lt_type_eq(lt_typecheck({}, phase2), lam_t())) ok = false;
            lt_eval_traced(phase2, 100, [&](long, const LT& u) {
                if (!lt_type_eq(lt_typecheck({}, u), lam_t())) ok = false;
                return ok;
            });
        }
    } catch (const std::exception&) {
        ok = false;
    }
    double s = since(t0);
    report(6, "types preserved along the first 100 steps", ok, s);
}

// 7. generation is deterministic: byte-identical output across runs
void criterion7() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        for (const auto& f : testutil::corpus_files()) {
            Deriv d1 = testutil::corpus_deriv(f);
            Deriv d2 = testutil::corpus_deriv(f);
            NameSupply s1, s2;
            if (lt_to_string(gen_norm(d1, s1)) != lt_to_string(gen_norm(d2, s2)))
                ok = false;
        }
    } catch (const std::exception&) {
        ok = false;
    }
    double s = since(t0);
    report(7, "byte-identical generated programs across runs", ok, s);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    return failures == 0 ? 0 : 1;
}
