#include "fbar/ltlib.hpp"

#include <map>

namespace fbar {

namespace {

// Local construction shorthands.
LT V(const std::string& x) { return lt_var(x); }
LT L(const std::string& x, const LTType& t, LT b) { return lt_lam(x, t, std::move(b)); }
LT A(LT f, LT a) { return lt_app(std::move(f), std::move(a)); }
LT A(LT f, LT a, LT b) { return lt_app(std::move(f), {std::move(a), std::move(b)}); }
LT A(LT f, LT a, LT b, LT c) {
    return lt_app(std::move(f), {std::move(a), std::move(b), std::move(c)});
}
LT A(LT f, LT a, LT b, LT c, LT d) {
    return lt_app(std::move(f), {std::move(a), std::move(b), std::move(c), std::move(d)});
}

LT Z() { return lt_const(LTConst::Zero); }
LT S(LT n) { return A(lt_const(LTConst::Succ), std::move(n)); }
LT NATIT(LT a, LT b, LT n) {
    return A(lt_const(LTConst::NatIt), std::move(a), std::move(b), std::move(n));
}
LT LVAR(LT n) { return A(lt_const(LTConst::LVar), std::move(n)); }
LT LABS(LT t) { return A(lt_const(LTConst::LAbs), std::move(t)); }
LT LAPP(LT t, LT u) { return A(lt_const(LTConst::LApp), std::move(t), std::move(u)); }
LT LAMIT(LT a, LT b, LT c) {
    return A(lt_const(LTConst::LamIt), std::move(a), std::move(b), std::move(c));
}
LT NIL() { return lt_const(LTConst::Nil); }
LT CONS(LT l, LT x) { return A(lt_const(LTConst::Cons), std::move(l), std::move(x)); }
LT LISTIT(LT a, LT b, LT l) {
    return A(lt_const(LTConst::ListIt), std::move(a), std::move(b), std::move(l));
}

const LTType I = nat_t();
const LTType TM = lam_t();
const LTType TMS = lamlist_t();

// pred : i -> i via the iterate-with-pairs recursor trick.
LT lt_pred() {
    static LT t = L("n", I,
                    lt_p2(NATIT(lt_pair(Z(), Z()),
                                L("p", prod_t(I, I), lt_pair(S(lt_p1(V("p"))), lt_p1(V("p")))),
                                V("n"))));
    return t;
}

// sign : i -> i, 0 on 0 and 1 on successors (doubles as the is-zero test
// under the 0-means-true boolean convention).
LT lt_sign() {
    static LT t = L("n", I, NATIT(Z(), L("d", I, S(Z())), V("n")));
    return t;
}

// sub : i -> i -> i, truncated subtraction n - k.
LT lt_sub() {
    static LT t = L("n", I, L("k", I, NATIT(V("n"), lt_pred(), V("k"))));
    return t;
}

// leq a b : 0 iff a <= b.
LT lt_leq() {
    static LT t = L("a", I, L("b", I, A(lt_sign(), A(lt_sub(), V("a"), V("b")))));
    return t;
}

// ifz b x y : x when b evaluates to 0, y otherwise; lazy in both branches.
LT lt_ifz(const LTType& tau) {
    static std::map<std::string, LT> memo;
    auto& slot = memo[lt_type_to_string(tau)];
    if (!slot)
        slot = L("b", I, L("x", tau, L("y", tau, NATIT(V("x"), L("d", tau, V("y")), V("b")))));
    return slot;
}

// nat_eq : i -> i -> i, 0 iff equal, 1 otherwise.
LT lt_nat_eq() {
    static LT t = [] {
        LT base = lt_sign(); // n = 0: equal iff m is zero
        LT step = L("e", arrow_t(I, I),
                    L("m", I,
                      A(lt_ifz(I), V("m"), S(Z()), A(V("e"), A(lt_pred(), V("m"))))));
        return L("n", I, NATIT(base, step, V("n")));
    }();
    return t;
}

// lamrec tau : (i->tau) -> (tm->tau->tau) -> (tm->tm->tau->tau->tau) -> tm -> tau,
// a structural recursor with access to subterms, from the iterator and pairs.
LT lt_lamrec(const LTType& tau) {
    static std::map<std::string, LT> memo;
    auto& slot = memo[lt_type_to_string(tau)];
    if (slot) return slot;
    LTType pt = prod_t(TM, tau);
    LT varc = L("n", I, lt_pair(LVAR(V("n")), A(V("f"), V("n"))));
    LT absc = L("p", pt,
                lt_pair(LABS(lt_p1(V("p"))), A(V("g"), lt_p1(V("p")), lt_p2(V("p")))));
    LT appc = L("p", pt,
                L("q", pt,
                  lt_pair(LAPP(lt_p1(V("p")), lt_p1(V("q"))),
                          A(A(V("h"), lt_p1(V("p")), lt_p1(V("q"))), lt_p2(V("p")),
                            lt_p2(V("q"))))));
    slot = L("f", arrow_t(I, tau),
             L("g", arrow_t(TM, arrow_t(tau, tau)),
               L("h", arrow_t(TM, arrow_t(TM, arrow_t(tau, arrow_t(tau, tau)))),
                 L("w", TM, lt_p2(A(LAMIT(varc, absc, appc), V("w")))))));
    return slot;
}

// lamcase tau : (i->tau) -> (tm->tau) -> (tm->tm->tau) -> tm -> tau.
LT lt_lamcase(const LTType& tau) {
    static std::map<std::string, LT> memo;
    auto& slot = memo[lt_type_to_string(tau)];
    if (slot) return slot;
    slot = L("f", arrow_t(I, tau),
             L("g", arrow_t(TM, tau),
               L("h", arrow_t(TM, arrow_t(TM, tau)),
                 A(lt_lamrec(tau), V("f"),
                   L("t", TM, L("r", tau, A(V("g"), V("t")))),
                   L("t", TM,
                     L("u", TM, L("r", tau, L("s", tau, A(V("h"), V("t"), V("u"))))))))));
    return slot;
}

// listrec tau : tau -> (tms->tau->tm->tau) -> tms -> tau (recursor on lists;
// the step sees the prefix, its result, and the last element).
LT lt_listrec(const LTType& tau) {
    static std::map<std::string, LT> memo;
    auto& slot = memo[lt_type_to_string(tau)];
    if (slot) return slot;
    LTType pt = prod_t(TMS, tau);
    LT step = L("p", pt,
                L("x", TM,
                  lt_pair(CONS(lt_p1(V("p")), V("x")),
                          A(A(V("f"), lt_p1(V("p")), lt_p2(V("p"))), V("x")))));
    slot = L("a", tau,
             L("f", arrow_t(TMS, arrow_t(tau, arrow_t(TM, tau))),
               L("l", TMS, lt_p2(LISTIT(lt_pair(NIL(), V("a")), step, V("l"))))));
    return slot;
}

// last_or : tm -> tms -> tm.
LT lt_last_or() {
    static LT t = L("d", TM, L("l", TMS, LISTIT(V("d"), L("acc", TM, L("x", TM, V("x"))), V("l"))));
    return t;
}

// initseg : tms -> tms, drops the last element (nil on nil).
LT lt_initseg() {
    static LT t = L("l", TMS,
                    A(lt_listrec(TMS), NIL(),
                      L("pre", TMS, L("r", TMS, L("x", TM, V("pre")))), V("l")));
    return t;
}

// append : tms -> tms -> tms.
LT lt_append() {
    static LT t = L("l1", TMS, L("l2", TMS, LISTIT(V("l1"), lt_const(LTConst::Cons), V("l2"))));
    return t;
}

// rev : tms -> tms.
LT lt_rev() {
    static LT t = L("l", TMS,
                    LISTIT(NIL(),
                           L("acc", TMS, L("x", TM, A(lt_append(), CONS(NIL(), V("x")), V("acc")))),
                           V("l")));
    return t;
}

// nth_or : tm -> i -> tms -> tm, element m (from the front) or the default.
LT lt_nth_or() {
    static LT t = L("d", TM,
                    L("m", I,
                      L("l", TMS,
                        A(lt_last_or(), V("d"),
                          NATIT(A(lt_rev(), V("l")), lt_initseg(), V("m"))))));
    return t;
}

// len : tms -> i.
LT lt_len() {
    static LT t = L("l", TMS, LISTIT(Z(), L("acc", I, L("x", TM, S(V("acc")))), V("l")));
    return t;
}

// shift_at : i -> tm -> tm, increment variables with outer index >= the cut.
LT lt_shift_at() {
    static LT t = [] {
        LTType tau = arrow_t(I, TM); // result abstracted over the current cut
        LT varc = L("n", I,
                    L("j", I,
                      A(lt_ifz(TM), A(lt_leq(), V("j"), V("n")), LVAR(S(V("n"))),
                        LVAR(V("n")))));
        LT absc = L("r", tau, L("j", I, LABS(A(V("r"), S(V("j"))))));
        LT appc =
            L("r1", tau, L("r2", tau, L("j", I, LAPP(A(V("r1"), V("j")), A(V("r2"), V("j"))))));
        return L("k", I, L("t", TM, A(LAMIT(varc, absc, appc), V("t"), V("k"))));
    }();
    return t;
}

} // namespace

LT build_lshift() {
    static LT t = L("l", TMS,
                    LISTIT(NIL(),
                           L("acc", TMS, L("x", TM, CONS(V("acc"), A(lt_shift_at(), Z(), V("x"))))),
                           V("l")));
    return t;
}

LT build_lsubst() {
    static LT t = [] {
        LTType tau = arrow_t(I, arrow_t(TMS, TM)); // cut and list still pending
        LT islt_nj = A(lt_leq(), S(V("n")), V("j"));            // n < j
        LT off = A(lt_sub(), V("n"), V("j"));                   // n - j
        LT inrange = A(lt_leq(), S(off), A(lt_len(), V("m")));  // n - j < |m|
        LT varc =
            L("n", I,
              L("j", I,
                L("m", TMS,
                  A(lt_ifz(TM), islt_nj, LVAR(V("n")),
                    A(lt_ifz(TM), inrange, A(lt_nth_or(), LVAR(Z()), off, V("m")),
                      LVAR(A(lt_sub(), V("n"), A(lt_len(), V("m")))))))));
        LT absc = L("r", tau,
                    L("j", I, L("m", TMS, LABS(A(V("r"), S(V("j")), A(build_lshift(), V("m")))))));
        LT appc = L("r1", tau,
                    L("r2", tau,
                      L("j", I,
                        L("m", TMS,
                          LAPP(A(V("r1"), V("j"), V("m")), A(V("r2"), V("j"), V("m")))))));
        return L("t", TM,
                 L("k", I, L("ls", TMS, A(LAMIT(varc, absc, appc), V("t"), V("k"), V("ls")))));
    }();
    return t;
}

LT build_listapp() {
    static LT t = L("t", TM, L("l", TMS, LISTIT(V("t"), lt_const(LTConst::LApp), V("l"))));
    return t;
}

LT build_eqdec() {
    static LT t = [] {
        LTType tau = arrow_t(TM, I); // comparator against the second argument
        LT one = S(Z());
        LT varc = L("n", I,
                    A(lt_lamcase(I), L("m", I, A(lt_nat_eq(), V("n"), V("m"))),
                      L("w", TM, one), L("w1", TM, L("w2", TM, one))));
        LT absc = L("r", tau,
                   A(lt_lamcase(I), L("m", I, one), L("w", TM, A(V("r"), V("w"))),
                     L("w1", TM, L("w2", TM, one))));
        // 0 iff both comparisons yield 0.
        LT both = NATIT(A(V("r2"), V("w2")), L("d", I, S(Z())), A(V("r1"), V("w1")));
        LT appc = L("r1", tau,
                    L("r2", tau,
                      A(lt_lamcase(I), L("m", I, one), L("w", TM, one),
                        L("w1", TM, L("w2", TM, both)))));
        return L("e", TM, A(LAMIT(varc, absc, appc), V("e")));
    }();
    return t;
}

namespace {

// unabs : tm -> tm, body of an abstraction (identity-ish elsewhere).
LT lt_unabs() {
    static LT t = L("w", TM,
                    A(lt_lamcase(TM), L("n", I, LVAR(V("n"))), L("b", TM, V("b")),
                      L("a", TM, L("b", TM, LAPP(V("a"), V("b")))), V("w")));
    return t;
}

// Three-way dispatch on a classification numeral c (0 / 1 / >=2).
LT case3(const LTType& tau, const LT& c, LT x0, LT x1, LT x2) {
    return A(lt_ifz(tau), c, std::move(x0),
             A(lt_ifz(tau), A(lt_pred(), c), std::move(x1), std::move(x2)));
}

} // namespace

LT build_red() {
    static LT t = [] {
        // Fold value: (reconstructed term, (one-step reduct, classification))
        // with classification 0 = abstraction, 1 = variable-headed spine,
        // 2 = has a head redex.
        LTType tau = prod_t(TM, prod_t(TM, I));
        LT varc = L("n", I, lt_pair(LVAR(V("n")), lt_pair(LVAR(V("n")), S(Z()))));
        LT absc =
            L("r", tau, lt_pair(LABS(lt_p1(V("r"))), lt_pair(LABS(lt_p1(V("r"))), Z())));
        LT o1 = lt_p1(V("r1"));
        LT d1 = lt_p1(lt_p2(V("r1")));
        LT c1 = lt_p2(lt_p2(V("r1")));
        LT o2 = lt_p1(V("r2"));
        LT beta = A(build_lsubst(), A(lt_unabs(), o1), Z(), CONS(NIL(), o2));
        LT reduct = case3(TM, c1, beta, LAPP(o1, o2), LAPP(d1, o2));
        LT klass = case3(I, c1, S(S(Z())), S(Z()), S(S(Z())));
        LT appc = L("r1", tau, L("r2", tau, lt_pair(LAPP(o1, o2), lt_pair(reduct, klass))));
        return L("t", TM, lt_p1(lt_p2(A(LAMIT(varc, absc, appc), V("t")))));
    }();
    return t;
}

LT can(const LTType& tau) {
    switch (tau->kind) {
    case LTTypeKind::Nat: return Z();
    case LTTypeKind::Lam: return LVAR(Z());
    case LTTypeKind::LamList: return NIL();
    case LTTypeKind::Arrow: return L("d", tau->a, can(tau->b));
    case LTTypeKind::Prod: return lt_pair(can(tau->a), can(tau->b));
    }
    return Z();
}

LT empty_fn(const LTType& tau) {
    LTType st = prod_t(I, tau);
    LT undef = lt_pair(S(Z()), can(tau));
    return LAMIT(L("n", I, undef), L("p", st, undef), L("p", st, L("q", st, undef)));
}

std::string lt_fresh_for(const std::string& base, std::initializer_list<LT> terms) {
    std::string name = base;
    auto clashes = [&terms](const std::string& n) {
        for (const auto& t : terms)
            if (lt_has_free(t, n)) return true;
        return false;
    };
    while (clashes(name)) name += '\'';
    return name;
}

LT extend(const LT& f, const LT& b, const LT& c, const LTType& tau) {
    std::string u = lt_fresh_for("u", {f, b, c});
    return L(u, TM,
             NATIT(lt_pair(Z(), c), L(lt_fresh_for("d", {f, c}), prod_t(I, tau), A(f, V(u))),
                   A(build_eqdec(), b, V(u))));
}

LT complete(const LT& f, const LT& g, const LTType& tau) {
    std::string x = lt_fresh_for("x", {f, g});
    return L(x, TM,
             NATIT(lt_p2(A(f, V(x))), L(lt_fresh_for("d", {g}), tau, A(g, V(x))),
                   lt_p1(A(f, V(x)))));
}

LT encode_lam(const Lam& t) {
    switch (t->kind) {
    case LamKind::Var: return LVAR(lt_nat(t->index));
    case LamKind::Abs: return LABS(encode_lam(t->a));
    case LamKind::App: return LAPP(encode_lam(t->a), encode_lam(t->b));
    }
    return nullptr;
}

LT encode_list(const LamList& l) {
    LT cur = NIL();
    for (const auto& t : l) cur = CONS(cur, encode_lam(t));
    return cur;
}

namespace {

bool spine_of(const LT& t, LTConst c, std::size_t arity, std::vector<LT>& args) {
    args.clear();
    LT head = t;
    while (head->kind == LTKind::App) {
        args.push_back(head->b);
        head = head->a;
    }
    std::reverse(args.begin(), args.end());
    return head->kind == LTKind::Const && head->cst == c && args.size() == arity;
}

} // namespace

Lam decode_lam(const LT& v) {
    std::vector<LT> args;
    if (spine_of(v, LTConst::LVar, 1, args)) return lam_var(static_cast<int>(read_numeral(args[0])));
    if (spine_of(v, LTConst::LAbs, 1, args)) return lam_abs(decode_lam(args[0]));
    if (spine_of(v, LTConst::LApp, 2, args))
        return lam_app(decode_lam(args[0]), decode_lam(args[1]));
    throw LTDecodeError("not an encoded lambda term: " + lt_to_string(v));
}

long read_numeral(const LT& v) {
    long n = 0;
    LT cur = v;
    while (true) {
        if (cur->kind == LTKind::Const && cur->cst == LTConst::Zero) return n;
        std::vector<LT> args;
        if (!spine_of(cur, LTConst::Succ, 1, args))
            throw LTDecodeError("not a numeral: " + lt_to_string(v));
        ++n;
        cur = args[0];
    }
}

} // namespace fbar
