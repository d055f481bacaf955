#include "fbar/realize.hpp"

#include <optional>
#include <set>

#include "fbar/ltlib.hpp"

namespace fbar {

namespace {

const LTType& I() {
    static LTType t = nat_t();
    return t;
}

LTType carrier(Sort s) {
    switch (s) {
    case Sort::NatS: return nat_t();
    case Sort::TermS: return lam_t();
    case Sort::ListS: return lamlist_t();
    default: throw LogicError("no carrier for a non-computational sort");
    }
}

std::string supply_fresh(NameSupply& supply, const std::string& base,
                         const std::set<std::string>& avoid) {
    std::string s;
    do {
        s = supply.fresh(base);
    } while (avoid.count(s));
    return s;
}

std::set<std::string> names_of(const Fm& f) {
    std::set<std::string> out;
    for (auto& [n, s] : fm_free(f)) out.insert(n);
    return out;
}

} // namespace

const std::string& GenContext::var_for(const std::string& setvar) {
    auto it = xvar.find(setvar);
    if (it != xvar.end()) return it->second;
    return xvar.emplace(setvar, supply.fresh("x")).first->second;
}

LTType norm_type() { return arrow_t(arrow_t(nat_t(), nat_t()), nat_t()); }

LTType redcand_type(const LTType& delta) {
    LTType c1 = arrow_t(lamlist_t(), delta);
    LTType c2 = arrow_t(lam_t(), arrow_t(delta, norm_type()));
    LTType c3 = arrow_t(
        lam_t(),
        arrow_t(lam_t(), arrow_t(lamlist_t(), arrow_t(delta, delta))));
    return prod_t(prod_t(c1, c2), c3);
}

LTType rc_type(const FType& rho) {
    switch (rho->kind) {
    case FTypeKind::Var: return nat_t();
    case FTypeKind::Arrow:
        return arrow_t(lam_t(), arrow_t(rc_type(rho->a), rc_type(rho->b)));
    case FTypeKind::Forall:
        return arrow_t(redcand_type(nat_t()), rc_type(rho->a));
    }
    throw LogicError("bad type node");
}

// ---- double-negation elimination ------------------------------------------

namespace {

LT dne_rec(const Fm& f, NameSupply& sp, const std::set<std::string>& avoid) {
    LTType ta = erase_type(f);
    LTType notnot = arrow_t(arrow_t(ta, I()), I());
    switch (f->kind) {
    case FmKind::Atom: {
        std::string x = supply_fresh(sp, "x", avoid);
        std::string y = supply_fresh(sp, "y", avoid);
        return lt_lam(x, notnot,
                      lt_app(lt_var(x), lt_lam(y, I(), lt_var(y))));
    }
    case FmKind::Imp: {
        LTType tdom = erase_type(f->a);
        LTType tcod = erase_type(f->b);
        LT inner = dne_rec(f->b, sp, avoid);
        std::string x = supply_fresh(sp, "x", avoid);
        std::string y = supply_fresh(sp, "y", avoid);
        std::string z = supply_fresh(sp, "z", avoid);
        std::string w = supply_fresh(sp, "w", avoid);
        return lt_lam(
            x, notnot,
            lt_lam(y, tdom,
                   lt_app(inner,
                          lt_lam(z, arrow_t(tcod, I()),
                                 lt_app(lt_var(x),
                                        lt_lam(w, ta,
                                               lt_app(lt_var(z),
                                                      lt_app(lt_var(w),
                                                             lt_var(y)))))))));
    }
    case FmKind::And: {
        LTType t1 = erase_type(f->a);
        LTType t2 = erase_type(f->b);
        LT d1 = dne_rec(f->a, sp, avoid);
        LT d2 = dne_rec(f->b, sp, avoid);
        std::string x = supply_fresh(sp, "x", avoid);
        auto half = [&](const LT& d, const LTType& t, bool first) {
            std::string y = supply_fresh(sp, "y", avoid);
            std::string z = supply_fresh(sp, "z", avoid);
            LT proj = first ? lt_p1(lt_var(z)) : lt_p2(lt_var(z));
            return lt_app(d, lt_lam(y, arrow_t(t, I()),
                                    lt_app(lt_var(x),
                                           lt_lam(z, ta,
                                                  lt_app(lt_var(y), proj)))));
        };
        return lt_lam(x, notnot, lt_pair(half(d1, t1, true), half(d2, t2, false)));
    }
    case FmKind::Forall: {
        if (!sort_computational(f->var_sort)) return dne_rec(f->a, sp, avoid);
        LTType c = carrier(f->var_sort);
        LTType tin = erase_type(f->a);
        LT inner = dne_rec(f->a, sp, avoid);
        std::string x = supply_fresh(sp, "x", avoid);
        std::string y = supply_fresh(sp, "y", avoid);
        std::string z = supply_fresh(sp, "z", avoid);
        const std::string& r = f->var;
        return lt_lam(
            x, notnot,
            lt_lam(r, c,
                   lt_app(inner,
                          lt_lam(y, arrow_t(tin, I()),
                                 lt_app(lt_var(x),
                                        lt_lam(z, ta,
                                               lt_app(lt_var(y),
                                                      lt_app(lt_var(z),
                                                             lt_var(r)))))))));
    }
    }
    throw LogicError("bad formula node");
}

} // namespace

LT gen_dne(const Fm& a, NameSupply& supply) {
    return dne_rec(a, supply, names_of(a));
}

LT gen_exf(const Fm& a, NameSupply& supply) {
    std::set<std::string> avoid = names_of(a);
    LT d = dne_rec(a, supply, avoid);
    std::string x = supply_fresh(supply, "x", avoid);
    std::string w = supply_fresh(supply, "w", avoid);
    return lt_lam(x, I(),
                  lt_app(d, lt_lam(w, arrow_t(erase_type(a), I()), lt_var(x))));
}

// ---- comprehension via bar recursion ---------------------------------------

LT gen_comp(const Formula1& phi, NameSupply& supply) {
    std::set<std::string> avoid = names_of(phi.body);
    LTType tphi = erase_type(phi.body);
    std::string q = supply_fresh(supply, "q", avoid);
    Fm iff = fm_iff(fm_atom(fo_var(q, Sort::BoolS)), phi.body);
    LTType tau = erase_type(iff); // (i -> [phi]) x ([phi] -> i)

    LT exf_phi = gen_exf(phi.body, supply);
    LT exf_iff = gen_exf(iff, supply);

    std::string x = supply_fresh(supply, "x", avoid);
    std::string y = supply_fresh(supply, "y", avoid);
    std::string d = supply_fresh(supply, "d", avoid);
    std::string w1 = supply_fresh(supply, "w", avoid);
    std::string w2 = supply_fresh(supply, "w", avoid);

    LT witness_pair =
        lt_pair(lt_lam(w1, I(), lt_var(d)),
                lt_lam(w2, tphi, lt_const(LTConst::Zero)));
    LT uniform = lt_pair(
        exf_phi, lt_lam(d, tphi, lt_app(lt_var(y), witness_pair)));
    LT first_arg = lt_lam(y, arrow_t(tau, I()),
                          lt_app(exf_iff, lt_app(lt_var(y), uniform)));
    LTType xty = arrow_t(arrow_t(lam_t(), tau), I());
    return lt_lam(x, xty,
                  lt_app(lt_bbc(tau), {first_arg, lt_var(x), empty_fn(tau)}));
}

// ---- replacement -----------------------------------------------------------

namespace {

struct ReplEnv {
    const std::string& setvar;
    LTType tb, tc;
    std::string xname;
    NameSupply& sp;
    const std::set<std::string>& avoid;
};

LT repl_rec(const Fm& f, ReplEnv& env, bool shadowed) {
    LTType tf = shadowed ? erase_type(f) : erase_type_at(f, env.setvar, env.tb);
    LTType tg = shadowed ? erase_type(f) : erase_type_at(f, env.setvar, env.tc);
    switch (f->kind) {
    case FmKind::Atom: {
        if (!shadowed && f->atom->kind == FoKind::In && f->atom->name == env.setvar)
            return lt_app(lt_var(env.xname), erase_foterm(f->atom->a));
        std::string y1 = supply_fresh(env.sp, "y", env.avoid);
        std::string y2 = supply_fresh(env.sp, "y", env.avoid);
        return lt_pair(lt_lam(y1, I(), lt_var(y1)), lt_lam(y2, I(), lt_var(y2)));
    }
    case FmKind::Imp: {
        LT r1 = repl_rec(f->a, env, shadowed);
        LT r2 = repl_rec(f->b, env, shadowed);
        LTType t1f = shadowed ? erase_type(f->a)
                              : erase_type_at(f->a, env.setvar, env.tb);
        LTType t1g = shadowed ? erase_type(f->a)
                              : erase_type_at(f->a, env.setvar, env.tc);
        auto half = [&](bool fwd) {
            std::string y = supply_fresh(env.sp, "y", env.avoid);
            std::string z = supply_fresh(env.sp, "z", env.avoid);
            LT back = lt_app(fwd ? lt_p2(r1) : lt_p1(r1), lt_var(z));
            LT fore = lt_app(fwd ? lt_p1(r2) : lt_p2(r2),
                             lt_app(lt_var(y), back));
            return lt_lam(y, fwd ? tf : tg,
                          lt_lam(z, fwd ? t1g : t1f, fore));
        };
        return lt_pair(half(true), half(false));
    }
    case FmKind::And: {
        LT r1 = repl_rec(f->a, env, shadowed);
        LT r2 = repl_rec(f->b, env, shadowed);
        auto half = [&](bool fwd) {
            std::string y = supply_fresh(env.sp, "y", env.avoid);
            auto side = [&](const LT& r, const LT& proj) {
                return lt_app(fwd ? lt_p1(r) : lt_p2(r), proj);
            };
            return lt_lam(y, fwd ? tf : tg,
                          lt_pair(side(r1, lt_p1(lt_var(y))),
                                  side(r2, lt_p2(lt_var(y)))));
        };
        return lt_pair(half(true), half(false));
    }
    case FmKind::Forall: {
        if (!sort_computational(f->var_sort)) {
            bool sh = shadowed ||
                      (f->var_sort == Sort::SetS && f->var == env.setvar);
            return repl_rec(f->a, env, sh);
        }
        LT r = repl_rec(f->a, env, shadowed);
        LTType c = carrier(f->var_sort);
        const std::string& v = f->var;
        auto half = [&](bool fwd) {
            std::string y = supply_fresh(env.sp, "y", env.avoid);
            return lt_lam(y, fwd ? tf : tg,
                          lt_lam(v, c,
                                 lt_app(fwd ? lt_p1(r) : lt_p2(r),
                                        lt_app(lt_var(y), lt_var(v)))));
        };
        return lt_pair(half(true), half(false));
    }
    }
    throw LogicError("bad formula node");
}

} // namespace

LT gen_repl(const Formula2& f, const LTType& tb, const LTType& tc,
            NameSupply& supply) {
    std::set<std::string> avoid = names_of(f.body);
    std::string x = supply_fresh(supply, "x", avoid);
    ReplEnv env{f.setvar, tb, tc, x, supply, avoid};
    LT body = repl_rec(f.body, env, false);
    LTType xty = arrow_t(lam_t(), prod_t(arrow_t(tb, tc), arrow_t(tc, tb)));
    return lt_lam(x, xty, body);
}

// ---- second-order elimination ----------------------------------------------

LT gen_elim(const Formula2& f, const Formula1& b, NameSupply& supply) {
    std::set<std::string> avoid = names_of(f.body);
    for (const auto& n : names_of(b.body)) avoid.insert(n);

    LTType tbody = erase_type(f.body); // A at the set variable itself
    LTType tb = erase_type(b.body);
    LTType tab = erase_type_at(f.body, f.setvar, tb); // A(B)
    LTType tau = prod_t(arrow_t(I(), tb), arrow_t(tb, I()));

    Fm ab = apply2(f, b);
    LT dne_ab = gen_dne(ab, supply);
    LT comp_b = gen_comp(b, supply);
    LT repl_f = gen_repl(f, I(), tb, supply);

    std::string x = supply_fresh(supply, "x", avoid);
    std::string y = supply_fresh(supply, "y", avoid);
    std::string z = supply_fresh(supply, "z", avoid);

    LT inner = lt_app(lt_var(y),
                      lt_app(lt_p1(lt_app(repl_f, lt_var(z))), lt_var(x)));
    LT via_comp = lt_app(comp_b, lt_lam(z, arrow_t(lam_t(), tau), inner));
    return lt_lam(x, tbody,
                  lt_app(dne_ab, lt_lam(y, arrow_t(tab, I()), via_comp)));
}

// ---- the candidate statement for normalizing terms -------------------------

LT gen_normrc(NameSupply& supply) {
    std::set<std::string> none;
    std::string l = supply_fresh(supply, "l", none);
    std::string x1 = supply_fresh(supply, "x", none);
    LT c1 = lt_lam(l, lamlist_t(),
                   lt_lam(x1, arrow_t(I(), I()),
                          lt_app(lt_var(x1), lt_const(LTConst::Zero))));

    std::string a2 = supply_fresh(supply, "a", none);
    std::string x2 = supply_fresh(supply, "x", none);
    LT c2 = lt_lam(a2, lam_t(), lt_lam(x2, norm_type(), lt_var(x2)));

    std::string a3 = supply_fresh(supply, "a", none);
    std::string b3 = supply_fresh(supply, "b", none);
    std::string l3 = supply_fresh(supply, "l", none);
    std::string x3 = supply_fresh(supply, "x", none);
    std::string y3 = supply_fresh(supply, "y", none);
    std::string n3 = supply_fresh(supply, "n", none);
    LT shift_one =
        lt_lam(n3, I(),
               lt_app(lt_var(y3), lt_app(lt_const(LTConst::Succ), lt_var(n3))));
    LT c3 = lt_lam(
        a3, lam_t(),
        lt_lam(b3, lam_t(),
               lt_lam(l3, lamlist_t(),
                      lt_lam(x3, norm_type(),
                             lt_lam(y3, arrow_t(I(), I()),
                                    lt_app(lt_var(x3), shift_one))))));
    return lt_pair(lt_pair(c1, c2), c3);
}

// ---- the candidate statement for rc_formula(rho) ---------------------------

namespace {

LT isrc1(const LT& t) { return lt_p1(lt_p1(t)); }
LT isrc2(const LT& t) { return lt_p2(lt_p1(t)); }
LT isrc3(const LT& t) { return lt_p2(t); }

} // namespace

LT gen_isrc(const FType& rho, GenContext& ctx) {
    NameSupply& sp = ctx.supply;
    switch (rho->kind) {
    case FTypeKind::Var: {
        LT x = lt_var(ctx.var_for(rho->name));
        return lt_pair(lt_pair(isrc1(x), isrc2(x)), isrc3(x));
    }
    case FTypeKind::Arrow: {
        LT ir = gen_isrc(rho->a, ctx);
        LT is = gen_isrc(rho->b, ctx);
        LTType tr = rc_type(rho->a);
        LTType ts = rc_type(rho->b);
        LTType tarr = rc_type(rho);
        std::set<std::string> none;

        std::string l1 = supply_fresh(sp, "l", none);
        std::string a1 = supply_fresh(sp, "a", none);
        std::string x1 = supply_fresh(sp, "x", none);
        LT c1 = lt_lam(
            l1, lamlist_t(),
            lt_lam(a1, lam_t(),
                   lt_lam(x1, tr,
                          lt_app(isrc1(is),
                                 lt_app(lt_const(LTConst::Cons),
                                        {lt_var(l1), lt_var(a1)})))));

        std::string a2 = supply_fresh(sp, "a", none);
        std::string x2 = supply_fresh(sp, "x", none);
        Fo applied = fo_tmapp(fo_var(a2, Sort::TermS),
                              fo_snoc(fo_nil(), fo_tmvar(fo_zero())));
        LT var0 = lt_app(lt_const(LTConst::LVar), lt_const(LTConst::Zero));
        LT c2 = lt_lam(
            a2, lam_t(),
            lt_lam(x2, tarr,
                   lt_app(isrc2(is),
                          {erase_foterm(applied),
                           lt_app(lt_var(x2),
                                  {var0,
                                   lt_app(isrc1(ir), lt_const(LTConst::Nil))})})));

        std::string a3 = supply_fresh(sp, "a", none);
        std::string b3 = supply_fresh(sp, "b", none);
        std::string l3 = supply_fresh(sp, "l", none);
        std::string x3 = supply_fresh(sp, "x", none);
        std::string c3v = supply_fresh(sp, "c", none);
        std::string y3 = supply_fresh(sp, "y", none);
        LT c3 = lt_lam(
            a3, lam_t(),
            lt_lam(
                b3, lam_t(),
                lt_lam(
                    l3, lamlist_t(),
                    lt_lam(
                        x3, tarr,
                        lt_lam(
                            c3v, lam_t(),
                            lt_lam(y3, tr,
                                   lt_app(isrc3(is),
                                          {lt_var(a3), lt_var(b3),
                                           lt_app(lt_const(LTConst::Cons),
                                                  {lt_var(l3), lt_var(c3v)}),
                                           lt_app(lt_var(x3),
                                                  {lt_var(c3v), lt_var(y3)})})))))));
        return lt_pair(lt_pair(c1, c2), c3);
    }
    case FTypeKind::Forall: {
        const std::string& X = rho->name;
        std::set<std::string> none;
        std::string xv = supply_fresh(sp, "x", none);
        auto saved = ctx.xvar.find(X) != ctx.xvar.end()
                         ? std::optional<std::string>(ctx.xvar[X])
                         : std::nullopt;
        ctx.xvar[X] = xv;
        LT ir = gen_isrc(rho->a, ctx);
        Formula1 phi = rc_formula(rho->a, sp);
        if (saved) ctx.xvar[X] = *saved; else ctx.xvar.erase(X);

        LTType tr = rc_type(rho->a);
        LTType rct = redcand_type(nat_t());
        LTType tall = rc_type(rho); // rct -> tr

        std::string l1 = supply_fresh(sp, "l", none);
        LT c1 = lt_lam(l1, lamlist_t(),
                       lt_lam(xv, rct, lt_app(isrc1(ir), lt_var(l1))));

        std::string a2 = supply_fresh(sp, "a", none);
        std::string x2 = supply_fresh(sp, "x", none);
        std::string tq = supply_fresh(sp, "t", none);
        Fm rc_body = redcand_formula(pvar_formula(X), sp);
        Fo tqv = fo_var(tq, Sort::TermS);
        Fm all_norm = fm_forall(
            tq, Sort::TermS, fm_imp(instantiate(phi, tqv), fm_norm(tqv)));
        Formula2 f1{X, fm_imp(rc_body, all_norm)};
        Formula2 f2{X, fm_imp(rc_body,
                              instantiate(phi, fo_var(a2, Sort::TermS)))};
        LT e1 = gen_elim(f1, norm_formula(), sp);
        LT e2 = gen_elim(f2, norm_formula(), sp);
        LT nrc1 = gen_normrc(sp);
        LT nrc2 = gen_normrc(sp);
        LT c2 = lt_lam(
            a2, lam_t(),
            lt_lam(x2, tall,
                   lt_app(e1, {lt_lam(xv, rct, isrc2(ir)), nrc1, lt_var(a2),
                               lt_app(e2, {lt_var(x2), nrc2})})));

        std::string a3 = supply_fresh(sp, "a", none);
        std::string b3 = supply_fresh(sp, "b", none);
        std::string l3 = supply_fresh(sp, "l", none);
        std::string y3 = supply_fresh(sp, "y", none);
        LT c3 = lt_lam(
            a3, lam_t(),
            lt_lam(b3, lam_t(),
                   lt_lam(l3, lamlist_t(),
                          lt_lam(y3, tall,
                                 lt_lam(xv, rct,
                                        lt_app(isrc3(ir),
                                               {lt_var(a3), lt_var(b3),
                                                lt_var(l3),
                                                lt_app(lt_var(y3),
                                                       lt_var(xv))}))))));
        return lt_pair(lt_pair(c1, c2), c3);
    }
    }
    throw LogicError("bad type node");
}

// ---- adequacy --------------------------------------------------------------

namespace {

Fo lam_to_fo(const Lam& t) {
    switch (t->kind) {
    case LamKind::Var: return fo_tmvar(fo_nat(static_cast<unsigned long>(t->index)));
    case LamKind::Abs: return fo_tmabs(lam_to_fo(t->a));
    case LamKind::App:
        return fo_tmapp(lam_to_fo(t->a), fo_snoc(fo_nil(), lam_to_fo(t->b)));
    }
    throw LogicError("bad lambda node");
}

LT ctx_vector(const GenContext& ctx) {
    LT cur = lt_const(LTConst::Nil);
    for (const auto& [tname, yname] : ctx.occ)
        cur = lt_app(lt_const(LTConst::Cons), {cur, lt_var(tname)});
    return cur;
}

Fo ctx_vector_fo(const GenContext& ctx) {
    Fo cur = fo_nil();
    for (const auto& [tname, yname] : ctx.occ)
        cur = fo_snoc(cur, fo_var(tname, Sort::TermS));
    return cur;
}

} // namespace

LT gen_adeq(const Deriv& d, GenContext& ctx) {
    NameSupply& sp = ctx.supply;
    switch (d->rule) {
    case RuleKind::Axiom:
        return lt_var(ctx.occ.at(static_cast<std::size_t>(d->index)).second);
    case RuleKind::ForallIntro: {
        const std::string& X = d->tyvar;
        std::set<std::string> none;
        std::string xv = supply_fresh(sp, "x", none);
        auto saved = ctx.xvar.find(X) != ctx.xvar.end()
                         ? std::optional<std::string>(ctx.xvar[X])
                         : std::nullopt;
        ctx.xvar[X] = xv;
        LT body = gen_adeq(d->p1, ctx);
        if (saved) ctx.xvar[X] = *saved; else ctx.xvar.erase(X);
        return lt_lam(xv, redcand_type(nat_t()), body);
    }
    case RuleKind::ForallElim: {
        const FType& forall_ty = d->p1->ty;
        const std::string& X = forall_ty->name;
        const FType& rho = forall_ty->a;
        const FType& sigma = d->tyarg;
        Formula1 phi_rho = rc_formula(rho, sp);
        Fm rc_body = redcand_formula(pvar_formula(X), sp);
        Fo subj = fo_tmsubst(lam_to_fo(d->subject), ctx_vector_fo(ctx));
        Formula2 f{X, fm_imp(rc_body, instantiate(phi_rho, subj))};
        LT elim = gen_elim(f, rc_formula(sigma, sp), sp);
        LT adeq1 = gen_adeq(d->p1, ctx);
        LT isrc_sigma = gen_isrc(sigma, ctx);
        return lt_app(elim, {adeq1, isrc_sigma});
    }
    case RuleKind::AbsR: {
        const FType& sigma = d->ty->a;
        const FType& rho = d->ty->b;
        LT outer_vec = ctx_vector(ctx);
        std::set<std::string> none;
        std::string tname = supply_fresh(sp, "t", none);
        std::string yname = supply_fresh(sp, "y", none);
        ctx.occ.insert(ctx.occ.begin(), {tname, yname});
        LT adeq_body = gen_adeq(d->p1, ctx);
        ctx.occ.erase(ctx.occ.begin());
        LT isrc_rho = gen_isrc(rho, ctx);
        LT body_subst = lt_app(
            build_lsubst(),
            {encode_lam(d->subject->a),
             lt_app(lt_const(LTConst::Succ), lt_const(LTConst::Zero)),
             lt_app(build_lshift(), outer_vec)});
        LT inner = lt_app(isrc3(isrc_rho),
                          {body_subst, lt_var(tname), lt_const(LTConst::Nil),
                           adeq_body});
        return lt_lam(tname, lam_t(), lt_lam(yname, rc_type(sigma), inner));
    }
    case RuleKind::AppR: {
        LT fun = gen_adeq(d->p1, ctx);
        LT arg_subst = lt_app(build_lsubst(),
                              {encode_lam(d->p2->subject),
                               lt_const(LTConst::Zero), ctx_vector(ctx)});
        LT arg = gen_adeq(d->p2, ctx);
        return lt_app(fun, {arg_subst, arg});
    }
    }
    throw LogicError("bad derivation node");
}

LT gen_norm(const Deriv& d, NameSupply& supply) {
    if (!d->ctx.empty())
        throw OpenDerivation("derivation context is not empty");
    if (!free_type_vars(d->ty).empty())
        throw OpenDerivation("derived type has free type variables");
    Deriv d2 = freshen_type_binders(d, supply);
    GenContext ctx(supply);
    LT adeq = gen_adeq(d2, ctx);
    LT isrc = gen_isrc(d2->ty, ctx);
    return lt_app(isrc2(isrc), {encode_lam(d2->subject), adeq});
}

} // namespace fbar
