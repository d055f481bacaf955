#include "fbar/logic.hpp"

#include <map>
#include <optional>
#include <vector>

#include "fbar/ltlib.hpp"
#include "fbar/systemf.hpp"

namespace fbar {

bool sort_computational(Sort s) {
    return s == Sort::NatS || s == Sort::TermS || s == Sort::ListS;
}

std::string sort_to_string(Sort s) {
    switch (s) {
    case Sort::NatS: return "nat";
    case Sort::TermS: return "tm";
    case Sort::ListS: return "tms";
    case Sort::SetS: return "set";
    case Sort::BoolS: return "bool";
    }
    return "?";
}

namespace {

Fo mk_fo(FoKind k, Sort s, std::string name = {}, Fo a = nullptr, Fo b = nullptr) {
    auto n = std::make_shared<FoNode>();
    n->kind = k;
    n->sort = s;
    n->name = std::move(name);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

void expect_sort(const Fo& e, Sort s, const char* what) {
    if (e->sort != s) throw LogicError(std::string("sort mismatch in ") + what);
}

} // namespace

Fo fo_var(const std::string& name, Sort s) { return mk_fo(FoKind::Var, s, name); }

Fo fo_hole(Sort s) {
    if (s != Sort::TermS && s != Sort::BoolS) throw LogicError("hole must be tm or bool");
    return mk_fo(FoKind::Hole, s);
}

Fo fo_zero() { return mk_fo(FoKind::Zero, Sort::NatS); }

Fo fo_succ(const Fo& n) {
    expect_sort(n, Sort::NatS, "S");
    return mk_fo(FoKind::Succ, Sort::NatS, {}, n);
}

Fo fo_nat(unsigned long n) {
    Fo r = fo_zero();
    for (unsigned long i = 0; i < n; ++i) r = fo_succ(r);
    return r;
}

Fo fo_tmvar(const Fo& n) {
    expect_sort(n, Sort::NatS, "var");
    return mk_fo(FoKind::TmVar, Sort::TermS, {}, n);
}

Fo fo_tmabs(const Fo& t) {
    expect_sort(t, Sort::TermS, "abs");
    return mk_fo(FoKind::TmAbs, Sort::TermS, {}, t);
}

Fo fo_tmapp(const Fo& t, const Fo& l) {
    expect_sort(t, Sort::TermS, "app");
    expect_sort(l, Sort::ListS, "app");
    return mk_fo(FoKind::TmApp, Sort::TermS, {}, t, l);
}

Fo fo_tmsubst(const Fo& t, const Fo& l) {
    expect_sort(t, Sort::TermS, "subst");
    expect_sort(l, Sort::ListS, "subst");
    return mk_fo(FoKind::TmSubst, Sort::TermS, {}, t, l);
}

Fo fo_nil() { return mk_fo(FoKind::Nil, Sort::ListS); }

Fo fo_snoc(const Fo& l, const Fo& t) {
    expect_sort(l, Sort::ListS, "snoc");
    expect_sort(t, Sort::TermS, "snoc");
    return mk_fo(FoKind::Snoc, Sort::ListS, {}, l, t);
}

Fo fo_tt() { return mk_fo(FoKind::TT, Sort::BoolS); }
Fo fo_ff() { return mk_fo(FoKind::FF, Sort::BoolS); }

Fo fo_in(const Fo& t, const std::string& setvar) {
    expect_sort(t, Sort::TermS, "in");
    return mk_fo(FoKind::In, Sort::BoolS, setvar, t);
}

Fo fo_nsteps(const Fo& t, const Fo& n) {
    expect_sort(t, Sort::TermS, "N");
    expect_sort(n, Sort::NatS, "N");
    return mk_fo(FoKind::NN, Sort::BoolS, {}, t, n);
}

Fm fm_atom(const Fo& b) {
    expect_sort(b, Sort::BoolS, "atom");
    auto n = std::make_shared<FmNode>();
    n->kind = FmKind::Atom;
    n->atom = b;
    return n;
}

Fm fm_imp(const Fm& a, const Fm& b) {
    auto n = std::make_shared<FmNode>();
    n->kind = FmKind::Imp;
    n->a = a;
    n->b = b;
    return n;
}

Fm fm_and(const Fm& a, const Fm& b) {
    auto n = std::make_shared<FmNode>();
    n->kind = FmKind::And;
    n->a = a;
    n->b = b;
    return n;
}

Fm fm_forall(const std::string& v, Sort s, const Fm& body) {
    auto n = std::make_shared<FmNode>();
    n->kind = FmKind::Forall;
    n->var = v;
    n->var_sort = s;
    n->a = body;
    return n;
}

Fm fm_neg(const Fm& a) { return fm_imp(a, fm_atom(fo_ff())); }

Fm fm_iff(const Fm& a, const Fm& b) { return fm_and(fm_imp(a, b), fm_imp(b, a)); }

Fm fm_exists(const std::string& v, Sort s, const Fm& a) {
    return fm_neg(fm_forall(v, s, fm_neg(a)));
}

namespace {

void fo_free_rec(const Fo& e, VarSet& out) {
    if (!e) return;
    if (e->kind == FoKind::Var) out.insert({e->name, e->sort});
    if (e->kind == FoKind::In) out.insert({e->name, Sort::SetS});
    fo_free_rec(e->a, out);
    fo_free_rec(e->b, out);
}

void fm_free_rec(const Fm& f, VarSet& out) {
    switch (f->kind) {
    case FmKind::Atom: fo_free_rec(f->atom, out); break;
    case FmKind::Imp:
    case FmKind::And:
        fm_free_rec(f->a, out);
        fm_free_rec(f->b, out);
        break;
    case FmKind::Forall: {
        VarSet inner;
        fm_free_rec(f->a, inner);
        inner.erase({f->var, f->var_sort});
        out.insert(inner.begin(), inner.end());
        break;
    }
    }
}

void fo_all_names(const Fo& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == FoKind::Var || e->kind == FoKind::In) out.insert(e->name);
    fo_all_names(e->a, out);
    fo_all_names(e->b, out);
}

void fm_all_names(const Fm& f, std::set<std::string>& out) {
    switch (f->kind) {
    case FmKind::Atom: fo_all_names(f->atom, out); break;
    case FmKind::Imp:
    case FmKind::And:
        fm_all_names(f->a, out);
        fm_all_names(f->b, out);
        break;
    case FmKind::Forall:
        out.insert(f->var);
        fm_all_names(f->a, out);
        break;
    }
}

std::string prime_fresh(const std::string& base, const std::set<std::string>& avoid) {
    std::string s = base;
    while (avoid.count(s)) s += "'";
    return s;
}

} // namespace

VarSet fo_free(const Fo& e) {
    VarSet out;
    fo_free_rec(e, out);
    return out;
}

VarSet fm_free(const Fm& f) {
    VarSet out;
    fm_free_rec(f, out);
    return out;
}

std::set<std::string> fm_free_names(const Fm& f) {
    std::set<std::string> out;
    for (auto& [n, s] : fm_free(f)) out.insert(n);
    return out;
}

bool fm_has_hole(const Fm& f) {
    switch (f->kind) {
    case FmKind::Atom: {
        std::vector<Fo> st{f->atom};
        while (!st.empty()) {
            Fo e = st.back();
            st.pop_back();
            if (!e) continue;
            if (e->kind == FoKind::Hole) return true;
            st.push_back(e->a);
            st.push_back(e->b);
        }
        return false;
    }
    case FmKind::Imp:
    case FmKind::And: return fm_has_hole(f->a) || fm_has_hole(f->b);
    case FmKind::Forall: return fm_has_hole(f->a);
    }
    return false;
}

bool fo_eq(const Fo& x, const Fo& y) {
    if (x.get() == y.get()) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->sort != y->sort || x->name != y->name) return false;
    return fo_eq(x->a, y->a) && fo_eq(x->b, y->b);
}

namespace {

using RenPairs = std::vector<std::pair<std::pair<std::string, Sort>,
                                       std::pair<std::string, Sort>>>;

bool var_matches(const RenPairs& pairs, const std::string& xn, const std::string& yn, Sort s) {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
        bool lx = it->first == std::make_pair(xn, s);
        bool ly = it->second == std::make_pair(yn, s);
        if (lx || ly) return lx && ly;
    }
    return xn == yn;
}

bool fo_alpha_rec(const Fo& x, const Fo& y, const RenPairs& pairs) {
    if (!x || !y) return !x && !y;
    if (x->kind != y->kind || x->sort != y->sort) return false;
    if (x->kind == FoKind::Var && !var_matches(pairs, x->name, y->name, x->sort)) return false;
    if (x->kind == FoKind::In && !var_matches(pairs, x->name, y->name, Sort::SetS)) return false;
    return fo_alpha_rec(x->a, y->a, pairs) && fo_alpha_rec(x->b, y->b, pairs);
}

bool fm_alpha_rec(const Fm& x, const Fm& y, RenPairs& pairs) {
    if (x->kind != y->kind) return false;
    switch (x->kind) {
    case FmKind::Atom: return fo_alpha_rec(x->atom, y->atom, pairs);
    case FmKind::Imp:
    case FmKind::And:
        return fm_alpha_rec(x->a, y->a, pairs) && fm_alpha_rec(x->b, y->b, pairs);
    case FmKind::Forall: {
        if (x->var_sort != y->var_sort) return false;
        pairs.push_back({{x->var, x->var_sort}, {y->var, y->var_sort}});
        bool ok = fm_alpha_rec(x->a, y->a, pairs);
        pairs.pop_back();
        return ok;
    }
    }
    return false;
}

} // namespace

bool fm_alpha_eq(const Fm& x, const Fm& y) {
    RenPairs pairs;
    return fm_alpha_rec(x, y, pairs);
}

std::string fo_to_string(const Fo& e) {
    switch (e->kind) {
    case FoKind::Var: return e->name;
    case FoKind::Hole: return "_";
    case FoKind::Zero: return "0";
    case FoKind::Succ: return "S " + fo_to_string(e->a);
    case FoKind::TmVar: return "var(" + fo_to_string(e->a) + ")";
    case FoKind::TmAbs: return "abs(" + fo_to_string(e->a) + ")";
    case FoKind::TmApp: return "app(" + fo_to_string(e->a) + ", " + fo_to_string(e->b) + ")";
    case FoKind::TmSubst:
        return "subst(" + fo_to_string(e->a) + ", " + fo_to_string(e->b) + ")";
    case FoKind::Nil: return "nil";
    case FoKind::Snoc: return "snoc(" + fo_to_string(e->a) + ", " + fo_to_string(e->b) + ")";
    case FoKind::TT: return "tt";
    case FoKind::FF: return "ff";
    case FoKind::In: return "in(" + fo_to_string(e->a) + ", " + e->name + ")";
    case FoKind::NN: return "N(" + fo_to_string(e->a) + ", " + fo_to_string(e->b) + ")";
    }
    return "?";
}

std::string fm_to_string(const Fm& f) {
    switch (f->kind) {
    case FmKind::Atom: return fo_to_string(f->atom);
    case FmKind::Imp: return "(" + fm_to_string(f->a) + " -> " + fm_to_string(f->b) + ")";
    case FmKind::And: return "(" + fm_to_string(f->a) + " & " + fm_to_string(f->b) + ")";
    case FmKind::Forall:
        return "forall " + f->var + ":" + sort_to_string(f->var_sort) + ". " +
               fm_to_string(f->a);
    }
    return "?";
}

Fm fm_norm(const Fo& t) {
    std::set<std::string> avoid;
    fo_all_names(t, avoid);
    std::string n = prime_fresh("n", avoid);
    return fm_neg(fm_forall(n, Sort::NatS, fm_atom(fo_nsteps(t, fo_var(n, Sort::NatS)))));
}

// ---- capture-avoiding template instantiation -------------------------------

namespace {

using Renaming = std::map<std::pair<std::string, Sort>, std::string>;

Fo plug_fo(const Fo& e, const Fo* bool_elem, const Fo* term_elem, const Renaming& ren) {
    if (!e) return nullptr;
    switch (e->kind) {
    case FoKind::Hole:
        if (e->sort == Sort::TermS && term_elem) return *term_elem;
        if (e->sort == Sort::BoolS && bool_elem) return *bool_elem;
        return e;
    case FoKind::Var: {
        auto it = ren.find({e->name, e->sort});
        if (it != ren.end()) return fo_var(it->second, e->sort);
        return e;
    }
    case FoKind::In: {
        Fo t = plug_fo(e->a, bool_elem, term_elem, ren);
        std::string x = e->name;
        auto it = ren.find({x, Sort::SetS});
        if (it != ren.end()) x = it->second;
        return fo_in(t, x);
    }
    default: {
        Fo a = plug_fo(e->a, bool_elem, term_elem, ren);
        Fo b = plug_fo(e->b, bool_elem, term_elem, ren);
        if (a.get() == e->a.get() && b.get() == e->b.get()) return e;
        return mk_fo(e->kind, e->sort, e->name, a, b);
    }
    }
}

Fm plug_fm(const Fm& f, const Fo* bool_elem, const Fo* term_elem,
           const std::set<std::string>& elem_free, Renaming& ren,
           std::set<std::string>& used) {
    switch (f->kind) {
    case FmKind::Atom: return fm_atom(plug_fo(f->atom, bool_elem, term_elem, ren));
    case FmKind::Imp:
    case FmKind::And: {
        Fm a = plug_fm(f->a, bool_elem, term_elem, elem_free, ren, used);
        Fm b = plug_fm(f->b, bool_elem, term_elem, elem_free, ren, used);
        return f->kind == FmKind::Imp ? fm_imp(a, b) : fm_and(a, b);
    }
    case FmKind::Forall: {
        std::string v = f->var;
        auto key = std::make_pair(v, f->var_sort);
        auto saved = ren.find(key) != ren.end()
                         ? std::optional<std::string>(ren[key])
                         : std::nullopt;
        if (elem_free.count(v)) {
            std::set<std::string> avoid = used;
            avoid.insert(elem_free.begin(), elem_free.end());
            std::string v2 = prime_fresh(v, avoid);
            used.insert(v2);
            ren[key] = v2;
            Fm body = plug_fm(f->a, bool_elem, term_elem, elem_free, ren, used);
            if (saved) ren[key] = *saved; else ren.erase(key);
            return fm_forall(v2, f->var_sort, body);
        }
        // The binder shadows any outer renaming of the same variable.
        bool had = saved.has_value();
        if (had) ren.erase(key);
        Fm body = plug_fm(f->a, bool_elem, term_elem, elem_free, ren, used);
        if (had) ren[key] = *saved;
        return fm_forall(v, f->var_sort, body);
    }
    }
    throw LogicError("bad formula node");
}

Fm run_plug(const Fm& body, const Fo* bool_elem, const Fo* term_elem) {
    std::set<std::string> elem_free;
    if (bool_elem) fo_all_names(*bool_elem, elem_free);
    if (term_elem) fo_all_names(*term_elem, elem_free);
    std::set<std::string> used;
    fm_all_names(body, used);
    Renaming ren;
    return plug_fm(body, bool_elem, term_elem, elem_free, ren, used);
}

} // namespace

Fm instantiate(const Formula1& f, const Fo& t) {
    expect_sort(t, Sort::TermS, "instantiate");
    return run_plug(f.body, nullptr, &t);
}

Fm instantiate2(const Formula1& f, const Fo& b, const Fo& t) {
    expect_sort(b, Sort::BoolS, "instantiate2");
    expect_sort(t, Sort::TermS, "instantiate2");
    return run_plug(f.body, &b, &t);
}

namespace {

Fm apply2_rec(const Fm& f, const std::string& setvar, const Formula1& phi,
              const std::set<std::string>& phi_free, Renaming& ren,
              std::set<std::string>& used, bool shadowed) {
    switch (f->kind) {
    case FmKind::Atom: {
        Fo a = plug_fo(f->atom, nullptr, nullptr, ren);
        if (!shadowed && a->kind == FoKind::In && a->name == setvar)
            return instantiate(phi, a->a);
        return fm_atom(a);
    }
    case FmKind::Imp:
    case FmKind::And: {
        Fm a = apply2_rec(f->a, setvar, phi, phi_free, ren, used, shadowed);
        Fm b = apply2_rec(f->b, setvar, phi, phi_free, ren, used, shadowed);
        return f->kind == FmKind::Imp ? fm_imp(a, b) : fm_and(a, b);
    }
    case FmKind::Forall: {
        bool now_shadowed =
            shadowed || (f->var_sort == Sort::SetS && f->var == setvar);
        std::string v = f->var;
        auto key = std::make_pair(v, f->var_sort);
        auto saved = ren.find(key) != ren.end()
                         ? std::optional<std::string>(ren[key])
                         : std::nullopt;
        if (phi_free.count(v)) {
            std::set<std::string> avoid = used;
            avoid.insert(phi_free.begin(), phi_free.end());
            std::string v2 = prime_fresh(v, avoid);
            used.insert(v2);
            ren[key] = v2;
            Fm body = apply2_rec(f->a, setvar, phi, phi_free, ren, used, now_shadowed);
            if (saved) ren[key] = *saved; else ren.erase(key);
            return fm_forall(v2, f->var_sort, body);
        }
        bool had = saved.has_value();
        if (had) ren.erase(key);
        Fm body = apply2_rec(f->a, setvar, phi, phi_free, ren, used, now_shadowed);
        if (had) ren[key] = *saved;
        return fm_forall(v, f->var_sort, body);
    }
    }
    throw LogicError("bad formula node");
}

} // namespace

Fm apply2(const Formula2& f, const Formula1& phi) {
    std::set<std::string> phi_free;
    fm_all_names(phi.body, phi_free);
    std::set<std::string> used;
    fm_all_names(f.body, used);
    Renaming ren;
    return apply2_rec(f.body, f.setvar, phi, phi_free, ren, used, false);
}

Formula1 pvar_formula(const std::string& setvar) {
    return {fm_atom(fo_in(fo_hole(Sort::TermS), setvar))};
}

Formula1 norm_formula() { return {fm_norm(fo_hole(Sort::TermS))}; }

namespace {

std::string supply_fresh(NameSupply& supply, const std::string& base,
                         const std::set<std::string>& avoid) {
    std::string s;
    do {
        s = supply.fresh(base);
    } while (avoid.count(s));
    return s;
}

} // namespace

Fm redcand_formula(const Formula1& phi, NameSupply& supply) {
    std::set<std::string> avoid;
    fm_all_names(phi.body, avoid);
    auto tv = [](const std::string& n) { return fo_var(n, Sort::TermS); };
    std::string l1 = supply_fresh(supply, "l", avoid);
    std::string a2 = supply_fresh(supply, "a", avoid);
    std::string a3 = supply_fresh(supply, "a", avoid);
    std::string b3 = supply_fresh(supply, "b", avoid);
    std::string l3 = supply_fresh(supply, "l", avoid);

    Fm c1 = fm_forall(l1, Sort::ListS,
                      instantiate(phi, fo_tmapp(fo_tmvar(fo_zero()),
                                                fo_var(l1, Sort::ListS))));
    Fm c2 = fm_forall(a2, Sort::TermS,
                      fm_imp(instantiate(phi, tv(a2)), fm_norm(tv(a2))));
    Fo contracted = fo_tmapp(fo_tmsubst(tv(a3), fo_snoc(fo_nil(), tv(b3))),
                             fo_var(l3, Sort::ListS));
    Fo redex = fo_tmapp(fo_tmapp(fo_tmabs(tv(a3)), fo_snoc(fo_nil(), tv(b3))),
                        fo_var(l3, Sort::ListS));
    Fm c3 = fm_forall(
        a3, Sort::TermS,
        fm_forall(b3, Sort::TermS,
                  fm_forall(l3, Sort::ListS,
                            fm_imp(instantiate(phi, contracted),
                                   instantiate(phi, redex)))));
    return fm_and(fm_and(c1, c2), c3);
}

Formula1 rc_formula(const FType& rho, NameSupply& supply) {
    switch (rho->kind) {
    case FTypeKind::Var:
        return pvar_formula(rho->name);
    case FTypeKind::Arrow: {
        Formula1 dom = rc_formula(rho->a, supply);
        Formula1 cod = rc_formula(rho->b, supply);
        std::set<std::string> avoid;
        fm_all_names(dom.body, avoid);
        fm_all_names(cod.body, avoid);
        std::string a = supply_fresh(supply, "a", avoid);
        Fo av = fo_var(a, Sort::TermS);
        Fo applied = fo_tmapp(fo_hole(Sort::TermS), fo_snoc(fo_nil(), av));
        return {fm_forall(a, Sort::TermS,
                          fm_imp(instantiate(dom, av), instantiate(cod, applied)))};
    }
    case FTypeKind::Forall: {
        Formula1 body = rc_formula(rho->a, supply);
        Fm rc = redcand_formula(pvar_formula(rho->name), supply);
        return {fm_forall(rho->name, Sort::SetS, fm_imp(rc, body.body))};
    }
    }
    throw LogicError("bad type node");
}

LTType erase_type(const Fm& f) {
    switch (f->kind) {
    case FmKind::Atom: return nat_t();
    case FmKind::Imp: return arrow_t(erase_type(f->a), erase_type(f->b));
    case FmKind::And: return prod_t(erase_type(f->a), erase_type(f->b));
    case FmKind::Forall:
        switch (f->var_sort) {
        case Sort::NatS: return arrow_t(nat_t(), erase_type(f->a));
        case Sort::TermS: return arrow_t(lam_t(), erase_type(f->a));
        case Sort::ListS: return arrow_t(lamlist_t(), erase_type(f->a));
        case Sort::SetS:
        case Sort::BoolS: return erase_type(f->a);
        }
    }
    throw LogicError("bad formula node");
}

namespace {

LTType erase_type_at_rec(const Fm& f, const std::string& setvar, const LTType& tx,
                         bool shadowed) {
    switch (f->kind) {
    case FmKind::Atom:
        if (!shadowed && f->atom->kind == FoKind::In && f->atom->name == setvar)
            return tx;
        return nat_t();
    case FmKind::Imp:
        return arrow_t(erase_type_at_rec(f->a, setvar, tx, shadowed),
                       erase_type_at_rec(f->b, setvar, tx, shadowed));
    case FmKind::And:
        return prod_t(erase_type_at_rec(f->a, setvar, tx, shadowed),
                      erase_type_at_rec(f->b, setvar, tx, shadowed));
    case FmKind::Forall: {
        bool sh = shadowed || (f->var_sort == Sort::SetS && f->var == setvar);
        LTType inner = erase_type_at_rec(f->a, setvar, tx, sh);
        switch (f->var_sort) {
        case Sort::NatS: return arrow_t(nat_t(), inner);
        case Sort::TermS: return arrow_t(lam_t(), inner);
        case Sort::ListS: return arrow_t(lamlist_t(), inner);
        case Sort::SetS:
        case Sort::BoolS: return inner;
        }
    }
    }
    throw LogicError("bad formula node");
}

} // namespace

LTType erase_type_at(const Fm& f, const std::string& setvar, const LTType& tx) {
    return erase_type_at_rec(f, setvar, tx, false);
}

LT erase_foterm(const Fo& e) {
    switch (e->kind) {
    case FoKind::Var:
        if (!sort_computational(e->sort))
            throw LogicError("cannot erase a variable of sort " + sort_to_string(e->sort));
        return lt_var(e->name);
    case FoKind::Zero: return lt_const(LTConst::Zero);
    case FoKind::Succ: return lt_app(lt_const(LTConst::Succ), erase_foterm(e->a));
    case FoKind::TmVar: return lt_app(lt_const(LTConst::LVar), erase_foterm(e->a));
    case FoKind::TmAbs: return lt_app(lt_const(LTConst::LAbs), erase_foterm(e->a));
    case FoKind::TmApp:
        return lt_app(build_listapp(), {erase_foterm(e->a), erase_foterm(e->b)});
    case FoKind::TmSubst:
        return lt_app(build_lsubst(),
                      {erase_foterm(e->a), lt_const(LTConst::Zero), erase_foterm(e->b)});
    case FoKind::Nil: return lt_const(LTConst::Nil);
    case FoKind::Snoc:
        return lt_app(lt_const(LTConst::Cons), {erase_foterm(e->a), erase_foterm(e->b)});
    default:
        throw LogicError("cannot erase a non-computational first-order term");
    }
}

} // namespace fbar
