#include "fbar/systemf.hpp"

#include <cctype>
#include <sstream>

namespace fbar {

FType ft_var(std::string name) {
    auto n = std::make_shared<FTypeNode>();
    n->kind = FTypeKind::Var;
    n->name = std::move(name);
    return n;
}

FType ft_arrow(FType dom, FType cod) {
    auto n = std::make_shared<FTypeNode>();
    n->kind = FTypeKind::Arrow;
    n->a = std::move(dom);
    n->b = std::move(cod);
    return n;
}

FType ft_forall(std::string binder, FType body) {
    auto n = std::make_shared<FTypeNode>();
    n->kind = FTypeKind::Forall;
    n->name = std::move(binder);
    n->a = std::move(body);
    return n;
}

namespace {

void collect_free(const FType& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
    case FTypeKind::Var:
        if (!bound.count(t->name)) out.insert(t->name);
        return;
    case FTypeKind::Arrow:
        collect_free(t->a, bound, out);
        collect_free(t->b, bound, out);
        return;
    case FTypeKind::Forall: {
        bool had = bound.count(t->name) > 0;
        bound.insert(t->name);
        collect_free(t->a, bound, out);
        if (!had) bound.erase(t->name);
        return;
    }
    }
}

bool alpha_eq_rec(const FType& s, const FType& t,
                  std::vector<std::pair<std::string, std::string>>& env) {
    if (s->kind != t->kind) return false;
    switch (s->kind) {
    case FTypeKind::Var: {
        // Walk the binder correspondence from the innermost scope outward.
        for (auto it = env.rbegin(); it != env.rend(); ++it) {
            bool ls = it->first == s->name, rt = it->second == t->name;
            if (ls || rt) return ls && rt;
        }
        return s->name == t->name;
    }
    case FTypeKind::Arrow:
        return alpha_eq_rec(s->a, t->a, env) && alpha_eq_rec(s->b, t->b, env);
    case FTypeKind::Forall: {
        env.emplace_back(s->name, t->name);
        bool ok = alpha_eq_rec(s->a, t->a, env);
        env.pop_back();
        return ok;
    }
    }
    return false;
}

std::string pick_fresh(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base)) return base;
    for (int i = 1;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!avoid.count(cand)) return cand;
    }
}

} // namespace

std::set<std::string> free_type_vars(const FType& t) {
    std::set<std::string> bound, out;
    collect_free(t, bound, out);
    return out;
}

bool ftype_alpha_eq(const FType& s, const FType& t) {
    std::vector<std::pair<std::string, std::string>> env;
    return alpha_eq_rec(s, t, env);
}

FType type_subst(const FType& rho, const std::string& X, const FType& sigma) {
    switch (rho->kind) {
    case FTypeKind::Var:
        return rho->name == X ? sigma : rho;
    case FTypeKind::Arrow:
        return ft_arrow(type_subst(rho->a, X, sigma), type_subst(rho->b, X, sigma));
    case FTypeKind::Forall: {
        if (rho->name == X) return rho; // bound occurrence shadows
        auto fv_sigma = free_type_vars(sigma);
        if (fv_sigma.count(rho->name)) {
            // Capture: rename the binder away from sigma's and the body's
            // free variables before substituting.
            auto avoid = fv_sigma;
            auto fv_body = free_type_vars(rho->a);
            avoid.insert(fv_body.begin(), fv_body.end());
            avoid.insert(X);
            std::string fresh = pick_fresh(rho->name, avoid);
            FType renamed = type_subst(rho->a, rho->name, ft_var(fresh));
            return ft_forall(fresh, type_subst(renamed, X, sigma));
        }
        return ft_forall(rho->name, type_subst(rho->a, X, sigma));
    }
    }
    return rho;
}

// ---------------------------------------------------------------------------
// Type parsing/printing
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& src;
    std::size_t pos = 0;
    explicit Cursor(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("parse error at offset " + std::to_string(pos) + ": " + what);
    }
    bool lookahead_ident(const std::string& kw) {
        skip_ws();
        std::size_t p = pos;
        if (src.compare(p, kw.size(), kw) != 0) return false;
        std::size_t end = p + kw.size();
        if (end < src.size() &&
            (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_'))
            return false;
        return true;
    }
    bool eat_ident(const std::string& kw) {
        if (!lookahead_ident(kw)) return false;
        pos += kw.size();
        return true;
    }
    std::string ident() {
        skip_ws();
        if (pos >= src.size() || !std::isalpha(static_cast<unsigned char>(src[pos])))
            fail("expected identifier");
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        return src.substr(start, pos - start);
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
};

FType parse_type_rec(Cursor& c);

FType parse_type_atom(Cursor& c) {
    if (c.peek() == '(') {
        ++c.pos;
        FType t = parse_type_rec(c);
        c.expect(')');
        return t;
    }
    if (c.eat_ident("forall")) {
        std::string x = c.ident();
        c.expect('.');
        return ft_forall(std::move(x), parse_type_rec(c));
    }
    return ft_var(c.ident());
}

FType parse_type_rec(Cursor& c) {
    FType left = parse_type_atom(c);
    c.skip_ws();
    if (c.pos + 1 < c.src.size() && c.src[c.pos] == '-' && c.src[c.pos + 1] == '>') {
        c.pos += 2;
        return ft_arrow(std::move(left), parse_type_rec(c));
    }
    return left;
}

void print_type(std::ostringstream& os, const FType& t, bool atom_pos) {
    switch (t->kind) {
    case FTypeKind::Var:
        os << t->name;
        return;
    case FTypeKind::Arrow:
        if (atom_pos) os << '(';
        print_type(os, t->a, true);
        os << " -> ";
        print_type(os, t->b, false);
        if (atom_pos) os << ')';
        return;
    case FTypeKind::Forall:
        if (atom_pos) os << '(';
        os << "forall " << t->name << ". ";
        print_type(os, t->a, false);
        if (atom_pos) os << ')';
        return;
    }
}

} // namespace

std::string ftype_to_string(const FType& t) {
    std::ostringstream os;
    print_type(os, t, false);
    return os.str();
}

FType parse_ftype(const std::string& text) {
    Cursor c(text);
    FType t = parse_type_rec(c);
    if (!c.eof()) c.fail("trailing input");
    return t;
}

// ---------------------------------------------------------------------------
// Church terms
// ---------------------------------------------------------------------------

Church ch_var(int n) {
    auto t = std::make_shared<ChurchNode>();
    t->kind = ChurchKind::Var;
    t->index = n;
    return t;
}

Church ch_lam(FType annot, Church body) {
    auto t = std::make_shared<ChurchNode>();
    t->kind = ChurchKind::Lam;
    t->ty = std::move(annot);
    t->a = std::move(body);
    return t;
}

Church ch_app(Church fun, Church arg) {
    auto t = std::make_shared<ChurchNode>();
    t->kind = ChurchKind::App;
    t->a = std::move(fun);
    t->b = std::move(arg);
    return t;
}

Church ch_tyabs(std::string binder, Church body) {
    auto t = std::make_shared<ChurchNode>();
    t->kind = ChurchKind::TyAbs;
    t->tyvar = std::move(binder);
    t->a = std::move(body);
    return t;
}

Church ch_tyapp(Church body, FType arg) {
    auto t = std::make_shared<ChurchNode>();
    t->kind = ChurchKind::TyApp;
    t->ty = std::move(arg);
    t->a = std::move(body);
    return t;
}

Lam erase(const Church& t) {
    switch (t->kind) {
    case ChurchKind::Var: return lam_var(t->index);
    case ChurchKind::Lam: return lam_abs(erase(t->a));
    case ChurchKind::App: return lam_app(erase(t->a), erase(t->b));
    case ChurchKind::TyAbs:
    case ChurchKind::TyApp: return erase(t->a);
    }
    return nullptr;
}

namespace {

Church parse_church_rec(Cursor& c);

Church parse_church_atom(Cursor& c) {
    char p = c.peek();
    if (p == '(') {
        ++c.pos;
        Church t = parse_church_rec(c);
        c.expect(')');
        return t;
    }
    if (p == '#') {
        ++c.pos;
        if (c.pos >= c.src.size() || !std::isdigit(static_cast<unsigned char>(c.src[c.pos])))
            c.fail("expected index after '#'");
        int n = 0;
        while (c.pos < c.src.size() && std::isdigit(static_cast<unsigned char>(c.src[c.pos]))) {
            n = n * 10 + (c.src[c.pos] - '0');
            ++c.pos;
        }
        return ch_var(n);
    }
    c.fail("expected '#n' or '('");
}

bool at_prefix_form(Cursor& c) {
    return c.lookahead_ident("fn") || c.lookahead_ident("tfn");
}

Church parse_prefix_form(Cursor& c) {
    if (c.eat_ident("fn")) {
        c.expect('(');
        FType ann = parse_type_rec(c);
        c.expect(')');
        return ch_lam(std::move(ann), parse_church_rec(c));
    }
    if (c.eat_ident("tfn")) {
        std::string x = c.ident();
        c.expect('.');
        return ch_tyabs(std::move(x), parse_church_rec(c));
    }
    c.fail("expected 'fn' or 'tfn'");
}

Church parse_church_rec(Cursor& c) {
    if (at_prefix_form(c)) return parse_prefix_form(c);
    Church cur = parse_church_atom(c);
    while (!c.eof()) {
        char p = c.peek();
        if (p == ')') break;
        if (p == '[') {
            ++c.pos;
            FType arg = parse_type_rec(c);
            c.expect(']');
            cur = ch_tyapp(std::move(cur), std::move(arg));
            continue;
        }
        if (at_prefix_form(c)) {
            // A trailing abstraction is the last argument of the chain.
            cur = ch_app(std::move(cur), parse_prefix_form(c));
            break;
        }
        cur = ch_app(std::move(cur), parse_church_atom(c));
    }
    return cur;
}

bool church_is_prefixy(const Church& t) {
    return t->kind == ChurchKind::Lam || t->kind == ChurchKind::TyAbs;
}

void print_church(std::ostringstream& os, const Church& t, bool atom_pos) {
    switch (t->kind) {
    case ChurchKind::Var:
        os << '#' << t->index;
        return;
    case ChurchKind::Lam:
        if (atom_pos) os << '(';
        os << "fn (" << ftype_to_string(t->ty) << ") ";
        print_church(os, t->a, false);
        if (atom_pos) os << ')';
        return;
    case ChurchKind::TyAbs:
        if (atom_pos) os << '(';
        os << "tfn " << t->tyvar << ". ";
        print_church(os, t->a, false);
        if (atom_pos) os << ')';
        return;
    case ChurchKind::App:
        if (atom_pos) os << '(';
        print_church(os, t->a, church_is_prefixy(t->a));
        os << ' ';
        print_church(os, t->b, t->b->kind != ChurchKind::Var);
        if (atom_pos) os << ')';
        return;
    case ChurchKind::TyApp:
        if (atom_pos) os << '(';
        print_church(os, t->a, church_is_prefixy(t->a));
        os << " [" << ftype_to_string(t->ty) << ']';
        if (atom_pos) os << ')';
        return;
    }
}

} // namespace

std::string church_to_string(const Church& t) {
    std::ostringstream os;
    print_church(os, t, false);
    return os.str();
}

Church parse_church(const std::string& text) {
    Cursor c(text);
    Church t = parse_church_rec(c);
    if (!c.eof()) c.fail("trailing input");
    return t;
}

// ---------------------------------------------------------------------------
// Elaboration and derivation checking
// ---------------------------------------------------------------------------

namespace {

std::set<std::string> ctx_free_vars(const std::vector<FType>& ctx) {
    std::set<std::string> out;
    for (const auto& ty : ctx) {
        auto fv = free_type_vars(ty);
        out.insert(fv.begin(), fv.end());
    }
    return out;
}

Deriv make_deriv(RuleKind rule, std::vector<FType> ctx, Lam subject, FType ty) {
    auto d = std::make_shared<DerivNode>();
    d->rule = rule;
    d->ctx = std::move(ctx);
    d->subject = std::move(subject);
    d->ty = std::move(ty);
    return d;
}

} // namespace

Deriv elaborate(const Church& t, const std::vector<FType>& ctx) {
    switch (t->kind) {
    case ChurchKind::Var: {
        if (t->index < 0 || t->index >= static_cast<int>(ctx.size()))
            throw ElabError("UnboundIndex", "#" + std::to_string(t->index) +
                                                " in context of length " +
                                                std::to_string(ctx.size()));
        auto d = make_deriv(RuleKind::Axiom, ctx, lam_var(t->index),
                            ctx[static_cast<std::size_t>(t->index)]);
        auto m = std::const_pointer_cast<DerivNode>(d);
        m->index = t->index;
        return d;
    }
    case ChurchKind::Lam: {
        std::vector<FType> inner;
        inner.push_back(t->ty);
        inner.insert(inner.end(), ctx.begin(), ctx.end());
        Deriv p = elaborate(t->a, inner);
        auto d = make_deriv(RuleKind::AbsR, ctx, lam_abs(p->subject),
                            ft_arrow(t->ty, p->ty));
        std::const_pointer_cast<DerivNode>(d)->p1 = p;
        return d;
    }
    case ChurchKind::App: {
        Deriv f = elaborate(t->a, ctx);
        Deriv a = elaborate(t->b, ctx);
        if (f->ty->kind != FTypeKind::Arrow)
            throw ElabError("NotAnArrow", "application head has type " + ftype_to_string(f->ty));
        if (!ftype_alpha_eq(f->ty->a, a->ty))
            throw ElabError("TypeMismatch", "expected argument of type " +
                                                ftype_to_string(f->ty->a) + ", got " +
                                                ftype_to_string(a->ty));
        auto d = make_deriv(RuleKind::AppR, ctx, lam_app(f->subject, a->subject), f->ty->b);
        auto m = std::const_pointer_cast<DerivNode>(d);
        m->p1 = f;
        m->p2 = a;
        return d;
    }
    case ChurchKind::TyAbs: {
        if (ctx_free_vars(ctx).count(t->tyvar))
            throw ElabError("EscapingTypeVar",
                            t->tyvar + " occurs free in the context");
        Deriv p = elaborate(t->a, ctx);
        auto d = make_deriv(RuleKind::ForallIntro, ctx, p->subject,
                            ft_forall(t->tyvar, p->ty));
        auto m = std::const_pointer_cast<DerivNode>(d);
        m->tyvar = t->tyvar;
        m->p1 = p;
        return d;
    }
    case ChurchKind::TyApp: {
        Deriv p = elaborate(t->a, ctx);
        if (p->ty->kind != FTypeKind::Forall)
            throw ElabError("NotAForall", "type application head has type " +
                                              ftype_to_string(p->ty));
        auto d = make_deriv(RuleKind::ForallElim, ctx, p->subject,
                            type_subst(p->ty->a, p->ty->name, t->ty));
        auto m = std::const_pointer_cast<DerivNode>(d);
        m->tyarg = t->ty;
        m->p1 = p;
        return d;
    }
    }
    throw ElabError("UnboundIndex", "unreachable");
}

namespace {

bool ctx_eq(const std::vector<FType>& a, const std::vector<FType>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!ftype_alpha_eq(a[i], b[i])) return false;
    return true;
}

std::string check_rec(const Deriv& d, const std::string& path) {
    auto bad = [&](const std::string& why) { return path + ": " + why; };
    switch (d->rule) {
    case RuleKind::Axiom: {
        if (d->p1 || d->p2) return bad("axiom with premises");
        if (d->index < 0 || d->index >= static_cast<int>(d->ctx.size()))
            return bad("axiom index out of range");
        if (!ftype_alpha_eq(d->ty, d->ctx[static_cast<std::size_t>(d->index)]))
            return bad("axiom type does not match context entry");
        if (d->subject->kind != LamKind::Var || d->subject->index != d->index)
            return bad("axiom subject is not the judged variable");
        return "";
    }
    case RuleKind::AbsR: {
        if (!d->p1 || d->p2) return bad("abstraction needs exactly one premise");
        if (d->ty->kind != FTypeKind::Arrow) return bad("abstraction type is not an arrow");
        std::vector<FType> inner;
        inner.push_back(d->ty->a);
        inner.insert(inner.end(), d->ctx.begin(), d->ctx.end());
        if (!ctx_eq(d->p1->ctx, inner)) return bad("premise context does not extend by the domain");
        if (!ftype_alpha_eq(d->p1->ty, d->ty->b)) return bad("premise type is not the codomain");
        if (d->subject->kind != LamKind::Abs || !lam_eq(d->subject->a, d->p1->subject))
            return bad("subject is not the abstraction of the premise subject");
        return check_rec(d->p1, path + "/0");
    }
    case RuleKind::AppR: {
        if (!d->p1 || !d->p2) return bad("application needs two premises");
        if (!ctx_eq(d->p1->ctx, d->ctx) || !ctx_eq(d->p2->ctx, d->ctx))
            return bad("premise contexts differ from conclusion context");
        if (d->p1->ty->kind != FTypeKind::Arrow) return bad("function premise is not an arrow");
        if (!ftype_alpha_eq(d->p1->ty->a, d->p2->ty)) return bad("argument type mismatch");
        if (!ftype_alpha_eq(d->p1->ty->b, d->ty)) return bad("conclusion is not the codomain");
        if (d->subject->kind != LamKind::App || !lam_eq(d->subject->a, d->p1->subject) ||
            !lam_eq(d->subject->b, d->p2->subject))
            return bad("subject is not the application of the premise subjects");
        std::string r = check_rec(d->p1, path + "/0");
        if (!r.empty()) return r;
        return check_rec(d->p2, path + "/1");
    }
    case RuleKind::ForallIntro: {
        if (!d->p1 || d->p2) return bad("forall-intro needs exactly one premise");
        if (!ctx_eq(d->p1->ctx, d->ctx)) return bad("premise context differs");
        if (ctx_free_vars(d->ctx).count(d->tyvar))
            return bad("bound type variable occurs free in the context");
        if (!ftype_alpha_eq(d->ty, ft_forall(d->tyvar, d->p1->ty)))
            return bad("conclusion is not the generalization of the premise");
        if (!lam_eq(d->subject, d->p1->subject)) return bad("subject changed across forall-intro");
        return check_rec(d->p1, path + "/0");
    }
    case RuleKind::ForallElim: {
        if (!d->p1 || d->p2) return bad("forall-elim needs exactly one premise");
        if (!ctx_eq(d->p1->ctx, d->ctx)) return bad("premise context differs");
        if (d->p1->ty->kind != FTypeKind::Forall) return bad("premise is not a forall");
        if (!d->tyarg) return bad("missing type argument");
        if (!ftype_alpha_eq(d->ty, type_subst(d->p1->ty->a, d->p1->ty->name, d->tyarg)))
            return bad("conclusion is not the instantiated body");
        if (!lam_eq(d->subject, d->p1->subject)) return bad("subject changed across forall-elim");
        return check_rec(d->p1, path + "/0");
    }
    }
    return bad("unknown rule");
}

FType rename_type(const FType& t, std::vector<std::pair<std::string, std::string>>& ren) {
    switch (t->kind) {
    case FTypeKind::Var: {
        for (auto it = ren.rbegin(); it != ren.rend(); ++it)
            if (it->first == t->name) return ft_var(it->second);
        return t;
    }
    case FTypeKind::Arrow:
        return ft_arrow(rename_type(t->a, ren), rename_type(t->b, ren));
    case FTypeKind::Forall: {
        // A type-level binder shadows any pending renaming of the same name.
        ren.emplace_back(t->name, t->name);
        FType body = rename_type(t->a, ren);
        ren.pop_back();
        return ft_forall(t->name, body);
    }
    }
    return t;
}

void collect_type_names(const FType& t, std::set<std::string>& out) {
    if (!t) return;
    if (!t->name.empty()) out.insert(t->name);
    collect_type_names(t->a, out);
    collect_type_names(t->b, out);
}

void collect_deriv_names(const Deriv& d, std::set<std::string>& out) {
    if (!d) return;
    for (const auto& ty : d->ctx) collect_type_names(ty, out);
    collect_type_names(d->ty, out);
    collect_type_names(d->tyarg, out);
    if (!d->tyvar.empty()) out.insert(d->tyvar);
    collect_deriv_names(d->p1, out);
    collect_deriv_names(d->p2, out);
}

Deriv freshen_rec(const Deriv& d, NameSupply& supply, std::set<std::string>& avoid,
                  std::vector<std::pair<std::string, std::string>>& ren) {
    auto out = std::make_shared<DerivNode>();
    out->rule = d->rule;
    out->subject = d->subject;
    out->index = d->index;
    for (const auto& ty : d->ctx) out->ctx.push_back(rename_type(ty, ren));
    if (d->rule == RuleKind::ForallIntro) {
        std::string fresh;
        do {
            fresh = supply.fresh(d->tyvar);
        } while (avoid.count(fresh));
        avoid.insert(fresh);
        out->tyvar = fresh;
        ren.emplace_back(d->tyvar, fresh);
        out->p1 = freshen_rec(d->p1, supply, avoid, ren);
        ren.pop_back();
        out->ty = ft_forall(fresh, out->p1->ty);
        return out;
    }
    out->ty = rename_type(d->ty, ren);
    if (d->tyarg) out->tyarg = rename_type(d->tyarg, ren);
    if (d->p1) out->p1 = freshen_rec(d->p1, supply, avoid, ren);
    if (d->p2) out->p2 = freshen_rec(d->p2, supply, avoid, ren);
    return out;
}

const char* rule_name(RuleKind r) {
    switch (r) {
    case RuleKind::Axiom: return "Axiom";
    case RuleKind::AbsR: return "Abs";
    case RuleKind::AppR: return "App";
    case RuleKind::ForallIntro: return "ForallIntro";
    case RuleKind::ForallElim: return "ForallElim";
    }
    return "?";
}

void print_deriv(std::ostringstream& os, const Deriv& d, int depth) {
    for (int i = 0; i < depth; ++i) os << "  ";
    os << rule_name(d->rule) << "  ";
    for (std::size_t i = d->ctx.size(); i-- > 0;) {
        os << ftype_to_string(d->ctx[i]);
        if (i != 0) os << ", ";
    }
    os << " |- " << lam_to_string(d->subject) << " : " << ftype_to_string(d->ty) << '\n';
    if (d->p1) print_deriv(os, d->p1, depth + 1);
    if (d->p2) print_deriv(os, d->p2, depth + 1);
}

} // namespace

std::string check_derivation(const Deriv& d) { return check_rec(d, ""); }

Deriv freshen_type_binders(const Deriv& d, NameSupply& supply) {
    std::set<std::string> avoid;
    collect_deriv_names(d, avoid);
    std::vector<std::pair<std::string, std::string>> ren;
    return freshen_rec(d, supply, avoid, ren);
}

std::string deriv_to_string(const Deriv& d) {
    std::ostringstream os;
    print_deriv(os, d, 0);
    return os.str();
}

} // namespace fbar
