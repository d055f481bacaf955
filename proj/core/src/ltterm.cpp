#include "fbar/ltterm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fbar {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

namespace {

LTType make_base(LTTypeKind k) {
    auto n = std::make_shared<LTTypeNode>();
    n->kind = k;
    return n;
}

} // namespace

LTType nat_t() {
    static LTType t = make_base(LTTypeKind::Nat);
    return t;
}
LTType lam_t() {
    static LTType t = make_base(LTTypeKind::Lam);
    return t;
}
LTType lamlist_t() {
    static LTType t = make_base(LTTypeKind::LamList);
    return t;
}

LTType arrow_t(LTType dom, LTType cod) {
    auto n = std::make_shared<LTTypeNode>();
    n->kind = LTTypeKind::Arrow;
    n->a = std::move(dom);
    n->b = std::move(cod);
    return n;
}

LTType prod_t(LTType left, LTType right) {
    auto n = std::make_shared<LTTypeNode>();
    n->kind = LTTypeKind::Prod;
    n->a = std::move(left);
    n->b = std::move(right);
    return n;
}

LTType partial_t(LTType tau) { return arrow_t(lam_t(), prod_t(nat_t(), std::move(tau))); }

bool lt_type_eq(const LTType& s, const LTType& t) {
    if (s.get() == t.get()) return true;
    if (!s || !t) return false;
    if (s->kind != t->kind) return false;
    switch (s->kind) {
    case LTTypeKind::Nat:
    case LTTypeKind::Lam:
    case LTTypeKind::LamList: return true;
    case LTTypeKind::Arrow:
    case LTTypeKind::Prod: return lt_type_eq(s->a, t->a) && lt_type_eq(s->b, t->b);
    }
    return false;
}

std::string lt_type_to_string(const LTType& t) {
    switch (t->kind) {
    case LTTypeKind::Nat: return "i";
    case LTTypeKind::Lam: return "tm";
    case LTTypeKind::LamList: return "tms";
    case LTTypeKind::Arrow:
        return "(-> " + lt_type_to_string(t->a) + " " + lt_type_to_string(t->b) + ")";
    case LTTypeKind::Prod:
        return "(* " + lt_type_to_string(t->a) + " " + lt_type_to_string(t->b) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Free-variable bookkeeping (shared sorted vectors, computed on construction)
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const NameSet> empty_names() {
    static auto e = std::make_shared<const NameSet>();
    return e;
}

std::shared_ptr<const NameSet> singleton_names(const std::string& x) {
    auto s = std::make_shared<NameSet>();
    s->push_back(x);
    return s;
}

std::shared_ptr<const NameSet> merge_names(const std::shared_ptr<const NameSet>& a,
                                           const std::shared_ptr<const NameSet>& b) {
    if (a->empty()) return b;
    if (b->empty()) return a;
    if (a.get() == b.get()) return a;
    auto out = std::make_shared<NameSet>();
    std::set_union(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(*out));
    return out;
}

std::shared_ptr<const NameSet> remove_name(const std::shared_ptr<const NameSet>& a,
                                           const std::string& x) {
    if (!std::binary_search(a->begin(), a->end(), x)) return a;
    auto out = std::make_shared<NameSet>();
    for (const auto& n : *a)
        if (n != x) out->push_back(n);
    return out;
}

bool names_contain(const std::shared_ptr<const NameSet>& a, const std::string& x) {
    return std::binary_search(a->begin(), a->end(), x);
}

} // namespace

LT lt_var(std::string name) {
    auto n = std::make_shared<LTNode>();
    n->kind = LTKind::Var;
    n->fv = singleton_names(name);
    n->name = std::move(name);
    return n;
}

LT lt_lam(std::string binder, LTType ann, LT body) {
    auto n = std::make_shared<LTNode>();
    n->kind = LTKind::Lam;
    n->fv = remove_name(body->fv, binder);
    n->name = std::move(binder);
    n->ann = std::move(ann);
    n->a = std::move(body);
    return n;
}

LT lt_app(LT fun, LT arg) {
    auto n = std::make_shared<LTNode>();
    n->kind = LTKind::App;
    n->fv = merge_names(fun->fv, arg->fv);
    n->a = std::move(fun);
    n->b = std::move(arg);
    return n;
}

LT lt_app(LT fun, std::initializer_list<LT> args) {
    LT cur = std::move(fun);
    for (const auto& a : args) cur = lt_app(cur, a);
    return cur;
}

LT lt_pair(LT a, LT b) {
    auto n = std::make_shared<LTNode>();
    n->kind = LTKind::Pair;
    n->fv = merge_names(a->fv, b->fv);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

LT lt_p1(LT t) {
    auto n = std::make_shared<LTNode>();
    n->kind = LTKind::Proj1;
    n->fv = t->fv;
    n->a = std::move(t);
    return n;
}

LT lt_p2(LT t) {
    auto n = std::make_shared<LTNode>();
    n->kind = LTKind::Proj2;
    n->fv = t->fv;
    n->a = std::move(t);
    return n;
}

LT lt_const(LTConst c) {
    auto n = std::make_shared<LTNode>();
    n->kind = LTKind::Const;
    n->cst = c;
    n->fv = empty_names();
    return n;
}

LT lt_bbc(LTType tau) {
    auto n = std::make_shared<LTNode>();
    n->kind = LTKind::Const;
    n->cst = LTConst::Bbc;
    n->ann = std::move(tau);
    n->fv = empty_names();
    return n;
}

LT lt_nat(long n) {
    LT cur = lt_const(LTConst::Zero);
    for (long i = 0; i < n; ++i) cur = lt_app(lt_const(LTConst::Succ), cur);
    return cur;
}

bool lt_eq(const LT& s, const LT& t) {
    if (s.get() == t.get()) return true;
    if (s->kind != t->kind) return false;
    switch (s->kind) {
    case LTKind::Var: return s->name == t->name;
    case LTKind::Lam: return s->name == t->name && lt_eq(s->a, t->a);
    case LTKind::App:
    case LTKind::Pair: return lt_eq(s->a, t->a) && lt_eq(s->b, t->b);
    case LTKind::Proj1:
    case LTKind::Proj2: return lt_eq(s->a, t->a);
    case LTKind::Const:
        if (s->cst != t->cst) return false;
        if (s->cst == LTConst::Bbc) return lt_type_eq(s->ann, t->ann);
        return true;
    }
    return false;
}

namespace {

bool alpha_rec(const LT& s, const LT& t,
               std::vector<std::pair<std::string, std::string>>& env) {
    if (s->kind != t->kind) return false;
    switch (s->kind) {
    case LTKind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it) {
            bool ls = it->first == s->name, rt = it->second == t->name;
            if (ls || rt) return ls && rt;
        }
        return s->name == t->name;
    case LTKind::Lam: {
        if ((bool)s->ann != (bool)t->ann) return false;
        if (s->ann && !lt_type_eq(s->ann, t->ann)) return false;
        env.emplace_back(s->name, t->name);
        bool ok = alpha_rec(s->a, t->a, env);
        env.pop_back();
        return ok;
    }
    case LTKind::App:
    case LTKind::Pair: return alpha_rec(s->a, t->a, env) && alpha_rec(s->b, t->b, env);
    case LTKind::Proj1:
    case LTKind::Proj2: return alpha_rec(s->a, t->a, env);
    case LTKind::Const:
        if (s->cst != t->cst) return false;
        if (s->cst == LTConst::Bbc) return lt_type_eq(s->ann, t->ann);
        return true;
    }
    return false;
}

} // namespace

bool lt_alpha_eq(const LT& s, const LT& t) {
    std::vector<std::pair<std::string, std::string>> env;
    return alpha_rec(s, t, env);
}

std::size_t lt_size(const LT& t) {
    std::size_t n = 1;
    if (t->a) n += lt_size(t->a);
    if (t->b) n += lt_size(t->b);
    return n;
}

bool lt_has_free(const LT& t, const std::string& x) { return names_contain(t->fv, x); }
bool lt_closed(const LT& t) { return t->fv->empty(); }

LT lt_subst(const LT& t, const std::string& x, const LT& v) {
    if (!lt_has_free(t, x)) return t;
    switch (t->kind) {
    case LTKind::Var:
        return v; // name must be x, else x would not be free
    case LTKind::Lam: {
        // x is free in t, so the binder differs from x.
        if (names_contain(v->fv, t->name)) {
            std::string fresh = t->name;
            do {
                fresh += '\'';
            } while (names_contain(v->fv, fresh) || names_contain(t->a->fv, fresh) || fresh == x);
            LT body = lt_subst(t->a, t->name, lt_var(fresh));
            return lt_lam(fresh, t->ann, lt_subst(body, x, v));
        }
        return lt_lam(t->name, t->ann, lt_subst(t->a, x, v));
    }
    case LTKind::App: return lt_app(lt_subst(t->a, x, v), lt_subst(t->b, x, v));
    case LTKind::Pair: return lt_pair(lt_subst(t->a, x, v), lt_subst(t->b, x, v));
    case LTKind::Proj1: return lt_p1(lt_subst(t->a, x, v));
    case LTKind::Proj2: return lt_p2(lt_subst(t->a, x, v));
    case LTKind::Const: return t;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Typechecking
// ---------------------------------------------------------------------------

namespace {

struct TcState {
    // Memo for closed subterms only (their type is environment-independent).
    std::map<const LTNode*, LTType> closed_memo;
};

[[noreturn]] void tc_fail(const std::string& path, const std::string& what) {
    throw LTTypeError("type error at " + (path.empty() ? std::string("<root>") : path) + ": " +
                      what);
}

LTType expect_arrow(const LTType& t, const std::string& path, const std::string& what,
                    const LTType& arg_ty) {
    if (t->kind != LTTypeKind::Arrow)
        tc_fail(path, what + ": expected a function, got " + lt_type_to_string(t));
    if (!lt_type_eq(t->a, arg_ty))
        tc_fail(path, what + ": expected argument of type " + lt_type_to_string(t->a) +
                          ", got " + lt_type_to_string(arg_ty));
    return t->b;
}

LTType const_type(const LTNode& c, const std::string& path) {
    switch (c.cst) {
    case LTConst::Zero: return nat_t();
    case LTConst::Succ: return arrow_t(nat_t(), nat_t());
    case LTConst::LVar: return arrow_t(nat_t(), lam_t());
    case LTConst::LAbs: return arrow_t(lam_t(), lam_t());
    case LTConst::LApp: return arrow_t(lam_t(), arrow_t(lam_t(), lam_t()));
    case LTConst::Nil: return lamlist_t();
    case LTConst::Cons: return arrow_t(lamlist_t(), arrow_t(lam_t(), lamlist_t()));
    case LTConst::Bbc: {
        if (!c.ann) tc_fail(path, "bbc without a type instance");
        const LTType& tau = c.ann;
        return arrow_t(arrow_t(arrow_t(tau, nat_t()), tau),
                       arrow_t(arrow_t(arrow_t(lam_t(), tau), nat_t()),
                               arrow_t(partial_t(tau), nat_t())));
    }
    case LTConst::NatIt:
    case LTConst::LamIt:
    case LTConst::ListIt:
        tc_fail(path, "iterator constant must be applied to its first argument");
    }
    tc_fail(path, "unknown constant");
}

LTType tc(const LTEnv& env, const LT& t, TcState& st, const std::string& path);

// Type of an iterator head given its first argument's type.
LTType iterator_type(LTConst c, const LTType& first, const std::string& path) {
    switch (c) {
    case LTConst::NatIt:
        return arrow_t(first, arrow_t(arrow_t(first, first), arrow_t(nat_t(), first)));
    case LTConst::ListIt:
        return arrow_t(first,
                       arrow_t(arrow_t(first, arrow_t(lam_t(), first)),
                               arrow_t(lamlist_t(), first)));
    case LTConst::LamIt: {
        if (first->kind != LTTypeKind::Arrow || first->a->kind != LTTypeKind::Nat)
            tc_fail(path, "lamit's first argument must have type i -> a, got " +
                              lt_type_to_string(first));
        const LTType& tau = first->b;
        return arrow_t(first, arrow_t(arrow_t(tau, tau),
                                      arrow_t(arrow_t(tau, arrow_t(tau, tau)),
                                              arrow_t(lam_t(), tau))));
    }
    default: tc_fail(path, "not an iterator");
    }
}

LTType tc(const LTEnv& env, const LT& t, TcState& st, const std::string& path) {
    const bool closed = t->fv->empty();
    if (closed) {
        auto it = st.closed_memo.find(t.get());
        if (it != st.closed_memo.end()) return it->second;
    }
    LTType result;
    switch (t->kind) {
    case LTKind::Var: {
        auto it = env.find(t->name);
        if (it == env.end()) tc_fail(path, "unbound variable " + t->name);
        result = it->second;
        break;
    }
    case LTKind::Lam: {
        if (!t->ann) tc_fail(path, "unannotated binder " + t->name);
        LTEnv inner = env;
        inner[t->name] = t->ann;
        result = arrow_t(t->ann, tc(inner, t->a, st, path + "/lam"));
        break;
    }
    case LTKind::Pair:
        result = prod_t(tc(env, t->a, st, path + "/pair1"), tc(env, t->b, st, path + "/pair2"));
        break;
    case LTKind::Proj1:
    case LTKind::Proj2: {
        LTType p = tc(env, t->a, st, path + "/proj");
        if (p->kind != LTTypeKind::Prod)
            tc_fail(path, "projection from non-pair type " + lt_type_to_string(p));
        result = t->kind == LTKind::Proj1 ? p->a : p->b;
        break;
    }
    case LTKind::Const:
        result = const_type(*t, path);
        break;
    case LTKind::App: {
        // Collect the application spine so iterator heads can synthesize
        // their type parameter from the first argument.
        std::vector<LT> args;
        LT head = t;
        while (head->kind == LTKind::App) {
            args.push_back(head->b);
            head = head->a;
        }
        std::reverse(args.begin(), args.end());
        LTType fty;
        std::size_t start = 0;
        if (head->kind == LTKind::Const &&
            (head->cst == LTConst::NatIt || head->cst == LTConst::LamIt ||
             head->cst == LTConst::ListIt)) {
            LTType first = tc(env, args[0], st, path + "/arg0");
            fty = iterator_type(head->cst, first, path);
            fty = expect_arrow(fty, path, "iterator first argument", first);
            start = 1;
        } else {
            fty = tc(env, head, st, path + "/fun");
        }
        for (std::size_t i = start; i < args.size(); ++i) {
            LTType aty = tc(env, args[i], st, path + "/arg" + std::to_string(i));
            fty = expect_arrow(fty, path, "argument " + std::to_string(i), aty);
        }
        result = fty;
        break;
    }
    }
    if (closed) st.closed_memo.emplace(t.get(), result);
    return result;
}

} // namespace

LTType lt_typecheck(const LTEnv& env, const LT& t) {
    TcState st;
    return tc(env, t, st, "");
}

// ---------------------------------------------------------------------------
// S-expression printing and parsing
// ---------------------------------------------------------------------------

namespace {

const char* const_symbol(LTConst c) {
    switch (c) {
    case LTConst::Zero: return "zero";
    case LTConst::Succ: return "succ";
    case LTConst::NatIt: return "natit";
    case LTConst::LVar: return "var";
    case LTConst::LAbs: return "abs";
    case LTConst::LApp: return "app";
    case LTConst::LamIt: return "lamit";
    case LTConst::Nil: return "nil";
    case LTConst::Cons: return "cons";
    case LTConst::ListIt: return "listit";
    case LTConst::Bbc: return "bbc";
    }
    return "?";
}

void print_head(std::ostream& os, const LT& t) {
    if (t->kind == LTKind::Const) {
        os << const_symbol(t->cst);
        if (t->cst == LTConst::Bbc) os << " {" << lt_type_to_string(t->ann) << '}';
        return;
    }
}

void print_lt(std::ostream& os, const LT& t) {
    switch (t->kind) {
    case LTKind::Var:
        os << t->name;
        return;
    case LTKind::Const:
        if (t->cst == LTConst::Bbc) {
            os << "(bbc {" << lt_type_to_string(t->ann) << "})";
        } else {
            os << const_symbol(t->cst);
        }
        return;
    case LTKind::Lam:
        os << "(lam (" << t->name;
        if (t->ann) os << " {" << lt_type_to_string(t->ann) << '}';
        os << ") ";
        print_lt(os, t->a);
        os << ')';
        return;
    case LTKind::Pair:
        os << "(pair ";
        print_lt(os, t->a);
        os << ' ';
        print_lt(os, t->b);
        os << ')';
        return;
    case LTKind::Proj1:
    case LTKind::Proj2:
        os << (t->kind == LTKind::Proj1 ? "(p1 " : "(p2 ");
        print_lt(os, t->a);
        os << ')';
        return;
    case LTKind::App: {
        std::vector<LT> args;
        LT head = t;
        while (head->kind == LTKind::App) {
            args.push_back(head->b);
            head = head->a;
        }
        std::reverse(args.begin(), args.end());
        os << '(';
        if (head->kind == LTKind::Const) {
            print_head(os, head);
        } else {
            print_lt(os, head);
        }
        for (const auto& a : args) {
            os << ' ';
            print_lt(os, a);
        }
        os << ')';
        return;
    }
    }
}

struct SexpParser {
    const std::string& src;
    std::size_t pos = 0;
    explicit SexpParser(const std::string& s) : src(s) {}

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
        throw LTParseError("parse error at offset " + std::to_string(pos) + ": " + what);
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    static bool sym_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' ||
               c == '-' || c == '>' || c == '*' || c == '$';
    }

    std::string symbol() {
        skip_ws();
        if (pos >= src.size() || !sym_char(src[pos])) fail("expected symbol");
        std::size_t start = pos;
        while (pos < src.size() && sym_char(src[pos])) ++pos;
        return src.substr(start, pos - start);
    }

    LTType parse_type() {
        char c = peek();
        if (c == '(') {
            ++pos;
            std::string op = symbol();
            LTType a = parse_type();
            LTType b = parse_type();
            expect(')');
            if (op == "->") return arrow_t(a, b);
            if (op == "*") return prod_t(a, b);
            fail("unknown type operator " + op);
        }
        std::string s = symbol();
        if (s == "i") return nat_t();
        if (s == "tm") return lam_t();
        if (s == "tms") return lamlist_t();
        fail("unknown type " + s);
    }

    LTType braced_type() {
        expect('{');
        LTType t = parse_type();
        expect('}');
        return t;
    }

    LT parse_term() {
        char c = peek();
        if (c != '(') {
            std::string s = symbol();
            return atom_term(s);
        }
        ++pos;
        skip_ws();
        // Heads with special syntax: lam, pair, p1, p2, bbc.
        std::size_t save = pos;
        std::string head = peek() == '(' ? std::string() : symbol();
        if (head == "lam") {
            expect('(');
            std::string binder = symbol();
            LTType ann;
            if (peek() == '{') ann = braced_type();
            expect(')');
            LT body = parse_term();
            expect(')');
            return lt_lam(std::move(binder), ann, std::move(body));
        }
        if (head == "pair") {
            LT a = parse_term();
            LT b = parse_term();
            expect(')');
            return lt_pair(std::move(a), std::move(b));
        }
        if (head == "p1" || head == "p2") {
            LT a = parse_term();
            expect(')');
            return head == "p1" ? lt_p1(std::move(a)) : lt_p2(std::move(a));
        }
        LT cur;
        if (head == "bbc") {
            cur = lt_bbc(braced_type());
        } else if (!head.empty()) {
            cur = atom_term(head);
        } else {
            pos = save;
            cur = parse_term();
        }
        while (peek() != ')') cur = lt_app(std::move(cur), parse_term());
        ++pos;
        return cur;
    }

    LT atom_term(const std::string& s) {
        if (s == "zero") return lt_const(LTConst::Zero);
        if (s == "succ") return lt_const(LTConst::Succ);
        if (s == "natit") return lt_const(LTConst::NatIt);
        if (s == "var") return lt_const(LTConst::LVar);
        if (s == "abs") return lt_const(LTConst::LAbs);
        if (s == "app") return lt_const(LTConst::LApp);
        if (s == "lamit") return lt_const(LTConst::LamIt);
        if (s == "nil") return lt_const(LTConst::Nil);
        if (s == "cons") return lt_const(LTConst::Cons);
        if (s == "listit") return lt_const(LTConst::ListIt);
        if (s == "bbc") fail("bbc needs a {type} instance");
        if (s == "lam" || s == "pair" || s == "p1" || s == "p2")
            fail("reserved word used as variable: " + s);
        return lt_var(s);
    }
};

} // namespace

std::string lt_to_string(const LT& t) {
    std::ostringstream os;
    print_lt(os, t);
    return os.str();
}

LT parse_lt(const std::string& text) {
    SexpParser p(text);
    LT t = p.parse_term();
    if (!p.eof()) p.fail("trailing input");
    return t;
}

LTType parse_lt_type(const std::string& text) {
    SexpParser p(text);
    LTType t = p.parse_type();
    if (!p.eof()) p.fail("trailing input");
    return t;
}

} // namespace fbar
