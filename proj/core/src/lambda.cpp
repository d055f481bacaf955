#include "fbar/lambda.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fbar {

Lam lam_var(int n) {
    auto node = std::make_shared<LamNode>();
    node->kind = LamKind::Var;
    node->index = n;
    return node;
}

Lam lam_abs(Lam body) {
    auto node = std::make_shared<LamNode>();
    node->kind = LamKind::Abs;
    node->a = std::move(body);
    return node;
}

Lam lam_app(Lam fun, Lam arg) {
    auto node = std::make_shared<LamNode>();
    node->kind = LamKind::App;
    node->a = std::move(fun);
    node->b = std::move(arg);
    return node;
}

bool lam_eq(const Lam& s, const Lam& t) {
    if (s.get() == t.get()) return true;
    if (s->kind != t->kind) return false;
    switch (s->kind) {
    case LamKind::Var: return s->index == t->index;
    case LamKind::Abs: return lam_eq(s->a, t->a);
    case LamKind::App: return lam_eq(s->a, t->a) && lam_eq(s->b, t->b);
    }
    return false;
}

std::size_t lam_size(const Lam& t) {
    switch (t->kind) {
    case LamKind::Var: return 1;
    case LamKind::Abs: return 1 + lam_size(t->a);
    case LamKind::App: return 1 + lam_size(t->a) + lam_size(t->b);
    }
    return 0;
}

Lam shift(int k, const Lam& t) {
    switch (t->kind) {
    case LamKind::Var:
        return t->index >= k ? lam_var(t->index + 1) : t;
    case LamKind::Abs:
        return lam_abs(shift(k + 1, t->a));
    case LamKind::App:
        return lam_app(shift(k, t->a), shift(k, t->b));
    }
    return t;
}

LamList shift_list(int k, const LamList& l) {
    LamList out;
    out.reserve(l.size());
    for (const auto& t : l) out.push_back(shift(k, t));
    return out;
}

Lam psubst(const Lam& t, int k, const LamList& l) {
    const int n = static_cast<int>(l.size());
    switch (t->kind) {
    case LamKind::Var: {
        int i = t->index;
        if (i < k) return t;
        if (i < k + n) return l[static_cast<std::size_t>(i - k)];
        return lam_var(i - n);
    }
    case LamKind::Abs:
        return lam_abs(psubst(t->a, k + 1, shift_list(0, l)));
    case LamKind::App:
        return lam_app(psubst(t->a, k, l), psubst(t->b, k, l));
    }
    return t;
}

Lam subst1(const Lam& t, const Lam& u) { return psubst(t, 0, LamList{u}); }

LamSpine lam_spine(const Lam& t) {
    LamSpine s;
    Lam cur = t;
    while (cur->kind == LamKind::App) {
        s.args.push_back(cur->b);
        cur = cur->a;
    }
    s.head = cur;
    std::reverse(s.args.begin(), s.args.end());
    return s;
}

Lam lam_apply(Lam head, const std::vector<Lam>& args, std::size_t from) {
    Lam cur = std::move(head);
    for (std::size_t i = from; i < args.size(); ++i) cur = lam_app(cur, args[i]);
    return cur;
}

std::optional<Lam> wh_step(const Lam& t) {
    LamSpine s = lam_spine(t);
    if (s.head->kind == LamKind::Abs && !s.args.empty()) {
        Lam contracted = subst1(s.head->a, s.args[0]);
        return lam_apply(contracted, s.args, 1);
    }
    return std::nullopt;
}

bool is_whnf(const Lam& t) { return !wh_step(t).has_value(); }

WhResult normalize_wh(const Lam& t, long fuel) {
    WhResult r;
    Lam cur = t;
    while (true) {
        auto next = wh_step(cur);
        if (!next) {
            r.nf = cur;
            return r;
        }
        if (r.steps >= fuel) {
            r.fuel_exhausted = true;
            return r;
        }
        cur = *next;
        ++r.steps;
    }
}

bool can_reduce(const Lam& t, long n) {
    Lam cur = t;
    for (long i = 0; i < n; ++i) {
        auto next = wh_step(cur);
        if (!next) return false;
        cur = *next;
    }
    return true;
}

namespace {

struct LamParser {
    const std::string& src;
    std::size_t pos = 0;

    explicit LamParser(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= src.size();
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("lambda term parse error at offset " + std::to_string(pos) + ": " + what);
    }

    Lam parse_term() {
        // Application spine; `\` extends as far right as possible.
        Lam cur = parse_atom_or_abs();
        while (!eof()) {
            char c = peek();
            if (c == ')') break;
            cur = lam_app(cur, parse_atom_or_abs());
        }
        return cur;
    }

    Lam parse_atom_or_abs() {
        char c = peek();
        if (c == '\\') {
            ++pos;
            return lam_abs(parse_term());
        }
        return parse_atom();
    }

    Lam parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            Lam t = parse_term();
            if (peek() != ')') fail("expected ')'");
            ++pos;
            return t;
        }
        if (c == '#') {
            ++pos;
            if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
                fail("expected index after '#'");
            int n = 0;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                n = n * 10 + (src[pos] - '0');
                ++pos;
            }
            return lam_var(n);
        }
        fail("expected '#n', '\\' or '('");
    }
};

void print_term(std::ostream& os, const Lam& t, bool arg_pos) {
    switch (t->kind) {
    case LamKind::Var:
        os << '#' << t->index;
        return;
    case LamKind::Abs:
        if (arg_pos) os << '(';
        os << "\\ ";
        print_term(os, t->a, false);
        if (arg_pos) os << ')';
        return;
    case LamKind::App: {
        if (arg_pos) os << '(';
        print_term(os, t->a, t->a->kind == LamKind::Abs);
        os << ' ';
        print_term(os, t->b, t->b->kind != LamKind::Var);
        if (arg_pos) os << ')';
        return;
    }
    }
}

} // namespace

std::string lam_to_string(const Lam& t) {
    std::ostringstream os;
    print_term(os, t, false);
    return os.str();
}

Lam parse_lam(const std::string& text) {
    LamParser p(text);
    if (p.eof()) p.fail("empty input");
    Lam t = p.parse_term();
    if (!p.eof()) p.fail("trailing input");
    return t;
}

} // namespace fbar
