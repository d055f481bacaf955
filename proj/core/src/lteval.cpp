#include "fbar/lteval.hpp"

#include <algorithm>
#include <vector>

#include "fbar/ltlib.hpp"

namespace fbar {

namespace {

struct SpineView {
    LT head;
    std::vector<LT> chain; // App nodes, outermost first

    std::size_t nargs() const { return chain.size(); }
    const LT& arg(std::size_t i) const { return chain[chain.size() - 1 - i]->b; }
};

SpineView spine_view(const LT& t) {
    SpineView sp;
    LT cur = t;
    while (cur->kind == LTKind::App) {
        sp.chain.push_back(cur);
        cur = cur->a;
    }
    sp.head = cur;
    return sp;
}

LT apply_args(LT cur, const SpineView& sp, std::size_t from) {
    for (std::size_t i = from; i < sp.nargs(); ++i) cur = lt_app(std::move(cur), sp.arg(i));
    return cur;
}

LT rebuild_with_arg(const SpineView& sp, std::size_t i, const LT& newarg) {
    LT cur = sp.head;
    for (std::size_t j = 0; j < sp.nargs(); ++j)
        cur = lt_app(std::move(cur), j == i ? newarg : sp.arg(j));
    return cur;
}

bool const_spine(const LT& t, LTConst c, std::size_t arity, std::vector<LT>& args) {
    args.clear();
    LT head = t;
    while (head->kind == LTKind::App) {
        args.push_back(head->b);
        head = head->a;
    }
    std::reverse(args.begin(), args.end());
    return head->kind == LTKind::Const && head->cst == c && args.size() == arity;
}

// ---- rule firing (shared by both search implementations) -------------------

// bbc a b c |> b (c @ \y. a (\z. bbc a b (c[y -> z])))
LT bbc_expand(const LT& bbc_head, const LT& a, const LT& b, const LT& c) {
    const LTType& tau = bbc_head->ann;
    std::string y = lt_fresh_for("y", {a, b, c});
    std::string z = lt_fresh_for("z", {a, b, c});
    LT ext = extend(c, lt_var(y), lt_var(z), tau);
    LT inner = lt_app(bbc_head, {a, b, ext});
    LT g = lt_lam(y, lam_t(), lt_app(a, lt_lam(z, tau, inner)));
    return lt_app(b, complete(c, g, tau));
}

// Contract an iterator/bbc redex whose scrutinee (if any) is a value of the
// right shape; returns null when the shape does not match.
LT fire_const(const SpineView& sp) {
    std::vector<LT> sub;
    switch (sp.head->cst) {
    case LTConst::NatIt: {
        const LT& v = sp.arg(2);
        if (v->kind == LTKind::Const && v->cst == LTConst::Zero) return sp.arg(0);
        if (const_spine(v, LTConst::Succ, 1, sub))
            return lt_app(sp.arg(1),
                          lt_app(lt_const(LTConst::NatIt), {sp.arg(0), sp.arg(1), sub[0]}));
        return nullptr;
    }
    case LTConst::LamIt: {
        const LT& v = sp.arg(3);
        auto rec = [&](const LT& w) {
            return lt_app(lt_const(LTConst::LamIt), {sp.arg(0), sp.arg(1), sp.arg(2), w});
        };
        if (const_spine(v, LTConst::LVar, 1, sub)) return lt_app(sp.arg(0), sub[0]);
        if (const_spine(v, LTConst::LAbs, 1, sub)) return lt_app(sp.arg(1), rec(sub[0]));
        if (const_spine(v, LTConst::LApp, 2, sub))
            return lt_app(sp.arg(2), {rec(sub[0]), rec(sub[1])});
        return nullptr;
    }
    case LTConst::ListIt: {
        const LT& v = sp.arg(2);
        if (v->kind == LTKind::Const && v->cst == LTConst::Nil) return sp.arg(0);
        if (const_spine(v, LTConst::Cons, 2, sub))
            return lt_app(sp.arg(1),
                          {lt_app(lt_const(LTConst::ListIt), {sp.arg(0), sp.arg(1), sub[0]}),
                           sub[1]});
        return nullptr;
    }
    case LTConst::Bbc:
        return bbc_expand(sp.head, sp.arg(0), sp.arg(1), sp.arg(2));
    default: return nullptr;
    }
}

// Number of arguments an applied constant consumes when it fires, and the
// position of its forced (scrutinee) argument, if any.
struct ConstPlan {
    int redex_arity;    // arguments consumed by the rule; 0 = never fires
    int scrutinee;      // index of the forced argument; -1 = none
    int strict_prefix;  // leading argument positions forced left-to-right
};

ConstPlan const_plan(LTConst c) {
    switch (c) {
    case LTConst::Zero:
    case LTConst::Nil: return {0, -1, 0};
    case LTConst::Succ:
    case LTConst::LVar:
    case LTConst::LAbs: return {0, -1, 1};
    case LTConst::LApp:
    case LTConst::Cons: return {0, -1, 2};
    case LTConst::NatIt: return {3, 2, 0};
    case LTConst::ListIt: return {3, 2, 0};
    case LTConst::LamIt: return {4, 3, 0};
    case LTConst::Bbc: return {3, -1, 0}; // fires with no value requirement
    }
    return {0, -1, 0};
}

} // namespace

bool lt_is_value(const LT& t) {
    signed char c = t->value_cache.load(std::memory_order_relaxed);
    if (c >= 0) return c != 0;
    bool v = false;
    if (t->kind == LTKind::Const) {
        v = t->cst == LTConst::Zero || t->cst == LTConst::Nil;
    } else if (t->kind == LTKind::App) {
        SpineView sp = spine_view(t);
        if (sp.head->kind == LTKind::Const) {
            switch (sp.head->cst) {
            case LTConst::Succ:
            case LTConst::LVar:
            case LTConst::LAbs:
                v = sp.nargs() == 1 && lt_is_value(sp.arg(0));
                break;
            case LTConst::LApp:
            case LTConst::Cons:
                v = sp.nargs() == 2 && lt_is_value(sp.arg(0)) && lt_is_value(sp.arg(1));
                break;
            default: v = false;
            }
        }
    }
    t->value_cache.store(v ? 1 : 0, std::memory_order_relaxed);
    return v;
}

namespace {

std::optional<LT> step_rec(const LT& t) {
    if (t->redex_cache.load(std::memory_order_relaxed) == 0) return std::nullopt;
    std::optional<LT> res;
    switch (t->kind) {
    case LTKind::Var:
    case LTKind::Lam:
    case LTKind::Pair:
    case LTKind::Const:
        break;
    case LTKind::Proj1:
    case LTKind::Proj2: {
        if (t->a->kind == LTKind::Pair) {
            res = t->kind == LTKind::Proj1 ? t->a->a : t->a->b;
        } else if (auto s = step_rec(t->a)) {
            res = t->kind == LTKind::Proj1 ? lt_p1(*s) : lt_p2(*s);
        }
        break;
    }
    case LTKind::App: {
        SpineView sp = spine_view(t);
        const std::size_t n = sp.nargs();
        if (sp.head->kind == LTKind::Lam) {
            LT contracted = lt_subst(sp.head->a, sp.head->name, sp.arg(0));
            res = apply_args(std::move(contracted), sp, 1);
        } else if (sp.head->kind == LTKind::Const) {
            ConstPlan plan = const_plan(sp.head->cst);
            for (int i = 0; i < plan.strict_prefix && i < static_cast<int>(n); ++i) {
                std::size_t ix = static_cast<std::size_t>(i);
                if (!lt_is_value(sp.arg(ix))) {
                    if (auto s = step_rec(sp.arg(ix))) res = rebuild_with_arg(sp, ix, *s);
                    goto done;
                }
            }
            if (plan.redex_arity > 0 && n >= static_cast<std::size_t>(plan.redex_arity)) {
                if (plan.scrutinee >= 0 &&
                    !lt_is_value(sp.arg(static_cast<std::size_t>(plan.scrutinee)))) {
                    std::size_t ix = static_cast<std::size_t>(plan.scrutinee);
                    if (auto s = step_rec(sp.arg(ix))) res = rebuild_with_arg(sp, ix, *s);
                } else if (LT fired = fire_const(sp)) {
                    res = apply_args(std::move(fired), sp,
                                     static_cast<std::size_t>(plan.redex_arity));
                }
            }
        } else {
            if (auto s = step_rec(t->a)) res = lt_app(*s, t->b);
        }
        break;
    }
    }
done:
    if (!res) t->redex_cache.store(0, std::memory_order_relaxed);
    return res;
}

} // namespace

std::optional<LT> lt_step(const LT& t) { return step_rec(t); }

bool lt_normal(const LT& t) { return !lt_step(t).has_value(); }

std::optional<LT> lt_step_zipper(const LT& root) {
    struct Frame {
        LT node;
        int child; // 0 = a, 1 = b
    };
    std::vector<Frame> stack;
    LT cur = root;
    LT replacement;

    while (!replacement) {
        switch (cur->kind) {
        case LTKind::Var:
        case LTKind::Lam:
        case LTKind::Pair:
        case LTKind::Const:
            return std::nullopt; // forced path ended without a redex
        case LTKind::Proj1:
        case LTKind::Proj2:
            if (cur->a->kind == LTKind::Pair) {
                replacement = cur->kind == LTKind::Proj1 ? cur->a->a : cur->a->b;
            } else {
                stack.push_back({cur, 0});
                cur = cur->a;
            }
            break;
        case LTKind::App: {
            SpineView sp = spine_view(cur);
            const std::size_t n = sp.nargs();
            // Descend into argument i: walk the chain down to its App node.
            auto descend_arg = [&](std::size_t i) {
                std::size_t node_ix = sp.chain.size() - 1 - i;
                for (std::size_t k = 0; k < node_ix; ++k) stack.push_back({sp.chain[k], 0});
                stack.push_back({sp.chain[node_ix], 1});
                cur = sp.arg(i);
            };
            // Fire at the prefix consuming k arguments: outer chain nodes
            // stay as context.
            auto fire_prefix = [&](std::size_t k, LT contracted) {
                for (std::size_t j = 0; j + k < sp.chain.size(); ++j)
                    stack.push_back({sp.chain[j], 0});
                replacement = std::move(contracted);
            };
            if (sp.head->kind == LTKind::Lam) {
                fire_prefix(1, lt_subst(sp.head->a, sp.head->name, sp.arg(0)));
                break;
            }
            if (sp.head->kind != LTKind::Const) {
                // Function position: walk to the spine head.
                for (const auto& node : sp.chain) stack.push_back({node, 0});
                cur = sp.head;
                break;
            }
            ConstPlan plan = const_plan(sp.head->cst);
            bool moved = false;
            for (int i = 0; i < plan.strict_prefix && i < static_cast<int>(n); ++i) {
                std::size_t ix = static_cast<std::size_t>(i);
                if (!lt_is_value(sp.arg(ix))) {
                    if (!lt_step(sp.arg(ix))) return std::nullopt; // stuck argument
                    descend_arg(ix);
                    moved = true;
                    break;
                }
            }
            if (moved) break;
            if (plan.redex_arity == 0 || n < static_cast<std::size_t>(plan.redex_arity))
                return std::nullopt;
            if (plan.scrutinee >= 0 &&
                !lt_is_value(sp.arg(static_cast<std::size_t>(plan.scrutinee)))) {
                std::size_t ix = static_cast<std::size_t>(plan.scrutinee);
                if (!lt_step(sp.arg(ix))) return std::nullopt;
                descend_arg(ix);
                break;
            }
            LT fired = fire_const(sp);
            if (!fired) return std::nullopt;
            fire_prefix(static_cast<std::size_t>(plan.redex_arity), std::move(fired));
            break;
        }
        }
    }

    LT out = replacement;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        const LT& nd = it->node;
        switch (nd->kind) {
        case LTKind::App:
            out = it->child == 0 ? lt_app(out, nd->b) : lt_app(nd->a, out);
            break;
        case LTKind::Proj1: out = lt_p1(out); break;
        case LTKind::Proj2: out = lt_p2(out); break;
        default: break;
        }
    }
    return out;
}

EvalResult lt_eval(const LT& t, long fuel) {
    EvalResult r;
    LT cur = t;
    while (true) {
        auto next = step_rec(cur);
        if (!next) {
            r.result = cur;
            return r;
        }
        if (r.steps >= fuel) {
            r.result = cur;
            r.fuel_exhausted = true;
            return r;
        }
        cur = *next;
        ++r.steps;
    }
}

EvalResult lt_eval_traced(const LT& t, long fuel,
                          const std::function<bool(long, const LT&)>& on_step) {
    EvalResult r;
    LT cur = t;
    while (true) {
        auto next = step_rec(cur);
        if (!next) {
            r.result = cur;
            return r;
        }
        if (r.steps >= fuel) {
            r.result = cur;
            r.fuel_exhausted = true;
            return r;
        }
        cur = *next;
        ++r.steps;
        if (!on_step(r.steps, cur)) {
            r.result = cur;
            return r;
        }
    }
}

} // namespace fbar
