#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbar {

// ---------------------------------------------------------------------------
// Simple types of the target language:
//   i (naturals) | tm (lambda terms) | tms (lists of lambda terms)
//   | a -> b | a x b
// The partial-function type tm +> a abbreviates tm -> i x a.
// ---------------------------------------------------------------------------

struct LTTypeNode;
using LTType = std::shared_ptr<const LTTypeNode>;

enum class LTTypeKind { Nat, Lam, LamList, Arrow, Prod };

struct LTTypeNode {
    LTTypeKind kind;
    LTType a, b;
};

LTType nat_t();
LTType lam_t();
LTType lamlist_t();
LTType arrow_t(LTType dom, LTType cod);
LTType prod_t(LTType left, LTType right);
LTType partial_t(LTType tau); // tm -> i x tau

bool lt_type_eq(const LTType& s, const LTType& t);
std::string lt_type_to_string(const LTType& t);

// ---------------------------------------------------------------------------
// Terms. Named binders; Lam carries a binder annotation (needed to make the
// typechecker syntax-directed). The Bbc constant carries its type instance.
// ---------------------------------------------------------------------------

enum class LTConst {
    Zero, Succ, NatIt,        // naturals and their iterator
    LVar, LAbs, LApp, LamIt,  // lambda-term constructors and iterator
    Nil, Cons, ListIt,        // list constructors and iterator
    Bbc                       // bar-recursion functional (typed per occurrence)
};

struct LTNode;
using LT = std::shared_ptr<const LTNode>;

enum class LTKind { Var, Lam, App, Pair, Proj1, Proj2, Const };

using NameSet = std::vector<std::string>; // sorted, unique

struct LTNode {
    LTKind kind;
    std::string name;             // Var name / Lam binder
    LTType ann;                   // Lam binder annotation / Bbc instance
    LT a, b;                      // Lam body in a; App fun/arg; Pair; Proj in a
    LTConst cst = LTConst::Zero;  // Const

    // Free-variable set, shared and computed at construction.
    std::shared_ptr<const NameSet> fv;

    // Lazily memoized facts used by the evaluator; value/strategy-normality
    // of a term does not depend on its context, so caching is sound.
    // -1 unknown, 0 no, 1 yes.
    mutable std::atomic<signed char> value_cache{-1};
    mutable std::atomic<signed char> redex_cache{-1};
};

LT lt_var(std::string name);
LT lt_lam(std::string binder, LTType ann, LT body);
LT lt_app(LT fun, LT arg);
LT lt_app(LT fun, std::initializer_list<LT> args);
LT lt_pair(LT a, LT b);
LT lt_p1(LT t);
LT lt_p2(LT t);
LT lt_const(LTConst c);
LT lt_bbc(LTType tau);
LT lt_nat(long n); // numeral S^n 0

bool lt_eq(const LT& s, const LT& t);       // structural, names included
bool lt_alpha_eq(const LT& s, const LT& t); // binder names ignored
std::size_t lt_size(const LT& t);

bool lt_has_free(const LT& t, const std::string& x);
bool lt_closed(const LT& t);

// Capture-avoiding substitution [x := v]; binders are renamed (with prime
// marks) when they would capture a free variable of v.
LT lt_subst(const LT& t, const std::string& x, const LT& v);

// ---------------------------------------------------------------------------
// Typechecking
// ---------------------------------------------------------------------------

struct LTTypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using LTEnv = std::map<std::string, LTType>;

// Synthesizes the simple type of t, or throws LTTypeError with a path.
// Iterator constants must be applied to at least their first functional
// argument (the result type is synthesized from it); Bbc reads its instance
// off the AST.
LTType lt_typecheck(const LTEnv& env, const LT& t);

// ---------------------------------------------------------------------------
// S-expression text format, e.g. (natit a b n), (pair a b), (p1 t),
// (bbc {ty} a b c), (lam (x {ty}) t). parse . print = identity.
// ---------------------------------------------------------------------------

std::string lt_to_string(const LT& t);
LT parse_lt(const std::string& text); // throws LTParseError
LTType parse_lt_type(const std::string& text);

struct LTParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fbar
