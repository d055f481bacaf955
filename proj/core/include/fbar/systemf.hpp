#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fbar/lambda.hpp"
#include "fbar/supply.hpp"

namespace fbar {

// ---------------------------------------------------------------------------
// System F types: X | a -> b | forall X. a. Named type variables; equality is
// alpha-equivalence.
// ---------------------------------------------------------------------------

struct FTypeNode;
using FType = std::shared_ptr<const FTypeNode>;

enum class FTypeKind { Var, Arrow, Forall };

struct FTypeNode {
    FTypeKind kind;
    std::string name; // Var name / Forall binder
    FType a, b;       // Arrow dom/cod; Forall body in a
};

FType ft_var(std::string name);
FType ft_arrow(FType dom, FType cod);
FType ft_forall(std::string binder, FType body);

std::set<std::string> free_type_vars(const FType& t);
bool ftype_alpha_eq(const FType& s, const FType& t);

// Capture-avoiding [X := sigma]; Forall binders renamed fresh when needed.
FType type_subst(const FType& rho, const std::string& X, const FType& sigma);

std::string ftype_to_string(const FType& t);
FType parse_ftype(const std::string& text); // throws ParseError

// ---------------------------------------------------------------------------
// Church-style input terms. The calculus being interpreted is Curry-style, so
// annotations exist only to make elaboration into a derivation syntax-directed.
// ---------------------------------------------------------------------------

struct ChurchNode;
using Church = std::shared_ptr<const ChurchNode>;

enum class ChurchKind { Var, Lam, App, TyAbs, TyApp };

struct ChurchNode {
    ChurchKind kind;
    int index = 0;    // Var
    FType ty;         // Lam annotation / TyApp argument
    std::string tyvar; // TyAbs binder
    Church a, b;      // Lam/TyAbs body in a; App fun/arg
};

Church ch_var(int n);
Church ch_lam(FType annot, Church body);
Church ch_app(Church fun, Church arg);
Church ch_tyabs(std::string binder, Church body);
Church ch_tyapp(Church body, FType arg);

// Drops annotations, TyAbs and TyApp; indices preserved.
Lam erase(const Church& t);

std::string church_to_string(const Church& t);
Church parse_church(const std::string& text); // throws ParseError

// ---------------------------------------------------------------------------
// Typing derivations. Context is an ordered list of types; position i binds
// de Bruijn index i (context sigma_{n-1},...,sigma_0 |- #n : sigma_n).
// ---------------------------------------------------------------------------

enum class RuleKind { Axiom, AbsR, AppR, ForallIntro, ForallElim };

struct DerivNode;
using Deriv = std::shared_ptr<const DerivNode>;

struct DerivNode {
    RuleKind rule;
    std::vector<FType> ctx;
    Lam subject;       // erasure of the judged term
    FType ty;          // conclusion type
    int index = 0;     // Axiom
    std::string tyvar; // ForallIntro binder
    FType tyarg;       // ForallElim type argument
    Deriv p1, p2;      // premises
};

struct ElabError : std::runtime_error {
    // kind is one of: TypeMismatch, NotAnArrow, NotAForall, EscapingTypeVar,
    // UnboundIndex
    std::string kind;
    ElabError(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

// Syntax-directed elaboration of a Church term into a checked derivation.
Deriv elaborate(const Church& t, const std::vector<FType>& ctx = {});

// Independent re-validation of every node; returns the path ("/1/2/...") of
// the first offending node, or empty string if the derivation is valid.
std::string check_derivation(const Deriv& d);

// Rename every ForallIntro binder (and the matching bound type variables) to
// a fresh name from the supply, so no two type-variable binders in the
// derivation collide. Used by the generators, which key realizer variables by
// type-variable identity.
Deriv freshen_type_binders(const Deriv& d, NameSupply& supply);

std::string deriv_to_string(const Deriv& d);

} // namespace fbar
