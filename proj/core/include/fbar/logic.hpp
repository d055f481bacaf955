#pragma once

// Multi-sorted first-order logic over de Bruijn lambda-terms: sorted
// first-order terms, formulas, formula templates with explicit holes,
// the reducibility-candidate formula constructions, and the erasure
// mappings into total-language types and terms.

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "fbar/ltterm.hpp"
#include "fbar/supply.hpp"

namespace fbar {

// Five sorts: naturals, lambda-terms, term lists, term sets, booleans.
// The first three are computational (they survive erasure); sets and
// booleans are not.
enum class Sort { NatS, TermS, ListS, SetS, BoolS };

bool sort_computational(Sort s);
std::string sort_to_string(Sort s);

// Sorted first-order terms.
//   NatS:  var | 0 | S e
//   TermS: var | var(e) | abs(t) | app(t, l) | subst(t, l)
//   ListS: var | nil | snoc(l, t)
//   BoolS: var | tt | ff | in(t, X) | N(t, e)
//   SetS:  var only
// Hole is an explicit template placeholder (of sort TermS or BoolS).
enum class FoKind {
    Var, Hole,
    Zero, Succ,
    TmVar, TmAbs, TmApp, TmSubst,
    Nil, Snoc,
    TT, FF, In, NN,
};

struct FoNode;
using Fo = std::shared_ptr<const FoNode>;

struct FoNode {
    FoKind kind;
    Sort sort;
    std::string name; // Var: variable name; In: the set variable
    Fo a;
    Fo b;
};

Fo fo_var(const std::string& name, Sort s);
Fo fo_hole(Sort s); // TermS or BoolS
Fo fo_zero();
Fo fo_succ(const Fo& n);
Fo fo_nat(unsigned long n);
Fo fo_tmvar(const Fo& n);
Fo fo_tmabs(const Fo& t);
Fo fo_tmapp(const Fo& t, const Fo& l);
Fo fo_tmsubst(const Fo& t, const Fo& l);
Fo fo_nil();
Fo fo_snoc(const Fo& l, const Fo& t);
Fo fo_tt();
Fo fo_ff();
Fo fo_in(const Fo& t, const std::string& setvar);
Fo fo_nsteps(const Fo& t, const Fo& n); // N(t, n): t normalizes in n steps

// Formulas: atoms, implication, conjunction, sorted universal quantifier.
enum class FmKind { Atom, Imp, And, Forall };

struct FmNode;
using Fm = std::shared_ptr<const FmNode>;

struct FmNode {
    FmKind kind;
    Fo atom;
    std::string var;
    Sort var_sort = Sort::NatS;
    Fm a;
    Fm b;
};

Fm fm_atom(const Fo& b);
Fm fm_imp(const Fm& a, const Fm& b);
Fm fm_and(const Fm& a, const Fm& b);
Fm fm_forall(const std::string& v, Sort s, const Fm& body);

// Abbreviations.
Fm fm_neg(const Fm& a);                              // A => ff
Fm fm_iff(const Fm& a, const Fm& b);                 // (A => B) & (B => A)
Fm fm_exists(const std::string& v, Sort s, const Fm& a); // ~forall v ~A
Fm fm_norm(const Fo& t);                             // ~forall n N(t, n)

using VarSet = std::set<std::pair<std::string, Sort>>;

VarSet fo_free(const Fo& e);
VarSet fm_free(const Fm& f);
// All names occurring free (any sort), for freshness checks.
std::set<std::string> fm_free_names(const Fm& f);
bool fm_has_hole(const Fm& f);

bool fo_eq(const Fo& x, const Fo& y);
bool fm_alpha_eq(const Fm& x, const Fm& y);

std::string fo_to_string(const Fo& e);
std::string fm_to_string(const Fm& f);

struct LogicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A formula template with explicit holes.
struct Formula1 {
    Fm body;
};

// Plug every TermS hole with t; bound variables of the template are
// renamed away from the free variables of t.
Fm instantiate(const Formula1& f, const Fo& t);
// Plug BoolS holes with b and TermS holes with t, capture-avoiding.
Fm instantiate2(const Formula1& f, const Fo& b, const Fo& t);

// A set-variable abstraction (X |-> A): applying it to a 1-formula
// replaces every atom in(t, X) of A with the instantiated 1-formula.
struct Formula2 {
    std::string setvar;
    Fm body;
};

Fm apply2(const Formula2& f, const Formula1& phi);

// The 1-formula (t |-> in(t, X)).
Formula1 pvar_formula(const std::string& setvar);
// The 1-formula (t |-> Norm t).
Formula1 norm_formula();

// The statement that the set {t | phi(t)} is a reducibility candidate:
//   (forall l phi(var(0) l)  &  forall a (phi(a) => Norm a))
//   & forall a forall b forall l (phi((a[b]) l) => phi(((\a) b) l))
Fm redcand_formula(const Formula1& phi, NameSupply& supply);

struct FTypeNode;
using FType = std::shared_ptr<const FTypeNode>;

// The 1-formula expressing membership in the candidate of a system F type:
//   rc_X(t)       = in(t, X)
//   rc_{r->s}(t)  = forall a (rc_r(a) => rc_s(app(t, <a>)))
//   rc_{forall X r}(t) = forall X (RedCand{X} => rc_r(t))
Formula1 rc_formula(const FType& rho, NameSupply& supply);

// Realizer type of a formula: atoms erase to the numeral type, => to ->,
// & to product; quantifiers over computational sorts become function
// types from the sort's carrier, quantifiers over sets/booleans vanish.
LTType erase_type(const Fm& f);
// Same, but atoms in(t, X) count as carrying type tx (used when the set
// variable stands for a 1-formula with a non-trivial realizer type).
LTType erase_type_at(const Fm& f, const std::string& setvar, const LTType& tx);

// Erasure of a computational first-order term into the total language;
// logic variables are reused as program variables.
LT erase_foterm(const Fo& e);

} // namespace fbar
