#pragma once

// Generators producing target-language programs from formulas and typing
// derivations: double-negation elimination, ex falso, comprehension via the
// bar-recursion functional, formula replacement, second-order elimination,
// the reducibility-candidate witnesses, and the adequacy terms, culminating
// in a normalization-bound program for each closed derivation.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fbar/logic.hpp"
#include "fbar/ltterm.hpp"
#include "fbar/supply.hpp"
#include "fbar/systemf.hpp"

namespace fbar {

struct OpenDerivation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shared state threaded through generation: the fresh-name supply, the
// realizer variable associated to each set variable, and the program
// variables associated to each context occurrence (most recent binding
// first, matching de Bruijn index 0).
struct GenContext {
    explicit GenContext(NameSupply& s) : supply(s) {}

    NameSupply& supply;
    std::map<std::string, std::string> xvar;               // set var -> x_X
    std::vector<std::pair<std::string, std::string>> occ;  // (t_sigma, y_sigma)

    std::string fresh(const std::string& base) { return supply.fresh(base); }
    const std::string& var_for(const std::string& setvar);
};

// Realizer type of the candidate-membership formula of a system F type.
LTType rc_type(const FType& rho);
// Realizer type of the candidate statement over a member type delta.
LTType redcand_type(const LTType& delta);
// Realizer type of the normalization formula: (i -> i) -> i.
LTType norm_type();

// Double-negation elimination: type [~~A -> A].
LT gen_dne(const Fm& a, NameSupply& supply);
// Ex falso: type [ff -> A].
LT gen_exf(const Fm& a, NameSupply& supply);
// Comprehension: for a 1-formula P, a program of type
// [exists X forall a (a in X <-> P(a))], built on the bar-recursion
// functional at the witness type (i -> [P]) x ([P] -> i).
LT gen_comp(const Formula1& phi, NameSupply& supply);
// Replacement: for a 2-formula F = (X |-> A) and realizer types tb/tc for
// the two 1-formulas being exchanged, a program of type
// [forall a (P(a) <-> Q(a)) -> (A(P) <-> A(Q))].
LT gen_repl(const Formula2& f, const LTType& tb, const LTType& tc,
            NameSupply& supply);
// Second-order elimination: [forall X A(X) -> A(B)].
LT gen_elim(const Formula2& f, const Formula1& b, NameSupply& supply);
// The candidate statement for the set of normalizing terms.
LT gen_normrc(NameSupply& supply);
// The candidate statement for rc_formula(rho); free variables are the x_X
// of rho's free type variables.
LT gen_isrc(const FType& rho, GenContext& ctx);
// Adequacy: the realizer of membership of the (substituted) subject in the
// candidate of its type, by recursion on the derivation.
LT gen_adeq(const Deriv& d, GenContext& ctx);
// For a closed derivation of a closed type: a closed program of type
// (i -> i) -> i whose value on the identity bounds the number of weak head
// steps of the subject. Throws OpenDerivation otherwise.
LT gen_norm(const Deriv& d, NameSupply& supply);

} // namespace fbar
