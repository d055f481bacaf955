#pragma once

#include "fbar/lambda.hpp"
#include "fbar/ltterm.hpp"

namespace fbar {

// Closed, well-typed programs of the target language implementing the derived
// operations on encoded lambda terms. Each builder returns a cached shared
// term.

// listapp : tm -> tms -> tm, iterated application t l.
LT build_listapp();

// lshift : tms -> tms, increments every variable with outer index >= 0 in
// every element (the list shift used under binders).
LT build_lshift();

// lsubst : tm -> i -> tms -> tm, parallel substitution t[k := l].
LT build_lsubst();

// eqdec : tm -> tm -> i, 0 iff both arguments evaluate to the same encoded
// term, S 0 otherwise. Strict in both arguments.
LT build_eqdec();

// red : tm -> tm, one weak-head step on the encoded term (identity on weak
// head normal forms).
LT build_red();

// Canonical inhabitant of tau.
LT can(const LTType& tau);

// The everywhere-undefined partial function of type tm +> tau (strict).
LT empty_fn(const LTType& tau);

// f[b -> c] : tm +> tau; on terminating u evaluates to (pair 0 c) when b and
// u have the same value, to f u otherwise.
LT extend(const LT& f, const LT& b, const LT& c, const LTType& tau);

// f @ g : tm -> tau; takes f's value where f is defined, g's elsewhere.
LT complete(const LT& f, const LT& g, const LTType& tau);

// Encodings between lambda_core values and target-language values.
LT encode_lam(const Lam& t);
LT encode_list(const LamList& l);

struct LTDecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Lam decode_lam(const LT& v);       // throws LTDecodeError on non-values
long read_numeral(const LT& v);    // throws LTDecodeError on non-numerals

// Fresh name based on `base` that is free in none of the given terms
// (deterministic: appends prime marks).
std::string lt_fresh_for(const std::string& base, std::initializer_list<LT> terms);

} // namespace fbar
