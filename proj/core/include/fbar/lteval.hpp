#pragma once

#include <functional>
#include <optional>

#include "fbar/ltterm.hpp"

namespace fbar {

// Value predicate of the base-type value grammar:
//   v ::= zero | succ v | var v | abs v | app v v' | nil | cons v v'
bool lt_is_value(const LT& t);

// True when the term has no redex in evaluation position (a value, or a
// lambda/pair at higher type, or a partial constructor application).
bool lt_normal(const LT& t);

// One deterministic step following the evaluation-context grammar:
// hole | E t | p1 E | p2 E | natit a b E | lamit a b c E | listit a b E |
// S E | var E | abs E | app E | app v E | cons E | cons v E.
// Rules: call-by-name beta, lazy projections, the three iterators on values,
// and the bar-recursion rule
//   bbc a b c |> b (c @ \y. a (\z. bbc a b (c[y -> z])))
// with completion and extension expanded as concrete terms.
std::optional<LT> lt_step(const LT& t);

// Independent search implementation with an explicit context stack; must
// agree with lt_step everywhere.
std::optional<LT> lt_step_zipper(const LT& t);

struct EvalResult {
    long steps = 0;
    LT result;                 // last term reached (normal iff !fuel_exhausted)
    bool fuel_exhausted = false;
};

EvalResult lt_eval(const LT& t, long fuel);

// As lt_eval, but invokes the callback with (step index, term after the step);
// used for tracing and subject-reduction checks. Returning false stops early.
EvalResult lt_eval_traced(const LT& t, long fuel,
                          const std::function<bool(long, const LT&)>& on_step);

} // namespace fbar
