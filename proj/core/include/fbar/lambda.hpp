#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

namespace fbar {

// Untyped lambda terms in de Bruijn form: the objects being normalized and
// the payload of the Lam datatype of the target language.
struct LamNode;
using Lam = std::shared_ptr<const LamNode>;

enum class LamKind { Var, Abs, App };

struct LamNode {
    LamKind kind;
    int index = 0; // Var
    Lam a, b;      // Abs body in a; App fun in a, arg in b
};

Lam lam_var(int n);
Lam lam_abs(Lam body);
Lam lam_app(Lam fun, Lam arg);

bool lam_eq(const Lam& s, const Lam& t);
std::size_t lam_size(const Lam& t);

// Lists of lambda terms; element i of the vector is the list's a_i.
using LamList = std::vector<Lam>;

// Increment every variable whose outer index is >= k (threshold grows by one
// under each binder).
Lam shift(int k, const Lam& t);
LamList shift_list(int k, const LamList& l);

// Parallel substitution t[k := <a_0,...,a_{n-1}>]: variables i with
// k <= i < k+n become a_{i-k}, variables >= k+n drop by n; under a binder the
// cut grows by one and the list is shifted at threshold 0.
Lam psubst(const Lam& t, int k, const LamList& l);

// t[u] = psubst(t, 0, <u>).
Lam subst1(const Lam& t, const Lam& u);

// One weak head step: ((\ a) b) l> |> (a[b]) l>. Never reduces under a binder
// or inside arguments; at most one redex position exists.
std::optional<Lam> wh_step(const Lam& t);
bool is_whnf(const Lam& t);

struct WhResult {
    long steps = 0;
    Lam nf;               // set when !fuel_exhausted
    bool fuel_exhausted = false;
};
WhResult normalize_wh(const Lam& t, long fuel);

// True iff t admits n weak-head steps without hitting a normal form first.
// Computed by bounded iteration, independently of normalize_wh.
bool can_reduce(const Lam& t, long n);

// Spine view: t = apply(head, args) with head not an App.
struct LamSpine {
    Lam head;
    std::vector<Lam> args;
};
LamSpine lam_spine(const Lam& t);
Lam lam_apply(Lam head, const std::vector<Lam>& args, std::size_t from = 0);

// Text syntax: `#n`, `\ t` (body extends right), juxtaposition (left-assoc),
// parentheses.
std::string lam_to_string(const Lam& t);
Lam parse_lam(const std::string& text); // throws ParseError

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fbar
