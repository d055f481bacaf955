#pragma once

// End-to-end extraction: from a closed derivation, evaluate the generated
// normalization program to a step bound, then iterate the one-step reducer
// that many times on the encoded subject and decode the weak head normal
// form. Results are checked against the reference reducer.

#include "fbar/lambda.hpp"
#include "fbar/lteval.hpp"
#include "fbar/realize.hpp"

namespace fbar {

struct ExtractResult {
    bool fuel_exhausted = false;
    int exhausted_phase = 0;  // 1 = bound computation, 2 = reduction
    long bound = -1;          // value of the norm program on the identity
    long steps_oracle = -1;   // reference weak-head step count
    Lam nf;                   // decoded normal form (phase 2)
    Lam oracle_nf;            // reference normal form
    bool bound_ok = false;    // bound >= steps_oracle
    bool nf_ok = false;       // nf == oracle_nf
    long term_size = 0;       // node count of the generated program
    long steps_phase1 = 0;    // evaluator steps for the bound
    long steps_phase2 = 0;    // evaluator steps for the normal form
    LT norm_program;
};

// fuel is a per-phase evaluator step budget.
ExtractResult extract_normal_form(const Deriv& d, long fuel, NameSupply& supply);

} // namespace fbar
