#include "fbar/extract.hpp"

#include "fbar/ltlib.hpp"

namespace fbar {

ExtractResult extract_normal_form(const Deriv& d, long fuel, NameSupply& supply) {
    ExtractResult r;
    r.norm_program = gen_norm(d, supply);
    r.term_size = lt_size(r.norm_program);

    WhResult oracle = normalize_wh(d->subject, 1000000);
    r.steps_oracle = oracle.steps;
    r.oracle_nf = oracle.nf;

    std::string u = lt_fresh_for("u", {r.norm_program});
    LT phase1 = lt_app(r.norm_program, lt_lam(u, nat_t(), lt_var(u)));
    EvalResult e1 = lt_eval(phase1, fuel);
    r.steps_phase1 = e1.steps;
    if (e1.fuel_exhausted) {
        r.fuel_exhausted = true;
        r.exhausted_phase = 1;
        return r;
    }
    r.bound = read_numeral(e1.result);
    r.bound_ok = !oracle.fuel_exhausted && r.bound >= r.steps_oracle;

    LT phase2 = lt_app(lt_const(LTConst::NatIt),
                       {encode_lam(d->subject), build_red(),
                        lt_nat(static_cast<unsigned long>(r.bound))});
    EvalResult e2 = lt_eval(phase2, fuel);
    r.steps_phase2 = e2.steps;
    if (e2.fuel_exhausted) {
        r.fuel_exhausted = true;
        r.exhausted_phase = 2;
        return r;
    }
    r.nf = decode_lam(e2.result);
    r.nf_ok = !oracle.fuel_exhausted && lam_eq(r.nf, r.oracle_nf);
    return r;
}

} // namespace fbar
