#include <benchmark/benchmark.h>

#include <random>

#include "fbar/extract.hpp"
#include "fbar/lambda.hpp"
#include "fbar/lteval.hpp"
#include "fbar/ltlib.hpp"
#include "fbar/realize.hpp"

using namespace fbar;

namespace {

Lam church(int n) {
    // \f \x. f^n x
    Lam body = lam_var(0);
    for (int i = 0; i < n; ++i) body = lam_app(lam_var(1), body);
    return lam_abs(lam_abs(body));
}

Deriv identity_deriv() {
    return elaborate(parse_church("tfn X. fn (X) #0"));
}

Deriv idid_deriv() {
    return elaborate(parse_church(
        "(tfn X. fn (X) #0) [forall X. X -> X] (tfn X. fn (X) #0)"));
}

void bm_reference_normalize(benchmark::State& state) {
    // church n applied to church n: exponentially sized normal form
    Lam t = lam_app(lam_app(church((int)state.range(0)), church(2)), lam_abs(lam_var(0)));
    for (auto _ : state) {
        WhResult r = normalize_wh(t, 1000000);
        benchmark::DoNotOptimize(r.steps);
    }
}
BENCHMARK(bm_reference_normalize)->Arg(4)->Arg(6);

void bm_substitution_program(benchmark::State& state) {
    std::mt19937_64 rng(11);
    Lam t = church((int)state.range(0));
    LamList l = {lam_abs(lam_var(0)), lam_var(2)};
    LT prog = lt_app(build_lsubst(), {encode_lam(t), lt_nat(0), encode_list(l)});
    for (auto _ : state) {
        EvalResult r = lt_eval(prog, 2000000);
        benchmark::DoNotOptimize(r.steps);
    }
}
BENCHMARK(bm_substitution_program)->Arg(8)->Arg(32);

void bm_one_step_program(benchmark::State& state) {
    Lam t = lam_app(church((int)state.range(0)), lam_abs(lam_var(0)));
    LT prog = lt_app(build_red(), encode_lam(t));
    for (auto _ : state) {
        EvalResult r = lt_eval(prog, 2000000);
        benchmark::DoNotOptimize(r.steps);
    }
}
BENCHMARK(bm_one_step_program)->Arg(8)->Arg(32);

void bm_generate_norm_program(benchmark::State& state) {
    Deriv d = state.range(0) == 0 ? identity_deriv() : idid_deriv();
    for (auto _ : state) {
        NameSupply s;
        LT p = gen_norm(d, s);
        benchmark::DoNotOptimize(lt_size(p));
    }
}
BENCHMARK(bm_generate_norm_program)->Arg(0)->Arg(1);

void bm_extract_identity(benchmark::State& state) {
    Deriv d = identity_deriv();
    for (auto _ : state) {
        NameSupply s;
        ExtractResult r = extract_normal_form(d, 100000000, s);
        benchmark::DoNotOptimize(r.bound);
    }
}
BENCHMARK(bm_extract_identity)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
