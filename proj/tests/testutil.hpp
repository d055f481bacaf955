#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbar/lambda.hpp"
#include "fbar/ltlib.hpp"
#include "fbar/lteval.hpp"
#include "fbar/systemf.hpp"

namespace testutil {

using Rng = std::mt19937_64;

// Random de Bruijn term with roughly `size` nodes; free indices < freevars
// plus whatever binders accumulate.
inline fbar::Lam random_lam(Rng& rng, int size, int freevars = 3) {
    if (size <= 1 || freevars + size <= 1) {
        int bound = std::max(freevars, 1);
        return fbar::lam_var(static_cast<int>(rng() % static_cast<unsigned>(bound)));
    }
    switch (rng() % 3) {
    case 0: {
        int bound = std::max(freevars, 1);
        return fbar::lam_var(static_cast<int>(rng() % static_cast<unsigned>(bound)));
    }
    case 1: return fbar::lam_abs(random_lam(rng, size - 1, freevars + 1));
    default: {
        int left = 1 + static_cast<int>(rng() % static_cast<unsigned>(size - 1));
        return fbar::lam_app(random_lam(rng, left, freevars),
                             random_lam(rng, size - 1 - left, freevars));
    }
    }
}

inline fbar::LamList random_list(Rng& rng, int len, int size, int freevars = 3) {
    fbar::LamList out;
    for (int i = 0; i < len; ++i) out.push_back(random_lam(rng, size, freevars));
    return out;
}

// Evaluate and decode helpers for oracle comparisons.
inline fbar::Lam eval_decode(const fbar::LT& t, long fuel = 2000000) {
    fbar::EvalResult r = fbar::lt_eval(t, fuel);
    if (r.fuel_exhausted) throw std::runtime_error("eval_decode: fuel exhausted");
    return fbar::decode_lam(r.result);
}

inline long eval_numeral(const fbar::LT& t, long fuel = 2000000) {
    fbar::EvalResult r = fbar::lt_eval(t, fuel);
    if (r.fuel_exhausted) throw std::runtime_error("eval_numeral: fuel exhausted");
    return fbar::read_numeral(r.result);
}

inline fbar::LamList eval_decode_list(const fbar::LT& t, long fuel = 2000000) {
    fbar::EvalResult r = fbar::lt_eval(t, fuel);
    if (r.fuel_exhausted) throw std::runtime_error("eval_decode_list: fuel exhausted");
    // value shape: nil | cons l t (element i of the logical list at depth i)
    fbar::LamList out;
    fbar::LT cur = r.result;
    std::vector<fbar::LT> elems;
    while (true) {
        if (cur->kind == fbar::LTKind::Const && cur->cst == fbar::LTConst::Nil) break;
        if (cur->kind == fbar::LTKind::App && cur->a &&
            cur->a->kind == fbar::LTKind::App &&
            cur->a->a->kind == fbar::LTKind::Const &&
            cur->a->a->cst == fbar::LTConst::Cons) {
            elems.push_back(cur->b);
            cur = cur->a->b;
            continue;
        }
        throw std::runtime_error("eval_decode_list: not a list value");
    }
    for (auto it = elems.rbegin(); it != elems.rend(); ++it)
        out.push_back(fbar::decode_lam(*it));
    return out;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string corpus_path(const std::string& name) {
    return std::string(CORPUS_DIR) + "/" + name;
}

inline fbar::Deriv corpus_deriv(const std::string& name) {
    fbar::Deriv d = fbar::elaborate(fbar::parse_church(slurp(corpus_path(name))));
    std::string bad = fbar::check_derivation(d);
    if (!bad.empty()) throw std::runtime_error(name + ": " + bad);
    return d;
}

inline const std::vector<std::string>& corpus_files() {
    static std::vector<std::string> files = {
        "identity.sf",  "idid.sf",    "k.sf",
        "k_app.sf",     "selfapp.sf", "selfapp_applied.sf",
        "nested_inst.sf", "church2.sf", "church2_app.sf"};
    return files;
}

} // namespace testutil
