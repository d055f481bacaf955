// Command-line front end: parse System F terms, elaborate and check their
// typing derivations, translate them into total-language programs, run the
// extraction pipeline, and compare against the reference reducer.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fbar/extract.hpp"
#include "fbar/lambda.hpp"
#include "fbar/logic.hpp"
#include "fbar/lteval.hpp"
#include "fbar/ltlib.hpp"
#include "fbar/realize.hpp"
#include "fbar/systemf.hpp"

using namespace fbar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStatic = 1;
constexpr int kExitFuel = 2;
constexpr int kExitContract = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Deriv load_derivation(const std::string& path) {
    Church t = parse_church(read_file(path));
    Deriv d = elaborate(t);
    std::string bad = check_derivation(d);
    if (!bad.empty()) throw std::runtime_error("derivation check failed: " + bad);
    return d;
}

std::uint64_t seed_from_env() {
    if (const char* s = std::getenv("FBAR_SEED")) return std::strtoull(s, nullptr, 10);
    return 0;
}

int cmd_check(const std::string& file) {
    try {
        Deriv d = load_derivation(file);
        std::cout << deriv_to_string(d);
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStatic;
    }
}

// One annotation line per derivation node: the rule applied, the judged
// subject, and the candidate-membership formula the generated program
// inhabits at that node.
void explain_node(const Deriv& d, NameSupply& supply, int depth) {
    static const char* tags[] = {"axiom", "abs", "app", "gen", "inst"};
    Fo vec = fo_nil();
    for (std::size_t i = 0; i < d->ctx.size(); ++i)
        vec = fo_snoc(vec, fo_var("t" + std::to_string(i), Sort::TermS));
    Fo subject = fo_tmsubst(
        [&] {
            std::function<Fo(const Lam&)> go = [&](const Lam& t) -> Fo {
                switch (t->kind) {
                case LamKind::Var:
                    return fo_tmvar(fo_nat(static_cast<unsigned long>(t->index)));
                case LamKind::Abs: return fo_tmabs(go(t->a));
                case LamKind::App:
                    return fo_tmapp(go(t->a), fo_snoc(fo_nil(), go(t->b)));
                }
                throw std::runtime_error("bad term");
            };
            return go(d->subject);
        }(),
        vec);
    Fm fm = instantiate(rc_formula(d->ty, supply), subject);
    std::cout << "; " << std::string(static_cast<std::size_t>(depth) * 2, ' ')
              << tags[static_cast<int>(d->rule)] << " " << lam_to_string(d->subject)
              << " : " << ftype_to_string(d->ty) << "\n;   "
              << std::string(static_cast<std::size_t>(depth) * 2, ' ')
              << "realizes " << fm_to_string(fm) << "\n";
    if (d->p1) explain_node(d->p1, supply, depth + 1);
    if (d->p2) explain_node(d->p2, supply, depth + 1);
}

int cmd_translate(const std::string& file, bool explain, std::uint64_t seed) {
    try {
        Deriv d = load_derivation(file);
        if (explain) {
            NameSupply esup(seed);
            explain_node(d, esup, 0);
        }
        NameSupply supply(seed);
        LT t = gen_norm(d, supply);
        std::cout << lt_to_string(t) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStatic;
    }
}

struct RunReport {
    std::string file;
    std::string status; // ok | fuel | contract
    ExtractResult ex;
    double wall_ms = 0;
};

void print_report(const RunReport& r, const std::string& format) {
    auto nf_text = [](const Lam& t) {
        return t ? lam_to_string(t) : std::string("-");
    };
    if (format == "machine") {
        std::cout << "file=" << r.file << "\n"
                  << "status=" << r.status << "\n"
                  << "term_size=" << r.ex.term_size << "\n"
                  << "bound=" << r.ex.bound << "\n"
                  << "steps_oracle=" << r.ex.steps_oracle << "\n"
                  << "nf=" << nf_text(r.ex.nf) << "\n"
                  << "oracle_nf=" << nf_text(r.ex.oracle_nf) << "\n"
                  << "steps_phase1=" << r.ex.steps_phase1 << "\n"
                  << "steps_phase2=" << r.ex.steps_phase2 << "\n"
                  << "exhausted_phase=" << r.ex.exhausted_phase << "\n"
                  << "wall_ms=" << static_cast<long>(r.wall_ms) << "\n";
        return;
    }
    std::cout << r.file << ": " << r.status << "  program-size=" << r.ex.term_size
              << " bound=" << r.ex.bound << " oracle-steps=" << r.ex.steps_oracle
              << " nf=" << nf_text(r.ex.nf)
              << " steps=" << r.ex.steps_phase1 << "+" << r.ex.steps_phase2
              << " wall=" << static_cast<long>(r.wall_ms) << "ms\n";
}

RunReport run_one(const std::string& file, long fuel, std::uint64_t seed, bool trace) {
    RunReport rep;
    rep.file = file;
    Deriv d = load_derivation(file);
    NameSupply supply(seed);
    auto t0 = std::chrono::steady_clock::now();
    if (trace) {
        // Re-implement the two phases with a step callback for tracing.
        rep.ex.norm_program = gen_norm(d, supply);
        rep.ex.term_size = static_cast<long>(lt_size(rep.ex.norm_program));
        std::string u = lt_fresh_for("u", {rep.ex.norm_program});
        LT phase1 = lt_app(rep.ex.norm_program, lt_lam(u, nat_t(), lt_var(u)));
        // Distinct-node count; terms share subtrees heavily, so the plain
        // tree size is both misleading and expensive to compute.
        auto dag_size = [](const LT& t) {
            std::set<const LTNode*> seen;
            std::vector<const LTNode*> todo{t.get()};
            while (!todo.empty()) {
                const LTNode* n = todo.back();
                todo.pop_back();
                if (!n || !seen.insert(n).second) continue;
                todo.push_back(n->a.get());
                todo.push_back(n->b.get());
            }
            return seen.size();
        };
        auto on_step = [&dag_size](long k, const LT& t) {
            if (k <= 50) {
                if (std::size_t n = dag_size(t); n > 4096) {
                    std::cerr << "step " << k << " (shared size " << n << ")\n";
                } else {
                    std::cerr << "step " << k << ": " << lt_to_string(t) << "\n";
                }
            } else if (k % 100000 == 0)
                std::cerr << "step " << k << " (shared size " << dag_size(t) << ")\n";
            return true;
        };
        EvalResult e1 = lt_eval_traced(phase1, fuel, on_step);
        rep.ex.steps_phase1 = e1.steps;
        WhResult oracle = normalize_wh(d->subject, 1000000);
        rep.ex.steps_oracle = oracle.steps;
        rep.ex.oracle_nf = oracle.nf;
        if (e1.fuel_exhausted) {
            rep.ex.fuel_exhausted = true;
            rep.ex.exhausted_phase = 1;
        } else {
            rep.ex.bound = read_numeral(e1.result);
            rep.ex.bound_ok = rep.ex.bound >= rep.ex.steps_oracle;
            LT phase2 = lt_app(lt_const(LTConst::NatIt),
                               {encode_lam(d->subject), build_red(),
                                lt_nat(static_cast<unsigned long>(rep.ex.bound))});
            EvalResult e2 = lt_eval_traced(phase2, fuel, on_step);
            rep.ex.steps_phase2 = e2.steps;
            if (e2.fuel_exhausted) {
                rep.ex.fuel_exhausted = true;
                rep.ex.exhausted_phase = 2;
            } else {
                rep.ex.nf = decode_lam(e2.result);
                rep.ex.nf_ok = lam_eq(rep.ex.nf, rep.ex.oracle_nf);
            }
        }
    } else {
        rep.ex = extract_normal_form(d, fuel, supply);
    }
    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.status = rep.ex.fuel_exhausted ? "fuel"
                 : (rep.ex.bound_ok && rep.ex.nf_ok) ? "ok"
                                                     : "contract";
    return rep;
}

int cmd_run(const std::vector<std::string>& files, long fuel, std::uint64_t seed,
            bool trace, const std::string& format, int jobs) {
    std::vector<RunReport> reports(files.size());
    std::vector<int> codes(files.size(), kExitOk);
    std::mutex log_mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            try {
                reports[i] = run_one(files[i], fuel, seed, trace);
                codes[i] = reports[i].status == "ok"     ? kExitOk
                           : reports[i].status == "fuel" ? kExitFuel
                                                         : kExitContract;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(log_mu);
                std::cerr << files[i] << ": error: " << e.what() << "\n";
                reports[i].file = files[i];
                reports[i].status = "error";
                codes[i] = kExitStatic;
            }
        }
    };
    if (jobs <= 1 || files.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    int rc = kExitOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (reports[i].status != "error") print_report(reports[i], format);
        rc = std::max(rc, codes[i]);
    }
    return rc;
}

int cmd_oracle(const std::string& file, long fuel) {
    try {
        Deriv d = load_derivation(file);
        WhResult r = normalize_wh(d->subject, fuel);
        if (r.fuel_exhausted) {
            std::cerr << "error: fuel exhausted after " << r.steps << " steps\n";
            return kExitFuel;
        }
        std::cout << "steps=" << r.steps << "\nnf=" << lam_to_string(r.nf) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStatic;
    }
}

int cmd_diff(const std::vector<std::string>& files, long fuel, std::uint64_t seed,
             const std::string& format, int jobs) {
    // run + oracle + explicit comparison per file
    int rc = cmd_run(files, fuel, seed, false, format, jobs);
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"System F normalization-by-extraction toolchain"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> files;
    bool explain = false;
    bool trace = false;
    long fuel_run = 100000000L;
    long fuel_oracle = 1000000L;
    std::uint64_t seed = seed_from_env();
    std::string format = "text";
    int jobs = 1;

    auto* check = app.add_subcommand("check", "Parse, elaborate and verify a term");
    check->add_option("file", file, ".sf input file")->required();

    auto* translate =
        app.add_subcommand("translate", "Emit the generated program");
    translate->add_option("file", file, ".sf input file")->required();
    translate->add_flag("--explain", explain,
                        "annotate with the formulas each part realizes");
    translate->add_option("--seed", seed, "fresh-name seed");

    auto* run = app.add_subcommand("run", "Extract bound and normal form");
    run->add_option("files", files, ".sf input files")->required();
    run->add_option("--fuel", fuel_run, "evaluator steps per phase");
    run->add_flag("--trace", trace, "stream reduction steps to stderr");
    run->add_option("--seed", seed, "fresh-name seed");
    run->add_option("--format", format, "text|machine")
        ->check(CLI::IsMember({"text", "machine"}));
    run->add_option("--jobs", jobs, "parallel files");

    auto* oracle = app.add_subcommand("oracle", "Reference weak-head reduction");
    oracle->add_option("file", file, ".sf input file")->required();
    oracle->add_option("--fuel", fuel_oracle, "reduction step budget");

    auto* diff = app.add_subcommand("diff", "Run and compare with the reference");
    diff->add_option("files", files, ".sf input files")->required();
    diff->add_option("--fuel", fuel_run, "evaluator steps per phase");
    diff->add_option("--seed", seed, "fresh-name seed");
    diff->add_option("--format", format, "text|machine")
        ->check(CLI::IsMember({"text", "machine"}));
    diff->add_option("--jobs", jobs, "parallel files");

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) return cmd_check(file);
    if (translate->parsed()) return cmd_translate(file, explain, seed);
    if (run->parsed()) return cmd_run(files, fuel_run, seed, trace, format, jobs);
    if (oracle->parsed()) return cmd_oracle(file, fuel_oracle);
    if (diff->parsed()) return cmd_diff(files, fuel_run, seed, format, jobs);
    return kExitStatic;
}
