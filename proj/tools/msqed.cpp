// Command-line driver: experiment orchestration and artifact emission.
//
//   msqed run --config cfg [--set k=v ...] [--seed N] [--workers N] [--out DIR] [--force]
//   msqed verify SUITE [--out DIR]
//
// Exit codes: 0 success, 2 parse/usage error, 3 hypothesis gate, 4 solver failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <future>
#include <iostream>

#include "msqed/accept.hpp"
#include "msqed/report.hpp"
#include "msqed/runconfig.hpp"

namespace {

using namespace msqed;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitSolver = 4;

int workers_from(const RunConfig& cfg) {
    int w = cfg.get_int("runtime.workers", 0);
    if (w <= 0) {
        if (const char* env = std::getenv("MSQED_WORKERS")) w = std::atoi(env);
    }
    return std::max(1, w);
}

int run_minimize(const RunConfig& cfg, const std::string& out_dir) {
    const ModelConfig model = cfg.model();
    const HypothesisReport hyp = hypothesis_report(model);
    MinimizerResult result;
    try {
        result = minimize(model, cfg.solver());
    } catch (const MinimizeError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        write_file_atomic(out_dir + "/run.json", run_record_json(cfg, e.diagnostics, hyp));
        return kExitSolver;
    }
    write_file_atomic(out_dir + "/run.json", run_record_json(cfg, result, hyp));
    std::cout << "E_V = " << format17(result.E) << "  (mu_V = " << format17(result.mu_V)
              << ", iterations = " << result.outer_iterations << ")\n";
    return kExitOk;
}

int run_uv_sweep(const RunConfig& cfg, const std::string& out_dir) {
    const ModelConfig model = cfg.model();
    std::vector<double> ladder = cfg.get_ladder("experiment.ladder");
    if (ladder.empty()) ladder = {2.0, 4.0, 8.0, 16.0};
    const int workers = workers_from(cfg);
    UvSweepResult sweep;
    try {
        if (workers > 1) {
            // independent cold-started members
            std::vector<std::future<MinimizerResult>> futs;
            for (double L : ladder)
                futs.push_back(std::async(std::launch::async, [&, L] {
                    return minimize(model, cfg.solver(), MinimizeSeeds{}, L);
                }));
            for (std::size_t i = 0; i < ladder.size(); ++i) {
                sweep.lambdas.push_back(ladder[i]);
                sweep.runs.push_back(futs[i].get());
                sweep.energies.push_back(sweep.runs.back().E);
            }
            sweep.monotone = true;
            for (std::size_t i = 1; i < sweep.energies.size(); ++i)
                if (sweep.energies[i] > sweep.energies[i - 1] + 1e-8) sweep.monotone = false;
            if (sweep.energies.size() >= 3) {
                const auto n = sweep.energies.size();
                sweep.cauchy_shrinks = std::abs(sweep.energies[n - 1] - sweep.energies[n - 2]) <
                                       std::abs(sweep.energies[n - 2] - sweep.energies[n - 3]);
            }
        } else {
            sweep = uv_sweep(model, ladder, cfg.solver());
        }
    } catch (const MinimizeError& e) {
        std::cerr << "solver failure during sweep: " << e.what() << "\n";
        return kExitSolver;
    }
    write_file_atomic(out_dir + "/run.json", uv_record_json(cfg, sweep));
    std::vector<std::vector<double>> cols{sweep.lambdas, sweep.energies};
    std::vector<double> res_a, res_u, iters;
    for (const auto& r : sweep.runs) {
        res_a.push_back(r.residual_A);
        res_u.push_back(r.residual_u);
        iters.push_back(r.outer_iterations);
    }
    cols.push_back(res_a);
    cols.push_back(res_u);
    cols.push_back(iters);
    write_file_atomic(out_dir + "/tables/uv_sweep.csv",
                      csv_table({"Lambda", "E", "residual_A", "residual_u", "outer_iterations"},
                                cols));
    write_file_atomic(out_dir + "/plotdata/uv_energy_vs_lambda.csv",
                      csv_table({"Lambda", "E"}, {sweep.lambdas, sweep.energies}));
    std::cout << "uv-sweep: monotone=" << (sweep.monotone ? "yes" : "no")
              << " cauchy_shrinks=" << (sweep.cauchy_shrinks ? "yes" : "no") << "\n";
    return kExitOk;
}

int run_g_sweep(const RunConfig& cfg, const std::string& out_dir) {
    const ModelConfig model = cfg.model();
    std::vector<double> ladder = cfg.get_ladder("experiment.ladder");
    if (ladder.empty()) ladder = {0.02, 0.04, 0.08};
    ExpansionReport rep;
    try {
        rep = expansion_fit(model, ladder, cfg.solver());
    } catch (const MinimizeError& e) {
        std::cerr << "solver failure during sweep: " << e.what() << "\n";
        return kExitSolver;
    }
    write_file_atomic(out_dir + "/run.json", expansion_record_json(cfg, rep));
    write_file_atomic(
        out_dir + "/tables/g_sweep.csv",
        csv_table({"g", "E", "phi_norm", "A_h1", "A_minus_A1_h1", "omega_dev"},
                  {rep.g_values, rep.energies, rep.phi_norms, rep.a_norms, rep.a1_deviation,
                   rep.omega_dev}));
    write_file_atomic(out_dir + "/plotdata/scaling_fits.csv",
                      csv_table({"quantity_slope", "value"},
                                {{2.0, 1.0, 3.0, 4.0, 4.0},
                                 {rep.phi_slope, rep.a_slope, rep.a1_slope, rep.omega_slope,
                                  rep.remainder_slope}}));
    std::cout << "g-sweep: c2_fit = " << format17(rep.c2_fit)
              << " predicted = " << format17(rep.c2_predicted)
              << " response_oracle = " << format17(rep.c2_response) << "\n";
    return kExitOk;
}

int run_suite_experiment(const RunConfig& cfg, const std::string& out_dir, int criterion_id,
                         const std::string& label) {
    const CriterionResult r = run_criterion(criterion_id);
    json j;
    j["schema"] = "msqed.verify/1";
    j["config_hash"] = cfg.hash();
    j["criteria"] = json::array({json{{"id", r.id},
                                      {"name", r.name},
                                      {"pass", r.pass},
                                      {"seconds", r.seconds},
                                      {"details", r.details}}});
    write_file_atomic(out_dir + "/" + label + ".json", j.dump(2));
    std::cout << format_criterion_line(r) << "\n";
    return r.pass ? kExitOk : kExitSolver;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            std::optional<std::uint64_t> seed, int workers, std::string out_dir, bool force) {
    RunConfig cfg;
    try {
        cfg = RunConfig::parse_file(config_path);
        for (const auto& ov : overrides) cfg.apply_override(ov);
        if (seed) {
            cfg.kv["seed"] = std::to_string(*seed);
            cfg.seed = *seed;
        }
        if (workers > 0) cfg.kv["runtime.workers"] = std::to_string(workers);
        if (!out_dir.empty()) cfg.kv["output.dir"] = out_dir;
        out_dir = cfg.output_dir();
        ensure_directory(out_dir);
    } catch (const ConfigParseError& e) {
        std::cerr << "config error at line " << e.line << ", column " << e.column << ": "
                  << e.what() << "\n";
        return kExitParse;
    }

    ModelConfig model;
    try {
        model = cfg.model();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitParse;
    }
    const HypothesisReport hyp = hypothesis_report(model);
    if (!hyp.structural_ok && !force) {
        std::cerr << "hypothesis gate: V/chi structure checks failed "
                  << "(even residual " << hyp.potential_even_residual << ", V1 min " << hyp.v1_min
                  << "); use --force to override\n";
        return kExitHypothesis;
    }
    if (!hyp.smallness_ok) {
        std::cerr << "warning: smallness condition violated (lhs = " << hyp.smallness_lhs
                  << " >= 1)\n";
    }

    const std::string kind = cfg.experiment();
    try {
        if (kind == "minimize") return run_minimize(cfg, out_dir);
        if (kind == "uv-sweep") return run_uv_sweep(cfg, out_dir);
        if (kind == "g-sweep") return run_g_sweep(cfg, out_dir);
        if (kind == "fock-check") return run_suite_experiment(cfg, out_dir, 7, "fock");
        if (kind == "lorentz-report") return run_suite_experiment(cfg, out_dir, 8, "lorentz");
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    }
    std::cerr << "unknown experiment.kind: " << kind << "\n";
    return kExitParse;
}

int cmd_verify(const std::string& suite, const std::string& out_dir) {
    std::vector<int> ids;
    try {
        ids = criterion_ids_for_suite(suite);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << " (expected identities|fock|lorentz|expansion|uv|all)\n";
        return kExitParse;
    }
    bool all_pass = true;
    json arr = json::array();
    for (int id : ids) {
        const CriterionResult r = run_criterion(id);
        std::cout << format_criterion_line(r) << std::endl;
        all_pass = all_pass && r.pass;
        arr.push_back(json{{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"seconds", r.seconds},
                           {"details", r.details}});
    }
    json j;
    j["schema"] = "msqed.verify/1";
    j["suite"] = suite;
    j["all_pass"] = all_pass;
    j["criteria"] = arr;
    ensure_directory(out_dir);
    write_file_atomic(out_dir + "/verify_" + suite + ".json", j.dump(2));
    return all_pass ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maxwell-Schrodinger quasi-classical ground-state toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, suite;
    std::vector<std::string> overrides;
    std::uint64_t seed_value = 0;
    bool seed_given = false;
    int workers = 0;
    bool force = false;

    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("--config", config_path, "key-value config file")->required();
    run->add_option("--set", overrides, "override: key=value (repeatable)");
    auto* seed_opt = run->add_option("--seed", seed_value, "RNG seed integer");
    run->add_option("--workers", workers, "parallel sweep members");
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--force", force, "run even if the hypothesis gate fails");

    auto* verify = app.add_subcommand("verify", "run an acceptance suite");
    verify->add_option("suite", suite, "identities|fock|lorentz|expansion|uv|all")->required();
    std::string verify_out = "out";
    verify->add_option("--out", verify_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    seed_given = seed_opt->count() > 0;

    if (run->parsed()) {
        return cmd_run(config_path, overrides,
                       seed_given ? std::optional<std::uint64_t>(seed_value) : std::nullopt,
                       workers, out_dir, force);
    }
    return cmd_verify(suite, verify_out);
}
