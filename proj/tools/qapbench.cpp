// qapbench: benchmark pipeline driver.
//   gen       generate seeded QAP instances with cached optima
//   sweep     depth sweep of the walk circuit to the mean-OSP threshold
//   classical MMAS and greedy-local-search baselines
//   grover    Grover-search iteration baseline
//   shells    shell distributions around the optimum at tuned depth
//   report    joined, figure-ready CSVs plus accounting checks
//
// Exit codes: 0 ok, 2 config error, 3 missing dependency/artifact, 4 numeric
// failure.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qapbench/errors.hpp"
#include "qapbench/harness.hpp"

namespace {

std::vector<int> parse_sizes(const std::string& csv) {
    std::vector<int> sizes;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string tok =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (tok.empty()) throw qapbench::ConfigError("--sizes: empty entry in '" + csv + "'");
        try {
            sizes.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw qapbench::ConfigError("--sizes: '" + tok + "' is not an integer");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return sizes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QAP benchmark pipeline: permutation-basis walk circuit vs classical solvers"};
    app.require_subcommand(1);

    std::string config_path;
    std::string sizes_csv;
    std::string out_dir;
    std::uint64_t seed = 0;
    int workers = 0, p_max = 0, shots = 0, instances = 0, flow_scale = 0;
    double threshold = 0.0;
    int mmas_runs = 0, mmas_ants = -1, gls_restarts = 0, opt_max_evals = 0;
    double mmas_rho = 0.0, mmas_alpha = -1.0, mmas_q = 0.0;
    std::uint64_t mmas_max_iters = 0;
    double opt_x_tol = 0.0, opt_f_tol = 0.0;

    app.add_option("--config", config_path, "JSON config file (flat object)");
    app.add_option("--sizes", sizes_csv, "comma-separated problem sizes, e.g. 5,6,7");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--workers", workers, "worker threads (QAPBENCH_WORKERS as fallback)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--p-max", p_max, "depth cap per size");
    app.add_option("--threshold", threshold, "mean-OSP stopping threshold in (0,1)");
    app.add_option("--shots", shots, "measurement shots for the solve-probability bound");
    app.add_option("--instances", instances, "instances per size");
    app.add_option("--flow-scale", flow_scale, "integer flow magnitudes are drawn from 1..scale");
    app.add_option("--mmas-runs", mmas_runs, "MMAS runs per instance");
    app.add_option("--mmas-ants", mmas_ants, "MMAS ants per iteration (0 = n)");
    app.add_option("--mmas-rho", mmas_rho, "MMAS evaporation rate in (0,1)");
    app.add_option("--mmas-alpha", mmas_alpha, "MMAS pheromone exponent");
    app.add_option("--mmas-q", mmas_q, "MMAS deposit constant");
    app.add_option("--mmas-max-iters", mmas_max_iters, "MMAS iteration cap per run");
    app.add_option("--gls-restarts", gls_restarts, "GLS restarts per instance");
    app.add_option("--opt-max-evals", opt_max_evals, "optimizer budget per (instance, p)");
    app.add_option("--opt-x-tol", opt_x_tol, "optimizer simplex-spread tolerance");
    app.add_option("--opt-f-tol", opt_f_tol, "optimizer value-spread tolerance");
    const auto* cold_flag = app.add_flag("--cold-start", "disable warm-starting across p");
    const auto* long_flag = app.add_flag("--long-run", "allow supercomputer-scale sizes (n >= 10)");

    for (const char* name : {"gen", "sweep", "classical", "grover", "shells", "report"}) {
        app.add_subcommand(name)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        qapbench::ExperimentConfig cfg;
        if (app.count("--config")) cfg = qapbench::load_config(config_path);
        if (app.count("--sizes")) cfg.sizes = parse_sizes(sizes_csv);
        if (app.count("--seed")) cfg.master_seed = seed;
        if (app.count("--workers")) cfg.workers = workers;
        if (app.count("--out")) cfg.out_dir = out_dir;
        if (app.count("--p-max")) cfg.p_max = p_max;
        if (app.count("--threshold")) cfg.osp_threshold = threshold;
        if (app.count("--shots")) cfg.shots = shots;
        if (app.count("--instances")) cfg.instances_per_size = instances;
        if (app.count("--flow-scale")) cfg.flow_scale = flow_scale;
        if (app.count("--mmas-runs")) cfg.mmas_runs = mmas_runs;
        if (app.count("--mmas-ants")) cfg.mmas.m = mmas_ants;
        if (app.count("--mmas-rho")) cfg.mmas.rho = mmas_rho;
        if (app.count("--mmas-alpha")) cfg.mmas.alpha = mmas_alpha;
        if (app.count("--mmas-q")) cfg.mmas.q_const = mmas_q;
        if (app.count("--mmas-max-iters")) cfg.mmas.max_iters = mmas_max_iters;
        if (app.count("--gls-restarts")) cfg.gls_restarts = gls_restarts;
        if (app.count("--opt-max-evals")) cfg.opt.max_evals = opt_max_evals;
        if (app.count("--opt-x-tol")) cfg.opt.x_tol = opt_x_tol;
        if (app.count("--opt-f-tol")) cfg.opt.f_tol = opt_f_tol;
        if (cold_flag->count()) cfg.cold_start = true;
        if (long_flag->count()) cfg.long_run = true;

        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "gen") {
            qapbench::cmd_gen(cfg);
        } else if (name == "sweep") {
            qapbench::cmd_sweep(cfg);
        } else if (name == "classical") {
            qapbench::cmd_classical(cfg);
        } else if (name == "grover") {
            qapbench::cmd_grover(cfg);
        } else if (name == "shells") {
            qapbench::cmd_shells(cfg);
        } else {
            qapbench::cmd_report(cfg);
        }
        return 0;
    } catch (const qapbench::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qapbench::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qapbench::DependencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qapbench::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qapbench::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
