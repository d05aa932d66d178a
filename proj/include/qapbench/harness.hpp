#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "qapbench/heuristics.hpp"
#include "qapbench/nelder_mead.hpp"

namespace qapbench {

// Flat experiment configuration, mirrored one-to-one by the JSON config file
// and the CLI overrides.
struct ExperimentConfig {
    std::vector<int> sizes{5, 6, 7};
    int instances_per_size = 30;
    std::uint64_t master_seed = 987654321;
    double osp_threshold = 0.10;
    int shots = 4;
    int p_max = 24;
    int workers = 0; // 0 -> QAPBENCH_WORKERS env var, then 1
    std::filesystem::path out_dir = "results";
    bool long_run = false;   // required for n >= 10
    bool cold_start = false; // disable warm-starting across p
    int flow_scale = 20;
    int mmas_runs = 50;
    MmasParams mmas{};
    int gls_restarts = 1000;
    SimplexConfig opt{};
};

// Throws ConfigError on violated invariants (empty sizes, bad threshold,
// out-of-range n, n >= 10 without long_run, ...).
void validate_config(const ExperimentConfig& cfg);

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

// Worker count: cfg.workers if > 0, else QAPBENCH_WORKERS, else 1.
int resolve_workers(const ExperimentConfig& cfg);

// Runs fn(0..count-1) on `workers` threads. Tasks must be independent;
// callers keep determinism by writing into index-addressed slots. The first
// exception is rethrown after all threads join.
void parallel_for(std::uint64_t count, int workers,
                  const std::function<void(std::uint64_t)>& fn);

std::string instance_id(int n, int idx);
std::filesystem::path instance_path(const ExperimentConfig& cfg, int n, int idx);

// Loads one generated instance; DependencyError if the file is missing.
QapInstance load_instance_checked(const ExperimentConfig& cfg, int n, int idx);

void cmd_gen(const ExperimentConfig& cfg);
void cmd_sweep(const ExperimentConfig& cfg);
void cmd_classical(const ExperimentConfig& cfg);
void cmd_grover(const ExperimentConfig& cfg);
void cmd_shells(const ExperimentConfig& cfg);
void cmd_report(const ExperimentConfig& cfg);

} // namespace qapbench
