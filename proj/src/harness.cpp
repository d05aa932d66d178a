#include "qapbench/harness.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "qapbench/errors.hpp"
#include "qapbench/perm.hpp"

namespace qapbench {

using ordered_json = nlohmann::ordered_json;

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.sizes.empty()) throw ConfigError("config: sizes must not be empty");
    for (int n : cfg.sizes) {
        if (n < 4 || n > kMaxEnumerationN) {
            throw ConfigError("config: size n=" + std::to_string(n) + " outside supported 4.." +
                              std::to_string(kMaxEnumerationN));
        }
        if (n >= 10 && !cfg.long_run) {
            throw ConfigError("config: n=" + std::to_string(n) +
                              " requires long_run=true (supercomputer-scale sweep)");
        }
    }
    if (cfg.instances_per_size < 1) throw ConfigError("config: instances_per_size must be >= 1");
    if (!(cfg.osp_threshold > 0.0 && cfg.osp_threshold < 1.0)) {
        throw ConfigError("config: osp_threshold must lie in (0, 1)");
    }
    if (cfg.shots < 1) throw ConfigError("config: shots must be >= 1");
    if (cfg.p_max < 1) throw ConfigError("config: p_max must be >= 1");
    if (cfg.workers < 0) throw ConfigError("config: workers must be >= 0");
    if (cfg.flow_scale < 1) throw ConfigError("config: flow_scale must be >= 1");
    if (cfg.mmas_runs < 1) throw ConfigError("config: mmas_runs must be >= 1");
    if (cfg.gls_restarts < 1) throw ConfigError("config: gls_restarts must be >= 1");
    if (cfg.mmas.m < 0) throw ConfigError("config: mmas_ants must be >= 0 (0 = n ants)");
    if (!(cfg.mmas.rho > 0.0 && cfg.mmas.rho < 1.0)) {
        throw ConfigError("config: mmas_rho must lie in (0, 1)");
    }
    if (cfg.mmas.alpha < 0.0) throw ConfigError("config: mmas_alpha must be >= 0");
    if (!(cfg.mmas.q_const > 0.0)) throw ConfigError("config: mmas_q_const must be > 0");
    if (cfg.mmas.max_iters < 1) throw ConfigError("config: mmas_max_iters must be >= 1");
    if (cfg.opt.max_evals < 4) throw ConfigError("config: opt_max_evals must be >= 4");
    if (!(cfg.opt.x_tol > 0.0) || !(cfg.opt.f_tol > 0.0)) {
        throw ConfigError("config: optimizer tolerances must be > 0");
    }
}

ExperimentConfig config_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

    ExperimentConfig cfg;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "sizes") {
                cfg.sizes = value.get<std::vector<int>>();
            } else if (key == "instances_per_size") {
                cfg.instances_per_size = value.get<int>();
            } else if (key == "master_seed") {
                cfg.master_seed = value.get<std::uint64_t>();
            } else if (key == "osp_threshold") {
                cfg.osp_threshold = value.get<double>();
            } else if (key == "shots") {
                cfg.shots = value.get<int>();
            } else if (key == "p_max") {
                cfg.p_max = value.get<int>();
            } else if (key == "workers") {
                cfg.workers = value.get<int>();
            } else if (key == "out_dir") {
                cfg.out_dir = value.get<std::string>();
            } else if (key == "long_run") {
                cfg.long_run = value.get<bool>();
            } else if (key == "cold_start") {
                cfg.cold_start = value.get<bool>();
            } else if (key == "flow_scale") {
                cfg.flow_scale = value.get<int>();
            } else if (key == "mmas_runs") {
                cfg.mmas_runs = value.get<int>();
            } else if (key == "mmas_ants") {
                cfg.mmas.m = value.get<int>();
            } else if (key == "mmas_alpha") {
                cfg.mmas.alpha = value.get<double>();
            } else if (key == "mmas_rho") {
                cfg.mmas.rho = value.get<double>();
            } else if (key == "mmas_q_const") {
                cfg.mmas.q_const = value.get<double>();
            } else if (key == "mmas_max_iters") {
                cfg.mmas.max_iters = value.get<std::uint64_t>();
            } else if (key == "gls_restarts") {
                cfg.gls_restarts = value.get<int>();
            } else if (key == "opt_x_tol") {
                cfg.opt.x_tol = value.get<double>();
            } else if (key == "opt_f_tol") {
                cfg.opt.f_tol = value.get<double>();
            } else if (key == "opt_max_evals") {
                cfg.opt.max_evals = value.get<int>();
            } else {
                throw ConfigError("config: unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("config: bad value for '" + key + "': " + e.what());
        }
    }
    validate_config(cfg);
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["sizes"] = cfg.sizes;
    j["instances_per_size"] = cfg.instances_per_size;
    j["master_seed"] = cfg.master_seed;
    j["osp_threshold"] = cfg.osp_threshold;
    j["shots"] = cfg.shots;
    j["p_max"] = cfg.p_max;
    j["workers"] = cfg.workers;
    j["out_dir"] = cfg.out_dir.string();
    j["long_run"] = cfg.long_run;
    j["cold_start"] = cfg.cold_start;
    j["flow_scale"] = cfg.flow_scale;
    j["mmas_runs"] = cfg.mmas_runs;
    j["mmas_ants"] = cfg.mmas.m;
    j["mmas_alpha"] = cfg.mmas.alpha;
    j["mmas_rho"] = cfg.mmas.rho;
    j["mmas_q_const"] = cfg.mmas.q_const;
    j["mmas_max_iters"] = cfg.mmas.max_iters;
    j["gls_restarts"] = cfg.gls_restarts;
    j["opt_x_tol"] = cfg.opt.x_tol;
    j["opt_f_tol"] = cfg.opt.f_tol;
    j["opt_max_evals"] = cfg.opt.max_evals;
    return j.dump(2) + "\n";
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return config_from_json(text);
}

int resolve_workers(const ExperimentConfig& cfg) {
    if (cfg.workers > 0) return cfg.workers;
    if (const char* env = std::getenv("QAPBENCH_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 4096) {
            throw ConfigError("QAPBENCH_WORKERS must be a positive integer, got '" +
                              std::string(env) + "'");
        }
        return static_cast<int>(v);
    }
    return 1;
}

void parallel_for(std::uint64_t count, int workers,
                  const std::function<void(std::uint64_t)>& fn) {
    if (workers < 1) throw ValidationError("parallel_for requires workers >= 1");
    if (count == 0) return;
    const auto nthreads =
        static_cast<unsigned>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), count));
    if (nthreads <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned w = 0; w < nthreads; ++w) {
        pool.emplace_back([&] {
            while (!stop.load(std::memory_order_relaxed)) {
                const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    stop.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string instance_id(int n, int idx) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "n%02d_i%02d", n, idx);
    return buf;
}

std::filesystem::path instance_path(const ExperimentConfig& cfg, int n, int idx) {
    return cfg.out_dir / "instances" / (instance_id(n, idx) + ".json");
}

QapInstance load_instance_checked(const ExperimentConfig& cfg, int n, int idx) {
    const auto path = instance_path(cfg, n, idx);
    if (!std::filesystem::exists(path)) {
        throw DependencyError("missing instance file " + path.string() + " (run `qapbench gen` first)");
    }
    return load_instance(path);
}

} // namespace qapbench
