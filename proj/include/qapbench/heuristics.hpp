#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "qapbench/instance.hpp"
#include "qapbench/perm.hpp"

namespace qapbench {

struct MmasParams {
    int m = 0;                     // ant count, 0 means "use n"
    double alpha = 1.0;            // pheromone importance
    double rho = 0.2;              // evaporation rate, trail keeps (1-rho)
    double q_const = 1.0;          // deposit numerator
    double tau_min = 0.0;          // 0 means derive as tau_max / (2n)
    double tau_max = 0.0;          // 0 means derive as 1 / (rho * f_best)
    std::uint64_t max_iters = 100000;
    bool randomized_order = false; // shuffle facility assignment order per ant
};

struct RunRecord {
    double best_cost = 0.0;
    Perm best_perm;
    std::uint64_t iterations = 0;
    std::uint64_t n_evals = 0;
    bool found_optimum = false;
};

// Called after each MMAS iteration with the trail matrix and active bounds.
using MmasObserver =
    std::function<void(std::uint64_t iteration, std::span<const double> tau, double tau_min, double tau_max)>;

// Runs MMAS until target_cost is reached (checked at iteration boundaries)
// or max_iters. n_evals is exactly m * iterations.
RunRecord mmas_run(const QapInstance& inst, const MmasParams& params, std::uint64_t seed,
                   std::optional<double> target_cost, const MmasObserver& observer = nullptr);

// Best-improvement 2-swap descent from a random start. Every scanned swap
// counts one evaluation: n_evals = iterations * n(n-1)/2.
RunRecord gls_run(const QapInstance& inst, std::uint64_t seed);

struct SolveProbability {
    double probability = 0.0;
    double mean_evals = 0.0;
    std::uint64_t restarts = 0;
};

// Per-restart sink; restart indices arrive in order 0..restarts-1.
using GlsObserver = std::function<void(std::uint64_t restart, const RunRecord&)>;

// Fraction of independent gls_run restarts that end on a global minimizer.
// Requires inst.optimum (cache it with quality_vector first).
SolveProbability gls_solve_probability(const QapInstance& inst, std::uint64_t restarts,
                                       std::uint64_t seed, const GlsObserver& observer = nullptr);

} // namespace qapbench
