#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qapbench/walk.hpp"

namespace qapbench {

using Vec3 = std::array<double, 3>;

struct SimplexConfig {
    double x_tol = 1e-3;   // max vertex spread per coordinate
    double f_tol = 1e-4;   // worst-best value spread
    int max_evals = 500;   // hard budget; never exceeded
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
};

struct SimplexResult {
    Vec3 x{};
    double value = 0.0;
    int n_evals = 0;
    bool converged = false;       // both tolerances met
    bool budget_limited = false;  // stopped by max_evals
};

// Derivative-free simplex minimization in 3 dimensions. The initial simplex
// perturbs each coordinate of x0 by max(5%, 0.02). Non-finite objective
// values are treated as +infinity after the initial vertex, which must be
// finite. Fully deterministic.
SimplexResult nelder_mead(const std::function<double(const Vec3&)>& f, const Vec3& x0,
                          const SimplexConfig& cfg = {});

struct OptEval {
    int eval_index = 0; // 0-based order of the objective call
    double gamma = 0.0;
    double t = 0.0;
    double beta = 0.0;
    double expectation = 0.0;
    double osp = 0.0;
};

struct OptResult {
    RampParams params;      // best in-box parameters found
    double value = 0.0;     // circuit expectation at params
    double osp = 0.0;       // success probability at params
    int n_evals = 0;        // circuit evaluations spent
    bool converged = false;
    bool budget_limited = false;
    std::vector<OptEval> history;
};

// Minimizes the circuit expectation over (gamma, t, beta) at fixed depth p.
// Out-of-box points are projected onto gamma in (0,10], t in (0,2],
// beta in [0.05,1] and charged a distance penalty, so every recorded
// evaluation is a feasible circuit. `init` warm-starts the simplex
// (typically the previous depth's optimum); otherwise starts from
// gamma=1, t=3.5/degree, beta=0.35. `seed` is reserved for stochastic
// variants; this path is deterministic.
OptResult optimize_circuit_params(const CircuitContext& ctx, int p, std::uint64_t seed,
                                  const SimplexConfig& cfg = {},
                                  std::optional<Vec3> init = std::nullopt);

} // namespace qapbench
