#include "qapbench/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "qapbench/errors.hpp"
#include "qapbench/rng.hpp"

namespace qapbench {

namespace {

void check_mmas_params(const MmasParams& p) {
    if (!(p.rho > 0.0 && p.rho < 1.0)) throw ValidationError("mmas: rho must lie in (0, 1)");
    if (p.m < 0) throw ValidationError("mmas: ant count must be >= 0");
    if (p.max_iters < 1) throw ValidationError("mmas: max_iters must be >= 1");
    if (!(p.q_const > 0.0)) throw ValidationError("mmas: q_const must be > 0");
    if (p.tau_min < 0.0 || p.tau_max < 0.0) throw ValidationError("mmas: trail bounds must be >= 0");
    if (p.tau_max > 0.0 && p.tau_min > p.tau_max) throw ValidationError("mmas: tau_min > tau_max");
}

} // namespace

RunRecord mmas_run(const QapInstance& inst, const MmasParams& params, std::uint64_t seed,
                   std::optional<double> target_cost, const MmasObserver& observer) {
    validate_instance(inst);
    check_mmas_params(params);
    const int n = inst.n;
    const int m = params.m > 0 ? params.m : n;
    Rng rng(seed);

    // Trails start uniform; the MMAS bounds activate once a global best
    // exists, since tau_max is defined in terms of f(pi_best).
    std::vector<double> tau(static_cast<std::size_t>(n) * n, 1.0);
    const bool fixed_bounds = params.tau_max > 0.0;
    double tau_max = fixed_bounds ? params.tau_max : 0.0;
    double tau_min = params.tau_min > 0.0 ? params.tau_min : (fixed_bounds ? tau_max / (2.0 * n) : 0.0);

    RunRecord rec;
    rec.best_cost = std::numeric_limits<double>::infinity();

    std::vector<double> weights(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Perm ant(static_cast<std::size_t>(n));
    std::vector<bool> assigned(static_cast<std::size_t>(n));

    for (std::uint64_t iter = 1; iter <= params.max_iters; ++iter) {
        for (int k = 0; k < m; ++k) {
            if (params.randomized_order) rng.shuffle(order);
            std::fill(assigned.begin(), assigned.end(), false);
            for (const int fac : order) {
                // p(fac -> loc) proportional to tau[fac][loc]^alpha over free locations
                double total = 0.0;
                for (int loc = 0; loc < n; ++loc) {
                    double w = 0.0;
                    if (!assigned[loc]) {
                        const double t = tau[static_cast<std::size_t>(fac) * n + loc];
                        w = params.alpha == 1.0 ? t : std::pow(t, params.alpha);
                    }
                    weights[loc] = w;
                    total += w;
                }
                if (!(total > 0.0)) {
                    throw NumericError("mmas: zero probability mass at a construction step (trail underflow)");
                }
                const double u = rng.uniform01() * total;
                double cum = 0.0;
                int chosen = -1;
                for (int loc = 0; loc < n; ++loc) {
                    cum += weights[loc];
                    if (u < cum) {
                        chosen = loc;
                        break;
                    }
                }
                if (chosen < 0) { // u landed on accumulated rounding at the top end
                    for (int loc = n - 1; loc >= 0; --loc) {
                        if (weights[loc] > 0.0) {
                            chosen = loc;
                            break;
                        }
                    }
                }
                ant[static_cast<std::size_t>(fac)] = chosen;
                assigned[chosen] = true;
            }
            const double cost = objective(inst, ant);
            if (cost < rec.best_cost) {
                rec.best_cost = cost;
                rec.best_perm = ant;
                if (!fixed_bounds) {
                    tau_max = 1.0 / (params.rho * std::max(rec.best_cost, 1e-300));
                    tau_min = params.tau_min > 0.0 ? params.tau_min : tau_max / (2.0 * n);
                }
            }
        }

        // Evaporate, deposit on the global best, clamp.
        for (double& t : tau) t *= 1.0 - params.rho;
        const double deposit = params.q_const / std::max(rec.best_cost, 1e-300);
        for (int fac = 0; fac < n; ++fac) {
            tau[static_cast<std::size_t>(fac) * n + rec.best_perm[static_cast<std::size_t>(fac)]] += deposit;
        }
        if (tau_max > 0.0) {
            for (double& t : tau) t = std::clamp(t, tau_min, tau_max);
        }

        rec.iterations = iter;
        rec.n_evals = static_cast<std::uint64_t>(m) * iter;
        if (observer) observer(iter, std::span<const double>(tau), tau_min, tau_max);
        if (target_cost && rec.best_cost <= *target_cost) {
            rec.found_optimum = true;
            break;
        }
    }
    if (!target_cost && inst.optimum) {
        rec.found_optimum = rec.best_cost <= inst.optimum->cost;
    }
    return rec;
}

RunRecord gls_run(const QapInstance& inst, std::uint64_t seed) {
    validate_instance(inst);
    const int n = inst.n;
    Rng rng(seed);

    Perm perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);

    RunRecord rec;
    const std::uint64_t scans = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    bool improved = true;
    while (improved) {
        ++rec.iterations;
        double best_delta = 0.0;
        int best_i = -1;
        int best_j = -1;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double d = swap_delta(inst, perm, i, j);
                if (d < best_delta) { // strict: ties keep the first (i, j) pair
                    best_delta = d;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_delta < 0.0) {
            std::swap(perm[static_cast<std::size_t>(best_i)], perm[static_cast<std::size_t>(best_j)]);
        } else {
            improved = false;
        }
    }
    rec.n_evals = rec.iterations * scans;
    rec.best_perm = perm;
    rec.best_cost = objective(inst, perm);
    if (inst.optimum) {
        const PermIndex idx = index_of(perm);
        rec.found_optimum = std::binary_search(inst.optimum->minimizers.begin(),
                                               inst.optimum->minimizers.end(), idx);
    }
    return rec;
}

SolveProbability gls_solve_probability(const QapInstance& inst, std::uint64_t restarts,
                                       std::uint64_t seed, const GlsObserver& observer) {
    if (restarts == 0) throw std::out_of_range("gls_solve_probability: restarts must be >= 1");
    if (!inst.optimum) {
        throw DependencyError("gls_solve_probability: instance optimum unknown, run quality_vector first");
    }
    std::uint64_t hits = 0;
    double evals = 0.0;
    for (std::uint64_t r = 0; r < restarts; ++r) {
        const RunRecord rec = gls_run(inst, derive_seed(seed, r));
        if (rec.found_optimum) ++hits;
        evals += static_cast<double>(rec.n_evals);
        if (observer) observer(r, rec);
    }
    SolveProbability out;
    out.probability = static_cast<double>(hits) / static_cast<double>(restarts);
    out.mean_evals = evals / static_cast<double>(restarts);
    out.restarts = restarts;
    return out;
}

} // namespace qapbench
