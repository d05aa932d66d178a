#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qapbench/perm.hpp"
#include "qapbench/walk.hpp"

namespace qapbench {

// Probability that Grover search over N items with M marked succeeds after
// exactly k oracle iterations: sin^2((2k+1) asin(sqrt(M/N))).
double grover_success(std::uint64_t n_items, std::uint64_t n_marked, std::uint64_t k);

struct GroverIterations {
    std::uint64_t k_exact = 0;     // smallest k with success >= target
    double k_continuous = 0.0;     // closed form (sqrt(N/M) asin(sqrt(target)) - 1) / 2
    std::uint64_t k_ceiling = 0;   // ceil of the closed form, clamped at 0
};

// Minimal iteration count to reach the target success probability, with the
// small-angle closed form reported alongside for cross-checking.
GroverIterations grover_iterations(std::uint64_t n_items, std::uint64_t n_marked,
                                   double target);

// Probability mass per transposition-distance shell around a reference
// permutation: probs[k] sums |amp|^2 over states at distance exactly k.
struct ShellDistribution {
    int n = 0;
    PermIndex reference = 0;
    std::vector<double> probs; // size n, shells 0 .. n-1
};

ShellDistribution shell_distribution(const WalkState& state, PermIndex reference);

// sum_k k * probs[k].
double expected_internode_distance(const ShellDistribution& shells);

// Least-squares coefficient c of the pure quartic model p ~ c * n^4:
// c = sum(p_i n_i^4) / sum(n_i^8).
double quartic_fit_coefficient(std::span<const double> n_values,
                               std::span<const double> p_values);

} // namespace qapbench
