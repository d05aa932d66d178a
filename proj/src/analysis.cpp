#include "qapbench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qapbench/errors.hpp"

namespace qapbench {

namespace {

double grover_theta(std::uint64_t n_items, std::uint64_t n_marked) {
    if (n_items == 0) throw ValidationError("grover search space must be non-empty");
    if (n_marked == 0 || n_marked > n_items) {
        throw ValidationError("grover marked count must satisfy 1 <= M <= N");
    }
    return std::asin(std::sqrt(static_cast<double>(n_marked) / static_cast<double>(n_items)));
}

} // namespace

double grover_success(std::uint64_t n_items, std::uint64_t n_marked, std::uint64_t k) {
    const double theta = grover_theta(n_items, n_marked);
    const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
    return s * s;
}

GroverIterations grover_iterations(std::uint64_t n_items, std::uint64_t n_marked,
                                   double target) {
    if (!(target > 0.0 && target < 1.0)) {
        throw ValidationError("grover target probability must lie in (0, 1)");
    }
    const double theta = grover_theta(n_items, n_marked);

    GroverIterations out;
    out.k_continuous = (std::sqrt(static_cast<double>(n_items) / static_cast<double>(n_marked)) *
                            std::asin(std::sqrt(target)) -
                        1.0) /
                       2.0;
    out.k_ceiling =
        out.k_continuous <= 0.0 ? 0 : static_cast<std::uint64_t>(std::ceil(out.k_continuous));

    // The success curve peaks near k* ~ pi/(4 theta). The first peak reaches
    // at least 1 - M/N; a few extra periods guard against near-miss aliasing.
    const auto k_max =
        4 * (static_cast<std::uint64_t>(std::ceil(std::numbers::pi / (2.0 * theta))) + 1);
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        if (grover_success(n_items, n_marked, k) >= target) {
            out.k_exact = k;
            return out;
        }
    }
    throw NumericError("grover target unreachable by any iteration count");
}

ShellDistribution shell_distribution(const WalkState& state, PermIndex reference) {
    const int n = state.n;
    const std::uint64_t dim = factorial(n);
    if (state.amps.size() != dim) throw ValidationError("state dimension is not n!");
    if (reference >= dim) throw ValidationError("shell reference index out of range");

    const Perm ref = perm_of(reference, n);

    ShellDistribution shells;
    shells.n = n;
    shells.reference = reference;
    shells.probs.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::uint64_t idx = 0;
    do {
        // sigma = perm o ref^{-1}; its cycle count gives the transposition
        // distance n - cycles, invariant under relabeling.
        for (int i = 0; i < n; ++i) {
            sigma[static_cast<std::size_t>(ref[static_cast<std::size_t>(i)])] =
                perm[static_cast<std::size_t>(i)];
        }
        int cycles = 0;
        std::uint32_t visited = 0;
        for (int i = 0; i < n; ++i) {
            if (visited & (1u << i)) continue;
            ++cycles;
            int j = i;
            while (!(visited & (1u << j))) {
                visited |= 1u << j;
                j = sigma[static_cast<std::size_t>(j)];
            }
        }
        shells.probs[static_cast<std::size_t>(n - cycles)] += std::norm(state.amps[idx]);
        ++idx;
    } while (std::next_permutation(perm.begin(), perm.end()));

    return shells;
}

double expected_internode_distance(const ShellDistribution& shells) {
    double acc = 0.0;
    for (std::size_t k = 0; k < shells.probs.size(); ++k) {
        acc += static_cast<double>(k) * shells.probs[k];
    }
    return acc;
}

double quartic_fit_coefficient(std::span<const double> n_values,
                               std::span<const double> p_values) {
    if (n_values.empty() || n_values.size() != p_values.size()) {
        throw ValidationError("quartic fit needs matching non-empty samples");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        const double n4 = std::pow(n_values[i], 4.0);
        num += p_values[i] * n4;
        den += n4 * n4;
    }
    if (!(den > 0.0)) throw ValidationError("quartic fit is degenerate at n = 0");
    return num / den;
}

} // namespace qapbench
