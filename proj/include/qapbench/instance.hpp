#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "qapbench/perm.hpp"

namespace qapbench {

// Instances above this size are refused by full-enumeration routines.
inline constexpr int kMaxEnumerationN = 12;

struct Optimum {
    double cost = 0.0;
    std::vector<PermIndex> minimizers; // sorted ascending
};

// Symmetric QAP instance with zero diagonals. Matrices are row-major n*n.
struct QapInstance {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<double> flow;
    std::vector<double> dist;
    std::vector<std::array<double, 2>> coords; // empty when not derived from points
    std::optional<Optimum> optimum;

    double flow_at(int i, int j) const { return flow[static_cast<std::size_t>(i) * n + j]; }
    double dist_at(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
};

// Checks symmetry, zero diagonals and coords/dist consistency (1e-12).
void validate_instance(const QapInstance& inst);

// Random instance: coords uniform in the unit square, dist = Euclidean
// distances, flow uniform in [0, flow_scale) symmetrized from the upper
// triangle. Deterministic in (n, seed, flow_scale).
QapInstance generate_instance(int n, std::uint64_t seed, double flow_scale = 20.0);

// f(pi) = sum_{i,j} flow[i][j] * dist[pi(i)][pi(j)].
double objective(const QapInstance& inst, const Perm& perm);

// objective(perm with positions i, j swapped) - objective(perm), in O(n).
double swap_delta(const QapInstance& inst, const Perm& perm, int i, int j);

// All n! objective values in PermIndex order plus summary statistics.
struct QualityVector {
    std::vector<double> values;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double sigma = 0.0; // population standard deviation
    std::vector<PermIndex> minimizers;
};

// Enumerates all n! costs and caches {min, minimizers} into inst.optimum.
// Throws ResourceError above kMaxEnumerationN.
QualityVector quality_vector(QapInstance& inst);

// Affine map of the costs onto [0, 2*pi]. Throws NumericError when the
// costs are constant.
std::vector<double> normalize_qualities(const QualityVector& q);

// JSON file round trip; doubles keep full round-trip precision.
void save_instance(const std::filesystem::path& path, const QapInstance& inst);
QapInstance load_instance(const std::filesystem::path& path);

} // namespace qapbench
