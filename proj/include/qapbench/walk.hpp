#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "qapbench/instance.hpp"
#include "qapbench/perm.hpp"

namespace qapbench {

using Complex = std::complex<double>;

// Statevector over the n!-dimensional permutation basis, PermIndex order.
struct WalkState {
    int n = 0;
    std::vector<Complex> amps;
};

WalkState uniform_state(int n);

double state_norm(const WalkState& state);

// amps[i] *= exp(-i * gamma_i * q_scaled[i]). The caller supplies
// q_scaled = normalize_qualities(q) / sigma(normalized q).
void apply_phase(WalkState& state, std::span<const double> q_scaled, double gamma_i);

// Three-parameter layer schedule: gamma_i ramps up over [beta*gamma, gamma]
// while t_i ramps down over [t, beta*t]. p = 1 takes the i = 0 endpoints.
struct RampParams {
    double gamma = 1.0;
    double t = 0.1;
    double beta = 0.35;
    int p = 1;
};

struct RampSchedule {
    std::vector<double> gammas;
    std::vector<double> times;
};

RampSchedule ramp_schedule(const RampParams& params);

// Adjacency operator of the transposition Cayley graph of S_n, held as a
// per-vertex neighbor table, with a Lanczos propagator for exp(-i t A).
class TranspositionWalk {
public:
    static constexpr double kDefaultTol = 1e-10;

    explicit TranspositionWalk(int n);

    int size() const { return n_; }
    std::uint64_t dim() const { return dim_; }
    int degree() const { return degree_; }

    // out[v] = sum of in[] over the n(n-1)/2 transposition neighbors of v.
    void matvec(const Complex* in, Complex* out) const;

    // state <- exp(-i t A) state with 2-norm error <= tol (which bounds the
    // max amplitude error and the norm drift).
    void apply(WalkState& state, double t, double tol = kDefaultTol) const;

    // Process-wide immutable table cache.
    static std::shared_ptr<const TranspositionWalk> shared(int n);

private:
    int n_;
    std::uint64_t dim_;
    int degree_;
    std::vector<std::uint32_t> neighbors_;
};

// Convenience wrapper over the shared table.
void apply_walk(WalkState& state, double t, double tol = TranspositionWalk::kDefaultTol);

// Total probability on the given basis states.
double osp_of(const WalkState& state, std::span<const PermIndex> minimizers);

// sum_i raw_values[i] * |amps[i]|^2.
double expectation_of(const WalkState& state, std::span<const double> raw_values);

// Per-instance precomputation shared by every circuit evaluation.
struct CircuitContext {
    int n = 0;
    QualityVector quality;
    std::vector<double> q_scaled;
    std::shared_ptr<const TranspositionWalk> walk;
};

// Computes the quality vector (caching the optimum into inst) and the
// sigma-scaled phase table.
CircuitContext make_circuit_context(QapInstance& inst);
CircuitContext make_circuit_context(int n, QualityVector quality);

struct CircuitResult {
    WalkState state;
    double osp = 0.0;
    double expectation = 0.0;
};

// Alternates apply_phase and the walk p times from the uniform state.
// p = 0 is the empty circuit.
CircuitResult run_circuit(const CircuitContext& ctx, const RampParams& params);
CircuitResult run_circuit(QapInstance& inst, const RampParams& params);

// Raw snapshot: amplitudes in PermIndex order, re/im interleaved,
// little-endian 8-byte reals.
void save_state(const std::filesystem::path& path, const WalkState& state);
WalkState load_state(const std::filesystem::path& path, int n);

} // namespace qapbench
