#include "qapbench/walk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include <Eigen/Dense>

#include "qapbench/errors.hpp"

namespace qapbench {

namespace {

double dot_real(const Complex* a, const Complex* b, std::uint64_t dim) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    }
    return acc;
}

double norm2(const Complex* a, std::uint64_t dim) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) acc += std::norm(a[i]);
    return std::sqrt(acc);
}

// u = exp(-i tau T_m) e1 for the symmetric tridiagonal (alpha, beta).
std::vector<Complex> expm_tridiag_e1(std::span<const double> alpha,
                                     std::span<const double> beta,
                                     double tau) {
    const int m = static_cast<int>(alpha.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(std::max(m - 1, 0));
    for (int i = 0; i + 1 < m; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
    solver.computeFromTridiagonal(diag, sub);
    if (solver.info() != Eigen::Success) {
        throw NumericError("tridiagonal eigendecomposition failed in walk propagator");
    }
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    const Eigen::MatrixXd& vec = solver.eigenvectors();
    std::vector<Complex> u(static_cast<std::size_t>(m));
    for (int l = 0; l < m; ++l) {
        const Complex phase = std::polar(1.0, -tau * lambda[l]) * vec(0, l);
        for (int j = 0; j < m; ++j) {
            u[static_cast<std::size_t>(j)] += vec(j, l) * phase;
        }
    }
    return u;
}

} // namespace

WalkState uniform_state(int n) {
    const std::uint64_t dim = factorial(n);
    WalkState state;
    state.n = n;
    state.amps.assign(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    return state;
}

double state_norm(const WalkState& state) {
    return norm2(state.amps.data(), state.amps.size());
}

void apply_phase(WalkState& state, std::span<const double> q_scaled, double gamma_i) {
    if (q_scaled.size() != state.amps.size()) {
        throw ValidationError("phase table size does not match state dimension");
    }
    for (std::uint64_t i = 0; i < state.amps.size(); ++i) {
        state.amps[i] *= std::polar(1.0, -gamma_i * q_scaled[i]);
    }
}

RampSchedule ramp_schedule(const RampParams& params) {
    if (params.p < 1) throw ValidationError("ramp schedule requires p >= 1");
    if (!(params.t > 0.0)) throw ValidationError("ramp schedule requires t > 0");
    if (!(params.beta > 0.0 && params.beta <= 1.0)) {
        throw ValidationError("ramp schedule requires beta in (0, 1]");
    }
    RampSchedule sched;
    sched.gammas.resize(static_cast<std::size_t>(params.p));
    sched.times.resize(static_cast<std::size_t>(params.p));
    for (int i = 0; i < params.p; ++i) {
        const double frac =
            params.p == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(params.p - 1);
        const double ramp_up = params.beta + (1.0 - params.beta) * frac;
        const double ramp_down = 1.0 - (1.0 - params.beta) * frac;
        sched.gammas[static_cast<std::size_t>(i)] = ramp_up * params.gamma;
        sched.times[static_cast<std::size_t>(i)] = ramp_down * params.t;
    }
    return sched;
}

TranspositionWalk::TranspositionWalk(int n) : n_(n) {
    if (n < 2 || n > kMaxEnumerationN) {
        throw ValidationError("walk table supports 2 <= n <= " +
                              std::to_string(kMaxEnumerationN));
    }
    dim_ = factorial(n);
    degree_ = n * (n - 1) / 2;
    neighbors_.resize(dim_ * static_cast<std::uint64_t>(degree_));

    // Lexicographic rank with precomputed place weights; inputs are known-valid
    // permutations so the public validating path is bypassed.
    std::vector<std::uint64_t> weight(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        weight[static_cast<std::size_t>(k)] = factorial(n - 1 - k);
    }
    const auto rank = [&](const int* p) {
        std::uint32_t unused = (1u << n_) - 1u;
        std::uint64_t idx = 0;
        for (int k = 0; k < n_; ++k) {
            const auto v = static_cast<std::uint32_t>(p[k]);
            const std::uint32_t below = unused & ((1u << v) - 1u);
            idx += static_cast<std::uint64_t>(std::popcount(below)) *
                   weight[static_cast<std::size_t>(k)];
            unused &= ~(1u << v);
        }
        return idx;
    };

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t idx = 0;
    do {
        std::uint32_t* row = neighbors_.data() + idx * static_cast<std::uint64_t>(degree_);
        int slot = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
                row[slot++] = static_cast<std::uint32_t>(rank(perm.data()));
                std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
            }
        }
        ++idx;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

void TranspositionWalk::matvec(const Complex* in, Complex* out) const {
    const int deg = degree_;
    const std::uint32_t* nb = neighbors_.data();
    for (std::uint64_t v = 0; v < dim_; ++v) {
        Complex acc(0.0, 0.0);
        const std::uint32_t* row = nb + v * static_cast<std::uint64_t>(deg);
        for (int t = 0; t < deg; ++t) acc += in[row[t]];
        out[v] = acc;
    }
}

namespace {

constexpr int kMaxKrylov = 64;

} // namespace

void TranspositionWalk::apply(WalkState& state, double t, double tol) const {
    if (state.n != n_) throw ValidationError("walk/state size mismatch");
    if (!(tol > 0.0)) throw ValidationError("walk tolerance must be positive");
    if (t == 0.0) return;

    // Keep tau * degree modest so the Krylov dimension stays small; each
    // substep gets an equal share of the error budget.
    const int substeps =
        std::max<int>(1, static_cast<int>(std::ceil(std::abs(t) * degree_ / 5.0)));
    const double tau = t / substeps;
    const double sub_tol = tol / substeps;

    const std::uint64_t dim = dim_;
    std::vector<std::vector<Complex>> basis;
    std::vector<Complex> w(dim);
    std::vector<double> alpha;
    std::vector<double> beta;

    // Advances state by exp(-i dt A); splits dt recursively if the Krylov
    // space fails to converge within kMaxKrylov vectors.
    const auto step = [&](auto&& self, double dt, double dt_tol, int depth) -> void {
        if (depth > 24) {
            throw NumericError("walk propagator failed to converge after repeated splitting");
        }
        const double b0 = norm2(state.amps.data(), dim);
        if (b0 == 0.0) throw NumericError("walk applied to the zero vector");

        basis.clear();
        alpha.clear();
        beta.clear();
        basis.emplace_back(state.amps);
        for (Complex& c : basis[0]) c /= b0;

        std::vector<Complex> u;
        bool converged = false;
        int hits = 0;
        for (int k = 0; k < kMaxKrylov; ++k) {
            matvec(basis[static_cast<std::size_t>(k)].data(), w.data());
            const double a = dot_real(basis[static_cast<std::size_t>(k)].data(), w.data(), dim);
            alpha.push_back(a);
            {
                const Complex* qk = basis[static_cast<std::size_t>(k)].data();
                for (std::uint64_t i = 0; i < dim; ++i) w[i] -= a * qk[i];
            }
            if (k > 0) {
                const double bprev = beta.back();
                const Complex* qm = basis[static_cast<std::size_t>(k - 1)].data();
                for (std::uint64_t i = 0; i < dim; ++i) w[i] -= bprev * qm[i];
            }
            const double b = norm2(w.data(), dim);

            u = expm_tridiag_e1(alpha, beta, dt);
            // Saad's a-posteriori estimate: the residual of the Krylov
            // approximation is governed by the last component of u.
            const double est = b * std::abs(u.back());
            if (b <= 1e-14 * degree_) { // happy breakdown: subspace is invariant
                converged = true;
                break;
            }
            if (est <= dt_tol) {
                if (++hits >= 2 || est <= dt_tol * 1e-2) {
                    converged = true;
                    break;
                }
            } else {
                hits = 0;
            }
            if (k + 1 == kMaxKrylov) break;
            beta.push_back(b);
            basis.emplace_back(w);
            {
                Complex* q = basis.back().data();
                for (std::uint64_t i = 0; i < dim; ++i) q[i] /= b;
            }
        }

        if (!converged) {
            self(self, dt / 2.0, dt_tol / 2.0, depth + 1);
            self(self, dt / 2.0, dt_tol / 2.0, depth + 1);
            return;
        }

        const std::size_t m = alpha.size();
        std::fill(state.amps.begin(), state.amps.end(), Complex(0.0, 0.0));
        for (std::size_t j = 0; j < m; ++j) {
            const Complex coeff = b0 * u[j];
            const Complex* qj = basis[j].data();
            for (std::uint64_t i = 0; i < dim; ++i) state.amps[i] += coeff * qj[i];
        }
    };

    for (int s = 0; s < substeps; ++s) step(step, tau, sub_tol, 0);
}

std::shared_ptr<const TranspositionWalk> TranspositionWalk::shared(int n) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const TranspositionWalk>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto walk = std::make_shared<const TranspositionWalk>(n);
    cache.emplace(n, walk);
    return walk;
}

void apply_walk(WalkState& state, double t, double tol) {
    TranspositionWalk::shared(state.n)->apply(state, t, tol);
}

double osp_of(const WalkState& state, std::span<const PermIndex> minimizers) {
    double acc = 0.0;
    for (PermIndex idx : minimizers) {
        if (idx >= state.amps.size()) {
            throw ValidationError("minimizer index out of range for state");
        }
        acc += std::norm(state.amps[idx]);
    }
    return acc;
}

double expectation_of(const WalkState& state, std::span<const double> raw_values) {
    if (raw_values.size() != state.amps.size()) {
        throw ValidationError("value table size does not match state dimension");
    }
    double acc = 0.0;
    for (std::uint64_t i = 0; i < state.amps.size(); ++i) {
        acc += raw_values[i] * std::norm(state.amps[i]);
    }
    return acc;
}

CircuitContext make_circuit_context(QapInstance& inst) {
    return make_circuit_context(inst.n, quality_vector(inst));
}

CircuitContext make_circuit_context(int n, QualityVector quality) {
    CircuitContext ctx;
    ctx.n = n;
    ctx.quality = std::move(quality);
    ctx.q_scaled = normalize_qualities(ctx.quality);
    double mean = 0.0;
    for (double v : ctx.q_scaled) mean += v;
    mean /= static_cast<double>(ctx.q_scaled.size());
    double var = 0.0;
    for (double v : ctx.q_scaled) var += (v - mean) * (v - mean);
    const double sigma = std::sqrt(var / static_cast<double>(ctx.q_scaled.size()));
    if (!(sigma > 0.0)) throw NumericError("phase table has zero spread");
    for (double& v : ctx.q_scaled) v /= sigma;
    ctx.walk = TranspositionWalk::shared(n);
    return ctx;
}

CircuitResult run_circuit(const CircuitContext& ctx, const RampParams& params) {
    if (params.p < 0) throw ValidationError("circuit depth must be >= 0");
    CircuitResult result;
    result.state = uniform_state(ctx.n);
    if (params.p > 0) {
        const RampSchedule sched = ramp_schedule(params);
        // Tighter per-layer budget keeps the accumulated norm drift well
        // under 1e-9 across deep circuits.
        const double layer_tol = 1e-11;
        for (int i = 0; i < params.p; ++i) {
            // The layer phase is U_Q(-gamma_i / sigma) = e^{+i gamma_i q~}:
            // only this relative sign against e^{-i t A} concentrates
            // amplitude on minima (the reversed pairing provably stalls).
            apply_phase(result.state, ctx.q_scaled, -sched.gammas[static_cast<std::size_t>(i)]);
            ctx.walk->apply(result.state, sched.times[static_cast<std::size_t>(i)], layer_tol);
        }
    }
    result.osp = osp_of(result.state, ctx.quality.minimizers);
    result.expectation = expectation_of(result.state, ctx.quality.values);
    return result;
}

CircuitResult run_circuit(QapInstance& inst, const RampParams& params) {
    const CircuitContext ctx = make_circuit_context(inst);
    return run_circuit(ctx, params);
}

void save_state(const std::filesystem::path& path, const WalkState& state) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open " + path.string() + " for writing");
    std::vector<unsigned char> buf(state.amps.size() * 16);
    std::size_t off = 0;
    const auto put = [&](double d) {
        const auto bits = std::bit_cast<std::uint64_t>(d);
        for (int b = 0; b < 8; ++b) buf[off++] = static_cast<unsigned char>(bits >> (8 * b));
    };
    for (const Complex& c : state.amps) {
        put(c.real());
        put(c.imag());
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw ResourceError("short write to " + path.string());
}

WalkState load_state(const std::filesystem::path& path, int n) {
    const std::uint64_t dim = factorial(n);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open " + path.string() + " for reading");
    std::vector<unsigned char> buf(dim * 16);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
        throw ResourceError("state file " + path.string() + " is truncated for n=" +
                            std::to_string(n));
    }
    char extra;
    if (in.read(&extra, 1)) {
        throw ValidationError("state file " + path.string() + " is larger than n! amplitudes");
    }
    WalkState state;
    state.n = n;
    state.amps.resize(dim);
    std::size_t off = 0;
    const auto take = [&]() {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[off++]) << (8 * b);
        return std::bit_cast<double>(bits);
    };
    for (std::uint64_t i = 0; i < dim; ++i) {
        const double re = take();
        const double im = take();
        state.amps[i] = Complex(re, im);
    }
    return state;
}

} // namespace qapbench
