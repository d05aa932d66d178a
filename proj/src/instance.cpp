#include "qapbench/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <string>

#include <json.hpp>

#include "qapbench/errors.hpp"
#include "qapbench/rng.hpp"

namespace qapbench {

namespace {

void check_square(const QapInstance& inst) {
    const auto nn = static_cast<std::size_t>(inst.n) * static_cast<std::size_t>(inst.n);
    if (inst.n < 2) throw ValidationError("instance size must be >= 2, got " + std::to_string(inst.n));
    if (inst.flow.size() != nn || inst.dist.size() != nn) {
        throw ValidationError("flow/dist must be n*n = " + std::to_string(nn) + " entries");
    }
}

} // namespace

void validate_instance(const QapInstance& inst) {
    check_square(inst);
    for (int i = 0; i < inst.n; ++i) {
        if (inst.flow_at(i, i) != 0.0 || inst.dist_at(i, i) != 0.0) {
            throw ValidationError("nonzero diagonal at " + std::to_string(i));
        }
        for (int j = i + 1; j < inst.n; ++j) {
            if (inst.flow_at(i, j) != inst.flow_at(j, i)) {
                throw ValidationError("flow asymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
            if (inst.dist_at(i, j) != inst.dist_at(j, i)) {
                throw ValidationError("dist asymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
            if (inst.flow_at(i, j) < 0.0 || inst.dist_at(i, j) < 0.0) {
                throw ValidationError("negative entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    if (!inst.coords.empty()) {
        if (static_cast<int>(inst.coords.size()) != inst.n) {
            throw ValidationError("coords count " + std::to_string(inst.coords.size()) + " != n");
        }
        for (int i = 0; i < inst.n; ++i) {
            for (int j = 0; j < inst.n; ++j) {
                const double dx = inst.coords[i][0] - inst.coords[j][0];
                const double dy = inst.coords[i][1] - inst.coords[j][1];
                if (std::abs(inst.dist_at(i, j) - std::hypot(dx, dy)) > 1e-12) {
                    throw ValidationError("dist(" + std::to_string(i) + "," + std::to_string(j) +
                                          ") does not match coords");
                }
            }
        }
    }
}

QapInstance generate_instance(int n, std::uint64_t seed, double flow_scale) {
    if (n < 2) throw std::out_of_range("generate_instance: n must be >= 2, got " + std::to_string(n));
    if (n > kMaxFactorialN) {
        throw std::out_of_range("generate_instance: n must be <= " + std::to_string(kMaxFactorialN));
    }
    if (!(flow_scale > 0.0)) throw std::out_of_range("generate_instance: flow_scale must be > 0");

    QapInstance inst;
    inst.n = n;
    inst.seed = seed;
    Rng rng(seed);

    inst.coords.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        inst.coords[i][0] = rng.uniform01();
        inst.coords[i][1] = rng.uniform01();
    }

    const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    inst.dist.assign(nn, 0.0);
    inst.flow.assign(nn, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = inst.coords[i][0] - inst.coords[j][0];
            const double dy = inst.coords[i][1] - inst.coords[j][1];
            const double d = std::hypot(dx, dy);
            inst.dist[static_cast<std::size_t>(i) * n + j] = d;
            inst.dist[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double f = rng.uniform01() * flow_scale;
            inst.flow[static_cast<std::size_t>(i) * n + j] = f;
            inst.flow[static_cast<std::size_t>(j) * n + i] = f;
        }
    }
    return inst;
}

double objective(const QapInstance& inst, const Perm& perm) {
    check_square(inst);
    validate_perm(perm);
    const int n = inst.n;
    if (static_cast<int>(perm.size()) != n) {
        throw ValidationError("objective: permutation size " + std::to_string(perm.size()) +
                              " != instance size " + std::to_string(n));
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* frow = inst.flow.data() + static_cast<std::size_t>(i) * n;
        const double* drow = inst.dist.data() + static_cast<std::size_t>(perm[i]) * n;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += frow[j] * drow[perm[j]];
        total += acc;
    }
    return total;
}

double swap_delta(const QapInstance& inst, const Perm& perm, int i, int j) {
    check_square(inst);
    const int n = inst.n;
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
        throw ValidationError("swap_delta: bad positions (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    if (static_cast<int>(perm.size()) != n) {
        throw ValidationError("swap_delta: permutation size mismatch");
    }
    if (i > j) std::swap(i, j);
    // Symmetric zero-diagonal case: only terms touching positions i, j move.
    const double* fi = inst.flow.data() + static_cast<std::size_t>(i) * n;
    const double* fj = inst.flow.data() + static_cast<std::size_t>(j) * n;
    const double* du = inst.dist.data() + static_cast<std::size_t>(perm[i]) * n;
    const double* dv = inst.dist.data() + static_cast<std::size_t>(perm[j]) * n;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const int pk = perm[k];
        acc += (fi[k] - fj[k]) * (dv[pk] - du[pk]);
    }
    return 2.0 * acc;
}

QualityVector quality_vector(QapInstance& inst) {
    check_square(inst);
    if (inst.n > kMaxEnumerationN) {
        throw ResourceError("quality_vector: n = " + std::to_string(inst.n) +
                            " exceeds the full-enumeration cap n <= " + std::to_string(kMaxEnumerationN));
    }
    const std::uint64_t total = factorial(inst.n);
    QualityVector q;
    q.values.resize(total);

    // std::next_permutation yields exactly the lexicographic (PermIndex) order.
    Perm perm(inst.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t idx = 0;
    do {
        q.values[idx++] = objective(inst, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    q.min = q.values[0];
    q.max = q.values[0];
    double sum = 0.0;
    for (const double v : q.values) {
        q.min = std::min(q.min, v);
        q.max = std::max(q.max, v);
        sum += v;
    }
    q.mean = sum / static_cast<double>(total);
    double ss = 0.0;
    for (const double v : q.values) {
        const double d = v - q.mean;
        ss += d * d;
    }
    q.sigma = std::sqrt(ss / static_cast<double>(total));
    for (std::uint64_t k = 0; k < total; ++k) {
        if (q.values[k] == q.min) q.minimizers.push_back(k);
    }
    inst.optimum = Optimum{q.min, q.minimizers};
    return q;
}

std::vector<double> normalize_qualities(const QualityVector& q) {
    if (q.values.empty()) throw ValidationError("normalize_qualities: empty quality vector");
    if (!(q.max > q.min)) {
        throw NumericError("normalize_qualities: constant cost vector (max == min), degenerate instance");
    }
    const double span = q.max - q.min;
    std::vector<double> out(q.values.size());
    for (std::size_t k = 0; k < q.values.size(); ++k) {
        out[k] = 2.0 * std::numbers::pi * (q.values[k] - q.min) / span;
    }
    return out;
}

namespace {

using nlohmann::json;

json optimum_to_json(const Optimum& opt) {
    return json{{"cost", opt.cost}, {"minimizers", opt.minimizers}};
}

} // namespace

void save_instance(const std::filesystem::path& path, const QapInstance& inst) {
    json j;
    j["n"] = inst.n;
    j["seed"] = inst.seed;
    j["flow"] = inst.flow;
    j["dist"] = inst.dist;
    if (!inst.coords.empty()) {
        json coords = json::array();
        for (const auto& c : inst.coords) coords.push_back(json::array({c[0], c[1]}));
        j["coords"] = coords;
    }
    if (inst.optimum) j["optimum"] = optimum_to_json(*inst.optimum);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

QapInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json j = json::parse(in);
    QapInstance inst;
    inst.n = j.at("n").get<int>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.flow = j.at("flow").get<std::vector<double>>();
    inst.dist = j.at("dist").get<std::vector<double>>();
    if (j.contains("coords")) {
        for (const auto& c : j.at("coords")) {
            inst.coords.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
        }
    }
    if (j.contains("optimum")) {
        Optimum opt;
        opt.cost = j.at("optimum").at("cost").get<double>();
        opt.minimizers = j.at("optimum").at("minimizers").get<std::vector<PermIndex>>();
        std::sort(opt.minimizers.begin(), opt.minimizers.end());
        inst.optimum = std::move(opt);
    }
    validate_instance(inst);
    return inst;
}

} // namespace qapbench
