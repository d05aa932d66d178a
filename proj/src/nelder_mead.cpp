#include "qapbench/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qapbench/errors.hpp"

namespace qapbench {

namespace {

struct Vertex {
    Vec3 x{};
    double f = 0.0;
};

double spread_x(const std::array<Vertex, 4>& simplex) {
    double worst = 0.0;
    for (int v = 1; v < 4; ++v) {
        for (int c = 0; c < 3; ++c) {
            worst = std::max(worst, std::abs(simplex[static_cast<std::size_t>(v)].x[
                                                 static_cast<std::size_t>(c)] -
                                             simplex[0].x[static_cast<std::size_t>(c)]));
        }
    }
    return worst;
}

} // namespace

SimplexResult nelder_mead(const std::function<double(const Vec3&)>& f, const Vec3& x0,
                          const SimplexConfig& cfg) {
    if (cfg.max_evals < 4) throw ValidationError("simplex budget must allow the initial simplex");
    if (!(cfg.x_tol > 0.0) || !(cfg.f_tol > 0.0)) {
        throw ValidationError("simplex tolerances must be positive");
    }

    int n_evals = 0;
    bool budget_hit = false;
    const auto eval = [&](const Vec3& x) -> std::optional<double> {
        if (n_evals >= cfg.max_evals) {
            budget_hit = true;
            return std::nullopt;
        }
        ++n_evals;
        const double v = f(x);
        if (!std::isfinite(v)) {
            if (n_evals == 1) {
                throw NumericError("objective is non-finite at the starting point");
            }
            return std::numeric_limits<double>::infinity();
        }
        return v;
    };

    std::array<Vertex, 4> s;
    s[0].x = x0;
    s[0].f = *eval(x0); // budget >= 4 guarantees the first four evals
    for (int c = 0; c < 3; ++c) {
        Vec3 x = x0;
        const double h = std::max(0.05 * std::abs(x[static_cast<std::size_t>(c)]), 0.02);
        x[static_cast<std::size_t>(c)] += h;
        s[static_cast<std::size_t>(c) + 1].x = x;
        s[static_cast<std::size_t>(c) + 1].f = *eval(x);
    }

    const auto order = [&]() {
        std::stable_sort(s.begin(), s.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    order();

    bool converged = false;
    while (true) {
        if (spread_x(s) <= cfg.x_tol && std::abs(s[3].f - s[0].f) <= cfg.f_tol) {
            converged = true;
            break;
        }
        if (n_evals >= cfg.max_evals) {
            budget_hit = true;
            break;
        }

        Vec3 centroid{};
        for (int v = 0; v < 3; ++v) {
            for (int c = 0; c < 3; ++c) {
                centroid[static_cast<std::size_t>(c)] +=
                    s[static_cast<std::size_t>(v)].x[static_cast<std::size_t>(c)] / 3.0;
            }
        }
        const auto blend = [&](double coef) {
            Vec3 x{};
            for (int c = 0; c < 3; ++c) {
                x[static_cast<std::size_t>(c)] =
                    centroid[static_cast<std::size_t>(c)] +
                    coef * (centroid[static_cast<std::size_t>(c)] -
                            s[3].x[static_cast<std::size_t>(c)]);
            }
            return x;
        };

        const Vec3 xr = blend(cfg.reflection);
        const auto fr = eval(xr);
        if (!fr) break;

        bool shrink = false;
        if (*fr < s[0].f) {
            const Vec3 xe = blend(cfg.reflection * cfg.expansion);
            const auto fe = eval(xe);
            if (!fe) { // budget died mid-iteration: keep the better known point
                s[3] = {xr, *fr};
                order();
                break;
            }
            if (*fe < *fr) {
                s[3] = {xe, *fe};
            } else {
                s[3] = {xr, *fr};
            }
        } else if (*fr < s[2].f) {
            s[3] = {xr, *fr};
        } else if (*fr < s[3].f) {
            const Vec3 xc = blend(cfg.reflection * cfg.contraction);
            const auto fc = eval(xc);
            if (!fc) {
                s[3] = {xr, *fr};
                order();
                break;
            }
            if (*fc <= *fr) {
                s[3] = {xc, *fc};
            } else {
                shrink = true;
            }
        } else {
            Vec3 xcc{};
            for (int c = 0; c < 3; ++c) {
                xcc[static_cast<std::size_t>(c)] =
                    centroid[static_cast<std::size_t>(c)] +
                    cfg.contraction * (s[3].x[static_cast<std::size_t>(c)] -
                                       centroid[static_cast<std::size_t>(c)]);
            }
            const auto fcc = eval(xcc);
            if (!fcc) break;
            if (*fcc < s[3].f) {
                s[3] = {xcc, *fcc};
            } else {
                shrink = true;
            }
        }

        if (shrink) {
            for (int v = 1; v < 4; ++v) {
                for (int c = 0; c < 3; ++c) {
                    s[static_cast<std::size_t>(v)].x[static_cast<std::size_t>(c)] =
                        s[0].x[static_cast<std::size_t>(c)] +
                        cfg.shrink * (s[static_cast<std::size_t>(v)].x[static_cast<std::size_t>(c)] -
                                      s[0].x[static_cast<std::size_t>(c)]);
                }
                const auto fv = eval(s[static_cast<std::size_t>(v)].x);
                if (!fv) {
                    // Partially shrunk simplex: mark the unevaluated tail as
                    // worst-possible so the incumbent best stays in front.
                    for (int rest = v; rest < 4; ++rest) {
                        s[static_cast<std::size_t>(rest)].f =
                            std::numeric_limits<double>::infinity();
                    }
                    break;
                }
                s[static_cast<std::size_t>(v)].f = *fv;
            }
        }
        order();
        if (budget_hit) break;
    }

    order();
    SimplexResult result;
    result.x = s[0].x;
    result.value = s[0].f;
    result.n_evals = n_evals;
    result.converged = converged;
    result.budget_limited = budget_hit && !converged;
    return result;
}

namespace {

constexpr double kBoxLo[3] = {1e-6, 1e-6, 0.05};
constexpr double kBoxHi[3] = {10.0, 2.0, 1.0};

Vec3 project_box(const Vec3& x) {
    Vec3 p;
    for (int c = 0; c < 3; ++c) {
        p[static_cast<std::size_t>(c)] = std::clamp(
            x[static_cast<std::size_t>(c)], kBoxLo[c], kBoxHi[c]);
    }
    return p;
}

} // namespace

OptResult optimize_circuit_params(const CircuitContext& ctx, int p, std::uint64_t seed,
                                  const SimplexConfig& cfg, std::optional<Vec3> init) {
    (void)seed;
    if (p < 1) throw ValidationError("parameter optimization requires depth p >= 1");

    OptResult out;
    double best_f = std::numeric_limits<double>::infinity();

    const auto objective = [&](const Vec3& raw) {
        const Vec3 x = project_box(raw);
        double dist2 = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double width = kBoxHi[c] - kBoxLo[c];
            const double d = (raw[static_cast<std::size_t>(c)] -
                              x[static_cast<std::size_t>(c)]) / width;
            dist2 += d * d;
        }
        RampParams params{x[0], x[1], x[2], p};
        const CircuitResult run = run_circuit(ctx, params);
        OptEval ev;
        ev.eval_index = static_cast<int>(out.history.size());
        ev.gamma = x[0];
        ev.t = x[1];
        ev.beta = x[2];
        ev.expectation = run.expectation;
        ev.osp = run.osp;
        out.history.push_back(ev);
        const double penalized =
            run.expectation + (1.0 + std::abs(run.expectation)) * 100.0 * dist2;
        if (penalized < best_f) {
            best_f = penalized;
            out.params = params;
            out.value = run.expectation;
            out.osp = run.osp;
        }
        return penalized;
    };

    Vec3 x0;
    if (init) {
        x0 = project_box(*init);
    } else {
        const double degree = static_cast<double>(ctx.n) * (ctx.n - 1) / 2.0;
        x0 = {1.0, 3.5 / degree, 0.35};
    }

    const SimplexResult sr = nelder_mead(objective, x0, cfg);
    out.n_evals = sr.n_evals;
    out.converged = sr.converged;
    out.budget_limited = sr.budget_limited;
    return out;
}

} // namespace qapbench
