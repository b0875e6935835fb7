#pragma once

#include <functional>
#include <string>

#include "varfrac/nonlocal_operator.hpp"

namespace varfrac {

struct DescentOptions {
    double tol = 1e-8;             // gradient max-norm stopping threshold
    long max_iterations = 100000;
    double armijo_c = 1e-4;
    double shrink = 0.5;
    int max_backtracks = 60;
    double divergence_norm = 1e8;   // sup-norm guard
    double divergence_energy = -1e12;
    long snapshot_stride = 0;       // 0 = no iterate snapshots
};

enum class DescentStatus { Converged, IterationCap, Diverged, LineSearchFailed };

inline const char* to_string(DescentStatus s) {
    switch (s) {
        case DescentStatus::Converged: return "converged";
        case DescentStatus::IterationCap: return "iteration-cap";
        case DescentStatus::Diverged: return "diverged";
        case DescentStatus::LineSearchFailed: return "line-search-failed";
    }
    return "unknown";
}

struct DescentResult {
    GridFunction point;
    double value = 0.0;      // objective at the final point
    double residual = 0.0;   // gradient max-norm at the final point
    long iterations = 0;
    DescentStatus status = DescentStatus::IterationCap;
    std::vector<GridFunction> snapshots;
};

// Backtracking (Armijo) descent over the interior nodal values, with a
// Barzilai-Borwein trial step. The objective callback fills gradient
// coefficients in the dual convention (per-node functional value / w_i);
// the Euclidean partial derivative w.r.t. u_i is then w_i * grad_i.
class Descent {
public:
    using Objective = std::function<double(const GridFunction&)>;
    using Gradient = std::function<void(const GridFunction&, std::vector<double>&)>;

    Descent(const GridDomain& g, Objective f, Gradient df)
        : grid_(&g), f_(std::move(f)), df_(std::move(df)) {}

    DescentResult run(GridFunction u, const DescentOptions& opt) const {
        const GridDomain& g = *grid_;
        DescentResult res;
        std::vector<double> grad(g.n_nodes()), grad_prev, du_prev;
        double value = f_(u);
        df_(u, grad);

        auto euclid = [&](std::size_t i) {
            return g.weights[i] * grad[i];
        };

        double step = 1.0;
        double best_residual = std::numeric_limits<double>::infinity();
        long best_iteration = 0;
        for (long it = 0; it < opt.max_iterations; ++it) {
            if (opt.snapshot_stride > 0 && it % opt.snapshot_stride == 0)
                res.snapshots.push_back(u);

            double res_norm = 0.0;
            for (const auto i : g.omega_nodes)
                res_norm = std::max(res_norm, std::abs(grad[static_cast<std::size_t>(i)]));
            if (res_norm <= opt.tol)
                return finish(res, std::move(u), value, res_norm, it, DescentStatus::Converged);
            if (u.max_abs() > opt.divergence_norm || value < opt.divergence_energy)
                return finish(res, std::move(u), value, res_norm, it, DescentStatus::Diverged);
            if (res_norm < 0.999 * best_residual) {
                best_residual = res_norm;
                best_iteration = it;
            } else if (it - best_iteration > 5000) {
                // residual has stalled at floating-point resolution
                return finish(res, std::move(u), value, res_norm, it, DescentStatus::IterationCap);
            }

            // slope of t -> f(u - t * W g) at t = 0 is -sum (w_i g_i)^2
            double slope = 0.0;
            for (const auto i : g.omega_nodes) {
                const double e = euclid(static_cast<std::size_t>(i));
                slope -= e * e;
            }
            if (slope == 0.0)
                return finish(res, std::move(u), value, res_norm, it, DescentStatus::Converged);

            double t = std::clamp(step, 1e-14, 1e12);
            GridFunction trial = u;
            double trial_value = value;
            bool accepted = false;
            // The epsilon term keeps the test meaningful once the decrease
            // falls below floating-point resolution of the objective.
            const double fp_slack =
                4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(value));
            for (int bt = 0; bt <= opt.max_backtracks; ++bt) {
                for (const auto i : g.omega_nodes) {
                    const auto k = static_cast<std::size_t>(i);
                    trial.values[k] = u.values[k] - t * euclid(k);
                }
                trial_value = f_(trial);
                if (trial_value <= value + opt.armijo_c * t * slope + fp_slack) {
                    accepted = true;
                    break;
                }
                t *= opt.shrink;
            }
            if (!accepted)
                return finish(res, std::move(u), value, res_norm, it, DescentStatus::LineSearchFailed);

            grad_prev = grad;
            du_prev.assign(g.n_nodes(), 0.0);
            for (const auto i : g.omega_nodes) {
                const auto k = static_cast<std::size_t>(i);
                du_prev[k] = trial.values[k] - u.values[k];
            }
            u = std::move(trial);
            value = trial_value;
            df_(u, grad);

            // BB1 trial step for the next iteration
            double sy = 0.0, ss = 0.0;
            for (const auto i : g.omega_nodes) {
                const auto k = static_cast<std::size_t>(i);
                const double dg = g.weights[k] * (grad[k] - grad_prev[k]);
                sy += du_prev[k] * dg;
                ss += du_prev[k] * du_prev[k];
            }
            step = (sy > 0.0 && ss > 0.0) ? ss / sy : std::max(t, 1e-14) * 2.0;
        }

        double res_norm = 0.0;
        for (const auto i : g.omega_nodes)
            res_norm = std::max(res_norm, std::abs(grad[static_cast<std::size_t>(i)]));
        return finish(res, std::move(u), value, res_norm, opt.max_iterations,
                      DescentStatus::IterationCap);
    }

private:
    static DescentResult finish(DescentResult& res, GridFunction u, double value, double residual,
                                long iterations, DescentStatus status) {
        res.point = std::move(u);
        res.value = value;
        res.residual = residual;
        res.iterations = iterations;
        res.status = status;
        return std::move(res);
    }

    const GridDomain* grid_;
    Objective f_;
    Gradient df_;
};

}  // namespace varfrac
