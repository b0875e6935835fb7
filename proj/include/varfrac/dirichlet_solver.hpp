#pragma once

#include "varfrac/descent.hpp"
#include "varfrac/random_fields.hpp"

namespace varfrac {

struct SolveOptions {
    double tol = 1e-8;
    long max_iterations = 100000;
    std::uint64_t seed = 42;
    int starts = 3;
    DescentOptions descent;
};

struct SolveReport {
    GridFunction solution;
    double residual = 0.0;
    long iterations = 0;
    double energy_value = 0.0;
    double multistart_agreement = 0.0;  // max pairwise sup-distance of solutions
    bool converged = false;
    std::string status;
};

// Unique weak solution of the nonlocal Dirichlet problem, obtained as the
// minimizer of the convex energy sigma(u) - <f, u>. Multistart from seeded
// initial points; agreement of the starts is the discrete uniqueness
// certificate (strict monotonicity leaves a single critical point).
inline SolveReport solve_dirichlet(const WeakOperator& op, const DualVector& f,
                                   const SolveOptions& opt = {}) {
    const GridDomain& g = op.grid();
    if (f.grid != &g) throw std::invalid_argument("solve_dirichlet: grid mismatch");
    for (const double c : f.coeff)
        if (!std::isfinite(c)) throw std::invalid_argument("solve_dirichlet: non-finite load");

    Descent descent(
        g, [&](const GridFunction& u) { return energy(op, u, f); },
        [&](const GridFunction& u, std::vector<double>& grad) {
            op.apply_gradient_into(u, grad);
            for (const auto i : g.omega_nodes) {
                const auto k = static_cast<std::size_t>(i);
                grad[k] -= f.coeff[k];
            }
        });

    DescentOptions dopt = opt.descent;
    dopt.tol = opt.tol;
    dopt.max_iterations = opt.max_iterations;

    std::vector<GridFunction> starts;
    starts.push_back(GridFunction::zero(g));
    for (int sidx = 1; sidx < opt.starts; ++sidx) {
        std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(sidx));
        starts.push_back(random_x0_nonzero(g, rng));
    }

    std::vector<DescentResult> runs;
    runs.reserve(starts.size());
    for (auto& s : starts) runs.push_back(descent.run(std::move(s), dopt));

    SolveReport rep;
    rep.solution = runs.front().point;
    rep.residual = runs.front().residual;
    rep.iterations = runs.front().iterations;
    rep.energy_value = runs.front().value;
    rep.converged = true;
    for (const auto& r : runs) rep.converged = rep.converged && r.status == DescentStatus::Converged;
    rep.status = to_string(runs.front().status);

    for (std::size_t a = 0; a < runs.size(); ++a)
        for (std::size_t b = a + 1; b < runs.size(); ++b) {
            const GridFunction d = runs[a].point - runs[b].point;
            rep.multistart_agreement = std::max(rep.multistart_agreement, d.max_abs());
        }
    return rep;
}

}  // namespace varfrac
