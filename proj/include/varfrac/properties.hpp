#pragma once

#include <set>

#include "varfrac/config.hpp"
#include "varfrac/report.hpp"

namespace varfrac {

struct PropertyResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;  // the quantity the check thresholded
    std::string detail;
};

namespace detail {

inline void add(std::vector<PropertyResult>& out, const std::string& name, bool pass,
                double measured, const std::string& detail = "") {
    out.push_back({name, pass, measured, detail});
}

}  // namespace detail

// Cross-module invariant suite. Each entry re-states one of the library's
// inequality or identity contracts on seeded data; `properties` in the CLI
// runs this and exits nonzero if any entry fails.
inline std::vector<PropertyResult> run_property_suite(const Problem& prob, std::uint64_t seed) {
    std::vector<PropertyResult> out;
    const GridDomain& g = prob.grid;
    const PairSet& ps = prob.pairs;
    const WeakOperator& op = *prob.op;
    const PairData& pd = op.pair_data();
    std::mt19937_64 rng(seed);

    // --- grid ---
    {
        bool ok = true;
        for (const double w : g.weights) ok = ok && w > 0.0;
        detail::add(out, "grid.weights_positive", ok, ok ? 1.0 : 0.0);

        bool inside = true;
        for (const auto i : g.omega_nodes)
            inside = inside && g.box.strictly_contains(g.nodes[static_cast<std::size_t>(i)]);
        detail::add(out, "grid.omega_nodes_inside_box", inside, inside ? 1.0 : 0.0);
        detail::add(out, "grid.exterior_collar_nonempty", g.n_exterior() > 0,
                    static_cast<double>(g.n_exterior()));

        const GridDomain fine = refine(g);
        const double drift = std::abs(fine.omega_measure() - g.omega_measure());
        const double budget =
            8.0 * g.dim * g.h * std::pow(std::max(1.0, g.omega.diameter()), g.dim - 1);
        detail::add(out, "grid.measure_refinement_drift_O_h", drift <= budget, drift);
    }

    // --- pair set ---
    {
        std::set<std::pair<std::int32_t, std::int32_t>> seen;
        bool no_diag = true, no_double_ext = true;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const auto i = ps.first[k], j = ps.second[k];
            no_diag = no_diag && i != j;
            no_double_ext = no_double_ext && (g.in_omega[static_cast<std::size_t>(i)] ||
                                              g.in_omega[static_cast<std::size_t>(j)]);
            seen.insert({i, j});
        }
        bool swap_closed = seen.size() == ps.size();
        for (const auto& [i, j] : seen) swap_closed = swap_closed && seen.count({j, i}) == 1;
        detail::add(out, "pairs.no_diagonal", no_diag, no_diag ? 1.0 : 0.0);
        detail::add(out, "pairs.no_exterior_exterior", no_double_ext, no_double_ext ? 1.0 : 0.0);
        detail::add(out, "pairs.swap_closed", swap_closed, swap_closed ? 1.0 : 0.0);

        std::size_t omega_omega = 0, omega_ext = 0;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const bool oi = g.in_omega[static_cast<std::size_t>(ps.first[k])];
            const bool oj = g.in_omega[static_cast<std::size_t>(ps.second[k])];
            if (oi && oj) ++omega_omega;
            else if (oi != oj) ++omega_ext;
        }
        const bool decomp = omega_omega + omega_ext == ps.size() &&
                            omega_ext % 2 == 0 &&
                            omega_omega + 2 * (omega_ext / 2) == ps.size();
        detail::add(out, "pairs.q_decomposition", decomp, static_cast<double>(ps.size()));
    }

    // --- exponent ---
    {
        const ScalarExponent pb = prob.p_bar;
        const ScalarExponent conj = conjugate(pb);
        const ScalarExponent conj2 = conjugate(conj);
        double max_inv = 0.0, max_id = 0.0;
        for (const auto i : g.omega_nodes) {
            const Point& x = g.nodes[static_cast<std::size_t>(i)];
            max_inv = std::max(max_inv, std::abs(conj2(x) - pb(x)));
            max_id = std::max(max_id, std::abs(1.0 / pb(x) + 1.0 / conj(x) - 1.0));
        }
        detail::add(out, "exponent.conjugate_involution", max_inv <= 1e-12, max_inv);
        detail::add(out, "exponent.conjugate_identity", max_id <= 1e-14, max_id);

        bool monotone = true;
        if (prob.p.s * (prob.p.p_plus + 0.2) < g.dim) {
            const ScalarExponent star_lo = critical_exponent(prob.p, g.dim);
            ExponentField p_hi = prob.p;
            auto base = prob.p.eval;
            p_hi.eval = [base](const Point& x, const Point& y) { return base(x, y) + 0.2; };
            p_hi.p_minus += 0.2;
            p_hi.p_plus += 0.2;
            const ScalarExponent star_hi = critical_exponent(p_hi, g.dim);
            for (const auto i : g.omega_nodes) {
                const Point& x = g.nodes[static_cast<std::size_t>(i)];
                monotone = monotone && star_hi(x) > star_lo(x);
            }
        }
        detail::add(out, "exponent.critical_monotone_in_pbar", monotone, monotone ? 1.0 : 0.0);
    }

    // --- Lebesgue ---
    {
        double worst_unit = 0.0, worst_triangle = 0.0;
        bool holder_ok = true;
        for (int c = 0; c < 20; ++c) {
            const GridFunction u = random_x0_nonzero(g, rng);
            const GridFunction v = random_x0_nonzero(g, rng);
            const LuxemburgResult r = luxemburg_norm_result(u, prob.p_bar);
            if (r.norm > 0.0) worst_unit = std::max(worst_unit, std::abs(r.modular_at_unit - 1.0));
            const double tri = luxemburg_norm(u + v, prob.p_bar) -
                               (luxemburg_norm(u, prob.p_bar) + luxemburg_norm(v, prob.p_bar));
            worst_triangle = std::max(worst_triangle, tri);
            holder_ok = holder_ok && holder_pairing(u, v, prob.p_bar).holds();
        }
        detail::add(out, "lebesgue.unit_modular_correspondence", worst_unit <= 1e-10, worst_unit);
        detail::add(out, "lebesgue.norm_triangle", worst_triangle <= 1e-12, worst_triangle);
        detail::add(out, "lebesgue.holder_inequality", holder_ok, holder_ok ? 1.0 : 0.0);

        const GridFunction u = random_x0_nonzero(g, rng);
        const GridFunction w = random_x0_nonzero(g, rng);
        double prev_norm = std::numeric_limits<double>::infinity();
        bool conv_ok = true;
        double first = 0.0, last = 0.0;
        for (int k = 1; k <= 64; k *= 2) {
            const GridFunction uk = u + (1.0 / k) * w;
            const double nk = luxemburg_norm(uk - u, prob.p_bar);
            if (k == 1) first = nk;
            last = nk;
            conv_ok = conv_ok && nk <= prev_norm * (1.0 + 1e-12);
            prev_norm = nk;
        }
        conv_ok = conv_ok && (first == 0.0 || last <= first / 32.0);
        detail::add(out, "lebesgue.modular_norm_convergence_equivalence", conv_ok, last);
    }

    // --- kernel ---
    {
        const Kernel sing = singular_kernel(prob.p, g.dim);
        double worst = 0.0;
        for (std::size_t k = 0; k < ps.size(); k += std::max<std::size_t>(1, ps.size() / 512)) {
            const Point& x = g.nodes[static_cast<std::size_t>(ps.first[k])];
            const Point& y = g.nodes[static_cast<std::size_t>(ps.second[k])];
            const double d = distance(x, y, g.dim);
            worst = std::max(worst,
                             std::abs(sing(x, y) * std::pow(d, g.dim + prob.p.s * prob.p(x, y)) - 1.0));
        }
        detail::add(out, "kernel.singular_ratio_identity", worst <= 1e-12, worst);

        bool m_ok = true;
        for (std::size_t k = 0; k < ps.size(); k += std::max<std::size_t>(1, ps.size() / 512)) {
            const Point& x = g.nodes[static_cast<std::size_t>(ps.first[k])];
            const Point& y = g.nodes[static_cast<std::size_t>(ps.second[k])];
            const double d = distance(x, y, g.dim);
            const double pxy = prob.p(x, y);
            const double m = kernel_m(d, pxy);
            m_ok = m_ok && m > 0.0 && m <= 1.0;
            if (d <= 1.0) m_ok = m_ok && std::abs(m - std::pow(d, pxy)) <= 1e-15;
            else m_ok = m_ok && m == 1.0;
        }
        detail::add(out, "kernel.m_range", m_ok, m_ok ? 1.0 : 0.0);

        const KernelReport r1 = validate_kernel(sing, prob.p, g);
        const KernelReport r2 = validate_kernel(scaled_kernel(sing, 2.0), prob.p, g);
        const double scale_err = std::abs(r2.min_ratio - 2.0 * r1.min_ratio) /
                                 std::max(1.0, 2.0 * r1.min_ratio);
        detail::add(out, "kernel.k0_scaling_linearity", scale_err <= 1e-12, scale_err);
        detail::add(out, "kernel.singular_admissible", r1.pass(), r1.refinement_change);
    }

    // --- Sobolev ---
    {
        const GridFunction u = random_x0_nonzero(g, rng);

        double s_fwd = 0.0, s_swp = 0.0;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const auto i = static_cast<std::size_t>(ps.first[k]);
            const auto j = static_cast<std::size_t>(ps.second[k]);
            const double d1 = std::abs(u.values[i] - u.values[j]);
            const double d2 = std::abs(u.values[j] - u.values[i]);
            if (d1 != 0.0) s_fwd += ps.weight[k] * pd.K[k] * std::pow(d1, pd.p[k]);
            if (d2 != 0.0) s_swp += ps.weight[k] * pd.K[k] * std::pow(d2, pd.p[k]);
        }
        detail::add(out, "sobolev.modular_swap_symmetry", s_fwd == s_swp,
                    std::abs(s_fwd - s_swp));

        double worst_unit = 0.0;
        for (int c = 0; c < 10; ++c) {
            const GridFunction w = random_x0_nonzero(g, rng);
            const SeminormResult sr = gagliardo_seminorm(w, pd);
            if (sr.seminorm > 0.0)
                worst_unit = std::max(worst_unit, std::abs(sr.modular_at_unit - 1.0));
        }
        detail::add(out, "sobolev.seminorm_unit_modular", worst_unit <= 1e-9, worst_unit);

        // rho° over the reduced pair set equals the sum over all off-diagonal
        // box pairs for zero-exterior functions
        double full = 0.0;
        for (std::size_t i = 0; i < g.n_nodes(); ++i) {
            for (std::size_t j = 0; j < g.n_nodes(); ++j) {
                if (i == j) continue;
                const double d = std::abs(u.values[i] - u.values[j]);
                if (d == 0.0) continue;
                const Point& x = g.nodes[i];
                const Point& y = g.nodes[j];
                full += g.weights[i] * g.weights[j] * prob.kernel(x, y) *
                        std::pow(d, prob.p(x, y));
            }
        }
        const double rho_q = gagliardo_modular(u, pd);
        const double trunc_err = std::abs(full - rho_q) / std::max(1.0, rho_q);
        detail::add(out, "sobolev.q_equals_full_pair_sum_on_x0", trunc_err <= 1e-12, trunc_err);

        const Kernel k2 = scaled_kernel(prob.kernel, 2.0);
        const PairData pd2 = build_pair_data(g, ps, k2, prob.p);
        detail::add(out, "sobolev.modular_monotone_in_kernel",
                    gagliardo_modular(u, pd2) >= rho_q, gagliardo_modular(u, pd2) - rho_q);

        const SpaceComparison cmp = compare_spaces(u, prob.kernel, prob.p, ps);
        detail::add(out, "sobolev.space_comparison", cmp.pass,
                    cmp.ktilde * cmp.seminorm_K - cmp.seminorm_s);

        bool tri_ok = true;
        for (int c = 0; c < 10; ++c) {
            const GridFunction a = random_x0_nonzero(g, rng);
            const GridFunction b = random_x0_nonzero(g, rng);
            tri_ok = tri_ok && check_modular_triangle(a, b, pd).pass;
        }
        detail::add(out, "sobolev.modular_triangle", tri_ok, tri_ok ? 1.0 : 0.0);
    }

    // --- operator ---
    {
        const GridFunction u = random_x0_nonzero(g, rng);
        const GridFunction phi = random_x0_nonzero(g, rng);

        const double lhs = op.apply(u, u);
        const double rho = op.modular(u);
        const double id_err = std::abs(lhs - rho) / std::max(1.0, std::abs(rho));
        detail::add(out, "operator.pairing_equals_modular", id_err <= 1e-12, id_err);

        const GridFunction phi2 = random_x0_nonzero(g, rng);
        const double a = -1.7, b = 0.6;
        const double lin = op.apply(u, a * phi + b * phi2);
        const double lin_ref = a * op.apply(u, phi) + b * op.apply(u, phi2);
        const double lin_err = std::abs(lin - lin_ref) / std::max(1.0, std::abs(lin_ref));
        detail::add(out, "operator.linearity_in_test_function", lin_err <= 1e-12, lin_err);

        bool mono_ok = true;
        for (int c = 0; c < 20; ++c) {
            const GridFunction x = random_x0_nonzero(g, rng);
            const GridFunction y = random_x0_nonzero(g, rng);
            const MonotonicityProbe pr = monotonicity_probe(op, x, y);
            if (!pr.degenerate) mono_ok = mono_ok && pr.value > 0.0;
        }
        detail::add(out, "operator.strict_monotonicity", mono_ok, mono_ok ? 1.0 : 0.0);

        const CoercivityReport co = coercivity_probe(op, u);
        detail::add(out, "operator.coercivity_bounds", co.satisfied && co.ratios_increasing,
                    co.pairing - co.lower_bound);

        bool bd_ok = true;
        for (int c = 0; c < 10; ++c) {
            const GridFunction x = random_x0_nonzero(g, rng);
            const GridFunction y = random_x0_nonzero(g, rng);
            bd_ok = bd_ok && boundedness_probe(op, x, y).pass;
        }
        detail::add(out, "operator.holder_boundedness", bd_ok, bd_ok ? 1.0 : 0.0);
    }

    // --- Dirichlet solver ---
    {
        SolveOptions so;
        so.tol = 1e-8;
        so.seed = seed;
        const DualVector f0 = DualVector::zero(g);
        const SolveReport r0 = solve_dirichlet(*prob.op, f0, so);
        detail::add(out, "dirichlet.zero_load_zero_solution",
                    r0.solution.max_abs() == 0.0 && r0.residual == 0.0, r0.residual);

        const DualVector f = DualVector::from_callable(
            g, [](const Point& x) { return std::sin(2.0 * x[0]) + 0.3 * x[1]; });
        const SolveReport r = solve_dirichlet(*prob.op, f, so);
        detail::add(out, "dirichlet.converged", r.converged, r.residual);
        detail::add(out, "dirichlet.multistart_agreement", r.multistart_agreement <= 10.0 * so.tol,
                    r.multistart_agreement);
    }

    return out;
}

inline void property_report_json(const std::vector<PropertyResult>& results, JsonWriter& w) {
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    w.begin_object();
    w.field("all_pass", all);
    w.field("count", results.size());
    w.key("properties").begin_array();
    for (const auto& r : results) {
        w.begin_object();
        w.field("name", r.name);
        w.field("pass", r.pass);
        w.field("measured", r.measured);
        if (!r.detail.empty()) w.field("detail", r.detail);
        w.end_object();
    }
    w.end_array();
    w.end_object();
}

}  // namespace varfrac
