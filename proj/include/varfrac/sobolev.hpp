#pragma once

#include <optional>

#include "varfrac/lebesgue.hpp"
#include "varfrac/pair_data.hpp"
#include "varfrac/parallel.hpp"

namespace varfrac {

// rho°(u) = sum over the pair set of w_i w_j |u_i - u_j|^{p_ij} K_ij.
// Inputs must vanish outside the domain so that the truncated pair set
// captures the full double integral exactly.
inline double gagliardo_modular(const GridFunction& u, const PairData& pd) {
    require_x0(u, "gagliardo_modular");
    const PairSet& ps = *pd.pairs;
    return blocked_sum(ps.size(), [&](std::size_t begin, std::size_t end) {
        double s = 0.0;
        for (std::size_t k = begin; k < end; ++k) {
            const double d = std::abs(u.values[static_cast<std::size_t>(ps.first[k])] -
                                      u.values[static_cast<std::size_t>(ps.second[k])]);
            if (d != 0.0) s += ps.weight[k] * pd.K[k] * std::pow(d, pd.p[k]);
        }
        return s;
    });
}

inline double gagliardo_modular(const GridFunction& u, const Kernel& K, const ExponentField& p,
                                const PairSet& ps) {
    return gagliardo_modular(u, build_pair_data(*u.grid, ps, K, p));
}

struct SeminormResult {
    double seminorm = 0.0;
    double modular_at_unit = 0.0;
    int iterations = 0;
};

inline SeminormResult gagliardo_seminorm(const GridFunction& u, const PairData& pd) {
    require_x0(u, "gagliardo_seminorm");
    const PairSet& ps = *pd.pairs;
    const double m = u.max_abs();
    if (m == 0.0) return {};

    // Pre-scale by the sup so the bisection bracket stays moderate.
    auto modular_of = [&](double lam) {
        const double denom = 2.0 * m * lam;
        return blocked_sum(ps.size(), [&, denom](std::size_t begin, std::size_t end) {
            double s = 0.0;
            for (std::size_t k = begin; k < end; ++k) {
                const double d = std::abs(u.values[static_cast<std::size_t>(ps.first[k])] -
                                          u.values[static_cast<std::size_t>(ps.second[k])]);
                if (d != 0.0) s += ps.weight[k] * pd.K[k] * std::pow(d / denom, pd.p[k]);
            }
            return s;
        });
    };
    const double rho_scaled = modular_of(1.0);
    if (rho_scaled == 0.0) return {};
    const double upper =
        2.0 * std::max(1.0, std::pow(std::max(rho_scaled, 1e-30), 1.0 / pd.p_minus));
    LuxemburgResult r = detail::luxemburg_infimum(modular_of, upper);
    SeminormResult out;
    out.seminorm = r.norm * 2.0 * m;
    out.modular_at_unit = r.modular_at_unit;
    out.iterations = r.iterations;
    return out;
}

inline SeminormResult gagliardo_seminorm(const GridFunction& u, const Kernel& K,
                                         const ExponentField& p, const PairSet& ps) {
    return gagliardo_seminorm(u, build_pair_data(*u.grid, ps, K, p));
}

// ||u|| = ||u||_{L^{p_bar}} + [u]; positive iff u != 0.
inline double full_norm(const GridFunction& u, const PairData& pd, const ScalarExponent& p_bar) {
    return luxemburg_norm(u, p_bar) + gagliardo_seminorm(u, pd).seminorm;
}

inline NormModularReport check_modular_seminorm_relations(const GridFunction& u,
                                                          const PairData& pd) {
    const double sn = gagliardo_seminorm(u, pd).seminorm;
    const double mod = gagliardo_modular(u, pd);
    return NormModularReport::build(sn, mod, pd.p_minus, pd.p_plus);
}

struct ModularTriangleReport {
    double lhs = 0.0;  // rho°(u + v)
    double rhs = 0.0;  // 2^{p+ - 1} (rho°(u) + rho°(v))
    bool pass = false;
};

inline ModularTriangleReport check_modular_triangle(const GridFunction& u, const GridFunction& v,
                                                    const PairData& pd) {
    require_same_grid(u, v);
    ModularTriangleReport r;
    r.lhs = gagliardo_modular(u + v, pd);
    r.rhs = std::pow(2.0, pd.p_plus - 1.0) * (gagliardo_modular(u, pd) + gagliardo_modular(v, pd));
    r.pass = r.lhs <= r.rhs + 1e-12 * std::max(1.0, r.rhs);
    return r;
}

struct SpaceComparison {
    double seminorm_s = 0.0;  // Gagliardo seminorm over the domain squared
    double seminorm_K = 0.0;  // kernel seminorm over the full pair set
    double ktilde = 0.0;      // max{k0^{-1/p-}, k0^{-1/p+}}
    bool pass = false;
};

// [u]_{s,p} <= ktilde [u]_{K,p}: the continuous comparison between the
// classical fractional seminorm and the kernel seminorm.
inline SpaceComparison compare_spaces(const GridFunction& u, const Kernel& K,
                                      const ExponentField& p, const PairSet& ps_q) {
    require_x0(u, "compare_spaces");
    const GridDomain& g = *u.grid;
    if (!(K.k0 > 0.0)) throw std::invalid_argument("compare_spaces: kernel has no valid k0");

    const PairSet ps_omega = build_pairset_omega(g);
    const Kernel frac = singular_kernel(p, g.dim);
    const PairData pd_s = build_pair_data(g, ps_omega, frac, p);
    const PairData pd_k = build_pair_data(g, ps_q, K, p);

    SpaceComparison c;
    c.seminorm_s = gagliardo_seminorm(u, pd_s).seminorm;
    c.seminorm_K = gagliardo_seminorm(u, pd_k).seminorm;
    c.ktilde = std::max(std::pow(K.k0, -1.0 / p.p_minus), std::pow(K.k0, -1.0 / p.p_plus));
    c.pass = c.seminorm_s <= c.ktilde * c.seminorm_K * (1.0 + 1e-12) + 1e-14;
    return c;
}

// ||u||_{L^r} / ||u||_{K,p}; requires r(x) < p*_s(x) on the domain.
// Returns nullopt for the zero function.
inline std::optional<double> embedding_ratio(const GridFunction& u, const ScalarExponent& r,
                                             const PairData& pd, const ExponentField& p) {
    const GridDomain& g = *u.grid;
    const ScalarExponent p_star = critical_exponent(p, g.dim);
    for (const auto i : g.omega_nodes) {
        const Point& x = g.nodes[static_cast<std::size_t>(i)];
        if (!(r(x) < p_star(x) - kExponentSlack))
            throw std::invalid_argument("embedding_ratio: need r(x) < p*_s(x) on the domain");
    }
    const double denom = full_norm(u, pd, trace(p));
    if (denom == 0.0) return std::nullopt;
    return luxemburg_norm(u, r) / denom;
}

}  // namespace varfrac
