#pragma once

#include <random>

#include "varfrac/config.hpp"
#include "varfrac/random_fields.hpp"

namespace vft {

using namespace varfrac;

inline GridDomain grid_1d(int n, double box_lo = -2.0, double box_hi = 2.0, double om_lo = -1.0,
                          double om_hi = 1.0) {
    return build_grid(1, Box::interval(box_lo, box_hi), (box_hi - box_lo) / n,
                      OmegaShape::interval(om_lo, om_hi));
}

// Seeded scalar exponent with values in [lo, hi].
inline ScalarExponent random_scalar_exponent(const GridDomain& g, std::mt19937_64& rng, double lo,
                                             double hi) {
    std::uniform_real_distribution<double> ab(0.5, 3.0);
    const double a = ab(rng), b = ab(rng);
    return ScalarExponent::sampled(
        [=](const Point& x) {
            return lo + (hi - lo) * 0.5 * (1.0 + std::sin(a * (x[0] + x[1]) + b));
        },
        g);
}

// Seeded symmetric two-point exponent with values in [lo, hi].
inline ExponentField random_exponent_field(const GridDomain& g, const PairSet& ps,
                                           std::mt19937_64& rng, double lo, double hi, double s) {
    std::uniform_real_distribution<double> ab(0.5, 2.0);
    const double a = ab(rng), b = ab(rng);
    const int dim = g.dim;
    return ExponentField::sampled(
        [=](const Point& x, const Point& y) {
            double t = 0.0;
            for (int d = 0; d < dim; ++d) t += x[d] + y[d];
            return lo + (hi - lo) * 0.5 * (1.0 + std::sin(a * t + b));
        },
        s, g, ps);
}

// Brute-force modular oracle at extended precision, restricted to the domain.
inline double oracle_modular_lebesgue(const GridFunction& u, const ScalarExponent& q) {
    const GridDomain& g = *u.grid;
    long double s = 0.0L;
    for (const auto i : g.omega_nodes) {
        const auto k = static_cast<std::size_t>(i);
        s += static_cast<long double>(g.weights[k]) *
             powl(fabsl(static_cast<long double>(u.values[k])), q(g.nodes[k]));
    }
    return static_cast<double>(s);
}

// Independent double-loop pair-sum oracle: re-derives the integration region
// from the membership mask instead of using the pair set.
inline double oracle_gagliardo_modular(const GridFunction& u, const Kernel& K,
                                       const ExponentField& p) {
    const GridDomain& g = *u.grid;
    long double s = 0.0L;
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        for (std::size_t j = 0; j < g.n_nodes(); ++j) {
            if (i == j) continue;
            if (!g.in_omega[i] && !g.in_omega[j]) continue;
            const long double d = fabsl(static_cast<long double>(u.values[i]) -
                                        static_cast<long double>(u.values[j]));
            if (d == 0.0L) continue;
            s += static_cast<long double>(g.weights[i]) * g.weights[j] *
                 powl(d, p(g.nodes[i], g.nodes[j])) * K(g.nodes[i], g.nodes[j]);
        }
    }
    return static_cast<double>(s);
}

// Closed-form Luxemburg norm for a constant exponent.
inline double oracle_constant_exponent_norm(const GridFunction& u, double q) {
    const GridDomain& g = *u.grid;
    long double s = 0.0L;
    for (const auto i : g.omega_nodes) {
        const auto k = static_cast<std::size_t>(i);
        s += static_cast<long double>(g.weights[k]) *
             powl(fabsl(static_cast<long double>(u.values[k])), q);
    }
    return static_cast<double>(powl(s, 1.0L / q));
}

inline GridFunction scaled_to_seminorm(const GridFunction& u, const PairData& pd, double target) {
    const double sn = gagliardo_seminorm(u, pd).seminorm;
    return (target / sn) * u;
}

inline GridFunction scaled_to_norm(const GridFunction& u, const ScalarExponent& q, double target) {
    const double n = luxemburg_norm(u, q);
    return (target / n) * u;
}

}  // namespace vft
