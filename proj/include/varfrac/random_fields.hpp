#pragma once

#include <random>

#include "varfrac/grid_function.hpp"

namespace varfrac {

// Smooth compactly supported bump, peak value 1 at the center.
inline double bump(double t2) {
    if (t2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t2));
}

// Seeded random member of the zero-exterior subspace: a sum of at most
// max_bumps smooth bumps whose supports stay strictly inside the domain, so
// exterior nodes are exactly zero and the draw lies in every space at once.
inline GridFunction random_x0(const GridDomain& g, std::mt19937_64& rng, int max_bumps = 5,
                              double amplitude = 1.0) {
    std::uniform_int_distribution<int> n_bumps_dist(1, max_bumps);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> amp_dist(-amplitude, amplitude);

    const int n_bumps = n_bumps_dist(rng);
    struct Bump {
        Point c;
        double r = 0.0, a = 0.0;
    };
    std::vector<Bump> bumps;
    const Box bbox = g.omega.bounding_box(g.dim);

    // Keep supports resolvable without starving coarse grids of candidates.
    double deepest = 0.0;
    for (const auto i : g.omega_nodes)
        deepest = std::max(deepest, g.omega.boundary_distance(g.nodes[static_cast<std::size_t>(i)]));
    const double min_depth = std::min(2.0 * g.h, 0.5 * deepest);

    for (int b = 0; b < n_bumps; ++b) {
        Bump bp;
        for (int tries = 0; tries < 1000; ++tries) {
            Point c{bbox.lo[0] + unit(rng) * bbox.span(0), 0.0};
            if (g.dim == 2) c[1] = bbox.lo[1] + unit(rng) * bbox.span(1);
            if (!g.omega.contains(c)) continue;
            const double dist = g.omega.boundary_distance(c);
            if (dist <= min_depth) continue;
            bp.c = c;
            bp.r = (0.35 + 0.6 * unit(rng)) * dist;
            break;
        }
        if (bp.r == 0.0) throw std::runtime_error("random_x0: failed to place a bump");
        double a = amp_dist(rng);
        if (std::abs(a) < 0.05 * amplitude) a = std::copysign(0.05 * amplitude, a == 0.0 ? 1.0 : a);
        bp.a = a;
        bumps.push_back(bp);
    }

    std::vector<double> vals(g.n_nodes(), 0.0);
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        double v = 0.0;
        for (const Bump& bp : bumps)
            v += bp.a * bump(sq_distance(g.nodes[i], bp.c, g.dim) / (bp.r * bp.r));
        vals[i] = v;
    }
    for (const auto i : g.exterior_nodes) vals[static_cast<std::size_t>(i)] = 0.0;
    return GridFunction(g, std::move(vals), true);
}

// Draw until the function is not identically zero on the grid.
inline GridFunction random_x0_nonzero(const GridDomain& g, std::mt19937_64& rng,
                                      int max_bumps = 5, double amplitude = 1.0) {
    for (int tries = 0; tries < 100; ++tries) {
        GridFunction u = random_x0(g, rng, max_bumps, amplitude);
        if (u.max_abs() > 0.0) return u;
    }
    throw std::runtime_error("random_x0_nonzero: degenerate grid");
}

}  // namespace varfrac
