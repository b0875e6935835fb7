#pragma once

#include <cstdint>
#include <fstream>
#include <numeric>
#include <utility>
#include <vector>

#include "varfrac/geometry.hpp"

namespace varfrac {

// Uniform tensor grid over a truncation box B that strictly contains the
// domain of interest. Cell centers carry midpoint quadrature weights h^dim;
// membership in the interior domain is decided at cell centers. Nodes
// outside the domain form the exterior collar that stands in for the
// complement of the domain.
struct GridDomain {
    int dim = 1;
    Box box;
    double h = 0.0;
    std::array<int, 2> cells{0, 1};
    std::vector<Point> nodes;
    std::vector<double> weights;
    std::vector<std::uint8_t> in_omega;
    std::vector<std::int32_t> omega_nodes;
    std::vector<std::int32_t> exterior_nodes;
    OmegaShape omega = OmegaShape::interval(0.0, 1.0);

    std::size_t n_nodes() const { return nodes.size(); }
    std::size_t n_omega() const { return omega_nodes.size(); }
    std::size_t n_exterior() const { return exterior_nodes.size(); }

    // Quadrature measure of the interior domain at this resolution.
    double omega_measure() const {
        double m = 0.0;
        for (const auto i : omega_nodes) m += weights[static_cast<std::size_t>(i)];
        return m;
    }
};

namespace detail {

inline int axis_cell_count(double span, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("build_grid: need h > 0");
    if (!(span > 0.0)) throw std::invalid_argument("build_grid: box must have positive volume");
    const double n_real = span / h;
    const int n = static_cast<int>(std::lround(n_real));
    if (n < 1 || std::abs(n * h - span) > 1e-9 * std::max(1.0, span))
        throw std::invalid_argument("build_grid: spacing h does not tile the box");
    return n;
}

}  // namespace detail

inline GridDomain build_grid(int dim, const Box& box, double h, const OmegaShape& omega) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("build_grid: dim must be 1 or 2");

    GridDomain g;
    g.dim = dim;
    g.box = box;
    g.box.dim = dim;
    g.h = h;
    g.omega = omega;

    g.cells[0] = detail::axis_cell_count(box.span(0), h);
    g.cells[1] = dim == 2 ? detail::axis_cell_count(box.span(1), h) : 1;

    const double w = dim == 2 ? h * h : h;
    const int nx = g.cells[0], ny = g.cells[1];
    g.nodes.reserve(static_cast<std::size_t>(nx) * ny);
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            Point x{box.lo[0] + (ix + 0.5) * h, 0.0};
            if (dim == 2) x[1] = box.lo[1] + (iy + 0.5) * h;
            const bool inside = omega.contains(x);
            const bool boundary_cell =
                ix == 0 || ix == nx - 1 || (dim == 2 && (iy == 0 || iy == ny - 1));
            if (inside && boundary_cell)
                throw std::invalid_argument(
                    "build_grid: domain touches the box boundary; widen the collar");
            const auto idx = static_cast<std::int32_t>(g.nodes.size());
            g.nodes.push_back(x);
            g.weights.push_back(w);
            g.in_omega.push_back(inside ? 1 : 0);
            (inside ? g.omega_nodes : g.exterior_nodes).push_back(idx);
        }
    }

    if (g.omega_nodes.empty())
        throw std::invalid_argument("build_grid: no grid node falls inside the domain");
    if (g.exterior_nodes.empty())
        throw std::invalid_argument("build_grid: exterior collar is empty");
    return g;
}

inline GridDomain refine(const GridDomain& g) {
    return build_grid(g.dim, g.box, 0.5 * g.h, g.omega);
}

// Ordered node-index pairs (i, j), i != j, excluding pairs with both
// endpoints in the exterior. Closed under swapping and diagonal-free;
// realizes the double-integration region that drops exterior x exterior.
struct PairSet {
    std::vector<std::int32_t> first;
    std::vector<std::int32_t> second;
    std::vector<double> weight;  // w_i * w_j per pair

    std::size_t size() const { return first.size(); }
};

inline PairSet build_pairset(const GridDomain& g) {
    const auto n = static_cast<std::int32_t>(g.n_nodes());
    PairSet ps;
    const std::size_t n_ext = g.n_exterior();
    const std::size_t count = static_cast<std::size_t>(n) * n - n -
                              (n_ext * n_ext - n_ext);
    ps.first.reserve(count);
    ps.second.reserve(count);
    ps.weight.reserve(count);
    for (std::int32_t i = 0; i < n; ++i) {
        const bool ext_i = g.in_omega[static_cast<std::size_t>(i)] == 0;
        for (std::int32_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (ext_i && g.in_omega[static_cast<std::size_t>(j)] == 0) continue;
            ps.first.push_back(i);
            ps.second.push_back(j);
            ps.weight.push_back(g.weights[static_cast<std::size_t>(i)] *
                                g.weights[static_cast<std::size_t>(j)]);
        }
    }
    return ps;
}

// Same construction restricted to pairs with both endpoints interior,
// i.e. the classical double integral over the domain squared.
inline PairSet build_pairset_omega(const GridDomain& g) {
    PairSet ps;
    for (const auto i : g.omega_nodes) {
        for (const auto j : g.omega_nodes) {
            if (i == j) continue;
            ps.first.push_back(i);
            ps.second.push_back(j);
            ps.weight.push_back(g.weights[static_cast<std::size_t>(i)] *
                                g.weights[static_cast<std::size_t>(j)]);
        }
    }
    return ps;
}

// Weighted sum over interior nodes, fixed ascending order.
inline double integrate(const GridDomain& g, const std::vector<double>& values) {
    if (values.size() != g.n_nodes())
        throw std::invalid_argument("integrate: value array does not match node count");
    double s = 0.0;
    for (const auto i : g.omega_nodes) s += g.weights[static_cast<std::size_t>(i)] *
                                            values[static_cast<std::size_t>(i)];
    return s;
}

// Weighted sum over the pair list, fixed ascending order.
inline double integrate_pairs(const PairSet& ps, const std::vector<double>& pair_values) {
    if (pair_values.size() != ps.size())
        throw std::invalid_argument("integrate_pairs: value array does not match pair count");
    double s = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) s += ps.weight[k] * pair_values[k];
    return s;
}

inline void dump_grid_csv(const GridDomain& g, std::ostream& out) {
    out << "index,x";
    if (g.dim == 2) out << ",y";
    out << ",weight,in_omega\n";
    char buf[96];
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        out << i;
        std::snprintf(buf, sizeof buf, ",%.17g", g.nodes[i][0]);
        out << buf;
        if (g.dim == 2) {
            std::snprintf(buf, sizeof buf, ",%.17g", g.nodes[i][1]);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.17g,%d", g.weights[i], int(g.in_omega[i]));
        out << buf << "\n";
    }
}

}  // namespace varfrac
