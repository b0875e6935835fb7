#pragma once

#include <cmath>
#include <vector>

#include "varfrac/grid.hpp"

namespace varfrac {

// Nodal values on the full truncation box. A function flagged in_x0
// vanishes at every exterior node; such functions are the discrete
// zero-exterior subspace on which all the nonlocal energies act.
struct GridFunction {
    const GridDomain* grid = nullptr;
    std::vector<double> values;
    bool in_x0 = false;

    GridFunction() = default;
    GridFunction(const GridDomain& g, std::vector<double> vals, bool x0 = false)
        : grid(&g), values(std::move(vals)), in_x0(x0) {
        check();
    }

    static GridFunction zero(const GridDomain& g) {
        return GridFunction(g, std::vector<double>(g.n_nodes(), 0.0), true);
    }

    template <class F>
    static GridFunction from_callable(const GridDomain& g, F&& f, bool clamp_to_x0 = false) {
        std::vector<double> vals(g.n_nodes());
        for (std::size_t i = 0; i < g.n_nodes(); ++i) vals[i] = f(g.nodes[i]);
        if (clamp_to_x0)
            for (const auto i : g.exterior_nodes) vals[static_cast<std::size_t>(i)] = 0.0;
        return GridFunction(g, std::move(vals), clamp_to_x0);
    }

    void check() const {
        if (grid == nullptr || values.size() != grid->n_nodes())
            throw std::invalid_argument("GridFunction: value array does not match grid");
        for (const double v : values)
            if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite value");
        if (in_x0)
            for (const auto i : grid->exterior_nodes)
                if (values[static_cast<std::size_t>(i)] != 0.0)
                    throw std::invalid_argument(
                        "GridFunction: in_x0 set but values do not vanish on the exterior");
    }

    double max_abs() const {
        double m = 0.0;
        for (const double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    GridFunction& operator+=(const GridFunction& o) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
        in_x0 = in_x0 && o.in_x0;
        return *this;
    }

    GridFunction& operator*=(double a) {
        for (double& v : values) v *= a;
        return *this;
    }
};

inline GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
inline GridFunction operator*(double a, GridFunction u) { return u *= a; }

inline GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    GridFunction r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
    r.in_x0 = a.in_x0 && b.in_x0;
    return r;
}

inline void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.grid != b.grid) throw std::invalid_argument("grid mismatch between functions");
}

inline void require_x0(const GridFunction& u, const char* where) {
    if (!u.in_x0)
        throw std::invalid_argument(std::string(where) +
                                    ": input must vanish outside the domain (zero-exterior subspace)");
}

}  // namespace varfrac
