#pragma once

#include "varfrac/exponent.hpp"
#include "varfrac/grid.hpp"
#include "varfrac/kernel.hpp"

namespace varfrac {

// Kernel and exponent values cached over a pair set. Every double-integral
// quantity (modulars, seminorms, weak forms, energies) is a weighted sum
// over these arrays, evaluated in fixed ascending pair order.
struct PairData {
    const GridDomain* grid = nullptr;
    const PairSet* pairs = nullptr;
    std::vector<double> p;   // p(x_i, x_j)
    std::vector<double> K;   // K(x_i, x_j)
    double p_minus = 0.0;
    double p_plus = 0.0;

    std::size_t size() const { return pairs ? pairs->size() : 0; }
};

inline PairData build_pair_data(const GridDomain& g, const PairSet& ps, const Kernel& K,
                                const ExponentField& p) {
    PairData pd;
    pd.grid = &g;
    pd.pairs = &ps;
    pd.p_minus = p.p_minus;
    pd.p_plus = p.p_plus;
    pd.p.resize(ps.size());
    pd.K.resize(ps.size());
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const Point& x = g.nodes[static_cast<std::size_t>(ps.first[k])];
        const Point& y = g.nodes[static_cast<std::size_t>(ps.second[k])];
        pd.p[k] = p(x, y);
        pd.K[k] = K(x, y);
    }
    return pd;
}

}  // namespace varfrac
