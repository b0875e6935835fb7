#pragma once

#include "varfrac/exponent.hpp"
#include "varfrac/grid_function.hpp"
#include "varfrac/luxemburg.hpp"

namespace varfrac {

namespace detail {

// Values, exponents and weights restricted to the interior nodes.
struct OmegaArrays {
    std::vector<double> values;
    std::vector<double> exponents;
    std::vector<double> weights;
};

inline OmegaArrays omega_arrays(const GridFunction& u, const ScalarExponent& q) {
    const GridDomain& g = *u.grid;
    OmegaArrays a;
    a.values.reserve(g.n_omega());
    a.exponents.reserve(g.n_omega());
    a.weights.reserve(g.n_omega());
    for (const auto i : g.omega_nodes) {
        const auto k = static_cast<std::size_t>(i);
        a.values.push_back(u.values[k]);
        a.exponents.push_back(q(g.nodes[k]));
        a.weights.push_back(g.weights[k]);
    }
    return a;
}

}  // namespace detail

// rho_q(u) = sum over the domain of w |u|^{q(x)}.
inline double modular_lebesgue(const GridFunction& u, const ScalarExponent& q) {
    const auto a = detail::omega_arrays(u, q);
    return modular_weighted(a.values, a.exponents, a.weights);
}

inline LuxemburgResult luxemburg_norm_result(const GridFunction& u, const ScalarExponent& q) {
    const auto a = detail::omega_arrays(u, q);
    return luxemburg_weighted(a.values, a.exponents, a.weights);
}

inline double luxemburg_norm(const GridFunction& u, const ScalarExponent& q) {
    return luxemburg_norm_result(u, q).norm;
}

struct HolderPairing {
    double lhs = 0.0;  // |integral of u v|
    double rhs = 0.0;  // 2 ||u||_q ||v||_q^
    double norm_u = 0.0;
    double norm_v = 0.0;
    bool holds(double slack = 1e-12) const { return lhs <= rhs + slack * std::max(1.0, rhs); }
};

inline HolderPairing holder_pairing(const GridFunction& u, const GridFunction& v,
                                    const ScalarExponent& q) {
    require_same_grid(u, v);
    const GridDomain& g = *u.grid;
    double s = 0.0;
    for (const auto i : g.omega_nodes) {
        const auto k = static_cast<std::size_t>(i);
        s += g.weights[k] * u.values[k] * v.values[k];
    }
    HolderPairing h;
    h.norm_u = luxemburg_norm(u, q);
    h.norm_v = luxemburg_norm(v, conjugate(q));
    h.lhs = std::abs(s);
    h.rhs = 2.0 * h.norm_u * h.norm_v;
    return h;
}

// Norm/modular comparison clauses shared by the Lebesgue and Gagliardo
// settings: around the unit sphere the modular pins the norm, and away from
// it the norm powers bracket the modular.
struct NormModularReport {
    double norm = 0.0;
    double modular = 0.0;
    bool unit_case = false;       // |norm - 1| within tolerance
    bool sign_agreement = true;   // norm <1/=1/>1 iff modular <1/=1/>1
    bool below_one_bounds = true; // norm < 1  =>  norm^{q+} <= mod <= norm^{q-}
    bool above_one_bounds = true; // norm > 1  =>  norm^{q-} <= mod <= norm^{q+}
    bool pass = true;

    static NormModularReport build(double norm, double modular, double q_minus, double q_plus,
                                   double eq_tol = 1e-9) {
        NormModularReport r;
        r.norm = norm;
        r.modular = modular;
        const double slack = 1e-12;
        if (std::abs(norm - 1.0) <= eq_tol) {
            r.unit_case = true;
            // modular moves at rate <= q+ around the unit sphere
            r.sign_agreement = std::abs(modular - 1.0) <= (q_plus + 1.0) * eq_tol;
        } else if (norm < 1.0) {
            r.sign_agreement = modular < 1.0 + slack;
            r.below_one_bounds = std::pow(norm, q_plus) <= modular * (1.0 + slack) + slack &&
                                 modular <= std::pow(norm, q_minus) * (1.0 + slack) + slack;
        } else {
            r.sign_agreement = modular > 1.0 - slack;
            r.above_one_bounds = std::pow(norm, q_minus) <= modular * (1.0 + slack) &&
                                 modular <= std::pow(norm, q_plus) * (1.0 + slack);
        }
        r.pass = r.sign_agreement && r.below_one_bounds && r.above_one_bounds;
        return r;
    }
};

inline NormModularReport check_modular_norm_relations(const GridFunction& u,
                                                      const ScalarExponent& q) {
    const double n = luxemburg_norm(u, q);
    const double m = modular_lebesgue(u, q);
    return NormModularReport::build(n, m, q.q_minus, q.q_plus);
}

}  // namespace varfrac
