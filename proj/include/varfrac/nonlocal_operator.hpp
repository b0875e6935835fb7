#pragma once

#include "varfrac/sobolev.hpp"

namespace varfrac {

// |t|^{e-1} sign(t), with the continuous extension 0 at t = 0 (valid for e > 0).
inline double signed_power(double t, double e) {
    if (t == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(t), e), t);
}

// Linear functional represented by nodal coefficients under the weighted
// pairing <f, v> = sum over the domain of w f v. Exterior coefficients are
// never read by the pairing.
struct DualVector {
    const GridDomain* grid = nullptr;
    std::vector<double> coeff;

    static DualVector zero(const GridDomain& g) {
        return DualVector{&g, std::vector<double>(g.n_nodes(), 0.0)};
    }

    template <class F>
    static DualVector from_callable(const GridDomain& g, F&& f) {
        DualVector d{&g, std::vector<double>(g.n_nodes(), 0.0)};
        for (std::size_t i = 0; i < g.n_nodes(); ++i) d.coeff[i] = f(g.nodes[i]);
        return d;
    }

    double max_abs_interior() const {
        double m = 0.0;
        for (const auto i : grid->omega_nodes)
            m = std::max(m, std::abs(coeff[static_cast<std::size_t>(i)]));
        return m;
    }
};

inline double dual_pairing(const DualVector& f, const GridFunction& v) {
    if (f.grid != v.grid) throw std::invalid_argument("dual_pairing: grid mismatch");
    const GridDomain& g = *v.grid;
    double s = 0.0;
    for (const auto i : g.omega_nodes) {
        const auto k = static_cast<std::size_t>(i);
        s += g.weights[k] * f.coeff[k] * v.values[k];
    }
    return s;
}

// Matrix-free weak form of the nonlocal operator:
//   <L u, phi> = sum over pairs of w_i w_j |u_i-u_j|^{p_ij - 2}(u_i-u_j)(phi_i-phi_j) K_ij.
// The diagonal is excluded by the pair set and the difference factor vanishes
// at coincidence, so no principal-value treatment is needed in weak form.
class WeakOperator {
public:
    WeakOperator(const GridDomain& g, const PairSet& ps, const Kernel& K, const ExponentField& p)
        : grid_(&g), pairs_(&ps), data_(build_pair_data(g, ps, K, p)) {}

    const GridDomain& grid() const { return *grid_; }
    const PairSet& pairs() const { return *pairs_; }
    const PairData& pair_data() const { return data_; }

    double apply(const GridFunction& u, const GridFunction& phi) const {
        require_x0(u, "WeakOperator::apply");
        require_x0(phi, "WeakOperator::apply");
        require_same_grid(u, phi);
        const PairSet& ps = *pairs_;
        return blocked_sum(ps.size(), [&](std::size_t begin, std::size_t end) {
            double s = 0.0;
            for (std::size_t k = begin; k < end; ++k) {
                const auto i = static_cast<std::size_t>(ps.first[k]);
                const auto j = static_cast<std::size_t>(ps.second[k]);
                const double du = u.values[i] - u.values[j];
                if (du == 0.0) continue;
                s += ps.weight[k] * data_.K[k] * signed_power(du, data_.p[k] - 1.0) *
                     (phi.values[i] - phi.values[j]);
            }
            return s;
        });
    }

    double modular(const GridFunction& u) const { return gagliardo_modular(u, data_); }

    SeminormResult seminorm(const GridFunction& u) const { return gagliardo_seminorm(u, data_); }

    // sigma(u) = sum of w_i w_j |u_i-u_j|^{p_ij} / p_ij * K_ij.
    double sigma(const GridFunction& u) const {
        require_x0(u, "WeakOperator::sigma");
        const PairSet& ps = *pairs_;
        return blocked_sum(ps.size(), [&](std::size_t begin, std::size_t end) {
            double s = 0.0;
            for (std::size_t k = begin; k < end; ++k) {
                const double du = std::abs(u.values[static_cast<std::size_t>(ps.first[k])] -
                                           u.values[static_cast<std::size_t>(ps.second[k])]);
                if (du != 0.0)
                    s += ps.weight[k] * data_.K[k] * std::pow(du, data_.p[k]) / data_.p[k];
            }
            return s;
        });
    }

    // Nodal accumulation of <L u, e_i>/w_i over interior nodes. Writing the
    // weak form against every nodal indicator in one pair sweep; exterior
    // entries stay zero. No hidden state, so distinct solves may share one
    // operator concurrently.
    void apply_gradient_into(const GridFunction& u, std::vector<double>& out) const {
        require_x0(u, "WeakOperator::apply_gradient_into");
        const GridDomain& g = *grid_;
        const PairSet& ps = *pairs_;
        std::vector<double> acc(g.n_nodes(), 0.0);
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const auto i = static_cast<std::size_t>(ps.first[k]);
            const auto j = static_cast<std::size_t>(ps.second[k]);
            const double du = u.values[i] - u.values[j];
            if (du == 0.0) continue;
            const double t = ps.weight[k] * data_.K[k] * signed_power(du, data_.p[k] - 1.0);
            acc[i] += t;
            acc[j] -= t;
        }
        out.assign(g.n_nodes(), 0.0);
        for (const auto i : g.omega_nodes) {
            const auto k = static_cast<std::size_t>(i);
            out[k] = acc[k] / g.weights[k];
        }
    }

private:
    const GridDomain* grid_;
    const PairSet* pairs_;
    PairData data_;
};

// Dirichlet energy I(u) = sigma(u) - <f, u>; convex, with critical points at
// the discrete weak solutions.
inline double energy(const WeakOperator& op, const GridFunction& u, const DualVector& f) {
    return op.sigma(u) - dual_pairing(f, u);
}

// gradient coefficients: G_i w_i = <L u, e_i> - <f, e_i> on interior nodes.
inline DualVector gradient(const WeakOperator& op, const GridFunction& u, const DualVector& f) {
    DualVector g_out = DualVector::zero(op.grid());
    op.apply_gradient_into(u, g_out.coeff);
    for (const auto i : op.grid().omega_nodes) {
        const auto k = static_cast<std::size_t>(i);
        g_out.coeff[k] -= f.coeff[k];
    }
    return g_out;
}

struct MonotonicityProbe {
    double value = 0.0;
    bool degenerate = false;  // u == v nodewise
};

// <L u - L v, u - v>; strictly positive for u != v.
inline MonotonicityProbe monotonicity_probe(const WeakOperator& op, const GridFunction& u,
                                            const GridFunction& v) {
    require_same_grid(u, v);
    MonotonicityProbe r;
    r.degenerate = u.values == v.values;
    if (r.degenerate) return r;
    const GridFunction d = u - v;
    r.value = op.apply(u, d) - op.apply(v, d);
    return r;
}

struct CoercivityReport {
    double seminorm = 0.0;
    double pairing = 0.0;       // <L u, u>
    double lower_bound = 0.0;   // [u]^{p-} or [u]^{p+} depending on side
    bool satisfied = false;
    std::vector<double> scaling_ratios;  // <L(cu), cu>/[cu] over c = 1,2,4,8
    bool ratios_increasing = false;
};

inline CoercivityReport coercivity_probe(const WeakOperator& op, const GridFunction& u) {
    CoercivityReport rep;
    rep.pairing = op.apply(u, u);
    rep.seminorm = op.seminorm(u).seminorm;
    const PairData& pd = op.pair_data();
    rep.lower_bound = rep.seminorm >= 1.0 ? std::pow(rep.seminorm, pd.p_minus)
                                          : std::pow(rep.seminorm, pd.p_plus);
    rep.satisfied = rep.pairing >= rep.lower_bound * (1.0 - 1e-9);

    for (const double c : {1.0, 2.0, 4.0, 8.0}) {
        GridFunction cu = c * u;
        const double pairing = op.apply(cu, cu);
        const double sn = op.seminorm(cu).seminorm;
        rep.scaling_ratios.push_back(sn > 0.0 ? pairing / sn : 0.0);
    }
    rep.ratios_increasing = true;
    for (std::size_t k = 1; k < rep.scaling_ratios.size(); ++k)
        rep.ratios_increasing = rep.ratios_increasing &&
                                rep.scaling_ratios[k] > rep.scaling_ratios[k - 1];
    return rep;
}

struct BoundednessProbe {
    double lhs = 0.0;  // |<L u, phi>|
    double rhs = 0.0;  // 2 ||Psi||_{L^{p^}} ||Phi||_{L^p} over the pair measure
    bool pass = false;
};

// Proxy for boundedness of the operator: the Hoelder factorization of the
// weak form against the pair measure.
inline BoundednessProbe boundedness_probe(const WeakOperator& op, const GridFunction& u,
                                          const GridFunction& phi) {
    const PairData& pd = op.pair_data();
    const PairSet& ps = op.pairs();
    const std::size_t n = ps.size();
    std::vector<double> psi(n), phi_v(n), p_hat(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double pk = pd.p[k];
        const double hk = pk / (pk - 1.0);
        p_hat[k] = hk;
        const double du = std::abs(u.values[static_cast<std::size_t>(ps.first[k])] -
                                   u.values[static_cast<std::size_t>(ps.second[k])]);
        const double dphi = std::abs(phi.values[static_cast<std::size_t>(ps.first[k])] -
                                     phi.values[static_cast<std::size_t>(ps.second[k])]);
        psi[k] = (du == 0.0 ? 0.0 : std::pow(du, pk - 1.0)) * std::pow(pd.K[k], 1.0 / hk);
        phi_v[k] = dphi * std::pow(pd.K[k], 1.0 / pk);
    }
    BoundednessProbe r;
    r.lhs = std::abs(op.apply(u, phi));
    r.rhs = 2.0 * luxemburg_weighted(psi, p_hat, ps.weight).norm *
            luxemburg_weighted(phi_v, pd.p, ps.weight).norm;
    r.pass = r.lhs <= r.rhs + 1e-12 * std::max(1.0, r.rhs);
    return r;
}

}  // namespace varfrac
