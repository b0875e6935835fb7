#pragma once

#include "varfrac/descent.hpp"
#include "varfrac/random_fields.hpp"

namespace varfrac {

// Kirchhoff coefficient M(t) = a + b t^{alpha - 1}, a, b > 0, alpha > 1,
// with closed-form antiderivative.
struct KirchhoffM {
    double a = 1.0;
    double b = 1.0;
    double alpha = 1.1;

    double operator()(double t) const { return a + b * std::pow(t, alpha - 1.0); }
    double antiderivative(double t) const { return a * t + (b / alpha) * std::pow(t, alpha); }
};

// Carathéodory nonlinearity with its antiderivative and growth exponent.
struct Nonlinearity {
    std::function<double(const Point&, double)> f;
    std::function<double(const Point&, double)> F;  // F(x,t) = int_0^t f(x,s) ds
    ScalarExponent beta;                            // growth exponent in (f0)
    double c1 = 1.0;                                // growth constant in (f0)
};

// f(x,t) = |t|^{gamma(x)-2} t, F(x,t) = |t|^{gamma(x)}/gamma(x).
inline Nonlinearity power_nonlinearity(const ScalarExponent& gamma) {
    Nonlinearity n;
    auto ge = gamma.eval;
    n.f = [ge](const Point& x, double t) { return signed_power(t, ge(x) - 1.0); };
    n.F = [ge](const Point& x, double t) {
        const double g = ge(x);
        return t == 0.0 ? 0.0 : std::pow(std::abs(t), g) / g;
    };
    n.beta = gamma;
    n.c1 = 1.0;
    return n;
}

struct KirchhoffData {
    KirchhoffM M;
    double mu = 0.0;  // in [0,1)
    Nonlinearity f;
    double theta = 0.0;
    double A = 1.0;
};

inline double theta_lower_bound(const KirchhoffData& d, const ExponentField& p) {
    return ((1.0 + d.mu) / (1.0 - d.mu)) * d.M.alpha * std::pow(p.p_plus, d.M.alpha) /
           std::pow(p.p_minus, d.M.alpha - 1.0);
}

struct KirchhoffValidation {
    bool rejected = false;
    std::string reject_reason;
    double theta_bound = 0.0;
    bool theta_ok = false;
    bool beta_over_alpha_ok = false;   // beta^- / alpha^+ > p^+
    bool subcritical_ok = false;       // beta(x) < p*_s(x) on the domain
    bool m1_lower_ok = false;          // (1-mu) t^{alpha-1} <= M(t) on the t-grid
    bool m1_upper_ok = false;          // M(t) <= (1+mu) t^{alpha-1} on the t-grid
    double m1_upper_from = 0.0;        // smallest sampled t from which the upper half holds
    bool f0_ok = false;
    bool f1_ok = false;
    double f1_final_ratio = 0.0;
    bool ar_ok = false;                // 0 < theta F <= f t for sampled |t| > A
};

// Hypothesis checks for the Kirchhoff problem. Structural breakage and a
// theta at or below the admissible lower bound reject the data outright;
// the sampled growth conditions are reported clause by clause. Note that
// M with a > 0 can only satisfy the upper half of the pinch condition from
// some t onward; the report records that onset instead of hiding it.
inline KirchhoffValidation validate_kirchhoff(const KirchhoffData& d, const ExponentField& p,
                                              const GridDomain& g) {
    KirchhoffValidation v;
    auto reject = [&](const std::string& why) {
        v.rejected = true;
        if (v.reject_reason.empty()) v.reject_reason = why;
    };

    if (!(d.M.a > 0.0 && d.M.b > 0.0)) reject("need a > 0 and b > 0 in M");
    if (!(d.M.alpha > 1.0)) reject("need alpha > 1");
    if (!(d.mu >= 0.0 && d.mu < 1.0)) reject("need mu in [0,1)");
    if (!(d.A > 0.0)) reject("need A > 0");

    v.theta_bound = theta_lower_bound(d, p);
    v.theta_ok = d.theta > v.theta_bound;
    if (!v.theta_ok) reject("theta must exceed ((1+mu)/(1-mu)) alpha (p+)^alpha / (p-)^(alpha-1)");

    v.beta_over_alpha_ok = d.f.beta.q_minus / d.M.alpha > p.p_plus;
    if (!v.beta_over_alpha_ok) reject("need beta^- / alpha^+ > p^+");

    const ScalarExponent p_star = critical_exponent(p, g.dim);
    v.subcritical_ok = true;
    for (const auto i : g.omega_nodes) {
        const Point& x = g.nodes[static_cast<std::size_t>(i)];
        if (!(d.f.beta(x) < p_star(x) - kExponentSlack)) v.subcritical_ok = false;
    }
    if (!v.subcritical_ok) reject("growth exponent must stay below the critical exponent");

    // (M1) on a geometric t-grid
    v.m1_lower_ok = true;
    v.m1_upper_ok = true;
    v.m1_upper_from = std::numeric_limits<double>::infinity();
    for (int k = -30; k <= 60; ++k) {
        const double t = std::pow(2.0, 0.33 * k);
        const double mt = d.M(t);
        const double ref = std::pow(t, d.M.alpha - 1.0);
        if (!(mt >= (1.0 - d.mu) * ref * (1.0 - 1e-12))) v.m1_lower_ok = false;
        if (mt <= (1.0 + d.mu) * ref * (1.0 + 1e-12))
            v.m1_upper_from = std::min(v.m1_upper_from, t);
        else
            v.m1_upper_ok = false;
    }
    if (!std::isfinite(v.m1_upper_from)) v.m1_upper_from = 0.0;

    // (f0) on sampled nodes and magnitudes
    v.f0_ok = true;
    const std::size_t stride = std::max<std::size_t>(1, g.n_omega() / 16);
    for (std::size_t ii = 0; ii < g.n_omega(); ii += stride) {
        const Point& x = g.nodes[static_cast<std::size_t>(g.omega_nodes[ii])];
        for (int k = -20; k <= 20; ++k) {
            const double t = std::pow(2.0, 0.5 * k);
            const double bound = d.f.c1 * (1.0 + std::pow(t, d.f.beta(x) - 1.0));
            for (const double tt : {t, -t})
                if (!(std::abs(d.f.f(x, tt)) <= bound * (1.0 + 1e-12))) v.f0_ok = false;
        }
    }

    // (f1): f(x,t)/|t|^{p+ - 1} -> 0 along a decreasing t-sequence
    {
        const Point& x0 = g.nodes[static_cast<std::size_t>(g.omega_nodes[g.n_omega() / 2])];
        double first = 0.0, last = 0.0;
        for (int k = 0; k <= 40; ++k) {
            const double t = std::pow(2.0, -k);
            const double ratio = std::abs(d.f.f(x0, t)) / std::pow(t, p.p_plus - 1.0);
            if (k == 0) first = ratio;
            last = ratio;
        }
        v.f1_final_ratio = last;
        v.f1_ok = last <= 1e-6 * std::max(first, 1.0);
    }

    // (AR) for sampled |t| > A
    v.ar_ok = true;
    for (std::size_t ii = 0; ii < g.n_omega(); ii += stride) {
        const Point& x = g.nodes[static_cast<std::size_t>(g.omega_nodes[ii])];
        for (int k = 0; k <= 20; ++k) {
            const double t = d.A * std::pow(2.0, 0.5 * (k + 1));
            for (const double tt : {t, -t}) {
                const double Fx = d.f.F(x, tt);
                if (!(d.theta * Fx > 0.0) ||
                    !(d.theta * Fx <= d.f.f(x, tt) * tt * (1.0 + 1e-12)))
                    v.ar_ok = false;
            }
        }
    }
    return v;
}

// J(u) = M_hat(sigma(u)) + int |u|^{p_bar}/p_bar - int F(x,u).
inline double kirchhoff_energy(const GridFunction& u, const KirchhoffData& d,
                               const WeakOperator& op, const ScalarExponent& p_bar) {
    require_x0(u, "kirchhoff_energy");
    const GridDomain& g = op.grid();
    double local = 0.0;
    for (const auto i : g.omega_nodes) {
        const auto k = static_cast<std::size_t>(i);
        const Point& x = g.nodes[k];
        const double pb = p_bar(x);
        const double au = std::abs(u.values[k]);
        local += g.weights[k] * ((au == 0.0 ? 0.0 : std::pow(au, pb) / pb) - d.f.F(x, u.values[k]));
    }
    return d.M.antiderivative(op.sigma(u)) + local;
}

// Gradient coefficients of J in the dual convention; its pairing with any
// test function reproduces the weak-form residual of the Kirchhoff problem.
inline void kirchhoff_gradient_into(const GridFunction& u, const KirchhoffData& d,
                                    const WeakOperator& op, const ScalarExponent& p_bar,
                                    std::vector<double>& out) {
    const GridDomain& g = op.grid();
    op.apply_gradient_into(u, out);
    const double m = d.M(op.sigma(u));
    for (const auto i : g.omega_nodes) {
        const auto k = static_cast<std::size_t>(i);
        const Point& x = g.nodes[k];
        out[k] = m * out[k] + signed_power(u.values[k], p_bar(x) - 1.0) - d.f.f(x, u.values[k]);
    }
}

inline DualVector kirchhoff_gradient(const GridFunction& u, const KirchhoffData& d,
                                     const WeakOperator& op, const ScalarExponent& p_bar) {
    DualVector out = DualVector::zero(op.grid());
    kirchhoff_gradient_into(u, d, op, p_bar, out.coeff);
    return out;
}

struct MountainPassOptions {
    int directions = 64;
    std::uint64_t seed = 42;
    int radius_levels = 12;     // R swept over 2^{-1} .. 2^{-radius_levels}
    int t_doublings = 60;       // search budget for the negative-energy scale
    int segment_samples = 64;   // diagnostics along [0, t_neg v]
};

struct GeometryReport {
    bool rim_found = false;
    double R = 0.0;
    double a = 0.0;            // min of J over the sampled sphere of radius R
    bool neg_found = false;
    double t_neg = 0.0;        // J(t_neg * v) < 0 with ||t_neg v|| > R
    GridFunction direction;    // v, normalized to unit full norm
    double J_at_t_neg = 0.0;
    double mp_level_estimate = 0.0;  // max of J along the segment [0, t_neg v]
};

// Verifies the two mountain-pass conditions by direct search: J >= a > 0 on
// a sampled sphere around zero, and a point of negative energy beyond it.
inline GeometryReport mountain_pass_geometry(const KirchhoffData& d, const WeakOperator& op,
                                             const ScalarExponent& p_bar,
                                             const MountainPassOptions& opt = {}) {
    const GridDomain& g = op.grid();
    GeometryReport rep;

    std::mt19937_64 rng(opt.seed);
    std::vector<GridFunction> dirs;
    dirs.reserve(static_cast<std::size_t>(opt.directions));
    for (int k = 0; k < opt.directions; ++k) {
        GridFunction u = random_x0_nonzero(g, rng);
        const double n = full_norm(u, op.pair_data(), p_bar);
        u *= 1.0 / n;
        dirs.push_back(std::move(u));
    }

    for (int lvl = 1; lvl <= opt.radius_levels && !rep.rim_found; ++lvl) {
        const double R = std::pow(2.0, -lvl);
        double a = std::numeric_limits<double>::infinity();
        for (const auto& v : dirs) a = std::min(a, kirchhoff_energy(R * v, d, op, p_bar));
        if (a > 0.0) {
            rep.rim_found = true;
            rep.R = R;
            rep.a = a;
        }
    }
    if (!rep.rim_found) return rep;

    rep.direction = dirs.front();
    double t = std::max(1.0, 2.0 * rep.R);
    for (int k = 0; k <= opt.t_doublings; ++k) {
        const double J = kirchhoff_energy(t * rep.direction, d, op, p_bar);
        if (J < 0.0 && t > rep.R) {
            rep.neg_found = true;
            rep.t_neg = t;
            rep.J_at_t_neg = J;
            break;
        }
        t *= 2.0;
    }
    if (!rep.neg_found) return rep;

    for (int k = 0; k <= opt.segment_samples; ++k) {
        const double tau = rep.t_neg * k / opt.segment_samples;
        rep.mp_level_estimate =
            std::max(rep.mp_level_estimate, kirchhoff_energy(tau * rep.direction, d, op, p_bar));
    }
    return rep;
}

struct KirchhoffSolveReport {
    GridFunction solution;
    double residual = 0.0;       // max-norm of the weak-form residual coefficients
    long iterations = 0;
    double J_value = 0.0;
    double norm_value = 0.0;     // full norm of the returned point
    double R = 0.0;
    bool nontrivial_certificate = false;  // J < 0 and norm > R
    bool suspect_trivial = false;         // converged inside the rim radius
    bool converged = false;
    std::string status;
    std::vector<GridFunction> snapshots;
};

struct KirchhoffSolveOptions {
    double tol = 1e-6;
    long max_iterations = 100000;
    long snapshot_stride = 50;
    DescentOptions descent;
};

// Descent on J from the negative-energy point produced by the geometry
// search. J only decreases along accepted steps, so any limit keeps J < 0
// and cannot be the zero solution; convergence inside the rim radius is
// flagged as suspect rather than accepted silently.
inline KirchhoffSolveReport solve_kirchhoff(const KirchhoffData& d, const WeakOperator& op,
                                            const ScalarExponent& p_bar,
                                            const GeometryReport& geom,
                                            const KirchhoffSolveOptions& opt = {}) {
    if (!geom.rim_found || !geom.neg_found)
        throw std::invalid_argument("solve_kirchhoff: mountain-pass geometry not established");
    const GridDomain& g = op.grid();

    Descent descent(
        g, [&](const GridFunction& u) { return kirchhoff_energy(u, d, op, p_bar); },
        [&](const GridFunction& u, std::vector<double>& grad) {
            kirchhoff_gradient_into(u, d, op, p_bar, grad);
        });

    DescentOptions dopt = opt.descent;
    dopt.tol = opt.tol;
    dopt.max_iterations = opt.max_iterations;
    dopt.snapshot_stride = opt.snapshot_stride;

    DescentResult run = descent.run(geom.t_neg * geom.direction, dopt);

    KirchhoffSolveReport rep;
    rep.solution = std::move(run.point);
    rep.residual = run.residual;
    rep.iterations = run.iterations;
    rep.J_value = run.value;
    rep.norm_value = full_norm(rep.solution, op.pair_data(), p_bar);
    rep.R = geom.R;
    rep.converged = run.status == DescentStatus::Converged;
    rep.status = to_string(run.status);
    rep.nontrivial_certificate = rep.J_value < 0.0 && rep.norm_value > geom.R;
    rep.suspect_trivial = rep.converged && rep.norm_value <= geom.R;
    rep.snapshots = std::move(run.snapshots);
    return rep;
}

struct PsProbeReport {
    double theta_coef = 0.0;  // b-term coefficient; positive iff theta exceeds its bound
    bool theta_ok = false;
    double c2 = 0.0;          // max |J| along the sequence
    double cA = 0.0;          // bound for the sub-A part of the (AR) term
    long inequality_violations = 0;
    double max_seminorm = 0.0;
    double max_rho = 0.0;
    double rho_bound = 0.0;       // modular bound implied for PS-type sequences
    double norm_bound = 0.0;
    bool within_bound = false;
    bool flagged_growth = false;  // norms grew past the growth threshold
};

// Desk-scale counterpart of the Palais-Smale boundedness argument. The core
// is a pointwise inequality in u (no sequence limit involved):
//   J(u) - (1/theta) <J'(u), u> + cA |domain|
//     >= a (1/p+ - 1/theta) rho°(u) + C b rho°(u)^alpha + (1/p+ - 1/theta) rho_{p_bar}(u)
// with C = 1/(alpha (p+)^alpha) - 1/(theta (p-)^{alpha-1}). For sequences
// with |J| <= c2 and unit-bounded derivative this pins the modular, hence
// the norm.
inline PsProbeReport ps_boundedness_probe(const KirchhoffData& d, const WeakOperator& op,
                                          const ScalarExponent& p_bar,
                                          const std::vector<GridFunction>& iterates,
                                          double growth_threshold = 1e3) {
    const GridDomain& g = op.grid();
    const PairData& pd = op.pair_data();
    PsProbeReport rep;

    const double alpha = d.M.alpha;
    rep.theta_coef = 1.0 / (alpha * std::pow(pd.p_plus, alpha)) -
                     1.0 / (d.theta * std::pow(pd.p_minus, alpha - 1.0));
    rep.theta_ok = rep.theta_coef > 0.0;

    // max over |t| <= A of |F - f t / theta|, sampled (exact for power f)
    double ca_density = 0.0;
    const Point& x0 = g.nodes[static_cast<std::size_t>(g.omega_nodes[0])];
    for (int k = 0; k <= 64; ++k) {
        const double t = d.A * k / 64.0;
        for (const double tt : {t, -t})
            ca_density = std::max(ca_density,
                                  std::abs(d.f.F(x0, tt) - d.f.f(x0, tt) * tt / d.theta));
    }
    rep.cA = ca_density * g.omega_measure();

    const double lin_coef = d.M.a * (1.0 / pd.p_plus - 1.0 / d.theta);
    const double leb_coef = 1.0 / pd.p_plus - 1.0 / d.theta;

    std::vector<double> grad;
    bool premises_all = true;
    for (const auto& u : iterates) {
        const double J = kirchhoff_energy(u, d, op, p_bar);
        rep.c2 = std::max(rep.c2, std::abs(J));
        kirchhoff_gradient_into(u, d, op, p_bar, grad);
        double ju = 0.0;
        for (const auto i : g.omega_nodes) {
            const auto k = static_cast<std::size_t>(i);
            ju += g.weights[k] * grad[k] * u.values[k];
        }
        const double rho = op.modular(u);
        const double sn = op.seminorm(u).seminorm;
        rep.max_rho = std::max(rep.max_rho, rho);
        rep.max_seminorm = std::max(rep.max_seminorm, sn);

        const double leb_mod = modular_lebesgue(u, p_bar);
        const double lhs = J - ju / d.theta + rep.cA;
        const double rhs = lin_coef * rho + rep.theta_coef * d.M.b * std::pow(rho, alpha) +
                           leb_coef * leb_mod;
        if (!(lhs >= rhs - 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)})))
            ++rep.inequality_violations;
        if (std::abs(ju) > std::max(sn, 1e-12)) premises_all = false;
    }

    if (rep.theta_ok) {
        // largest rho with C b rho^alpha - rho^{1/p-}/theta <= c2 + cA
        const double budget = rep.c2 + rep.cA;
        auto excess = [&](double y) {
            return rep.theta_coef * d.M.b * std::pow(y, alpha) -
                   std::pow(y, 1.0 / pd.p_minus) / d.theta - budget;
        };
        double hi = 1.0;
        int grow = 0;
        while (excess(hi) < 0.0 && grow++ < 400) hi *= 2.0;
        double lo = hi > 1.0 ? hi / 2.0 : 0.0;
        for (int k = 0; k < 200 && hi - lo > 1e-9 * hi; ++k) {
            const double mid = 0.5 * (lo + hi);
            (excess(mid) < 0.0 ? lo : hi) = mid;
        }
        rep.rho_bound = hi;
        rep.norm_bound = std::pow(hi, 1.0 / pd.p_minus);
        rep.within_bound = premises_all && rep.max_rho <= rep.rho_bound * (1.0 + 1e-6);
    }
    rep.flagged_growth = rep.max_seminorm > growth_threshold;
    return rep;
}

}  // namespace varfrac
