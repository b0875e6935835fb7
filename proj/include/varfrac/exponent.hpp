#pragma once

#include <functional>
#include <limits>

#include "varfrac/grid.hpp"

namespace varfrac {

// Strict-inequality slack for sampled exponent bounds.
inline constexpr double kExponentSlack = 1e-9;

// Scalar exponent q(x) with 1 < q^- <= q(x) <= q^+ < infinity. Bounds are
// sampled on grid nodes, never derived symbolically.
struct ScalarExponent {
    std::function<double(const Point&)> eval;
    double q_minus = 0.0;
    double q_plus = 0.0;

    double operator()(const Point& x) const { return eval(x); }

    static ScalarExponent constant(double q) {
        if (!(q > 1.0)) throw std::invalid_argument("ScalarExponent: need q > 1");
        return ScalarExponent{[q](const Point&) { return q; }, q, q};
    }

    static ScalarExponent sampled(std::function<double(const Point&)> f, const GridDomain& g) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& x : g.nodes) {
            const double v = f(x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        ScalarExponent q{std::move(f), lo, hi};
        q.validate();
        return q;
    }

    void validate() const {
        if (!(q_minus > 1.0 + kExponentSlack))
            throw std::invalid_argument("ScalarExponent: lower bound must exceed 1");
        if (!(q_plus < std::numeric_limits<double>::infinity()) || !(q_plus >= q_minus))
            throw std::invalid_argument("ScalarExponent: invalid upper bound");
    }
};

// Symmetric two-point exponent p(x, y) together with its sampled bounds and
// the fractional order s in (0, 1).
struct ExponentField {
    std::function<double(const Point&, const Point&)> eval;
    double p_minus = 0.0;
    double p_plus = 0.0;
    double s = 0.5;

    double operator()(const Point& x, const Point& y) const { return eval(x, y); }

    static ExponentField constant(double p, double s) {
        if (!(p > 1.0)) throw std::invalid_argument("ExponentField: need p > 1");
        check_s(s);
        return ExponentField{[p](const Point&, const Point&) { return p; }, p, p, s};
    }

    // Bounds and symmetry are sampled over the grid pair set.
    static ExponentField sampled(std::function<double(const Point&, const Point&)> f, double s,
                                 const GridDomain& g, const PairSet& ps) {
        check_s(s);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        double asym = 0.0;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const Point& x = g.nodes[static_cast<std::size_t>(ps.first[k])];
            const Point& y = g.nodes[static_cast<std::size_t>(ps.second[k])];
            const double v = f(x, y);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            asym = std::max(asym, std::abs(v - f(y, x)));
        }
        // Include the trace values p(x, x): they feed the Lebesgue part.
        for (const auto& x : g.nodes) {
            const double v = f(x, x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (asym > 1e-12)
            throw std::invalid_argument("ExponentField: p(x,y) is not symmetric on sampled pairs");
        ExponentField p{std::move(f), lo, hi, s};
        p.validate();
        return p;
    }

    void validate() const {
        if (!(p_minus > 1.0 + kExponentSlack))
            throw std::invalid_argument("ExponentField: lower bound must exceed 1");
        if (!(p_plus < std::numeric_limits<double>::infinity()) || !(p_plus >= p_minus))
            throw std::invalid_argument("ExponentField: invalid upper bound");
        check_s(s);
    }

    static void check_s(double s) {
        if (!(s > 0.0 && s < 1.0))
            throw std::invalid_argument("ExponentField: need s in (0,1)");
    }
};

// p_bar(x) = p(x, x).
inline ScalarExponent trace(const ExponentField& p) {
    auto f = p.eval;
    return ScalarExponent{[f](const Point& x) { return f(x, x); }, p.p_minus, p.p_plus};
}

// 1/q + 1/q_hat = 1 pointwise.
inline ScalarExponent conjugate(const ScalarExponent& q) {
    auto f = q.eval;
    return ScalarExponent{[f](const Point& x) {
                              const double v = f(x);
                              return v / (v - 1.0);
                          },
                          q.q_plus / (q.q_plus - 1.0), q.q_minus / (q.q_minus - 1.0)};
}

// p*_s(x) = N p_bar(x) / (N - s p_bar(x)); requires s p^+ < N.
inline ScalarExponent critical_exponent(const ExponentField& p, int N) {
    if (!(p.s * p.p_plus < N - kExponentSlack))
        throw std::invalid_argument("critical_exponent: hypothesis s*p_plus < N violated");
    auto f = p.eval;
    const double s = p.s;
    auto star = [f, s, N](const Point& x) {
        const double pb = f(x, x);
        return N * pb / (N - s * pb);
    };
    const double lo = N * p.p_minus / (N - s * p.p_minus);
    const double hi = N * p.p_plus / (N - s * p.p_plus);
    return ScalarExponent{star, lo, hi};
}

struct TranslationReport {
    double max_violation = 0.0;
    bool pass = false;
};

// Non-throwing counterpart of ExponentField::sampled for validation
// reporting: bounds, symmetry and the embedding hypothesis s p+ < N.
struct ExponentReport {
    double p_min = 0.0;
    double p_max = 0.0;
    double max_asymmetry = 0.0;
    bool bounds_ok = false;
    bool symmetric = false;
    bool s_hypothesis_ok = false;  // s * p_max < N

    bool pass() const { return bounds_ok && symmetric && s_hypothesis_ok; }
};

inline ExponentReport sample_exponent_report(
    const std::function<double(const Point&, const Point&)>& f, double s, const GridDomain& g,
    const PairSet& ps) {
    ExponentReport r;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const Point& x = g.nodes[static_cast<std::size_t>(ps.first[k])];
        const Point& y = g.nodes[static_cast<std::size_t>(ps.second[k])];
        const double v = f(x, y);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        r.max_asymmetry = std::max(r.max_asymmetry, std::abs(v - f(y, x)));
    }
    for (const auto& x : g.nodes) {
        const double v = f(x, x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    r.p_min = lo;
    r.p_max = hi;
    r.bounds_ok = lo > 1.0 + kExponentSlack && std::isfinite(hi);
    r.symmetric = r.max_asymmetry <= 1e-12;
    r.s_hypothesis_ok = s * hi < g.dim - kExponentSlack;
    return r;
}

// Checks p(x - z, y - z) = p(x, y) over sampled pair/shift combinations.
inline TranslationReport validate_translation_invariance(const ExponentField& p,
                                                         const GridDomain& g, const PairSet& ps,
                                                         std::size_t max_pairs = 256) {
    TranslationReport rep;
    const std::size_t stride = std::max<std::size_t>(1, ps.size() / max_pairs);
    const double shifts[] = {-1.3, -0.4, 0.25, 0.7, 1.9};
    for (std::size_t k = 0; k < ps.size(); k += stride) {
        const Point& x = g.nodes[static_cast<std::size_t>(ps.first[k])];
        const Point& y = g.nodes[static_cast<std::size_t>(ps.second[k])];
        const double base = p(x, y);
        for (const double z : shifts) {
            Point xs = x, ys = y;
            for (int d = 0; d < g.dim; ++d) {
                xs[d] -= z;
                ys[d] -= z;
            }
            rep.max_violation = std::max(rep.max_violation, std::abs(p(xs, ys) - base));
        }
    }
    rep.pass = rep.max_violation < 1e-12;
    return rep;
}

}  // namespace varfrac
