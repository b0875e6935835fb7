#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace varfrac {

struct LuxemburgResult {
    double norm = 0.0;
    double modular_at_unit = 0.0;  // modular evaluated at u / norm, diagnostic
    int iterations = 0;
};

// Weighted modular sum(k) w_k |v_k|^{q_k}.
inline double modular_weighted(std::span<const double> values, std::span<const double> exponents,
                               std::span<const double> weights) {
    double s = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double a = std::abs(values[k]);
        if (a != 0.0) s += weights[k] * std::pow(a, exponents[k]);
    }
    return s;
}

namespace detail {

// inf{lambda > 0 : modular_of(lambda) <= 1} for a continuous, strictly
// decreasing modular_of. The input is expected to be pre-scaled so that the
// infimum lies in a moderate range; bisection is then unconditionally
// convergent and resolves lambda to ~1e-13 absolute.
template <class F>
LuxemburgResult luxemburg_infimum(F&& modular_of, double upper_hint) {
    constexpr double lambda_floor = 1e-14;
    constexpr int max_iterations = 200;

    double hi = std::max(upper_hint, 2.0 * lambda_floor);
    int grow = 0;
    while (modular_of(hi) > 1.0) {
        hi *= 2.0;
        if (++grow > 200)
            throw std::runtime_error("luxemburg: failed to bracket the unit-modular level");
    }
    if (modular_of(lambda_floor) <= 1.0) return {0.0, 0.0, 0};

    double lo = lambda_floor;
    int it = 0;
    while (it < max_iterations && hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at rounding resolution
        (modular_of(mid) > 1.0 ? lo : hi) = mid;
        ++it;
    }
    const double lam = 0.5 * (lo + hi);
    return {lam, modular_of(lam), it};
}

}  // namespace detail

// Luxemburg norm of a weighted value array: inf{lambda : sum w |v/lambda|^q <= 1}.
inline LuxemburgResult luxemburg_weighted(std::span<const double> values,
                                          std::span<const double> exponents,
                                          std::span<const double> weights) {
    double m = 0.0;
    for (const double v : values) m = std::max(m, std::abs(v));
    if (m == 0.0) return {0.0, 0.0, 0};

    double q_min = exponents.empty() ? 2.0 : exponents[0];
    double total_weight = 0.0;
    for (std::size_t k = 0; k < exponents.size(); ++k) {
        q_min = std::min(q_min, exponents[k]);
        total_weight += weights[k];
    }

    auto modular_of = [&](double lam) {
        double s = 0.0;
        for (std::size_t k = 0; k < values.size(); ++k) {
            const double a = std::abs(values[k]);
            if (a != 0.0) s += weights[k] * std::pow(a / (m * lam), exponents[k]);
        }
        return s;
    };
    const double upper = 2.0 * std::max(1.0, std::pow(std::max(total_weight, 1e-30), 1.0 / q_min));
    LuxemburgResult r = detail::luxemburg_infimum(modular_of, upper);
    if (r.norm == 0.0) return r;
    r.norm *= m;
    return r;
}

}  // namespace varfrac
