#pragma once

#include "varfrac/exponent.hpp"
#include "varfrac/grid.hpp"
#include "varfrac/parallel.hpp"

namespace varfrac {

// m(x,y) = min{1, |x-y|^{p(x,y)}}; the weight against which admissible
// kernels must be integrable.
inline double kernel_m(double dist, double pxy) {
    return std::min(1.0, std::pow(dist, pxy));
}

struct Kernel {
    enum class Kind { Singular, Multiplied, Custom };

    std::function<double(const Point&, const Point&)> eval;
    double k0 = 1.0;  // claimed lower-bound constant
    Kind kind = Kind::Custom;
    int dim = 1;

    double operator()(const Point& x, const Point& y) const { return eval(x, y); }
};

// K(x,y) = |x-y|^{-(N + s p(x,y))}; the fractional p(x,.)-Laplacian kernel.
inline Kernel singular_kernel(const ExponentField& p, int N) {
    auto pe = p.eval;
    const double s = p.s;
    Kernel k;
    k.eval = [pe, s, N](const Point& x, const Point& y) {
        const double d = distance(x, y, N);
        return std::pow(d, -(N + s * pe(x, y)));
    };
    k.k0 = 1.0;
    k.kind = Kernel::Kind::Singular;
    k.dim = N;
    return k;
}

// K1(x,y) = |x-y|^{-(N + s p(x,y))} a(x-y) with a >= 1 bounded and even.
// Evenness is required so K1 stays symmetric; a >= 1 keeps k0 = 1 valid.
// Both are checked on pair differences sampled from the grid.
inline Kernel multiplied_kernel(const ExponentField& p, int N,
                                std::function<double(const Point&)> a, const GridDomain& g) {
    const auto n = g.n_nodes();
    const std::size_t stride = std::max<std::size_t>(1, (n * n) / 2048);
    std::size_t counter = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (counter++ % stride != 0) continue;
            Point z{g.nodes[i][0] - g.nodes[j][0], g.nodes[i][1] - g.nodes[j][1]};
            Point neg{-z[0], -z[1]};
            const double az = a(z);
            if (!(az >= 1.0 - 1e-12))
                throw std::invalid_argument("multiplied_kernel: multiplier must satisfy a >= 1");
            if (std::abs(az - a(neg)) > 1e-12 * std::max(1.0, std::abs(az)))
                throw std::invalid_argument("multiplied_kernel: multiplier must be even");
            if (!std::isfinite(az))
                throw std::invalid_argument("multiplied_kernel: multiplier must be bounded");
        }
    }

    auto pe = p.eval;
    const double s = p.s;
    Kernel k;
    k.eval = [pe, s, N, a = std::move(a)](const Point& x, const Point& y) {
        const double d = distance(x, y, N);
        const Point z{x[0] - y[0], x[1] - y[1]};
        return std::pow(d, -(N + s * pe(x, y))) * a(z);
    };
    k.k0 = 1.0;
    k.kind = Kernel::Kind::Multiplied;
    k.dim = N;
    return k;
}

inline Kernel scaled_kernel(const Kernel& k, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("scaled_kernel: need c > 0");
    Kernel r = k;
    auto base = k.eval;
    r.eval = [base, c](const Point& x, const Point& y) { return c * base(x, y); };
    r.k0 = c * k.k0;
    r.kind = Kernel::Kind::Custom;
    return r;
}

struct KernelReport {
    bool symmetric = false;
    double max_asymmetry = 0.0;  // relative, scale-free
    bool lower_bound_ok = false;
    double min_ratio = 0.0;      // min of K(x,y) |x-y|^{N+s p(x,y)}
    bool integrable = false;
    double integral_coarse = 0.0;
    double integral_fine = 0.0;
    double refinement_change = 0.0;  // relative change under one refinement

    bool pass() const { return symmetric && lower_bound_ok && integrable; }
};

namespace detail {

// Truncated integral of m K over the box squared, diagonal excluded.
inline double mk_integral(const Kernel& K, const ExponentField& p, const GridDomain& g) {
    const auto n = g.n_nodes();
    return blocked_sum(
        n,
        [&](std::size_t begin, std::size_t end) {
            double s = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const Point& x = g.nodes[i];
                    const Point& y = g.nodes[j];
                    const double d = distance(x, y, g.dim);
                    s += g.weights[i] * g.weights[j] * kernel_m(d, p(x, y)) * K(x, y);
                }
            }
            return s;
        },
        /*block_size=*/64);
}

}  // namespace detail

// Admissibility checks: symmetry, the singular lower bound with constant k0,
// and integrability of m K probed by refinement stability on the truncation
// box (full-space integrability is not decidable from samples).
inline KernelReport validate_kernel(const Kernel& K, const ExponentField& p, const GridDomain& g) {
    KernelReport rep;
    const auto n = g.n_nodes();
    double min_ratio = std::numeric_limits<double>::infinity();
    double max_asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point& x = g.nodes[i];
            const Point& y = g.nodes[j];
            const double kxy = K(x, y);
            const double kyx = K(y, x);
            max_asym = std::max(max_asym,
                                std::abs(kxy - kyx) / std::max({std::abs(kxy), std::abs(kyx), 1e-300}));
            const double d = distance(x, y, g.dim);
            min_ratio = std::min(min_ratio, kxy * std::pow(d, g.dim + p.s * p(x, y)));
        }
    }
    rep.max_asymmetry = max_asym;
    rep.symmetric = max_asym < 1e-12;
    rep.min_ratio = min_ratio;
    rep.lower_bound_ok = min_ratio >= K.k0 * (1.0 - 1e-9);

    rep.integral_coarse = detail::mk_integral(K, p, g);
    rep.integral_fine = detail::mk_integral(K, p, refine(g));
    rep.refinement_change = std::abs(rep.integral_fine - rep.integral_coarse) /
                            std::max(rep.integral_coarse, 1e-300);
    rep.integrable = std::isfinite(rep.integral_coarse) && std::isfinite(rep.integral_fine) &&
                     rep.refinement_change <= 0.10;
    return rep;
}

}  // namespace varfrac
