#pragma once

#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "varfrac/dirichlet_solver.hpp"
#include "varfrac/expr.hpp"
#include "varfrac/kirchhoff.hpp"

namespace varfrac {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One structured config file per run: grid, exponent, kernel, optional
// function and problem sections, tolerances and a mandatory seed.
struct RunConfig {
    nlohmann::json raw;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int threads = 0;

    static RunConfig from_file(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw ConfigError("cannot open config file: " + path);
        return from_stream(f);
    }

    static RunConfig from_string(const std::string& text) {
        std::istringstream s(text);
        return from_stream(s);
    }

    static RunConfig from_stream(std::istream& in) {
        RunConfig cfg;
        try {
            in >> cfg.raw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        if (!cfg.raw.contains("seed"))
            throw ConfigError("config: 'seed' is mandatory");
        cfg.seed = cfg.raw.at("seed").get<std::uint64_t>();
        cfg.tol = cfg.raw.value("tol", 1e-8);
        cfg.threads = cfg.raw.value("threads", 0);
        return cfg;
    }
};

namespace detail {

inline const nlohmann::json& section(const nlohmann::json& j, const char* name) {
    if (!j.contains(name)) throw ConfigError(std::string("config: missing section '") + name + "'");
    return j.at(name);
}

inline double num(const nlohmann::json& j, const char* name) {
    if (!j.contains(name) || !j.at(name).is_number())
        throw ConfigError(std::string("config: missing numeric field '") + name + "'");
    return j.at(name).get<double>();
}

inline std::string str(const nlohmann::json& j, const char* name) {
    if (!j.contains(name) || !j.at(name).is_string())
        throw ConfigError(std::string("config: missing string field '") + name + "'");
    return j.at(name).get<std::string>();
}

}  // namespace detail

inline OmegaShape omega_from_config(const nlohmann::json& j, int dim) {
    const std::string shape = detail::str(j, "shape");
    if (shape == "interval") {
        if (dim != 1) throw ConfigError("config: interval domain needs dim = 1");
        return OmegaShape::interval(detail::num(j, "a"), detail::num(j, "b"));
    }
    if (shape == "rectangle") {
        if (dim != 2) throw ConfigError("config: rectangle domain needs dim = 2");
        return OmegaShape::rectangle(detail::num(j, "ax"), detail::num(j, "bx"),
                                     detail::num(j, "ay"), detail::num(j, "by"));
    }
    if (shape == "disk") {
        if (dim != 2) throw ConfigError("config: disk domain needs dim = 2");
        return OmegaShape::disk(j.value("cx", 0.0), j.value("cy", 0.0), detail::num(j, "radius"));
    }
    throw ConfigError("config: unknown domain shape '" + shape + "'");
}

inline GridDomain grid_from_config(const nlohmann::json& root) {
    const auto& j = detail::section(root, "grid");
    const int dim = static_cast<int>(detail::num(j, "dim"));
    const double h = detail::num(j, "h");
    const OmegaShape omega = omega_from_config(detail::section(j, "omega"), dim);

    Box box;
    if (j.contains("box")) {
        const auto& b = j.at("box");
        if (!b.is_array() || b.size() != static_cast<std::size_t>(dim))
            throw ConfigError("config: grid.box must list one [lo,hi] pair per axis");
        box.dim = dim;
        for (int d = 0; d < dim; ++d) {
            box.lo[d] = b.at(d).at(0).get<double>();
            box.hi[d] = b.at(d).at(1).get<double>();
        }
    } else {
        const double collar = j.value("collar", omega.diameter());
        box = omega.bounding_box(dim);
        for (int d = 0; d < dim; ++d) {
            box.lo[d] -= collar;
            box.hi[d] += collar;
        }
    }
    try {
        return build_grid(dim, box, h, omega);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

// Raw closure for the configured exponent; validation happens separately.
inline std::function<double(const Point&, const Point&)> exponent_closure_from_config(
    const nlohmann::json& root, int dim, double& s_out) {
    const auto& j = detail::section(root, "exponent");
    const std::string kind = detail::str(j, "kind");
    s_out = detail::num(j, "s");

    if (kind == "constant") {
        const double p = detail::num(j, "p");
        return [p](const Point&, const Point&) { return p; };
    }
    if (kind == "sin_sum") {
        const double base = j.value("base", 2.0);
        const double lambda = detail::num(j, "lambda");
        return [base, lambda, dim](const Point& x, const Point& y) {
            double t = 0.0;
            for (int d = 0; d < dim; ++d) t += x[d] + y[d];
            return base + lambda * std::abs(std::sin(t));
        };
    }
    if (kind == "affine_dist") {
        const double a = detail::num(j, "a");
        const double b = detail::num(j, "b");
        const double lo = detail::num(j, "lo");
        const double hi = detail::num(j, "hi");
        if (!(lo > 1.0) || !(hi >= lo)) throw ConfigError("config: affine_dist needs 1 < lo <= hi");
        return [a, b, lo, hi, dim](const Point& x, const Point& y) {
            return std::clamp(a + b * distance(x, y, dim), lo, hi);
        };
    }
    if (kind == "expr") {
        const Expr e = Expr::parse(detail::str(j, "expr"), {"x1", "x2", "y1", "y2", "d"});
        return [e, dim](const Point& x, const Point& y) {
            const double vars[5] = {x[0], x[1], y[0], y[1], distance(x, y, dim)};
            return e.eval(vars);
        };
    }
    throw ConfigError("config: unknown exponent kind '" + kind + "'");
}

inline ExponentField exponent_from_config(const nlohmann::json& root, const GridDomain& g,
                                          const PairSet& ps) {
    double s = 0.0;
    auto f = exponent_closure_from_config(root, g.dim, s);
    return ExponentField::sampled(std::move(f), s, g, ps);
}

inline ScalarExponent scalar_exponent_from_config(const nlohmann::json& j, const GridDomain& g) {
    const std::string kind = detail::str(j, "kind");
    if (kind == "constant") return ScalarExponent::constant(detail::num(j, "q"));
    if (kind == "expr") {
        const Expr e = Expr::parse(detail::str(j, "expr"), {"x1", "x2"});
        return ScalarExponent::sampled(
            [e](const Point& x) {
                const double vars[2] = {x[0], x[1]};
                return e.eval(vars);
            },
            g);
    }
    throw ConfigError("config: unknown scalar exponent kind '" + kind + "'");
}

inline Kernel kernel_from_config(const nlohmann::json& root, const ExponentField& p,
                                 const GridDomain& g) {
    const auto& j = detail::section(root, "kernel");
    const std::string kind = detail::str(j, "kind");
    if (kind == "singular") return singular_kernel(p, g.dim);
    if (kind == "scaled") return scaled_kernel(singular_kernel(p, g.dim), detail::num(j, "factor"));
    if (kind == "multiplied") {
        const Expr e = Expr::parse(detail::str(j, "a_expr"), {"z1", "z2", "r"});
        const int dim = g.dim;
        return multiplied_kernel(
            p, g.dim,
            [e, dim](const Point& z) {
                const Point zero{0.0, 0.0};
                const double vars[3] = {z[0], z[1], distance(z, zero, dim)};
                return e.eval(vars);
            },
            g);
    }
    if (kind == "custom") {
        const Expr e = Expr::parse(detail::str(j, "expr"), {"x1", "x2", "y1", "y2", "d"});
        const int dim = g.dim;
        Kernel k;
        k.eval = [e, dim](const Point& x, const Point& y) {
            const double vars[5] = {x[0], x[1], y[0], y[1], distance(x, y, dim)};
            return e.eval(vars);
        };
        k.k0 = detail::num(j, "k0");
        k.kind = Kernel::Kind::Custom;
        k.dim = dim;
        return k;
    }
    throw ConfigError("config: unknown kernel kind '" + kind + "'");
}

inline GridFunction function_from_config(const nlohmann::json& j, const GridDomain& g,
                                         std::uint64_t seed) {
    const std::string kind = detail::str(j, "kind");
    if (kind == "zero") return GridFunction::zero(g);
    if (kind == "bumps") {
        std::mt19937_64 rng(seed);
        return random_x0_nonzero(g, rng, static_cast<int>(j.value("count", 5.0)),
                                 j.value("amplitude", 1.0));
    }
    if (kind == "expr") {
        const Expr e = Expr::parse(detail::str(j, "expr"), {"x1", "x2"});
        return GridFunction::from_callable(
            g,
            [e](const Point& x) {
                const double vars[2] = {x[0], x[1]};
                return e.eval(vars);
            },
            /*clamp_to_x0=*/true);
    }
    throw ConfigError("config: unknown function kind '" + kind + "'");
}

inline DualVector dual_from_config(const nlohmann::json& j, const GridDomain& g,
                                   std::uint64_t seed) {
    const std::string kind = detail::str(j, "kind");
    if (kind == "zero") return DualVector::zero(g);
    if (kind == "constant") {
        const double c = detail::num(j, "value");
        return DualVector::from_callable(g, [c](const Point&) { return c; });
    }
    if (kind == "expr") {
        const Expr e = Expr::parse(detail::str(j, "expr"), {"x1", "x2"});
        return DualVector::from_callable(g, [e](const Point& x) {
            const double vars[2] = {x[0], x[1]};
            return e.eval(vars);
        });
    }
    if (kind == "bumps") {
        std::mt19937_64 rng(seed);
        const GridFunction u = random_x0_nonzero(g, rng, static_cast<int>(j.value("count", 3.0)),
                                                 j.value("amplitude", 1.0));
        return DualVector{&g, u.values};
    }
    throw ConfigError("config: unknown load kind '" + kind + "'");
}

inline KirchhoffData kirchhoff_from_config(const nlohmann::json& j) {
    KirchhoffData d;
    d.M.a = detail::num(j, "a");
    d.M.b = detail::num(j, "b");
    d.M.alpha = detail::num(j, "alpha");
    d.mu = j.value("mu", 0.0);
    d.f = power_nonlinearity(ScalarExponent::constant(detail::num(j, "gamma")));
    d.theta = detail::num(j, "theta");
    d.A = j.value("A", 1.0);
    return d;
}

// Everything a command needs, built once from one config. The grid and pair
// set own the geometry; the operator holds cached kernel/exponent tables
// referencing them, so the bundle is pinned in place.
struct Problem {
    GridDomain grid;
    PairSet pairs;
    ExponentField p;
    ScalarExponent p_bar;
    Kernel kernel;
    std::unique_ptr<WeakOperator> op;

    Problem() : p_bar(ScalarExponent::constant(2.0)) {}
    Problem(const Problem&) = delete;
    Problem& operator=(const Problem&) = delete;
};

inline std::unique_ptr<Problem> build_problem(const RunConfig& cfg) {
    auto prob = std::make_unique<Problem>();
    prob->grid = grid_from_config(cfg.raw);
    prob->pairs = build_pairset(prob->grid);
    prob->p = exponent_from_config(cfg.raw, prob->grid, prob->pairs);
    prob->p_bar = trace(prob->p);
    prob->kernel = kernel_from_config(cfg.raw, prob->p, prob->grid);
    prob->op = std::make_unique<WeakOperator>(prob->grid, prob->pairs, prob->kernel, prob->p);
    return prob;
}

}  // namespace varfrac
