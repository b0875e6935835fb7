#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <thread>

#include "helpers.hpp"
#include "varfrac/dirichlet_solver.hpp"

using namespace varfrac;

namespace {
struct Fixture {
    GridDomain g = vft::grid_1d(64);
    PairSet ps = build_pairset(g);
};
const Fixture& fx() {
    static Fixture f;
    return f;
}
}  // namespace

TEST_CASE("zero load gives the zero solution with zero residual", "[dirichlet]") {
    const auto& f = fx();
    const ExponentField p = ExponentField::constant(2.0, 0.4);
    const Kernel K = singular_kernel(p, 1);
    const WeakOperator op(f.g, f.ps, K, p);
    const SolveReport rep = solve_dirichlet(op, DualVector::zero(f.g));
    CHECK(rep.solution.max_abs() == 0.0);
    CHECK(rep.residual == 0.0);
    CHECK(rep.converged);
}

TEST_CASE("p = 2 solution matches the dense linear oracle", "[dirichlet]") {
    const auto& f = fx();
    const ExponentField p = ExponentField::constant(2.0, 0.4);
    const Kernel K = singular_kernel(p, 1);
    const WeakOperator op(f.g, f.ps, K, p);
    const DualVector load =
        DualVector::from_callable(f.g, [](const Point& x) { return std::sin(3.0 * x[0]); });

    SolveOptions so;
    so.tol = 1e-8;
    so.seed = 42;
    const SolveReport rep = solve_dirichlet(op, load, so);
    REQUIRE(rep.converged);

    const auto n = static_cast<Eigen::Index>(f.g.n_nodes());
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < f.ps.size(); ++k) {
        const auto i = f.ps.first[k], j = f.ps.second[k];
        const double c = f.ps.weight[k] * K(f.g.nodes[i], f.g.nodes[j]);
        B(i, i) += c;
        B(i, j) -= c;
        B(j, i) -= c;
        B(j, j) += c;
    }
    const auto& om = f.g.omega_nodes;
    Eigen::MatrixXd Bii(om.size(), om.size());
    Eigen::VectorXd rhs(om.size());
    for (std::size_t a = 0; a < om.size(); ++a) {
        rhs(a) = f.g.weights[om[a]] * load.coeff[om[a]];
        for (std::size_t b = 0; b < om.size(); ++b) Bii(a, b) = B(om[a], om[b]);
    }
    const Eigen::VectorXd oracle = Bii.ldlt().solve(rhs);

    double max_diff = 0.0;
    for (std::size_t a = 0; a < om.size(); ++a)
        max_diff = std::max(max_diff, std::abs(oracle(a) - rep.solution.values[om[a]]));
    CHECK(max_diff < 1e-6);
    CHECK(rep.multistart_agreement < 1e-7);
}

TEST_CASE("even load on a symmetric domain gives an even solution", "[dirichlet]") {
    const auto& f = fx();
    const ExponentField p = ExponentField::constant(2.0, 0.4);
    const Kernel K = singular_kernel(p, 1);
    const WeakOperator op(f.g, f.ps, K, p);
    const DualVector load =
        DualVector::from_callable(f.g, [](const Point& x) { return std::cos(2.0 * x[0]); });

    const SolveReport rep = solve_dirichlet(op, load);
    REQUIRE(rep.converged);
    // nodes are symmetric about 0: node k pairs with node n-1-k
    const auto n = f.g.n_nodes();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        asym = std::max(asym, std::abs(rep.solution.values[i] - rep.solution.values[n - 1 - i]));
    CHECK(asym < 1e-8);
}

TEST_CASE("nonlinear exponent: multistart uniqueness proxy", "[dirichlet]") {
    const auto& f = fx();
    const ExponentField p = ExponentField::sampled(
        [](const Point& x, const Point& y) {
            return 2.0 + 0.5 * std::abs(std::sin(x[0] + y[0]));
        },
        0.35, f.g, f.ps);
    const Kernel K = singular_kernel(p, 1);
    const WeakOperator op(f.g, f.ps, K, p);
    const DualVector load =
        DualVector::from_callable(f.g, [](const Point& x) { return std::sin(3.0 * x[0]) + 0.2; });

    SolveOptions so;
    so.tol = 1e-8;
    so.seed = 9;
    const SolveReport rep = solve_dirichlet(op, load, so);
    CHECK(rep.converged);
    CHECK(rep.residual <= so.tol);
    CHECK(rep.multistart_agreement <= 10.0 * so.tol);
}

TEST_CASE("energy decreases along the descent and the final gradient is small", "[dirichlet]") {
    const auto& f = fx();
    const ExponentField p = ExponentField::constant(2.4, 0.35);
    const Kernel K = singular_kernel(p, 1);
    const WeakOperator op(f.g, f.ps, K, p);
    const DualVector load =
        DualVector::from_callable(f.g, [](const Point& x) { return x[0] > 0 ? 1.0 : -0.5; });

    // drive the raw descent loop to watch the energy trace
    Descent descent(
        f.g, [&](const GridFunction& u) { return energy(op, u, load); },
        [&](const GridFunction& u, std::vector<double>& grad) {
            op.apply_gradient_into(u, grad);
            for (const auto i : f.g.omega_nodes) grad[i] -= load.coeff[i];
        });
    DescentOptions dopt;
    dopt.tol = 1e-8;
    dopt.snapshot_stride = 1;
    std::mt19937_64 rng(13);
    const DescentResult run = descent.run(random_x0_nonzero(f.g, rng), dopt);
    REQUIRE(run.status == DescentStatus::Converged);
    REQUIRE(run.snapshots.size() > 2);

    // decrease holds up to the floating-point resolution of the objective
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& u : run.snapshots) {
        const double e = energy(op, u, load);
        CHECK(e <= prev + 1e-15 * (1.0 + std::abs(prev)));
        prev = e;
    }

    const DualVector grad = gradient(op, run.point, load);
    CHECK(grad.max_abs_interior() <= dopt.tol);
}

TEST_CASE("2d disk: solution matches the dense linear oracle", "[dirichlet]") {
    const GridDomain g =
        build_grid(2, Box::rectangle(-2, 2, -2, 2), 0.25, OmegaShape::disk(0, 0, 1));
    const PairSet ps = build_pairset(g);
    const ExponentField p = ExponentField::constant(2.0, 0.5);
    const Kernel K = singular_kernel(p, 2);
    const WeakOperator op(g, ps, K, p);
    const DualVector load = DualVector::from_callable(
        g, [](const Point& x) { return std::sin(2.0 * x[0]) * std::cos(x[1]); });

    SolveOptions so;
    so.tol = 1e-8;
    so.starts = 2;
    const SolveReport rep = solve_dirichlet(op, load, so);
    REQUIRE(rep.converged);

    const auto n = static_cast<Eigen::Index>(g.n_nodes());
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const auto i = ps.first[k], j = ps.second[k];
        const double c = ps.weight[k] * K(g.nodes[i], g.nodes[j]);
        B(i, i) += c;
        B(i, j) -= c;
        B(j, i) -= c;
        B(j, j) += c;
    }
    const auto& om = g.omega_nodes;
    Eigen::MatrixXd Bii(om.size(), om.size());
    Eigen::VectorXd rhs(om.size());
    for (std::size_t a = 0; a < om.size(); ++a) {
        rhs(a) = g.weights[om[a]] * load.coeff[om[a]];
        for (std::size_t b = 0; b < om.size(); ++b) Bii(a, b) = B(om[a], om[b]);
    }
    const Eigen::VectorXd oracle = Bii.ldlt().solve(rhs);
    double max_diff = 0.0;
    for (std::size_t a = 0; a < om.size(); ++a)
        max_diff = std::max(max_diff, std::abs(oracle(a) - rep.solution.values[om[a]]));
    CHECK(max_diff < 1e-6);
}

TEST_CASE("distinct solves can share one operator across threads", "[dirichlet]") {
    const auto& f = fx();
    const ExponentField p = ExponentField::constant(2.2, 0.35);
    const Kernel K = singular_kernel(p, 1);
    const WeakOperator op(f.g, f.ps, K, p);
    const DualVector f1 =
        DualVector::from_callable(f.g, [](const Point& x) { return std::sin(2.0 * x[0]); });
    const DualVector f2 =
        DualVector::from_callable(f.g, [](const Point& x) { return std::cos(3.0 * x[0]); });

    SolveOptions so;
    so.starts = 1;
    const SolveReport serial1 = solve_dirichlet(op, f1, so);
    const SolveReport serial2 = solve_dirichlet(op, f2, so);

    SolveReport par1, par2;
    std::thread t1([&] { par1 = solve_dirichlet(op, f1, so); });
    std::thread t2([&] { par2 = solve_dirichlet(op, f2, so); });
    t1.join();
    t2.join();
    CHECK(par1.solution.values == serial1.solution.values);
    CHECK(par2.solution.values == serial2.solution.values);
}

TEST_CASE("non-finite load is rejected", "[dirichlet]") {
    const auto& f = fx();
    const ExponentField p = ExponentField::constant(2.0, 0.4);
    const Kernel K = singular_kernel(p, 1);
    const WeakOperator op(f.g, f.ps, K, p);
    DualVector bad = DualVector::zero(f.g);
    bad.coeff[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(solve_dirichlet(op, bad), std::invalid_argument);
}
