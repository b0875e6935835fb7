#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "helpers.hpp"

using namespace varfrac;

namespace {

struct Fixture {
    GridDomain g = vft::grid_1d(48);
    PairSet ps = build_pairset(g);
    ExponentField p = ExponentField::constant(2.0, 0.4);
    Kernel K = singular_kernel(p, 1);
    WeakOperator op{g, ps, K, p};
};
const Fixture& fx() {
    static Fixture f;
    return f;
}

// dense matrix of the p = 2 bilinear form: apply(u, phi) = phi^T B u
Eigen::MatrixXd dense_form(const GridDomain& g, const PairSet& ps, const Kernel& K) {
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
    return B;
}

}  // namespace

TEST_CASE("pairing with the function itself equals the modular", "[operator]") {
    const auto& f = fx();
    std::mt19937_64 rng(301);
    for (int c = 0; c < 50; ++c) {
        const GridFunction u = random_x0_nonzero(f.g, rng);
        const double lhs = f.op.apply(u, u);
        const double rho = f.op.modular(u);
        CHECK(std::abs(lhs - rho) <= 1e-12 * std::max(1.0, std::abs(rho)));
    }
}

TEST_CASE("linearity in the test function", "[operator]") {
    const auto& f = fx();
    std::mt19937_64 rng(302);
    const GridFunction u = random_x0_nonzero(f.g, rng);
    const GridFunction p1 = random_x0_nonzero(f.g, rng);
    const GridFunction p2 = random_x0_nonzero(f.g, rng);
    const double a = 1.3, b = -2.1;
    const double lhs = f.op.apply(u, a * p1 + b * p2);
    const double rhs = a * f.op.apply(u, p1) + b * f.op.apply(u, p2);
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("non-vanishing exterior input is rejected", "[operator]") {
    const auto& f = fx();
    const GridFunction bad = GridFunction::from_callable(f.g, [](const Point&) { return 1.0; });
    const GridFunction ok = GridFunction::zero(f.g);
    CHECK_THROWS_AS(f.op.apply(bad, ok), std::invalid_argument);
    CHECK_THROWS_AS(f.op.sigma(bad), std::invalid_argument);
}

TEST_CASE("p = 2 weak form matches the dense matrix oracle", "[operator]") {
    const auto& f = fx();
    std::mt19937_64 rng(303);
    const Eigen::MatrixXd B = dense_form(f.g, f.ps, f.K);
    for (int c = 0; c < 5; ++c) {
        const GridFunction u = random_x0_nonzero(f.g, rng);
        const GridFunction phi = random_x0_nonzero(f.g, rng);
        Eigen::VectorXd uv(B.rows()), pv(B.rows());
        for (Eigen::Index i = 0; i < B.rows(); ++i) {
            uv(i) = u.values[static_cast<std::size_t>(i)];
            pv(i) = phi.values[static_cast<std::size_t>(i)];
        }
        const double want = pv.dot(B * uv);
        CHECK(f.op.apply(u, phi) == Catch::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("energy and gradient against finite differences", "[operator]") {
    const auto& f = fx();
    std::mt19937_64 rng(304);

    // include an exponent range with p- < 2
    std::vector<ExponentField> fields;
    fields.push_back(ExponentField::constant(2.0, 0.4));
    fields.push_back(vft::random_exponent_field(f.g, f.ps, rng, 1.4, 1.9, 0.3));
    fields.push_back(vft::random_exponent_field(f.g, f.ps, rng, 2.2, 3.4, 0.3));

    for (const auto& p : fields) {
        const Kernel K = singular_kernel(p, 1);
        const WeakOperator op(f.g, f.ps, K, p);
        const DualVector fv = DualVector::from_callable(
            f.g, [](const Point& x) { return std::cos(1.7 * x[0]); });

        for (int c = 0; c < 4; ++c) {
            const GridFunction u = random_x0_nonzero(f.g, rng);
            const GridFunction dir = random_x0_nonzero(f.g, rng);
            const double eps = 1e-6 * (1.0 + u.max_abs());

            // directional derivative of sigma equals the weak form
            const double fd_sigma =
                (op.sigma(u + eps * dir) - op.sigma(u + (-eps) * dir)) / (2.0 * eps);
            const double weak = op.apply(u, dir);
            CHECK(std::abs(fd_sigma - weak) <= 1e-5 * std::max(1.0, std::abs(weak)));

            // full energy including the load
            const double fd_energy =
                (energy(op, u + eps * dir, fv) - energy(op, u + (-eps) * dir, fv)) / (2.0 * eps);
            const double dual = weak - dual_pairing(fv, dir);
            CHECK(std::abs(fd_energy - dual) <= 1e-5 * std::max(1.0, std::abs(dual)));

            // nodal gradient coefficients: dI/du_i = w_i G_i
            const DualVector grad = gradient(op, u, fv);
            for (int probe = 0; probe < 5; ++probe) {
                const auto node = static_cast<std::size_t>(
                    f.g.omega_nodes[(probe * 7) % f.g.n_omega()]);
                GridFunction up = u, um = u;
                up.values[node] += eps;
                um.values[node] -= eps;
                const double fd = (energy(op, up, fv) - energy(op, um, fv)) / (2.0 * eps);
                const double want = f.g.weights[node] * grad.coeff[node];
                CHECK(std::abs(fd - want) <= 1e-5 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("energy basics", "[operator]") {
    const auto& f = fx();
    std::mt19937_64 rng(305);
    const DualVector zero = DualVector::zero(f.g);

    CHECK(energy(f.op, GridFunction::zero(f.g), zero) == 0.0);

    const GridFunction u = random_x0_nonzero(f.g, rng);
    CHECK(energy(f.op, u, zero) > 0.0);
}

TEST_CASE("gradient vanishes exactly for u = 0, f = 0", "[operator]") {
    const auto& f = fx();
    const DualVector grad = gradient(f.op, GridFunction::zero(f.g), DualVector::zero(f.g));
    CHECK(grad.max_abs_interior() == 0.0);
}

TEST_CASE("dual pairing ignores exterior coefficients", "[operator]") {
    const auto& f = fx();
    std::mt19937_64 rng(311);
    const GridFunction v = random_x0_nonzero(f.g, rng);
    DualVector a = DualVector::from_callable(f.g, [](const Point& x) { return x[0] + 1.0; });
    DualVector b = a;
    for (const auto i : f.g.exterior_nodes) b.coeff[i] = 1e9;
    CHECK(dual_pairing(a, v) == dual_pairing(b, v));
}

TEST_CASE("strict monotonicity", "[operator]") {
    const auto& f = fx();
    std::mt19937_64 rng(306);

    const GridFunction u = random_x0_nonzero(f.g, rng);
    const MonotonicityProbe zero_case = monotonicity_probe(f.op, u, GridFunction::zero(f.g));
    CHECK(zero_case.value == Catch::Approx(f.op.modular(u)).epsilon(1e-12));

    const MonotonicityProbe same = monotonicity_probe(f.op, u, u);
    CHECK(same.degenerate);
    CHECK(same.value == 0.0);

    for (int c = 0; c < 100; ++c) {
        const GridFunction a = random_x0_nonzero(f.g, rng);
        const GridFunction b = random_x0_nonzero(f.g, rng);
        const MonotonicityProbe pr = monotonicity_probe(f.op, a, b);
        if (!pr.degenerate) CHECK(pr.value > 0.0);
    }
}

TEST_CASE("p = 2 monotonicity is the positive definite form of the difference", "[operator]") {
    const auto& f = fx();
    const Eigen::MatrixXd B = dense_form(f.g, f.ps, f.K);
    const auto& om = f.g.omega_nodes;
    Eigen::MatrixXd Bii(om.size(), om.size());
    for (std::size_t a = 0; a < om.size(); ++a)
        for (std::size_t b = 0; b < om.size(); ++b) Bii(a, b) = B(om[a], om[b]);
    const double lambda_min =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Bii).eigenvalues().minCoeff();
    CHECK(lambda_min > 0.0);

    std::mt19937_64 rng(307);
    const GridFunction u = random_x0_nonzero(f.g, rng);
    const GridFunction v = random_x0_nonzero(f.g, rng);
    Eigen::VectorXd d(om.size());
    for (std::size_t a = 0; a < om.size(); ++a)
        d(a) = u.values[om[a]] - v.values[om[a]];
    CHECK(monotonicity_probe(f.op, u, v).value == Catch::Approx(d.dot(Bii * d)).epsilon(1e-10));
}

TEST_CASE("coercivity inequalities and divergence of the ratio", "[operator]") {
    std::mt19937_64 rng(308);
    const GridDomain g = vft::grid_1d(48);
    const PairSet ps = build_pairset(g);
    const ExponentField p = vft::random_exponent_field(g, ps, rng, 2.0, 3.0, 0.3);
    const Kernel K = singular_kernel(p, 1);
    const WeakOperator op(g, ps, K, p);
    const PairData& pd = op.pair_data();

    for (int c = 0; c < 10; ++c) {
        const GridFunction u0 = random_x0_nonzero(g, rng);

        const GridFunction u2 = vft::scaled_to_seminorm(u0, pd, 2.0);
        CHECK(op.apply(u2, u2) >= std::pow(2.0, pd.p_minus) * (1 - 1e-9));

        const GridFunction uh = vft::scaled_to_seminorm(u0, pd, 0.5);
        CHECK(op.apply(uh, uh) >= std::pow(0.5, pd.p_plus) * (1 - 1e-9));

        const CoercivityReport rep = coercivity_probe(op, u0);
        CHECK(rep.satisfied);
        CHECK(rep.ratios_increasing);
    }
}

TEST_CASE("holder boundedness proxy", "[operator]") {
    const auto& f = fx();
    std::mt19937_64 rng(309);
    for (int c = 0; c < 50; ++c) {
        const GridFunction u = random_x0_nonzero(f.g, rng);
        const GridFunction phi = random_x0_nonzero(f.g, rng);
        const BoundednessProbe pr = boundedness_probe(f.op, u, phi);
        CHECK(pr.pass);
    }
}

TEST_CASE("pairing is invariant under swap reindexing", "[operator]") {
    const auto& f = fx();
    std::mt19937_64 rng(310);
    const GridFunction u = random_x0_nonzero(f.g, rng);
    const GridFunction phi = random_x0_nonzero(f.g, rng);
    const PairData& pd = f.op.pair_data();

    long double fwd = 0.0L, swp = 0.0L;
    for (std::size_t k = 0; k < f.ps.size(); ++k) {
        const auto i = f.ps.first[k], j = f.ps.second[k];
        const double du = u.values[i] - u.values[j];
        const double dphi = phi.values[i] - phi.values[j];
        fwd += (long double)(f.ps.weight[k] * pd.K[k] * signed_power(du, pd.p[k] - 1.0) * dphi);
        swp += (long double)(f.ps.weight[k] * pd.K[k] *
                             signed_power(-du, pd.p[k] - 1.0) * -dphi);
    }
    CHECK((double)fwd == (double)swp);
}
