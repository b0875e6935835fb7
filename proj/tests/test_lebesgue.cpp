#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace varfrac;

namespace {
const GridDomain& fixture_grid() {
    static GridDomain g = vft::grid_1d(64);
    return g;
}
}  // namespace

TEST_CASE("lebesgue modular basics", "[lebesgue]") {
    const auto& g = fixture_grid();
    const ScalarExponent q2 = ScalarExponent::constant(2.0);

    CHECK(modular_lebesgue(GridFunction::zero(g), q2) == 0.0);

    // constant c on the domain with q = 2: c^2 |Omega|, exact for constants
    GridFunction c = GridFunction::from_callable(g, [](const Point&) { return 0.7; }, true);
    const double measure = g.omega_measure();
    CHECK(modular_lebesgue(c, q2) == Catch::Approx(0.49 * measure).epsilon(1e-14));

    // the modular only sees the domain: zero iff u vanishes there
    GridFunction ext_only = GridFunction::from_callable(
        g, [](const Point& x) { return std::abs(x[0]) > 1.0 ? 3.0 : 0.0; });
    CHECK(modular_lebesgue(ext_only, q2) == 0.0);
    CHECK(luxemburg_norm(ext_only, q2) == 0.0);

    GridFunction u = GridFunction::from_callable(g, [](const Point& x) { return x[0]; });
    GridDomain other = vft::grid_1d(32);
    GridFunction w = GridFunction::zero(other);
    CHECK_THROWS_AS(holder_pairing(u, w, q2), std::invalid_argument);
}

TEST_CASE("lebesgue modular matches the high-precision oracle", "[lebesgue]") {
    const auto& g = fixture_grid();
    std::mt19937_64 rng(101);
    for (int c = 0; c < 20; ++c) {
        const GridFunction u = random_x0_nonzero(g, rng);
        const ScalarExponent q = vft::random_scalar_exponent(g, rng, 1.5, 4.0);
        const double got = modular_lebesgue(u, q);
        const double want = vft::oracle_modular_lebesgue(u, q);
        CHECK(got == Catch::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("luxemburg norm: zero, constant-exponent closed form, homogeneity", "[lebesgue]") {
    const auto& g = fixture_grid();
    std::mt19937_64 rng(102);

    CHECK(luxemburg_norm(GridFunction::zero(g), ScalarExponent::constant(2.0)) == 0.0);

    for (const double q0 : {1.5, 2.0, 3.0}) {
        const ScalarExponent q = ScalarExponent::constant(q0);
        for (int c = 0; c < 10; ++c) {
            const GridFunction u = random_x0_nonzero(g, rng);
            const double got = luxemburg_norm(u, q);
            const double want = vft::oracle_constant_exponent_norm(u, q0);
            CHECK(got == Catch::Approx(want).epsilon(1e-10));
        }
    }

    for (int c = 0; c < 10; ++c) {
        const GridFunction u = random_x0_nonzero(g, rng);
        const ScalarExponent q = vft::random_scalar_exponent(g, rng, 1.6, 3.5);
        const double alpha = -3.7;
        const double lhs = luxemburg_norm(alpha * u, q);
        const double rhs = std::abs(alpha) * luxemburg_norm(u, q);
        CHECK(lhs == Catch::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("unit modular correspondence", "[lebesgue]") {
    const auto& g = fixture_grid();
    std::mt19937_64 rng(103);
    for (int c = 0; c < 30; ++c) {
        const GridFunction u = random_x0_nonzero(g, rng, 5, std::pow(10.0, (c % 7) - 3));
        const ScalarExponent q = vft::random_scalar_exponent(g, rng, 1.5, 4.0);
        const LuxemburgResult r = luxemburg_norm_result(u, q);
        REQUIRE(r.norm > 0.0);
        CHECK(std::abs(r.modular_at_unit - 1.0) <= 1e-10);
        CHECK(std::abs(modular_lebesgue((1.0 / r.norm) * u, q) - 1.0) <= 1e-10);
    }
}

TEST_CASE("holder pairing", "[lebesgue]") {
    const auto& g = fixture_grid();
    std::mt19937_64 rng(104);
    const ScalarExponent q2 = ScalarExponent::constant(2.0);

    const GridFunction u = random_x0_nonzero(g, rng);
    const HolderPairing z = holder_pairing(u, GridFunction::zero(g), q2);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);

    // q = 2, v = u: lhs = modular, rhs = 2 modular, strict for u != 0
    const HolderPairing cs = holder_pairing(u, u, q2);
    CHECK(cs.lhs == Catch::Approx(modular_lebesgue(u, q2)).epsilon(1e-12));
    CHECK(cs.rhs == Catch::Approx(2.0 * modular_lebesgue(u, q2)).epsilon(1e-9));
    CHECK(cs.lhs < cs.rhs);

    for (int c = 0; c < 100; ++c) {
        const GridFunction a = random_x0_nonzero(g, rng);
        const GridFunction b = random_x0_nonzero(g, rng);
        const ScalarExponent q = vft::random_scalar_exponent(g, rng, 1.5, 4.0);
        CHECK(holder_pairing(a, b, q).holds());
    }
}

TEST_CASE("norm-modular relations of the Lebesgue modular", "[lebesgue]") {
    const auto& g = fixture_grid();
    std::mt19937_64 rng(105);

    SECTION("unit sphere") {
        for (int c = 0; c < 10; ++c) {
            GridFunction u = random_x0_nonzero(g, rng);
            const ScalarExponent q = vft::random_scalar_exponent(g, rng, 2.0, 3.0);
            // scale so the modular equals one, then the norm must be one
            const double mod = modular_lebesgue(u, q);
            REQUIRE(mod > 0.0);
            // modular(u/lambda) is strictly decreasing; solve for modular = 1 by bisection
            double lo = 1e-8, hi = 1e8;
            for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (modular_lebesgue((1.0 / mid) * u, q) > 1.0 ? lo : hi) = mid;
            }
            const GridFunction v = (1.0 / (0.5 * (lo + hi))) * u;
            CHECK(std::abs(luxemburg_norm(v, q) - 1.0) <= 1e-9);
        }
    }

    SECTION("below and above the unit sphere") {
        for (int c = 0; c < 20; ++c) {
            const GridFunction u0 = random_x0_nonzero(g, rng);
            const ScalarExponent q = vft::random_scalar_exponent(g, rng, 2.0, 3.0);

            const GridFunction u_small = vft::scaled_to_norm(u0, q, 0.5);
            const double mod_small = modular_lebesgue(u_small, q);
            CHECK(mod_small >= std::pow(0.5, q.q_plus) * (1 - 1e-9));
            CHECK(mod_small <= std::pow(0.5, q.q_minus) * (1 + 1e-9));
            CHECK(check_modular_norm_relations(u_small, q).pass);

            const GridFunction u_big = vft::scaled_to_norm(u0, q, 2.0);
            const double mod_big = modular_lebesgue(u_big, q);
            CHECK(mod_big >= std::pow(2.0, q.q_minus) * (1 - 1e-9));
            CHECK(mod_big <= std::pow(2.0, q.q_plus) * (1 + 1e-9));
            CHECK(check_modular_norm_relations(u_big, q).pass);
        }
    }
}

TEST_CASE("norm triangle inequality", "[lebesgue]") {
    const auto& g = fixture_grid();
    std::mt19937_64 rng(106);
    for (int c = 0; c < 100; ++c) {
        const GridFunction a = random_x0_nonzero(g, rng);
        const GridFunction b = random_x0_nonzero(g, rng);
        const ScalarExponent q = vft::random_scalar_exponent(g, rng, 1.5, 4.0);
        const double lhs = luxemburg_norm(a + b, q);
        const double rhs = luxemburg_norm(a, q) + luxemburg_norm(b, q);
        CHECK(lhs <= rhs + 1e-12 * std::max(1.0, rhs));
    }
}

TEST_CASE("modular convergence matches norm convergence", "[lebesgue]") {
    const auto& g = fixture_grid();
    std::mt19937_64 rng(107);
    const GridFunction u = random_x0_nonzero(g, rng);
    const GridFunction w = random_x0_nonzero(g, rng);
    const ScalarExponent q = vft::random_scalar_exponent(g, rng, 1.7, 3.1);

    double prev_mod = std::numeric_limits<double>::infinity();
    double prev_norm = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 1024; k *= 4) {
        const GridFunction uk = u + (1.0 / k) * w;
        const double mod = modular_lebesgue(uk - u, q);
        const double nrm = luxemburg_norm(uk - u, q);
        CHECK(mod <= prev_mod);
        CHECK(nrm <= prev_norm * (1.0 + 1e-12));
        prev_mod = mod;
        prev_norm = nrm;
    }
    CHECK(prev_mod < 1e-6);
    CHECK(prev_norm < 1e-2);
}
