#include <catch2/catch.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "subrad/analytic.hpp"
#include "subrad/density.hpp"
#include "subrad/kernels.hpp"
#include "subrad/lindblad.hpp"
#include "subrad/transform.hpp"
#include "test_helpers.hpp"

using namespace subrad;
using subrad::test::max_abs_diff;

namespace {

SystemParams fig_params(int n) {
    SystemParams p;
    p.n_atoms = n;
    p.coupling = 1e5;
    p.cavity_rate = 1e4;
    p.atomic_rate = 1e3;
    p.cavity_freq = 1e14;
    p.atomic_freq = 1e14;
    return p;
}

std::vector<double> linspace(double t_max, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
    return t;
}

/// Independent route: integrate the untransformed master equation in the
/// rotating frame and move the result into the collective basis.
double max_deviation_from_ode(const SystemParams& p, double horizon, int n_points) {
    const auto kernel = build_point_like_kernel(p);
    const auto spec = GeneratorSpec::make(rotating_frame_hamiltonian(p, kernel), p.cavity_rate,
                                          kernel.gamma_matrix);
    const auto grid = linspace(horizon, n_points);
    const auto traj = propagate(spec, one_excitation_mixture(p.n_atoms), grid);
    const auto u = build_u(p.n_atoms);
    double worst = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const DensityMatrix ana = analytic_density(analytic_state(p, grid[g]));
        const DensityMatrix ode = forward_transform(traj.states[g], u);
        worst = std::max(worst, max_abs_diff(ana, ode));
    }
    return worst;
}

}  // namespace

TEST_CASE("coefficients at resonance, underdamped") {
    auto p = fig_params(3);
    const auto c = analytic_coefficients(p);
    CHECK(c.eps_eff == Approx(std::sqrt(3.0) * 1e5).epsilon(1e-14));
    CHECK(c.a_minus == Approx(7e3));
    CHECK(c.omega0_tilde == Approx(1e14));
    CHECK(c.tau_ac == Approx(1.0 / 1.3e4).epsilon(1e-14));
    // principal root of 4 eps_eff^2 - A_-^2 > 0 is real
    CHECK(c.a == Approx(std::sqrt(4.0 * c.eps_eff * c.eps_eff - c.a_minus * c.a_minus)).epsilon(1e-12));
    CHECK(c.a == Approx(3.4634e5).epsilon(1e-4));
    CHECK(c.b == 0.0);
}

TEST_CASE("coefficients at resonance, overdamped") {
    SystemParams p = fig_params(2);
    p.coupling = 1e3;
    p.cavity_rate = 2e4;
    p.atomic_rate = 50.0;
    const auto c = analytic_coefficients(p);
    REQUIRE(4.0 * c.eps_eff * c.eps_eff < c.a_minus * c.a_minus);
    CHECK(c.a == 0.0);
    CHECK(c.b == Approx(std::sqrt(c.a_minus * c.a_minus - 4.0 * c.eps_eff * c.eps_eff)).epsilon(1e-12));
}

TEST_CASE("oscillation rate is bounded by the decay rate") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        SystemParams p;
        p.n_atoms = 1 + static_cast<int>(u(rng) * 10);
        p.coupling = 0.1 + 10.0 * u(rng);
        p.cavity_rate = 0.01 + 5.0 * u(rng);
        p.atomic_rate = 0.01 + 5.0 * u(rng);
        p.atomic_freq = 100.0;
        p.cavity_freq = 100.0 + 40.0 * (u(rng) - 0.5);
        p.lamb_shift = 2.0 * (u(rng) - 0.5);
        const auto c = analytic_coefficients(p);
        CHECK(c.a >= 0.0);  // principal square root
        CHECK(std::abs(c.b) < c.decay_rate);
    }
}

TEST_CASE("initial values reproduce the even mixture bitwise") {
    for (int n : {1, 2, 3, 10, 100}) {
        const auto s = analytic_state(fig_params(n), 0.0);
        CHECK(s.rho_bright == 1.0 / n);  // exact, not approximate
        CHECK(s.rho_bright_photon == Complex(0.0, 0.0));
        CHECK(s.rho_photon == 0.0);
        if (n >= 2) CHECK(s.rho_dark == 1.0 / n);
        CHECK(std::abs(s.rho_vacuum) < 1e-15);
    }
}

TEST_CASE("long times reach the diagonal trapped form") {
    for (int n : {2, 3, 10}) {
        const auto p = fig_params(n);
        const auto c = analytic_coefficients(p);
        const auto s = analytic_state(p, 60.0 * c.tau_ac);
        CHECK(max_abs_diff(analytic_density(s), asymptotic_transformed(n)) < 1e-12);
    }
}

TEST_CASE("analytic states satisfy the density-matrix invariants") {
    const auto p = fig_params(3);
    const auto c = analytic_coefficients(p);
    for (double t : linspace(5.0 * c.tau_ac, 50)) {
        const auto rho = analytic_density(analytic_state(p, t));
        CHECK_NOTHROW(validate_density(rho));
    }
}

TEST_CASE("analytic solution matches the numerical propagator") {
    SECTION("single atom at resonance: damped vacuum Rabi oscillation") {
        SystemParams p = fig_params(1);
        const auto c = analytic_coefficients(p);
        CHECK(max_deviation_from_ode(p, 5.0 * c.tau_ac, 40) < 1e-6);
    }
    SECTION("three atoms, standard parameter set") {
        const auto p = fig_params(3);
        const auto c = analytic_coefficients(p);
        CHECK(max_deviation_from_ode(p, 5.0 * c.tau_ac, 40) < 1e-6);
    }
    SECTION("detuned cavity") {
        SystemParams p = fig_params(2);
        p.cavity_freq = 1e14 - 3.0 * std::sqrt(2.0) * 1e5;
        const auto c = analytic_coefficients(p);
        CHECK(max_deviation_from_ode(p, 5.0 * c.tau_ac, 40) < 1e-6);
    }
    SECTION("detuning through the collective dipole shift") {
        SystemParams p = fig_params(3);
        p.lamb_shift = 8e4;  // omega0_tilde = omega0 + N Omega_L
        const auto c = analytic_coefficients(p);
        CHECK(max_deviation_from_ode(p, 5.0 * c.tau_ac, 40) < 1e-6);
    }
    SECTION("overdamped regime") {
        SystemParams p = fig_params(2);
        p.coupling = 1e3;
        p.cavity_rate = 2e4;
        p.atomic_rate = 50.0;
        const auto c = analytic_coefficients(p);
        CHECK(max_deviation_from_ode(p, 5.0 * c.tau_ac, 40) < 1e-6);
    }
}

TEST_CASE("analytic solution matches the propagator on random parameters") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int sizes[] = {1, 2, 3, 5, 10};
    for (int trial = 0; trial < 10; ++trial) {
        SystemParams p;
        p.n_atoms = sizes[trial % 5];
        p.coupling = 0.5 + 2.5 * u(rng);
        p.cavity_rate = 0.2 + 1.8 * u(rng);
        p.atomic_rate = 0.05 + 0.45 * u(rng);
        p.atomic_freq = 100.0;
        const double eps_eff = std::sqrt(double(p.n_atoms)) * p.coupling;
        p.cavity_freq = 100.0 + 5.0 * eps_eff * (2.0 * u(rng) - 1.0);
        p.lamb_shift = 0.5 * (2.0 * u(rng) - 1.0);
        const auto c = analytic_coefficients(p);
        CHECK(max_deviation_from_ode(p, 5.0 * c.tau_ac, 30) < 1e-6);
    }
}

TEST_CASE("degenerate critical parameters are refused") {
    SystemParams p;
    p.n_atoms = 2;
    p.coupling = 0.0;
    p.atomic_rate = 1.0;
    p.cavity_rate = 2.0;  // A_- = 0 at k = N Gamma
    p.cavity_freq = 5.0;
    p.atomic_freq = 5.0;
    CHECK_THROWS_AS(analytic_state(p, 1.0), numerics_error);
}

TEST_CASE("trapped states") {
    CHECK(trapped_states(1).empty());
    for (int n = 2; n <= 12; ++n) {
        const auto states = trapped_states(n);
        REQUIRE(static_cast<int>(states.size()) == n);
        const auto ops = collective_spin_ops(n);
        StateVector sum = StateVector::Zero(space_dim(n));
        for (const auto& v : states) {
            CHECK(std::abs(v.norm() - 1.0) < 1e-12);
            CHECK((ops.s_minus * v).norm() <= 1e-12);
            CHECK((ops.sz * v + 0.5 * (n - 2.0) * v).norm() <= 1e-12);
            sum += v;
        }
        CHECK(sum.norm() < 1e-12);  // linearly dependent: they add up to zero

        Eigen::MatrixXcd gram(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) gram(r, c) = states[r].dot(states[c]);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
        int rank = 0;
        for (int q = 0; q < n; ++q)
            if (svd.singularValues()(q) > 1e-10) ++rank;
        CHECK(rank == n - 1);
    }
}

TEST_CASE("two-atom trapped state is the singlet") {
    const auto states = trapped_states(2);
    StateVector singlet = StateVector::Zero(4);
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(singlet.dot(states[0])) - 1.0) < 1e-12);
}

TEST_CASE("trapped mixture equals the bright-state complement projector") {
    for (int n : {2, 3, 6}) {
        // oracle: (P_one_excitation - |bright><bright|) / (N - 1)
        const int d = space_dim(n);
        StateVector bright = StateVector::Zero(d);
        for (int h = 1; h <= n; ++h) bright(atom_row(h, n)) = 1.0 / std::sqrt(double(n));
        DensityMatrix proj = DensityMatrix::Zero(d, d);
        for (int h = 1; h <= n; ++h) proj(atom_row(h, n), atom_row(h, n)) = 1.0;
        proj -= bright * bright.adjoint();
        proj /= (n - 1.0);
        CHECK(max_abs_diff(stationary_mixture(n), proj) <= 1e-12);
    }
}

TEST_CASE("asymptotic state in the original basis") {
    for (int n : {2, 3, 10}) {
        const auto u = build_u(n);
        const auto direct = asymptotic_original(n);
        CHECK(max_abs_diff(direct, back_transform(asymptotic_transformed(n), u)) <= 1e-12);
        CHECK(direct(vacuum_index(), vacuum_index()).real() == Approx(1.0 / n).margin(1e-14));
        CHECK(std::abs(direct.trace().real() - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(stationary_mixture(1), std::invalid_argument);
}

TEST_CASE("mixture satisfies the collective-spin sandwich identities") {
    for (int n = 2; n <= 8; ++n) {
        const auto ops = collective_spin_ops(n);
        const auto mix = stationary_mixture(n);
        const double s = 0.5 * (n - 2.0);
        const double s2 = s * (s + 1.0);
        CHECK((ops.s_squared * mix * ops.s_squared - s2 * s2 * mix).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((ops.sz * mix * ops.sz - s * s * mix).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
