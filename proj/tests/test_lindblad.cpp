#include <catch2/catch.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "subrad/density.hpp"
#include "subrad/kernels.hpp"
#include "subrad/lindblad.hpp"
#include "test_helpers.hpp"

using namespace subrad;
using subrad::test::max_abs;
using subrad::test::random_hermitian;

namespace {

SystemParams desk_params(int n) {
    SystemParams p;
    p.n_atoms = n;
    p.coupling = 1.3;
    p.cavity_rate = 0.31;
    p.atomic_rate = 0.11;
    p.cavity_freq = 5.7;
    p.atomic_freq = 6.1;
    return p;
}

GeneratorSpec desk_generator(const SystemParams& p) {
    const auto kernel = build_point_like_kernel(p);
    return GeneratorSpec::make(hamiltonian_ac(p) + lamb_shift_h(p, kernel), p.cavity_rate,
                               kernel.gamma_matrix);
}

std::vector<double> linspace(double t_max, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
    return t;
}

}  // namespace

TEST_CASE("vacuum is stationary") {
    const auto spec = desk_generator(desk_params(3));
    CHECK(max_abs(apply_generator(spec, vacuum_state(3))) == 0.0);
}

TEST_CASE("generator is trace free on arbitrary Hermitian input") {
    std::mt19937 rng(42);
    const auto spec = desk_generator(desk_params(3));
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXcd rho = random_hermitian(5, rng);
        rho /= rho.trace().real();
        CHECK(std::abs(apply_generator(spec, rho).trace()) < 1e-13);
    }
}

TEST_CASE("generator preserves Hermiticity exactly") {
    std::mt19937 rng(7);
    const auto spec = desk_generator(desk_params(4));
    for (int trial = 0; trial < 10; ++trial) {
        const auto out = apply_generator(spec, random_hermitian(6, rng));
        CHECK(hermiticity_residual(out) == 0.0);
    }
}

TEST_CASE("single uncoupled excited atom decays at twice the bare rate") {
    SystemParams p = desk_params(1);
    p.coupling = 0.0;
    p.atomic_rate = 0.4;
    const auto spec = desk_generator(p);
    DensityMatrix rho = DensityMatrix::Zero(3, 3);
    rho(atom_row(1, 1), atom_row(1, 1)) = 1.0;
    const auto dt = apply_generator(spec, rho);
    CHECK(dt(atom_row(1, 1), atom_row(1, 1)).real() == Approx(-2.0 * p.atomic_rate).epsilon(1e-12));
    CHECK(dt(vacuum_index(), vacuum_index()).real() == Approx(2.0 * p.atomic_rate).epsilon(1e-12));
}

TEST_CASE("closed system conserves purity") {
    SystemParams p = desk_params(2);
    p.cavity_rate = 0.0;
    p.atomic_rate = 0.0;
    p.cavity_freq = p.atomic_freq = 3.0;
    p.coupling = 1.0;
    const auto spec = desk_generator(p);
    DensityMatrix rho0 = DensityMatrix::Zero(4, 4);
    rho0(1, 1) = 0.75;
    rho0(2, 2) = 0.25;
    PropagateOptions opt;
    opt.accuracy_target = 2e-3;
    const auto traj = propagate(spec, rho0, linspace(10.0, 50), opt);
    const double purity0 = (rho0 * rho0).trace().real();
    for (const auto& rho : traj.states)
        CHECK(std::abs((rho * rho).trace().real() - purity0) < 1e-8);
}

TEST_CASE("trace is preserved along dissipative trajectories") {
    const auto spec = desk_generator(desk_params(3));
    const auto traj = propagate(spec, one_excitation_mixture(3), linspace(20.0, 80));
    for (const auto& rho : traj.states) {
        CHECK(std::abs(rho.trace().real() - 1.0) < 1e-9);
        CHECK(hermiticity_residual(rho) < 1e-12);
        CHECK(min_eigenvalue(rho) > -1e-9);
    }
}

TEST_CASE("independent reservoirs lose the excitation completely") {
    // collective off-diagonal rates switched off by hand: distant-atom limit
    SystemParams p = desk_params(2);
    p.cavity_rate = 0.5;
    p.atomic_rate = 0.4;
    p.cavity_freq = p.atomic_freq = 100.0;
    const auto kernel = build_point_like_kernel(p);
    const Eigen::MatrixXd gamma_diag =
        p.atomic_rate * Eigen::MatrixXd::Identity(2, 2);
    const auto spec = GeneratorSpec::make(rotating_frame_hamiltonian(p, kernel), p.cavity_rate,
                                          gamma_diag);
    const double horizon = 10.0 / std::min(2.0 * p.atomic_rate, 2.0 * p.cavity_rate);
    const auto traj = propagate(spec, one_excitation_mixture(2), linspace(horizon, 40));
    CHECK(survival_probability(traj.states.back()) < 1e-3);
}

TEST_CASE("user step beyond the stability bound is rejected") {
    const auto spec = desk_generator(desk_params(2));
    PropagateOptions opt;
    opt.step = 1.0;  // h * |L| far above 0.1 for these rates
    CHECK_THROWS_AS(propagate(spec, one_excitation_mixture(2), linspace(1.0, 5), opt),
                    numerics_error);
}

TEST_CASE("positivity violations are reported, not repaired") {
    const auto spec = desk_generator(desk_params(2));
    DensityMatrix bad = one_excitation_mixture(2);
    bad(3, 3) += 1e-4;
    bad(1, 1) -= 1e-4;
    bad(3, 3) -= 2e-4;  // min eigenvalue -1e-4, trace still 1
    bad(0, 0) += 2e-4;
    CHECK_THROWS_AS(propagate(spec, bad, linspace(1.0, 5)), numerics_error);
}

TEST_CASE("indefinite gamma matrices need the explicit opt-in") {
    const auto p = desk_params(2);
    Eigen::MatrixXd gamma(2, 2);
    gamma << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
    CHECK_THROWS_AS(GeneratorSpec::make(hamiltonian_ac(p), p.cavity_rate, gamma), numerics_error);
    CHECK_NOTHROW(GeneratorSpec::make(hamiltonian_ac(p), p.cavity_rate, gamma, true));
}

TEST_CASE("generator spec validates shapes and symmetry") {
    const auto p = desk_params(2);
    Eigen::MatrixXd gamma(2, 2);
    gamma << 1.0, 0.2, 0.0, 1.0;
    CHECK_THROWS_AS(GeneratorSpec::make(hamiltonian_ac(p), p.cavity_rate, gamma),
                    std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::make(hamiltonian_ac(desk_params(3)), p.cavity_rate,
                                        Eigen::MatrixXd::Identity(2, 2)),
                    std::invalid_argument);
}

TEST_CASE("survival probability counts everything but the vacuum") {
    CHECK(survival_probability(vacuum_state(4)) == 0.0);
    CHECK(survival_probability(one_excitation_mixture(4)) == Approx(1.0));
    std::mt19937 rng(3);
    const auto rho = subrad::test::random_density(5, rng);
    const auto num = excitation_number(3);
    CHECK(survival_probability(rho) == Approx((num * rho).trace().real()).margin(1e-12));
}

TEST_CASE("step-doubling error estimate tracks the actual accuracy") {
    const auto spec = desk_generator(desk_params(2));
    PropagateOptions opt;
    opt.estimate_error = true;
    opt.accuracy_target = 5e-2;
    const auto grid = linspace(5.0, 20);
    const auto traj = propagate(spec, one_excitation_mixture(2), grid, opt);
    REQUIRE(traj.step_doubling_error.size() == grid.size());
    CHECK(traj.step_doubling_error.front() == 0.0);
    // coarse run: the estimate must be visible yet small
    const double worst = *std::max_element(traj.step_doubling_error.begin(),
                                           traj.step_doubling_error.end());
    CHECK(worst > 0.0);
    CHECK(worst < 1e-5);
}

TEST_CASE("time grids must be strictly increasing") {
    const auto spec = desk_generator(desk_params(2));
    CHECK_THROWS_AS(propagate(spec, one_excitation_mixture(2), {0.0, 1.0, 1.0}),
                    std::invalid_argument);
}
