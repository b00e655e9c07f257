#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "subrad/density.hpp"
#include "subrad/errors.hpp"
#include "subrad/operators.hpp"

namespace subrad {

/**
 * The full dissipative generator: unitary part plus cavity photon loss at
 * rate k plus the collective atomic emission channel weighted by the full
 * Gamma matrix. Jump operators are the photon annihilation operator and
 * the N atomic lowering operators; their action on this sector is simple
 * enough that the dissipators are applied in closed form.
 */
struct GeneratorSpec {
    OperatorMatrix hamiltonian;    // angular-frequency matrix on the sector, as given
    double cavity_rate = 0.0;      // k
    Eigen::MatrixXd gamma_matrix;  // N x N collective decay rates
    int n_atoms = 0;
    bool allow_indefinite = false;

    // cached embedding of the gamma matrix into the sector, sum_ij
    // Gamma_ij |atom_i><atom_j|
    OperatorMatrix gamma_embedded;
    // hamiltonian minus its mean eigenvalue; the generator is invariant
    // under that shift and the commutator loses far fewer digits this way
    OperatorMatrix h_centered;

    static GeneratorSpec make(const OperatorMatrix& hamiltonian, double cavity_rate,
                              const Eigen::MatrixXd& gamma, bool allow_indefinite = false) {
        const int n = static_cast<int>(gamma.rows());
        if (gamma.cols() != n) throw std::invalid_argument("GeneratorSpec: gamma matrix must be square");
        if (hamiltonian.rows() != n + 2 || hamiltonian.cols() != n + 2)
            throw std::invalid_argument("GeneratorSpec: hamiltonian dimension must be n_atoms + 2");
        if ((hamiltonian - hamiltonian.adjoint().eval()).cwiseAbs().maxCoeff() >
            1e-12 * std::max(1.0, hamiltonian.cwiseAbs().maxCoeff()))
            throw std::invalid_argument("GeneratorSpec: hamiltonian must be Hermitian");
        if (!(cavity_rate >= 0.0)) throw std::invalid_argument("GeneratorSpec: cavity_rate must be >= 0");
        if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() >
            1e-12 * std::max(1.0, gamma.cwiseAbs().maxCoeff()))
            throw std::invalid_argument("GeneratorSpec: gamma matrix must be symmetric");
        if (!allow_indefinite) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma, Eigen::EigenvaluesOnly);
            const double floor = -1e-12 * std::max(1.0, gamma.cwiseAbs().maxCoeff());
            if (es.eigenvalues().minCoeff() < floor)
                throw numerics_error(
                    "GeneratorSpec: gamma matrix is not positive semidefinite (min eigenvalue " +
                    std::to_string(es.eigenvalues().minCoeff()) +
                    "); pass allow_indefinite to propagate anyway");
        }
        GeneratorSpec spec;
        spec.hamiltonian = hamiltonian;
        spec.cavity_rate = cavity_rate;
        spec.gamma_matrix = gamma;
        spec.n_atoms = n;
        spec.allow_indefinite = allow_indefinite;
        spec.gamma_embedded = OperatorMatrix::Zero(n + 2, n + 2);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                spec.gamma_embedded(atom_row(i, n), atom_row(j, n)) = gamma(i - 1, j - 1);
        const double mean = hamiltonian.trace().real() / (n + 2);
        spec.h_centered = hamiltonian - mean * OperatorMatrix::Identity(n + 2, n + 2);
        return spec;
    }

    int dim() const { return n_atoms + 2; }
};

/**
 * Right-hand side of the master equation,
 *   d rho / dt = -i [H, rho]
 *              + k (2 a rho a+ - a+a rho - rho a+a)
 *              + sum_ij Gamma_ij (2 s-_i rho s+_j - s+_i s-_j rho - rho s+_i s-_j).
 * Terms are grouped as X - X^dagger / X + X^dagger so a Hermitian input
 * yields an exactly Hermitian output in floating point.
 */
inline DensityMatrix apply_generator(const GeneratorSpec& spec, const DensityMatrix& rho) {
    const int d = spec.dim();
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("apply_generator: density matrix dimension mismatch");
    const int n = spec.n_atoms;
    const int ph = photon_index(n);

    const OperatorMatrix hr = spec.h_centered * rho;
    DensityMatrix out = Complex(0.0, -1.0) * (hr - hr.adjoint().eval());

    // cavity dissipator: a rho a+ lands entirely on the vacuum entry
    const double photon_pop = rho(ph, ph).real();
    out(vacuum_index(), vacuum_index()) += 2.0 * spec.cavity_rate * photon_pop;
    DensityMatrix anti = DensityMatrix::Zero(d, d);
    anti.row(ph) = spec.cavity_rate * rho.row(ph);
    // collective atomic dissipator: feeding term is scalar * vacuum projector
    double fed = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            fed += spec.gamma_matrix(i - 1, j - 1) * rho(atom_row(i, n), atom_row(j, n)).real();
    out(vacuum_index(), vacuum_index()) += 2.0 * fed;
    anti += spec.gamma_embedded * rho;
    out -= anti + anti.adjoint().eval();
    return out;
}

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    // filled when PropagateOptions::estimate_error is set: per grid point,
    // max entrywise distance between the full-step and half-step runs
    std::vector<double> step_doubling_error;
};

struct PropagateOptions {
    std::optional<double> step;     // explicit RK4 step (s); auto-chosen when absent
    double stability_limit = 0.1;   // reject steps with h * bound above this
    double accuracy_target = 5e-3;  // auto step solves h * bound = this
    double positivity_floor = -1e-6;
    double trace_tol = 1e-9;
    long max_steps = 50'000'000;    // refuse grids that need more RK4 steps than this
    bool estimate_error = false;    // also integrate at half step and record the gap
};

/// Crude upper bound on the generator's action norm, used for step control.
/// Only the eigenvalue spread of the Hamiltonian matters, not its offset.
inline double generator_norm_bound(const GeneratorSpec& spec) {
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(spec.h_centered, Eigen::EigenvaluesOnly);
    const double spread = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
    return spread + 4.0 * spec.cavity_rate + 4.0 * spec.gamma_matrix.cwiseAbs().sum();
}

namespace detail {

inline void rk4_step(const GeneratorSpec& spec, DensityMatrix& rho, double h) {
    const DensityMatrix k1 = apply_generator(spec, rho);
    const DensityMatrix k2 = apply_generator(spec, rho + (0.5 * h) * k1);
    const DensityMatrix k3 = apply_generator(spec, rho + (0.5 * h) * k2);
    const DensityMatrix k4 = apply_generator(spec, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/**
 * Integrates the master equation with classical fixed-step RK4 and records
 * the state at every requested time. The grid must be strictly increasing;
 * rho0 is the state at t_grid.front(). Invariants (trace, Hermiticity,
 * positivity) are re-checked at each grid point and violations throw; the
 * state is never silently repaired.
 */
inline Trajectory propagate(const GeneratorSpec& spec, const DensityMatrix& rho0,
                            const std::vector<double>& t_grid,
                            const PropagateOptions& opt = {}) {
    const int d = spec.dim();
    if (rho0.rows() != d || rho0.cols() != d)
        throw std::invalid_argument("propagate: initial state dimension mismatch");
    if (t_grid.size() < 1) throw std::invalid_argument("propagate: empty time grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("propagate: time grid must be strictly increasing");

    const double bound = generator_norm_bound(spec);
    double h;
    if (opt.step) {
        h = *opt.step;
        if (!(h > 0.0)) throw std::invalid_argument("propagate: step must be positive");
        if (h * bound > opt.stability_limit)
            throw numerics_error("propagate: step too large for stability, h * |L| = " +
                                 std::to_string(h * bound) + " exceeds " +
                                 std::to_string(opt.stability_limit));
    } else {
        h = bound > 0.0 ? opt.accuracy_target / bound : (t_grid.back() - t_grid.front());
    }
    if (h > 0.0) {
        const double span = t_grid.back() - t_grid.front();
        if (span / h > static_cast<double>(opt.max_steps))
            throw numerics_error(
                "propagate: grid would need more than " + std::to_string(opt.max_steps) +
                " RK4 steps; use a rotating-frame Hamiltonian or a shorter horizon");
    }

    const auto check = [&](const DensityMatrix& rho, double t) {
        const double herm = hermiticity_residual(rho);
        if (herm > 1e-12)
            throw numerics_error("propagate: Hermiticity residual " + std::to_string(herm) +
                                 " at t = " + std::to_string(t));
        const double tr = rho.trace().real();
        if (std::abs(tr - 1.0) > opt.trace_tol)
            throw numerics_error("propagate: trace drifted to " + std::to_string(tr) +
                                 " at t = " + std::to_string(t));
        if (!spec.allow_indefinite) {
            const double lo = min_eigenvalue(rho);
            if (lo < opt.positivity_floor)
                throw numerics_error("propagate: positivity violated, min eigenvalue " +
                                     std::to_string(lo) + " at t = " + std::to_string(t));
        }
    };

    Trajectory traj;
    traj.times.reserve(t_grid.size());
    traj.states.reserve(t_grid.size());
    DensityMatrix rho = rho0;
    DensityMatrix rho_half = rho0;
    check(rho, t_grid.front());
    traj.times.push_back(t_grid.front());
    traj.states.push_back(rho);
    if (opt.estimate_error) traj.step_doubling_error.push_back(0.0);
    for (std::size_t g = 1; g < t_grid.size(); ++g) {
        const double dt = t_grid[g] - t_grid[g - 1];
        const long substeps = std::max<long>(1, static_cast<long>(std::ceil(dt / h)));
        const double hs = dt / static_cast<double>(substeps);
        for (long s = 0; s < substeps; ++s) detail::rk4_step(spec, rho, hs);
        if (opt.estimate_error) {
            for (long s = 0; s < 2 * substeps; ++s) detail::rk4_step(spec, rho_half, 0.5 * hs);
            traj.step_doubling_error.push_back((rho - rho_half).cwiseAbs().maxCoeff());
        }
        check(rho, t_grid[g]);
        traj.times.push_back(t_grid[g]);
        traj.states.push_back(rho);
    }
    return traj;
}

/// Probability that the injected excitation is still inside the
/// atoms-cavity system: 1 - <vacuum|rho|vacuum>, i.e. tr(N_hat rho) here.
inline double survival_probability(const DensityMatrix& rho) {
    return 1.0 - rho(vacuum_index(), vacuum_index()).real();
}

}  // namespace subrad
