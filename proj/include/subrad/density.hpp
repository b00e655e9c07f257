#pragma once

#include <Eigen/Dense>
#include <string>

#include "subrad/errors.hpp"
#include "subrad/operators.hpp"

namespace subrad {

/// max_ij |rho - rho^dagger|
inline double hermiticity_residual(const DensityMatrix& rho) {
    return (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
}

/// Smallest eigenvalue of the Hermitian part of rho.
inline double min_eigenvalue(const DensityMatrix& rho) {
    const DensityMatrix sym = 0.5 * (rho + rho.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

/// Checks the density-matrix invariants: Hermitian within herm_tol, unit
/// trace within trace_tol, minimum eigenvalue >= -pos_tol. Throws
/// numerics_error naming the violated invariant.
inline void validate_density(const DensityMatrix& rho, double herm_tol = 1e-12,
                             double trace_tol = 1e-9, double pos_tol = 1e-9) {
    if (rho.rows() != rho.cols()) throw numerics_error("density matrix is not square");
    const double herm = hermiticity_residual(rho);
    if (herm > herm_tol)
        throw numerics_error("density matrix not Hermitian: residual " + std::to_string(herm));
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > trace_tol)
        throw numerics_error("density matrix trace drifted to " + std::to_string(tr));
    const double lo = min_eigenvalue(rho);
    if (lo < -pos_tol)
        throw numerics_error("density matrix lost positivity: min eigenvalue " + std::to_string(lo));
}

/// Equally weighted mixture of the singly excited atomic states: the
/// uncorrelated way of injecting exactly one excitation into the sample.
inline DensityMatrix one_excitation_mixture(int n_atoms) {
    DensityMatrix rho = DensityMatrix::Zero(space_dim(n_atoms), space_dim(n_atoms));
    for (int h = 1; h <= n_atoms; ++h) rho(atom_row(h, n_atoms), atom_row(h, n_atoms)) = 1.0 / n_atoms;
    return rho;
}

inline DensityMatrix vacuum_state(int n_atoms) {
    DensityMatrix rho = DensityMatrix::Zero(space_dim(n_atoms), space_dim(n_atoms));
    rho(vacuum_index(), vacuum_index()) = 1.0;
    return rho;
}

}  // namespace subrad
