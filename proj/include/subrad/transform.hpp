#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "subrad/operators.hpp"

namespace subrad {

/**
 * Unitary change of basis that concentrates the whole atom-cavity coupling
 * onto a single collective mode. It is the ordered product of plane
 * rotations U_i (i = 2..N) by angles delta_i = -arctan(1 / sqrt(i-1)) in
 * the (atom 1, atom i) single-excitation planes; it acts as the identity
 * on the vacuum and photon states. Column two of the matrix is the
 * symmetric (bright) combination of the singly excited states.
 */
struct TransformU {
    OperatorMatrix matrix;
    std::vector<double> angles;  // delta_i for i = 2..N
    int n_atoms = 0;
};

inline TransformU build_u(int n_atoms) {
    if (n_atoms < 1) throw std::invalid_argument("build_u: n_atoms must be >= 1");
    const int d = space_dim(n_atoms);
    TransformU u;
    u.n_atoms = n_atoms;
    u.matrix = OperatorMatrix::Identity(d, d);
    for (int i = 2; i <= n_atoms; ++i) {
        const double delta = -std::atan(1.0 / std::sqrt(static_cast<double>(i - 1)));
        u.angles.push_back(delta);
        OperatorMatrix g = OperatorMatrix::Identity(d, d);
        const int a1 = atom_row(1, n_atoms);
        const int ai = atom_row(i, n_atoms);
        g(a1, a1) = std::cos(delta);
        g(ai, ai) = std::cos(delta);
        g(a1, ai) = std::sin(delta);
        g(ai, a1) = -std::sin(delta);
        u.matrix = u.matrix * g;
    }
    return u;
}

/// rho_tilde = U^dagger rho U
inline DensityMatrix forward_transform(const DensityMatrix& rho, const TransformU& u) {
    if (rho.rows() != u.matrix.rows() || rho.cols() != u.matrix.cols())
        throw std::invalid_argument("forward_transform: dimension mismatch");
    return u.matrix.adjoint() * rho * u.matrix;
}

/// rho = U rho_tilde U^dagger, the inverse of forward_transform.
inline DensityMatrix back_transform(const DensityMatrix& rho_tilde, const TransformU& u) {
    if (rho_tilde.rows() != u.matrix.rows() || rho_tilde.cols() != u.matrix.cols())
        throw std::invalid_argument("back_transform: dimension mismatch");
    return u.matrix * rho_tilde * u.matrix.adjoint();
}

/**
 * The Hamiltonian in the collective basis: only the bright mode couples to
 * the photon, with strength sqrt(N) * epsilon, and it carries the full
 * dipole shift N * Omega_L; the other N-1 collective atoms are decoupled.
 * Equals U^dagger (H_AC + H_LS) U on the sector.
 */
inline OperatorMatrix transformed_hamiltonian(const SystemParams& p) {
    p.validate();
    const int n = p.n_atoms;
    const int d = space_dim(n);
    const double offset = -0.5 * n * p.atomic_freq;
    OperatorMatrix m = OperatorMatrix::Zero(d, d);
    m(vacuum_index(), vacuum_index()) = offset;
    m(photon_index(n), photon_index(n)) = offset + p.cavity_freq;
    for (int h = 1; h <= n; ++h) m(atom_row(h, n), atom_row(h, n)) = offset + p.atomic_freq;
    m(atom_row(1, n), atom_row(1, n)) += n * p.lamb_shift;
    const double eps_eff = std::sqrt(static_cast<double>(n)) * p.coupling;
    m(atom_row(1, n), photon_index(n)) = eps_eff;
    m(photon_index(n), atom_row(1, n)) = eps_eff;
    return m;
}

/// Transformed Hamiltonian in the frame rotating at the cavity frequency.
inline OperatorMatrix transformed_rotating_hamiltonian(const SystemParams& p) {
    return transformed_hamiltonian(p) - p.cavity_freq * excitation_number(p.n_atoms);
}

}  // namespace subrad
