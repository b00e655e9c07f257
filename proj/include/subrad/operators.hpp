#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "subrad/basis.hpp"
#include "subrad/system.hpp"

namespace subrad {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Atomic lowering operator sigma_-^(i) restricted to the sector:
/// a single nonzero entry mapping |atom i excited> to the vacuum.
inline OperatorMatrix lowering_op(int i, int n_atoms) {
    OperatorMatrix m = OperatorMatrix::Zero(space_dim(n_atoms), space_dim(n_atoms));
    m(vacuum_index(), atom_row(i, n_atoms)) = 1.0;
    return m;
}

/// sigma_+^(i), the adjoint of the lowering operator.
inline OperatorMatrix raising_op(int i, int n_atoms) {
    return lowering_op(i, n_atoms).adjoint();
}

/// Cavity photon annihilation operator restricted to the sector.
inline OperatorMatrix photon_annihilation(int n_atoms) {
    OperatorMatrix m = OperatorMatrix::Zero(space_dim(n_atoms), space_dim(n_atoms));
    m(vacuum_index(), photon_index(n_atoms)) = 1.0;
    return m;
}

/// Excitation number operator: 0 on the vacuum, 1 on every other state.
inline OperatorMatrix excitation_number(int n_atoms) {
    OperatorMatrix m = OperatorMatrix::Identity(space_dim(n_atoms), space_dim(n_atoms));
    m(vacuum_index(), vacuum_index()) = 0.0;
    return m;
}

struct CollectiveSpinOps {
    OperatorMatrix sz;         // S_z = (1/2) sum_i sigma_z^(i)
    OperatorMatrix s_minus;    // S_- = sum_i sigma_-^(i)
    OperatorMatrix s_squared;  // S^2 = S_+ S_- + S_z (S_z - 1)
};

/**
 * Collective spin operators of the atomic sample on the sector. The vacuum
 * and photon states both carry the all-ground atomic configuration, hence
 * S_z eigenvalue -N/2 there and -(N-2)/2 on the singly excited states.
 */
inline CollectiveSpinOps collective_spin_ops(int n_atoms) {
    const int d = space_dim(n_atoms);
    CollectiveSpinOps ops;
    ops.sz = OperatorMatrix::Zero(d, d);
    ops.s_minus = OperatorMatrix::Zero(d, d);
    const double ground = -0.5 * n_atoms;
    ops.sz(vacuum_index(), vacuum_index()) = ground;
    ops.sz(photon_index(n_atoms), photon_index(n_atoms)) = ground;
    for (int h = 1; h <= n_atoms; ++h) {
        ops.sz(atom_row(h, n_atoms), atom_row(h, n_atoms)) = ground + 1.0;
        ops.s_minus(vacuum_index(), atom_row(h, n_atoms)) = 1.0;
    }
    ops.s_squared = ops.s_minus.adjoint() * ops.s_minus + ops.sz * (ops.sz - OperatorMatrix::Identity(d, d));
    return ops;
}

/**
 * Atom-cavity Hamiltonian on the sector, stored as an angular-frequency
 * matrix (hbar = 1 internally). Diagonal energies keep the constant
 * -N omega_0 / 2 ground-state offset; the coupling epsilon connects every
 * singly excited atomic state to the photon state.
 */
inline OperatorMatrix hamiltonian_ac(const SystemParams& p) {
    p.validate();
    const int n = p.n_atoms;
    const int d = space_dim(n);
    OperatorMatrix m = OperatorMatrix::Zero(d, d);
    const double offset = -0.5 * n * p.atomic_freq;
    m(vacuum_index(), vacuum_index()) = offset;
    m(photon_index(n), photon_index(n)) = offset + p.cavity_freq;
    for (int h = 1; h <= n; ++h) {
        m(atom_row(h, n), atom_row(h, n)) = offset + p.atomic_freq;
        m(atom_row(h, n), photon_index(n)) = p.coupling;
        m(photon_index(n), atom_row(h, n)) = p.coupling;
    }
    return m;
}

/**
 * Dipole-shift Hamiltonian H_LS = sum_ij Omega_ij sigma_+^(i) sigma_-^(j)
 * on the sector. Off-diagonal entries come from the kernel's shift matrix;
 * the diagonal carries the uniform self-shift Omega_L so that the
 * transformed picture reduces to a single shifted collective mode (see the
 * transform header).
 */
inline OperatorMatrix lamb_shift_h(const SystemParams& p, const DissipationKernel& kernel) {
    const int n = p.n_atoms;
    if (kernel.shift_matrix.rows() != n || kernel.shift_matrix.cols() != n)
        throw std::invalid_argument("lamb_shift_h: kernel dimension does not match n_atoms");
    const int d = space_dim(n);
    OperatorMatrix m = OperatorMatrix::Zero(d, d);
    for (int i = 1; i <= n; ++i) {
        m(atom_row(i, n), atom_row(i, n)) = p.lamb_shift;
        for (int j = 1; j <= n; ++j) {
            if (i != j) m(atom_row(i, n), atom_row(j, n)) = kernel.shift_matrix(i - 1, j - 1);
        }
    }
    return m;
}

/**
 * H_AC + H_LS - omega * N_hat: the generator of the unitary part in the
 * frame rotating at the cavity frequency. Populations and coherences within
 * the one-excitation sector are identical in both frames, and at optical
 * frequencies only this frame is numerically integrable.
 */
inline OperatorMatrix rotating_frame_hamiltonian(const SystemParams& p,
                                                 const DissipationKernel& kernel) {
    return hamiltonian_ac(p) + lamb_shift_h(p, kernel) -
           p.cavity_freq * excitation_number(p.n_atoms);
}

}  // namespace subrad
