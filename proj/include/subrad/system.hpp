#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace subrad {

using Vec3 = Eigen::Vector3d;

/**
 * Physical constants of a run: N identical two-level atoms coupled to a
 * single lossy cavity mode, each atom also coupled to a common radiation
 * bath. Frequencies are angular (rad/s); rates are 1/s.
 */
struct SystemParams {
    int n_atoms = 1;           // N
    double coupling = 0.0;     // atom-cavity coupling epsilon
    double cavity_rate = 0.0;  // cavity photon loss rate k
    double atomic_rate = 0.0;  // single-atom spontaneous emission rate Gamma
    double cavity_freq = 0.0;  // cavity mode frequency omega
    double atomic_freq = 0.0;  // atomic transition frequency omega_0
    double lamb_shift = 0.0;   // common dipole-shift limit Omega_L of closely packed atoms

    /// Dimension of the zero/one-excitation state space.
    int dim() const { return n_atoms + 2; }

    void validate() const {
        if (n_atoms < 1) throw std::invalid_argument("SystemParams: n_atoms must be >= 1");
        if (!(coupling >= 0.0)) throw std::invalid_argument("SystemParams: coupling must be >= 0");
        if (!(cavity_rate >= 0.0)) throw std::invalid_argument("SystemParams: cavity_rate must be >= 0");
        if (!(atomic_rate >= 0.0)) throw std::invalid_argument("SystemParams: atomic_rate must be >= 0");
        if (!(cavity_freq > 0.0)) throw std::invalid_argument("SystemParams: cavity_freq must be > 0");
        if (!(atomic_freq > 0.0)) throw std::invalid_argument("SystemParams: atomic_freq must be > 0");
        if (!std::isfinite(lamb_shift)) throw std::invalid_argument("SystemParams: lamb_shift must be finite");
    }
};

/// Atom positions (meters) and the common transition-dipole direction.
struct AtomGeometry {
    std::vector<Vec3> positions;
    Vec3 dipole_direction = Vec3::UnitZ();

    void validate(int n_atoms) const {
        if (static_cast<int>(positions.size()) != n_atoms)
            throw std::invalid_argument("AtomGeometry: positions must have exactly n_atoms entries");
        if (std::abs(dipole_direction.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("AtomGeometry: dipole_direction must be a unit vector");
    }
};

/**
 * Distance-dependent dissipation and shift kernels feeding the master
 * equation: gamma_matrix holds the collective decay rates Gamma_ij
 * (diagonal = Gamma), shift_matrix the dipole shifts Omega_ij with a
 * zero diagonal.
 */
struct DissipationKernel {
    Eigen::MatrixXd gamma_matrix;  // N x N, symmetric, 1/s
    Eigen::MatrixXd shift_matrix;  // N x N, symmetric, zero diagonal, rad/s
    bool point_like = false;
};

}  // namespace subrad
