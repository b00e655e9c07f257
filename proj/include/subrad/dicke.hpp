#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "subrad/analytic.hpp"
#include "subrad/errors.hpp"
#include "subrad/operators.hpp"

namespace subrad {

/**
 * Collective-spin characterization of a late-time state: the decomposition
 * weights, the Dicke quantum numbers S = (N-2)/2 and m = -S of the trapped
 * manifold, how well the trapped states are annihilated by S_-, and the
 * residuals of the two sandwich identities
 *   S^2 rho_mix S^2 = (S(S+1))^2 rho_mix,  S_z rho_mix S_z = S^2 rho_mix.
 */
struct DickeReport {
    int n_atoms = 0;
    double vacuum_weight = 0.0;
    double trapping_probability = 0.0;
    double s_quantum_number = 0.0;
    double sz_eigenvalue = 0.0;
    std::vector<double> s_minus_norms;
    double total_spin_residual = 0.0;  // S^2 sandwich identity
    double sz_residual = 0.0;          // S_z sandwich identity
    double mixture_residual = 0.0;     // distance of the conditioned state from the trapped mixture
};

/**
 * No-click conditioning: projects out the vacuum component and renormalizes,
 * modeling the read-out that no photon has been detected in either loss
 * channel. Throws when nothing survives.
 */
inline DensityMatrix conditioned_state(const DensityMatrix& rho) {
    const double survival = 1.0 - rho(vacuum_index(), vacuum_index()).real();
    if (!(survival > 0.0))
        throw numerics_error("conditioned_state: survival probability is zero");
    DensityMatrix out = rho;
    out.row(vacuum_index()).setZero();
    out.col(vacuum_index()).setZero();
    return out / survival;
}

/**
 * Analyzes a late-time (t >> tau_ac) state in the original basis. The input
 * should already have decayed onto vacuum-plus-trapped-mixture form; a
 * vacuum weight outside [0, 1] signals a non-asymptotic input.
 */
inline DickeReport analyze_asymptotic(const DensityMatrix& rho, int n_atoms) {
    if (n_atoms < 2)
        throw std::invalid_argument("analyze_asymptotic: needs n_atoms >= 2 (a single atom traps nothing)");
    if (rho.rows() != space_dim(n_atoms) || rho.cols() != space_dim(n_atoms))
        throw std::invalid_argument("analyze_asymptotic: dimension mismatch");
    const double w0 = rho(vacuum_index(), vacuum_index()).real();
    if (w0 < -1e-9 || w0 > 1.0 + 1e-9)
        throw numerics_error("analyze_asymptotic: vacuum weight " + std::to_string(w0) +
                             " outside [0, 1]; input is not an asymptotic state");

    DickeReport report;
    report.n_atoms = n_atoms;
    report.vacuum_weight = w0;
    report.trapping_probability = 1.0 - w0;
    report.s_quantum_number = 0.5 * (n_atoms - 2.0);
    report.sz_eigenvalue = -report.s_quantum_number;

    const auto ops = collective_spin_ops(n_atoms);
    for (const auto& v : trapped_states(n_atoms))
        report.s_minus_norms.push_back((ops.s_minus * v).norm());

    const DensityMatrix mix = conditioned_state(rho);
    const double s = report.s_quantum_number;
    const double s2 = s * (s + 1.0);
    report.total_spin_residual =
        (ops.s_squared * mix * ops.s_squared - s2 * s2 * mix).cwiseAbs().maxCoeff();
    report.sz_residual = (ops.sz * mix * ops.sz - s * s * mix).cwiseAbs().maxCoeff();
    report.mixture_residual = (mix - stationary_mixture(n_atoms)).cwiseAbs().maxCoeff();
    return report;
}

}  // namespace subrad
