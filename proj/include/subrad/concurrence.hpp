#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "subrad/analytic.hpp"
#include "subrad/errors.hpp"
#include "subrad/operators.hpp"

namespace subrad {

/**
 * Two-qubit state of an atom pair, basis {|-->, |+->, |-+>, |++>} with the
 * first slot belonging to the lower atom index. In the one-excitation
 * sector the |++> population is always zero.
 */
struct PairState {
    Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Zero();

    double p_gg() const { return matrix(0, 0).real(); }
    double p_eg() const { return matrix(1, 1).real(); }
    double p_ge() const { return matrix(2, 2).real(); }
    std::complex<double> coherence() const { return matrix(1, 2); }
};

/**
 * Reduced density matrix of atoms (i, j), obtained by tracing the cavity
 * and the other N-2 atoms out of a sector density matrix in the original
 * (per-atom) basis. Atom indices are 1-based with i < j.
 */
inline PairState pair_reduced_density(const DensityMatrix& rho, int i, int j) {
    const int n = static_cast<int>(rho.rows()) - 2;
    if (n < 2) throw std::invalid_argument("pair_reduced_density: need at least two atoms");
    if (i < 1 || j < 1 || i > n || j > n || i >= j)
        throw std::invalid_argument("pair_reduced_density: indices must satisfy 1 <= i < j <= N");
    PairState pair;
    Complex gg = rho(vacuum_index(), vacuum_index()) + rho(photon_index(n), photon_index(n));
    for (int h = 1; h <= n; ++h)
        if (h != i && h != j) gg += rho(atom_row(h, n), atom_row(h, n));
    pair.matrix(0, 0) = gg.real();
    pair.matrix(1, 1) = rho(atom_row(i, n), atom_row(i, n));
    pair.matrix(2, 2) = rho(atom_row(j, n), atom_row(j, n));
    pair.matrix(1, 2) = rho(atom_row(i, n), atom_row(j, n));
    pair.matrix(2, 1) = rho(atom_row(j, n), atom_row(i, n));
    // vacuum-sector coherences survive the trace only through the all-ground
    // environment configuration
    pair.matrix(0, 1) = rho(vacuum_index(), atom_row(i, n));
    pair.matrix(1, 0) = rho(atom_row(i, n), vacuum_index());
    pair.matrix(0, 2) = rho(vacuum_index(), atom_row(j, n));
    pair.matrix(2, 0) = rho(atom_row(j, n), vacuum_index());
    return pair;
}

/**
 * Wootters concurrence of a two-qubit state: C = max(0, sqrt(l1) - sqrt(l2)
 * - sqrt(l3) - sqrt(l4)) with l_q the decreasing-ordered eigenvalues of
 * rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y). Eigenvalues are real
 * and nonnegative up to roundoff; small negatives are clamped.
 */
inline double wootters_concurrence(const PairState& pair) {
    const Eigen::Matrix4cd& rho = pair.matrix;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("wootters_concurrence: pair state not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-6)
        throw std::invalid_argument("wootters_concurrence: pair state trace must be 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> pos(rho, Eigen::EigenvaluesOnly);
    if (pos.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument("wootters_concurrence: pair state is indefinite");

    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r, false);
    std::array<double, 4> lambda{};
    for (int q = 0; q < 4; ++q) {
        double v = es.eigenvalues()(q).real();
        if (v < 0.0) {
            if (v < -1e-12)
                throw numerics_error("wootters_concurrence: spin-flip spectrum has eigenvalue " +
                                     std::to_string(v));
            v = 0.0;
        }
        lambda[q] = v;
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    const double c = std::sqrt(lambda[0]) - std::sqrt(lambda[1]) - std::sqrt(lambda[2]) -
                     std::sqrt(lambda[3]);
    return std::max(0.0, c);
}

/**
 * Closed-form pairwise concurrence conditioned on the excitation not having
 * escaped yet: 2 |rho_bright - rho_dark| / (N * survival). Identical for
 * every pair by permutation symmetry, and equal to the Wootters concurrence
 * of the conditioned reduced pair state.
 */
inline double conditional_pair_concurrence(const AnalyticState& s) {
    const int n = s.n_atoms;
    if (n < 2) throw std::invalid_argument("conditional_pair_concurrence: needs n_atoms >= 2");
    const double survival = s.rho_bright + (n - 1.0) * s.rho_dark + s.rho_photon;
    if (!(survival > 0.0))
        throw numerics_error("conditional_pair_concurrence: no surviving excitation to condition on");
    return 2.0 * std::abs(s.rho_bright - s.rho_dark) / (n * survival);
}

/// Sum of the pairwise concurrence over all N(N-1)/2 pairs.
inline double total_binary_concurrence(double c_pair, int n_atoms) {
    if (n_atoms < 2) throw std::invalid_argument("total_binary_concurrence: needs n_atoms >= 2");
    return 0.5 * n_atoms * (n_atoms - 1.0) * c_pair;
}

}  // namespace subrad
