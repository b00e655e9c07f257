#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "subrad/constants.hpp"
#include "subrad/system.hpp"

namespace subrad {

namespace detail {

struct PairGeometry {
    double x;  // omega_0 * r_ij / c, dimensionless separation
    double u;  // cos of angle between dipole direction and separation axis
};

inline PairGeometry pair_geometry(const AtomGeometry& g, double omega0, int i, int j) {
    if (i == j)
        throw std::invalid_argument("kernel: atom indices must differ (the diagonal is the bare rate)");
    const int n = static_cast<int>(g.positions.size());
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::invalid_argument("kernel: atom index out of range");
    const Vec3 rij = g.positions[i - 1] - g.positions[j - 1];
    const double r = rij.norm();
    if (r <= 0.0)
        throw std::invalid_argument(
            "kernel: coincident atom positions; use the point-like kernel instead");
    return {omega0 * r / speed_of_light, g.dipole_direction.dot(rij) / r};
}

}  // namespace detail

/**
 * Dimensionless collective-decay kernel f_ij for a pair of atoms, so that
 * Gamma_ij = Gamma * f_ij. Depends on the scaled separation
 * x = omega_0 |r_i - r_j| / c and on the dipole orientation. Tends to 1 as
 * x -> 0 and to 0 as x -> infinity. Atom indices are 1-based.
 */
inline double dissipation_kernel_f(const AtomGeometry& g, double omega0, int i, int j) {
    const auto [x, u] = detail::pair_geometry(g, omega0, i, j);
    const double u2 = u * u;
    const double sx = std::sin(x), cx = std::cos(x);
    return 1.5 * ((1.0 - u2) * sx / x + (1.0 - 3.0 * u2) * (cx / (x * x) - sx / (x * x * x)));
}

/**
 * Bath-mediated dipole shift Omega_ij (rad/s) between two distinct atoms.
 * Diverges as x^-3 for coincident atoms; the point-like limit is modeled
 * through SystemParams::lamb_shift instead.
 */
inline double dipole_shift_omega(const AtomGeometry& g, double omega0, double gamma, int i, int j) {
    const auto [x, u] = detail::pair_geometry(g, omega0, i, j);
    const double u2 = u * u;
    const double sx = std::sin(x), cx = std::cos(x);
    return 0.75 * gamma *
           ((u2 - 1.0) * cx / x + (1.0 - 3.0 * u2) * (sx / (x * x) + cx / (x * x * x)));
}

/// Kernel for closely packed atoms (all separations much smaller than
/// c/omega_0): every Gamma_ij equals Gamma and every off-diagonal shift
/// equals the limiting value Omega_L.
inline DissipationKernel build_point_like_kernel(const SystemParams& p) {
    p.validate();
    const int n = p.n_atoms;
    DissipationKernel k;
    k.point_like = true;
    k.gamma_matrix = Eigen::MatrixXd::Constant(n, n, p.atomic_rate);
    k.shift_matrix = Eigen::MatrixXd::Constant(n, n, p.lamb_shift);
    k.shift_matrix.diagonal().setZero();
    return k;
}

/// Kernel for an explicit geometry, populated pairwise from the two
/// distance-dependent kernels above.
inline DissipationKernel build_kernel(const SystemParams& p, const AtomGeometry& g) {
    p.validate();
    g.validate(p.n_atoms);
    const int n = p.n_atoms;
    DissipationKernel k;
    k.point_like = false;
    k.gamma_matrix = Eigen::MatrixXd::Zero(n, n);
    k.shift_matrix = Eigen::MatrixXd::Zero(n, n);
    k.gamma_matrix.diagonal().setConstant(p.atomic_rate);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const double f = dissipation_kernel_f(g, p.atomic_freq, i, j);
            const double w = dipole_shift_omega(g, p.atomic_freq, p.atomic_rate, i, j);
            k.gamma_matrix(i - 1, j - 1) = k.gamma_matrix(j - 1, i - 1) = p.atomic_rate * f;
            k.shift_matrix(i - 1, j - 1) = k.shift_matrix(j - 1, i - 1) = w;
        }
    }
    return k;
}

/// Spontaneous emission rate from the transition frequency and the norm of
/// the electric dipole matrix element, Gamma = 4 pi hbar omega_0^3 |d|^2 / (3 c^3).
inline double gamma_from_dipole(double omega0, double dipole_norm) {
    if (!(omega0 >= 0.0) || !(dipole_norm >= 0.0))
        throw std::invalid_argument("gamma_from_dipole: inputs must be nonnegative");
    const double w3 = omega0 * omega0 * omega0;
    const double c3 = speed_of_light * speed_of_light * speed_of_light;
    return 4.0 * std::numbers::pi * hbar * w3 * dipole_norm * dipole_norm / (3.0 * c3);
}

}  // namespace subrad
