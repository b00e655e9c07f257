#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "subrad/constants.hpp"
#include "subrad/operators.hpp"
#include "subrad/system.hpp"

namespace subrad::test {

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// Two atoms separated by scaled distance x = omega0 * r / c along `axis`,
/// dipole along z.
inline AtomGeometry two_atoms(double x, double omega0, const Vec3& axis = Vec3::UnitX()) {
    AtomGeometry g;
    g.positions = {Vec3::Zero(), (x * speed_of_light / omega0) * axis.normalized()};
    g.dipole_direction = Vec3::UnitZ();
    return g;
}

/// Random Hermitian matrix with entries of order one.
inline Eigen::MatrixXcd random_hermitian(int dim, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = std::complex<double>(u(rng), u(rng));
    return 0.5 * (m + m.adjoint().eval());
}

/// Random density matrix (positive semidefinite, unit trace).
inline Eigen::MatrixXcd random_density(int dim, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = std::complex<double>(u(rng), u(rng));
    Eigen::MatrixXcd rho = g * g.adjoint();
    return rho / rho.trace().real();
}

}  // namespace subrad::test
