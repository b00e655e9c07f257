#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "subrad/errors.hpp"
#include "subrad/operators.hpp"

namespace subrad {

/**
 * Derived quantities of the closed-form solution in the collective basis.
 * a + ib is the principal square root of delta_c^2 + 4 eps_eff^2, so a >= 0
 * while b carries the sign of the product detuning * a_minus; the solution
 * formulas are invariant under flipping both signs at once. |b| < 1/tau_ac
 * always holds, which guarantees the decaying envelope.
 */
struct AnalyticCoefficients {
    double eps_eff;                 // sqrt(N) * epsilon
    double a_minus;                 // k - N Gamma
    double omega0_tilde;            // omega_0 + N Omega_L
    std::complex<double> delta_c;   // omega0_tilde - omega + i a_minus
    double a;
    double b;
    double decay_rate;              // k + N Gamma
    double tau_ac;                  // 1 / decay_rate
};

inline AnalyticCoefficients analytic_coefficients(const SystemParams& p) {
    p.validate();
    AnalyticCoefficients c{};
    const double n = static_cast<double>(p.n_atoms);
    c.eps_eff = std::sqrt(n) * p.coupling;
    c.a_minus = p.cavity_rate - n * p.atomic_rate;
    c.omega0_tilde = p.atomic_freq + n * p.lamb_shift;
    c.delta_c = {c.omega0_tilde - p.cavity_freq, c.a_minus};
    const std::complex<double> root =
        std::sqrt(c.delta_c * c.delta_c + 4.0 * c.eps_eff * c.eps_eff);
    c.a = root.real();
    c.b = root.imag();
    c.decay_rate = p.cavity_rate + n * p.atomic_rate;
    c.tau_ac = c.decay_rate > 0.0 ? 1.0 / c.decay_rate
                                  : std::numeric_limits<double>::infinity();
    return c;
}

/**
 * The nonzero matrix elements of the collective-basis density matrix at
 * time t, for one excitation injected as an even mixture over the atoms.
 * The dark populations rho_dark stay frozen at 1/N; rho_vacuum completes
 * the trace.
 */
struct AnalyticState {
    int n_atoms = 0;
    double t = 0.0;
    double rho_vacuum = 0.0;             // <1|rho|1>
    double rho_bright = 0.0;             // <2|rho|2>
    double rho_dark = 0.0;               // <h|rho|h>, h = 3..N+1 (0 when N = 1)
    std::complex<double> rho_bright_photon;  // <2|rho|N+2>
    double rho_photon = 0.0;             // <N+2|rho|N+2>
};

/**
 * Evaluates the exact solution of the transformed master equation. The
 * bracket is grouped so that t = 0 reproduces the initial mixture values
 * bitwise, and the decaying envelope is folded into the hyperbolic terms
 * so arbitrarily large t cannot overflow.
 */
inline AnalyticState analytic_state(const SystemParams& p, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("analytic_state: t must be >= 0");
    const AnalyticCoefficients c = analytic_coefficients(p);
    const double mod2 = c.a * c.a + c.b * c.b;
    if (!(mod2 > 0.0))
        throw numerics_error(
            "analytic_state: degenerate parameters (a = b = 0, critically damped resonance "
            "with vanishing effective coupling); use the numerical propagator");
    const double n = static_cast<double>(p.n_atoms);
    const double d = c.omega0_tilde - p.cavity_freq;

    // envelope-folded oscillation terms: e^{-decay t} cosh(bt) etc.
    const double ep = std::exp((c.b - c.decay_rate) * t);
    const double eq = std::exp(-(c.b + c.decay_rate) * t);
    const double ech = 0.5 * (ep + eq);
    const double esh = 0.5 * (ep - eq);
    const double env = std::exp(-c.decay_rate * t);
    const double eco = env * std::cos(c.a * t);
    const double esi = env * std::sin(c.a * t);

    const double abs_delta2 = std::norm(c.delta_c);
    const double bracket = mod2 * (ech + eco) + abs_delta2 * (ech - eco) -
                           2.0 * (c.b * d - c.a * c.a_minus) * esi +
                           2.0 * (c.a * d + c.b * c.a_minus) * esh;

    AnalyticState s;
    s.n_atoms = p.n_atoms;
    s.t = t;
    s.rho_bright = (bracket / (2.0 * mod2)) / n;
    const std::complex<double> root(c.a, c.b);
    s.rho_bright_photon = c.eps_eff *
                          (root * std::complex<double>(esh, esi) +
                           c.delta_c * (ech - eco)) /
                          (n * mod2);
    s.rho_photon = 2.0 * c.eps_eff * c.eps_eff * (ech - eco) / (n * mod2);
    s.rho_dark = p.n_atoms >= 2 ? 1.0 / n : 0.0;
    s.rho_vacuum = 1.0 - s.rho_bright - (n - 1.0) * s.rho_dark - s.rho_photon;
    return s;
}

/// Assembles the full (N+2) x (N+2) collective-basis density matrix.
inline DensityMatrix analytic_density(const AnalyticState& s) {
    const int n = s.n_atoms;
    DensityMatrix rho = DensityMatrix::Zero(space_dim(n), space_dim(n));
    rho(vacuum_index(), vacuum_index()) = s.rho_vacuum;
    rho(atom_row(1, n), atom_row(1, n)) = s.rho_bright;
    for (int h = 2; h <= n; ++h) rho(atom_row(h, n), atom_row(h, n)) = s.rho_dark;
    rho(photon_index(n), photon_index(n)) = s.rho_photon;
    rho(atom_row(1, n), photon_index(n)) = s.rho_bright_photon;
    rho(photon_index(n), atom_row(1, n)) = std::conj(s.rho_bright_photon);
    return rho;
}

/// Stationary collective-basis state reached once t >> tau_ac: vacuum and
/// dark populations at 1/N, bright and photon empty.
inline DensityMatrix asymptotic_transformed(int n_atoms) {
    DensityMatrix rho = DensityMatrix::Zero(space_dim(n_atoms), space_dim(n_atoms));
    rho(vacuum_index(), vacuum_index()) = 1.0 / n_atoms;
    for (int h = 2; h <= n_atoms; ++h) rho(atom_row(h, n_atoms), atom_row(h, n_atoms)) = 1.0 / n_atoms;
    return rho;
}

/**
 * The N trapped (subradiant) states
 *   |psi_T^(h)> = ((N-1)|beta_h> - sum_{j != h} |beta_j>) / sqrt(N(N-1)),
 * one per atom, each annihilated by the collective lowering operator. They
 * sum to zero, so only N-1 of them are linearly independent. Empty for
 * N = 1, where no excitation can be trapped.
 */
inline std::vector<StateVector> trapped_states(int n_atoms) {
    if (n_atoms < 1) throw std::invalid_argument("trapped_states: n_atoms must be >= 1");
    std::vector<StateVector> states;
    if (n_atoms == 1) return states;
    const double norm = std::sqrt(static_cast<double>(n_atoms) * (n_atoms - 1));
    for (int h = 1; h <= n_atoms; ++h) {
        StateVector v = StateVector::Zero(space_dim(n_atoms));
        for (int j = 1; j <= n_atoms; ++j)
            v(atom_row(j, n_atoms)) = (j == h ? n_atoms - 1.0 : -1.0) / norm;
        states.push_back(std::move(v));
    }
    return states;
}

/// Even mixture of the N trapped states; unit trace, rank N-1.
inline DensityMatrix stationary_mixture(int n_atoms) {
    if (n_atoms < 2) throw std::invalid_argument("stationary_mixture: needs n_atoms >= 2");
    const auto states = trapped_states(n_atoms);
    DensityMatrix rho = DensityMatrix::Zero(space_dim(n_atoms), space_dim(n_atoms));
    for (const auto& v : states) rho += v * v.adjoint();
    return rho / static_cast<double>(n_atoms);
}

/// Asymptotic state in the original (per-atom) basis: vacuum with weight
/// 1/N plus the trapped-state mixture with weight (N-1)/N.
inline DensityMatrix asymptotic_original(int n_atoms) {
    if (n_atoms < 2) throw std::invalid_argument("asymptotic_original: needs n_atoms >= 2");
    DensityMatrix rho = (1.0 - 1.0 / n_atoms) * stationary_mixture(n_atoms);
    rho(vacuum_index(), vacuum_index()) += 1.0 / n_atoms;
    return rho;
}

}  // namespace subrad
