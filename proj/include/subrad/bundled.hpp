#pragma once

#include <map>
#include <string>
#include <vector>

namespace subrad {

/**
 * Scenario configurations shipped with the tool. Names fig1..fig6 cover the
 * standard parameter set (epsilon = 1e5, k = 1e4, Gamma = 1e3,
 * omega = omega_0 = 1e14, resonant, point-like) for N = 3, 10 and 100,
 * tracking the pairwise and total binary concurrence over twenty decay
 * times. The remaining entries probe the limiting regimes: well separated
 * atoms, and each loss channel acting alone.
 */
inline const std::map<std::string, std::string>& bundled_scenarios() {
    static const std::map<std::string, std::string> scenarios = {
        {"fig1", R"({
  "name": "fig1",
  "n_atoms": 3,
  "coupling": 1.0e5,
  "cavity_rate": 1.0e4,
  "atomic_rate": 1.0e3,
  "cavity_freq": 1.0e14,
  "atomic_freq": 1.0e14,
  "point_like": true,
  "t_max": 1.54e-3,
  "n_points": 640,
  "engine": "both",
  "outputs": ["rho_elements", "concurrence_pair", "concurrence_total", "survival"]
})"},
        {"fig2", R"({
  "name": "fig2",
  "n_atoms": 10,
  "coupling": 1.0e5,
  "cavity_rate": 1.0e4,
  "atomic_rate": 1.0e3,
  "cavity_freq": 1.0e14,
  "atomic_freq": 1.0e14,
  "point_like": true,
  "t_max": 1.0e-3,
  "n_points": 640,
  "engine": "analytic",
  "outputs": ["rho_elements", "concurrence_pair", "concurrence_total", "survival"]
})"},
        {"fig3", R"({
  "name": "fig3",
  "n_atoms": 100,
  "coupling": 1.0e5,
  "cavity_rate": 1.0e4,
  "atomic_rate": 1.0e3,
  "cavity_freq": 1.0e14,
  "atomic_freq": 1.0e14,
  "point_like": true,
  "t_max": 1.82e-4,
  "n_points": 640,
  "engine": "analytic",
  "outputs": ["rho_elements", "concurrence_pair", "concurrence_total", "survival"]
})"},
        {"fig4", R"({
  "name": "fig4",
  "n_atoms": 3,
  "coupling": 1.0e5,
  "cavity_rate": 1.0e4,
  "atomic_rate": 1.0e3,
  "cavity_freq": 1.0e14,
  "atomic_freq": 1.0e14,
  "point_like": true,
  "t_max": 1.54e-3,
  "n_points": 640,
  "engine": "analytic",
  "outputs": ["concurrence_total", "concurrence_pair", "survival"]
})"},
        {"fig5", R"({
  "name": "fig5",
  "n_atoms": 10,
  "coupling": 1.0e5,
  "cavity_rate": 1.0e4,
  "atomic_rate": 1.0e3,
  "cavity_freq": 1.0e14,
  "atomic_freq": 1.0e14,
  "point_like": true,
  "t_max": 1.0e-3,
  "n_points": 640,
  "engine": "analytic",
  "outputs": ["concurrence_total", "concurrence_pair", "survival"]
})"},
        {"fig6", R"({
  "name": "fig6",
  "n_atoms": 100,
  "coupling": 1.0e5,
  "cavity_rate": 1.0e4,
  "atomic_rate": 1.0e3,
  "cavity_freq": 1.0e14,
  "atomic_freq": 1.0e14,
  "point_like": true,
  "t_max": 1.82e-4,
  "n_points": 640,
  "engine": "analytic",
  "outputs": ["concurrence_total", "concurrence_pair", "survival"]
})"},
        {"distant", R"({
  "name": "distant",
  "n_atoms": 3,
  "coupling": 1.0e5,
  "cavity_rate": 1.0e4,
  "atomic_rate": 1.0e3,
  "cavity_freq": 1.0e14,
  "atomic_freq": 1.0e14,
  "point_like": false,
  "positions": [[0.0, 0.0, 0.0], [1.49896229e-4, 0.0, 0.0], [2.99792458e-4, 0.0, 0.0]],
  "dipole_direction": [0.0, 0.0, 1.0],
  "t_max": 5.0e-3,
  "n_points": 500,
  "engine": "ode",
  "ode_step": 5.0e-8,
  "outputs": ["survival", "rho_elements"]
})"},
        {"single-channel-k", R"({
  "name": "single-channel-k",
  "n_atoms": 3,
  "coupling": 1.0e5,
  "cavity_rate": 1.0e4,
  "atomic_rate": 0.0,
  "cavity_freq": 1.0e14,
  "atomic_freq": 1.0e14,
  "point_like": true,
  "t_max": 2.0e-3,
  "n_points": 500,
  "engine": "ode",
  "ode_step": 5.0e-8,
  "outputs": ["survival", "rho_elements", "dicke_report"]
})"},
        {"single-channel-gamma", R"({
  "name": "single-channel-gamma",
  "n_atoms": 3,
  "coupling": 1.0e5,
  "cavity_rate": 0.0,
  "atomic_rate": 1.0e3,
  "cavity_freq": 1.0e14,
  "atomic_freq": 1.0e14,
  "point_like": true,
  "t_max": 6.7e-3,
  "n_points": 500,
  "engine": "ode",
  "ode_step": 5.0e-8,
  "outputs": ["survival", "rho_elements", "dicke_report"]
})"},
    };
    return scenarios;
}

inline std::vector<std::string> list_scenarios() {
    std::vector<std::string> names;
    for (const auto& [name, text] : bundled_scenarios()) names.push_back(name);
    return names;
}

}  // namespace subrad
