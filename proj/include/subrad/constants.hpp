#pragma once

namespace subrad {

// CODATA 2018 values, SI units.
inline constexpr double speed_of_light = 299792458.0;   // m/s
inline constexpr double hbar = 1.054571817e-34;         // J s

}  // namespace subrad
