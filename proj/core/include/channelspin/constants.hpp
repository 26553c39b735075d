#pragma once

namespace channelspin::constants {

inline constexpr double speed_of_light = 299792458.0;  // m/s, exact

inline constexpr double fine_structure = 7.2973525693e-3;

inline constexpr double electron_rest_energy_ev = 510998.95;  // eV

// Proton/antiproton rest energy used throughout the default configuration.
inline constexpr double antiproton_rest_energy_ev = 938.272e6;  // eV

// PDG radiation length of tungsten: X0 = 0.3504 cm.
inline constexpr double tungsten_radiation_length_m = 3.504e-3;  // m

}  // namespace channelspin::constants
