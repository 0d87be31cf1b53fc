// units.hpp — physical constants and conversions into natural units (hbar = c = 1, energies in eV)

#pragma once

#include <cmath>
#include <numbers>

namespace darkstate::units {

inline constexpr double k_B = 8.617333262e-5;       // eV / K
inline constexpr double hbar = 6.582119569e-16;     // eV s
inline constexpr double hbar_c = 197.3269804;       // eV nm
inline constexpr double alpha_fs = 7.2973525693e-3; // fine-structure constant
inline constexpr double e_charge = 1.602176634e-19; // C
inline constexpr double meV = 1e-3;

// Lengths: nm <-> 1/eV
inline constexpr double nm_to_inv_eV(double nm) { return nm / hbar_c; }
inline constexpr double inv_eV_to_nm(double l) { return l * hbar_c; }

// Dipole moment in e*nm -> 1/eV. Heaviside-Lorentz charge e = sqrt(4 pi alpha), so the
// vacuum permittivity is absorbed here and rates/couplings carry no epsilon_0.
inline double dipole_enm_to_natural(double d_enm) {
    return std::sqrt(4.0 * std::numbers::pi * alpha_fs) * nm_to_inv_eV(d_enm);
}
inline double dipole_natural_to_enm(double d) {
    return inv_eV_to_nm(d) / std::sqrt(4.0 * std::numbers::pi * alpha_fs);
}

// Rates: eV <-> s
inline constexpr double rate_eV_to_lifetime_s(double g) { return hbar / g; }
inline constexpr double lifetime_s_to_rate_eV(double tau) { return hbar / tau; }

// Power in eV^2 (rate times voltage) -> pW
inline constexpr double power_eV2_to_pW(double p) { return p * e_charge / hbar * 1e12; }

inline double thermal_energy(double T_kelvin) { return k_B * T_kelvin; }

// Bose-Einstein occupation; zero for T = 0 or omega <= 0 handled by caller.
inline double bose(double omega, double T_kelvin) {
    if (T_kelvin <= 0.0) return 0.0;
    return 1.0 / std::expm1(omega / (k_B * T_kelvin));
}

} // namespace darkstate::units
