// geometry.hpp — dipole geometry, dipole-dipole coupling, monomer radiative rates

#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "darkstate/error.hpp"
#include "darkstate/special_functions.hpp"
#include "darkstate/units.hpp"

namespace darkstate {

// Two point dipoles; r12 along z. Dipole j points along
// (sin phi_j cos theta_j, sin phi_j sin theta_j, cos phi_j) with theta_1 - theta_2 = theta12.
struct DipoleGeometry {
    double phi1{std::numbers::pi / 2};
    double phi2{std::numbers::pi / 2};
    double theta12{0.0};
    double r12_nm{1.0};

    std::array<double, 3> d1_hat() const {
        return {std::sin(phi1) * std::cos(theta12), std::sin(phi1) * std::sin(theta12), std::cos(phi1)};
    }
    std::array<double, 3> d2_hat() const { return {std::sin(phi2), 0.0, std::cos(phi2)}; }

    sf::Orientation orientation() const {
        const auto a = d1_hat(), b = d2_hat();
        const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        const double zz = a[2] * b[2];
        return {dot - zz, dot - 3.0 * zz};
    }
    double r12() const { return units::nm_to_inv_eV(r12_nm); } // 1/eV
};

inline DipoleGeometry build_geometry(double phi1, double phi2, double theta12, double r12_nm) {
    if (!(r12_nm > 0.0) || !std::isfinite(r12_nm))
        throw InvalidParameter("geometry: r12 must be positive and finite");
    for (double a : {phi1, phi2, theta12})
        if (!std::isfinite(a)) throw InvalidParameter("geometry: angles must be finite");
    return {phi1, phi2, theta12, r12_nm};
}

inline DipoleGeometry ideal_geometry(double r12_nm) {
    return build_geometry(std::numbers::pi / 2, std::numbers::pi / 2, 0.0, r12_nm);
}

// Bare dipole-dipole coupling C (eV) for dipole magnitudes in e*nm. See README for
// the normalisation, which is fixed by the reported monomer separations.
inline double dipole_dipole_coupling(double d1_enm, double d2_enm, const DipoleGeometry& g) {
    if (!(d1_enm >= 0.0) || !(d2_enm >= 0.0)) throw InvalidParameter("dipole magnitudes must be >= 0");
    const double d1 = units::dipole_enm_to_natural(d1_enm);
    const double d2 = units::dipole_enm_to_natural(d2_enm);
    const double r = g.r12();
    return g.orientation().beta * d1 * d2 / (4.0 * std::numbers::pi * r * r * r);
}

// Separation (nm) at which kappa1 kappa2 C equals `target_eV`.
inline double separation_for_coupling(double target_eV, double kappa12, double d1_enm,
                                      double d2_enm, const sf::Orientation& o) {
    const double d1 = units::dipole_enm_to_natural(d1_enm);
    const double d2 = units::dipole_enm_to_natural(d2_enm);
    const double r3 = kappa12 * o.beta * d1 * d2 / (4.0 * std::numbers::pi * target_eV);
    if (!(r3 > 0.0) || !std::isfinite(r3))
        throw InvalidParameter("separation_for_coupling: target and orientation give no real separation");
    return units::inv_eV_to_nm(std::cbrt(r3));
}

// Spontaneous emission rate gamma(omega) = d^2 omega^3 / (3 pi), eV.
inline double bare_rate(double d_enm, double omega) {
    const double d = units::dipole_enm_to_natural(d_enm);
    return d * d * omega * omega * omega / (3.0 * std::numbers::pi);
}

inline double lifetime_to_dipole(double tau_s, double omega) {
    if (!(tau_s > 0.0) || !(omega > 0.0)) throw InvalidParameter("lifetime_to_dipole: need tau > 0, omega > 0");
    const double g = units::lifetime_s_to_rate_eV(tau_s);
    return units::dipole_natural_to_enm(std::sqrt(3.0 * std::numbers::pi * g / (omega * omega * omega)));
}

inline double dipole_to_lifetime(double d_enm, double omega) {
    if (!(d_enm > 0.0) || !(omega > 0.0)) throw InvalidParameter("dipole_to_lifetime: need d > 0, omega > 0");
    return units::rate_eV_to_lifetime_s(bare_rate(d_enm, omega));
}

} // namespace darkstate
