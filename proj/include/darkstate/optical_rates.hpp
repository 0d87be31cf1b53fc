// optical_rates.hpp — dimer eigensystem, photon and phonon rate coefficients, critical dipole ratio

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "darkstate/error.hpp"
#include "darkstate/geometry.hpp"
#include "darkstate/phonon.hpp"
#include "darkstate/quadrature.hpp"
#include "darkstate/special_functions.hpp"
#include "darkstate/units.hpp"

namespace darkstate {

struct EigenSystem {
    double delta_plus{0.0};  // upper eigen-splitting, eV
    double delta_minus{0.0}; // lower eigen-splitting, eV
    double eta{0.0};         // delta_plus - delta_minus
    double chi{0.0};         // mixing angle, cos chi = Delta/eta
    double cprime{0.0};      // renormalised coupling kappa1 kappa2 C
    double detuning{0.0};    // Delta = delta1' - delta2'

    double cos_chi() const { return std::cos(chi); }
    double sin_chi() const { return std::sin(chi); }
    double c() const { return std::cos(0.5 * chi); } // <+|1> = <-|2>
    double s() const { return std::sin(0.5 * chi); } // <+|2> = -<-|1>
};

// |+> = cos(chi/2)|1> + sin(chi/2)|2>,  |-> = -sin(chi/2)|1> + cos(chi/2)|2>
inline EigenSystem eigensystem(double delta1p, double delta2p, double cprime) {
    for (double v : {delta1p, delta2p, cprime})
        if (!std::isfinite(v)) throw InvalidParameter("eigensystem: non-finite input");
    EigenSystem e;
    e.detuning = delta1p - delta2p;
    e.cprime = cprime;
    e.eta = std::hypot(e.detuning, cprime);
    e.chi = e.eta == 0.0 ? 0.0 : std::atan2(cprime, e.detuning);
    e.delta_plus = 0.5 * (delta1p + delta2p + e.eta);
    e.delta_minus = 0.5 * (delta1p + delta2p - e.eta);
    return e;
}

struct Monomer {
    double splitting{2.8};   // polaron-frame splitting delta', eV
    double dipole_enm{0.15}; // transition dipole magnitude, e nm
    PhononBath bath;
};

struct DimerParameters {
    Monomer m1, m2;
    DipoleGeometry geometry;
    double photon_temperature{6000.0}; // K
    // Fixes kappa1 kappa2 C instead of deriving it from dipoles and geometry.
    std::optional<double> coupling_override;
    // Evaluate F at x = omega r12 rather than its x -> 0 limit.
    bool full_cross_function{false};

    double kappa12() const { return m1.bath.kappa() * m2.bath.kappa(); }
    double bare_coupling() const { return dipole_dipole_coupling(m1.dipole_enm, m2.dipole_enm, geometry); }
    double cprime() const { return coupling_override ? *coupling_override : kappa12() * bare_coupling(); }
};

inline void validate(const DimerParameters& p) {
    if (!(p.m1.splitting > 0.0) || !(p.m2.splitting > 0.0)) throw InvalidParameter("splittings must be > 0");
    if (!(p.m1.dipole_enm > 0.0) || !(p.m2.dipole_enm > 0.0)) throw InvalidParameter("dipoles must be > 0");
    if (!(p.photon_temperature >= 0.0)) throw InvalidParameter("photon temperature must be >= 0");
    if (!(p.geometry.r12_nm > 0.0)) throw InvalidParameter("r12 must be > 0");
    if (p.m1.bath.profile() != p.m2.bath.profile()) throw InvalidParameter("baths must share a tolerance profile");
}

// Phonon correlation transforms zeta_ab(w) at w = eta, -eta, 0.
struct EcfSet {
    cplx eta{}, meta{}, zero{};
};

struct RateSet {
    EigenSystem eig;
    double kappa1{1.0}, kappa2{1.0};
    double cross_F{1.0};           // F used in the rates (limit or at omega r12)
    double N_plus{0.0}, N_minus{0.0};

    // Photon rate coefficients and rates
    double Gamma_plus_E{0.0}, Gamma_minus_E{0.0}, Gamma_plus_A{0.0}, Gamma_minus_A{0.0};
    double gamma_plus_E{0.0}, gamma_minus_E{0.0}, gamma_plus_A{0.0}, gamma_minus_A{0.0};

    // Non-secular photon couplings and renormalised splittings
    cplx Theta_plus{}, Theta_minus{}, ThetaT_plus{}, ThetaT_minus{};
    cplx Phi_plus{}, Phi_minus{}; // counter-rotating terms
    double delta_t_plus{0.0}, delta_t_minus{0.0};     // photon-renormalised
    double delta_tf_plus{0.0}, delta_tf_minus{0.0};   // including counter-rotating shifts
    double nu_plus{0.0}, nu_minus{0.0};
    double Delta_t() const { return delta_t_plus - delta_t_minus; }
    double Delta_tf() const { return delta_tf_plus - delta_tf_minus; }

    // Phonon transforms and derived rates
    EcfSet zxx, zyy, zzz, zxz;
    double gpn_plus_eta{0.0};  // gamma_+^pn(eta): |+> -> |->
    double gpn_plus_meta{0.0}; // gamma_+^pn(-eta): |-> -> |+>
    double gbar_plus{0.0}, gbar_minus{0.0}, mubar_plus{0.0}, mubar_minus{0.0};
    double gzz0() const { return 2.0 * zzz.zero.real(); }
    double gxz0() const { return 2.0 * zxz.zero.real(); }
    double Sxz0() const { return zxz.zero.imag(); }

    // Monomer rates at their own splittings (spectra weights)
    double gamma1{0.0}, gamma2{0.0}, gamma12{0.0};
    double zetaE1{1.0}, zetaE2{1.0}, zetaA1{1.0}, zetaA2{1.0}; // at delta_j'

    std::vector<std::string> flags;
};

namespace detail {

inline double sqrt_gg(const DimerParameters& p, double w) {
    return std::sqrt(bare_rate(p.m1.dipole_enm, std::abs(w)) * bare_rate(p.m2.dipole_enm, std::abs(w)));
}

} // namespace detail

inline double cross_F(const DimerParameters& p, double omega) {
    const auto o = p.geometry.orientation();
    return p.full_cross_function ? sf::cross_function(omega * p.geometry.r12(), o) : o.dot();
}

// Collective photon emission coefficient Gamma_-^E of the lower eigenstate.
inline double minus_emission_coefficient(const DimerParameters& p, const EigenSystem& e) {
    const double w = e.delta_minus;
    if (!(w > 0.0)) throw DomainError("lower eigen-splitting must be positive");
    const double s = e.s(), c = e.c();
    return s * s * zeta_approx(p.m1.bath, w, Process::Emission, p.photon_temperature) * bare_rate(p.m1.dipole_enm, w) +
           c * c * zeta_approx(p.m2.bath, w, Process::Emission, p.photon_temperature) * bare_rate(p.m2.dipole_enm, w) -
           p.kappa12() * e.sin_chi() * detail::sqrt_gg(p, w) * cross_F(p, w);
}

inline RateSet rate_coefficients(const DimerParameters& p) {
    validate(p);
    RateSet r;
    const double cp = p.cprime();
    r.eig = eigensystem(p.m1.splitting, p.m2.splitting, cp);
    const auto& e = r.eig;
    if (!(e.delta_minus > 0.0)) throw DomainError("lower eigen-splitting must be positive");
    r.kappa1 = p.m1.bath.kappa();
    r.kappa2 = p.m2.bath.kappa();
    const double k12 = r.kappa1 * r.kappa2;
    const double Tg = p.photon_temperature;
    const double s = e.s(), c = e.c(), sc = e.sin_chi(), cc = e.cos_chi();
    const auto o = p.geometry.orientation();
    const double r12 = p.geometry.r12();
    const double dp = e.delta_plus, dm = e.delta_minus;
    r.cross_F = cross_F(p, dm);

    auto zeta = [&](const Monomer& m, double w, Process pr) { return zeta_approx(m.bath, w, pr, Tg); };
    auto g1 = [&](double w) { return bare_rate(p.m1.dipole_enm, w); };
    auto g2 = [&](double w) { return bare_rate(p.m2.dipole_enm, w); };

    r.N_plus = units::bose(dp, Tg);
    r.N_minus = units::bose(dm, Tg);

    auto Gminus = [&](Process pr) {
        return s * s * zeta(p.m1, dm, pr) * g1(dm) + c * c * zeta(p.m2, dm, pr) * g2(dm) -
               k12 * sc * detail::sqrt_gg(p, dm) * cross_F(p, dm);
    };
    auto Gplus = [&](Process pr) {
        return c * c * zeta(p.m1, dp, pr) * g1(dp) + s * s * zeta(p.m2, dp, pr) * g2(dp) +
               k12 * sc * detail::sqrt_gg(p, dp) * cross_F(p, dp);
    };
    r.Gamma_minus_E = Gminus(Process::Emission);
    r.Gamma_plus_E = Gplus(Process::Emission);
    r.Gamma_minus_A = Gminus(Process::Absorption);
    r.Gamma_plus_A = Gplus(Process::Absorption);
    r.gamma_plus_E = r.Gamma_plus_E * (1.0 + r.N_plus);
    r.gamma_minus_E = r.Gamma_minus_E * (1.0 + r.N_minus);
    r.gamma_plus_A = r.Gamma_plus_A * r.N_plus;
    r.gamma_minus_A = r.Gamma_minus_A * r.N_minus;

    // Non-secular photon terms
    auto gpm = [&](double w, Process pr) {
        return -0.5 * sc * (zeta(p.m1, w, pr) * g1(w) - zeta(p.m2, w, pr) * g2(w)) +
               k12 * cc * detail::sqrt_gg(p, w) * cross_F(p, w);
    };
    auto G = [&](double w, bool rwa) { return sf::cgf(w * r12, o, rwa); };
    const double Gp = G(dp, true), Gm = G(dm, true);
    const double Gp_neg = G(-dp, false), Gm_neg = G(-dm, false);
    const double sgp = detail::sqrt_gg(p, dp), sgm = detail::sqrt_gg(p, dm);
    const double Spm_p = k12 * cc * sgp * Gp, Spm_m = k12 * cc * sgm * Gm;
    r.Theta_plus = {0.5 * gpm(dp, Process::Emission) * (1.0 + r.N_plus), Spm_p};
    r.Theta_minus = {0.5 * gpm(dm, Process::Emission) * (1.0 + r.N_minus), Spm_m};
    r.ThetaT_plus = {0.5 * gpm(dp, Process::Absorption) * r.N_plus, 0.0};
    r.ThetaT_minus = {0.5 * gpm(dm, Process::Absorption) * r.N_minus, 0.0};
    r.Phi_plus = {k12 * cc * sgp * Gp_neg, 0.0};
    r.Phi_minus = {k12 * cc * sgm * Gm_neg, 0.0};
    r.delta_t_plus = dp + k12 * sc * sgp * Gp;
    r.delta_t_minus = dm - k12 * sc * sgm * Gm;
    r.delta_tf_plus = r.delta_t_plus + k12 * sc * sgp * Gp_neg;
    r.delta_tf_minus = r.delta_t_minus - k12 * sc * sgm * Gm_neg;
    r.nu_plus = 2.0 * Spm_p;
    r.nu_minus = 2.0 * Spm_m;

    // Phonon-induced transitions between |+> and |->
    if (cp != 0.0 && !(p.m1.bath.empty() && p.m2.bath.empty())) {
        const PairKernel pk(p.m1.bath, p.m2.bath);
        const auto kE = pk.at(e.eta), kM = pk.at(-e.eta), k0 = pk.at(0.0);
        const double c2 = 0.5 * cp * cp;
        auto fill = [&](EcfSet& z, double pref, bool use_sinh) {
            z.eta = pref * (use_sinh ? kE.sinh1 : kE.sinh2);
            z.meta = pref * (use_sinh ? kM.sinh1 : kM.sinh2);
            z.zero = pref * (use_sinh ? k0.sinh1 : k0.sinh2);
        };
        fill(r.zxx, c2 * cc * cc, false);
        fill(r.zzz, c2 * sc * sc, false);
        fill(r.zxz, c2 * sc * cc, false);
        fill(r.zyy, 0.25 * cp * cp, true);
    }
    auto gam = [](cplx z) { return 2.0 * z.real(); };
    const double gp_eta = gam(r.zxx.eta) + gam(r.zyy.eta), gp_meta = gam(r.zxx.meta) + gam(r.zyy.meta);
    const double gm_eta = gam(r.zxx.eta) - gam(r.zyy.eta), gm_meta = gam(r.zxx.meta) - gam(r.zyy.meta);
    r.gpn_plus_eta = gp_eta;
    r.gpn_plus_meta = gp_meta;
    r.gbar_plus = 0.5 * (gp_eta + gp_meta);
    r.gbar_minus = 0.5 * (gm_eta + gm_meta);
    r.mubar_plus = (r.zxx.eta.imag() + r.zyy.eta.imag()) - (r.zxx.meta.imag() + r.zyy.meta.imag());
    r.mubar_minus = (r.zxx.eta.imag() - r.zyy.eta.imag()) - (r.zxx.meta.imag() - r.zyy.meta.imag());

    // Monomer quantities at their own splittings
    r.gamma1 = g1(p.m1.splitting);
    r.gamma2 = g2(p.m2.splitting);
    r.gamma12 = std::sqrt(r.gamma1 * r.gamma2) * cross_F(p, 0.5 * (p.m1.splitting + p.m2.splitting));
    r.zetaE1 = zeta(p.m1, p.m1.splitting, Process::Emission);
    r.zetaE2 = zeta(p.m2, p.m2.splitting, Process::Emission);
    r.zetaA1 = zeta(p.m1, p.m1.splitting, Process::Absorption);
    r.zetaA2 = zeta(p.m2, p.m2.splitting, Process::Absorption);

    if (r.Gamma_minus_E < 0.0) r.flags.push_back("negative_dark_emission");
    if (e.eta < 1e-9) r.flags.push_back("degenerate_eigenstates");
    if (e.eta > 0.0 && e.eta < 5.0 * std::max(std::abs(r.Theta_plus), std::abs(r.Theta_minus)))
        r.flags.push_back("nonsecular_comparable_to_splitting");
    return r;
}

// ---- critical dipole ratio --------------------------------------------------------

struct CriticalRatio {
    double z_c{0.0};
    double Gamma_c{0.0}; // Gamma_-^E at z_c
    double gamma1{0.0};  // gamma_1(delta_-)
};

// z_c for fixed kappa1 kappa2 C (z-independent coupling); bath 2 sets zeta_2.
inline CriticalRatio critical_ratio(const DimerParameters& p) {
    if (!p.coupling_override) throw InvalidParameter("critical_ratio: requires a fixed coupling");
    const auto e = eigensystem(p.m1.splitting, p.m2.splitting, *p.coupling_override);
    const double w = e.delta_minus;
    if (!(w > 0.0)) throw DomainError("lower eigen-splitting must be positive");
    const double k12F = p.kappa12() * cross_F(p, w);
    const double z1 = zeta_approx(p.m1.bath, w, Process::Emission, p.photon_temperature);
    const double z2 = zeta_approx(p.m2.bath, w, Process::Emission, p.photon_temperature);
    CriticalRatio cr;
    cr.gamma1 = bare_rate(p.m1.dipole_enm, w);
    cr.z_c = std::tan(0.5 * e.chi) * k12F / z2;
    cr.Gamma_c = e.s() * e.s() * (z1 - k12F * k12F / z2) * cr.gamma1;
    return cr;
}

// Dipole ratio z = d2/d1 that minimises Gamma_-^E with d1 fixed. With
// `coupling_per_z` set, kappa1 kappa2 C = coupling_per_z * z (as for a fixed
// separation); otherwise the coupling follows the geometry.
struct EmissionMinimum {
    double z{0.0};
    double Gamma_minus_E{0.0};
};

inline EmissionMinimum minimize_emission_over_z(DimerParameters p, std::optional<double> coupling_per_z,
                                                double z_lo = 1e-3, double z_hi = 1.0) {
    const double d1 = p.m1.dipole_enm;
    auto f = [&](double z) {
        p.m2.dipole_enm = z * d1;
        if (coupling_per_z) p.coupling_override = *coupling_per_z * z;
        const auto e = eigensystem(p.m1.splitting, p.m2.splitting, p.cprime());
        return minus_emission_coefficient(p, e);
    };
    const auto m = quad::minimize_log(f, z_lo, z_hi, 64, 50);
    return {m.x, m.f};
}

} // namespace darkstate
