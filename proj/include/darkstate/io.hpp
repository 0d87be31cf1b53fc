// io.hpp — JSON and CSV serialisation of configs, rates, power results, spectra and sweeps

#pragma once

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "darkstate/config.hpp"
#include "darkstate/power.hpp"
#include "darkstate/spectra.hpp"
#include "darkstate/sweep.hpp"

namespace darkstate {

using json = nlohmann::ordered_json;

inline constexpr const char* version = "0.1.0";

namespace io_detail {

// JSON has no NaN or infinity; they become null.
inline json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
inline json cnum(cplx z) { return json{{"re", num(z.real())}, {"im", num(z.imag())}}; }
inline json ecf(const EcfSet& e) { return json{{"eta", cnum(e.eta)}, {"minus_eta", cnum(e.meta)}, {"zero", cnum(e.zero)}}; }

} // namespace io_detail

inline json to_json(const RunConfig& c) {
    using io_detail::num;
    const auto& m = c.model;
    auto axis = [](const std::vector<double>& v) {
        json a = json::array();
        for (double x : v) a.push_back(num(x));
        return a;
    };
    json j;
    j["task"] = to_string(c.task);
    j["tolerance_profile"] = to_string(m.profile);
    j["monomer1"] = {{"splitting_eV", m.delta1}, {"lifetime_s", m.lifetime1}, {"dipole_enm", m.dipole1()}};
    j["monomer2"] = {{"detuning_eV", c.point.Delta}, {"dipole_ratio", c.point.z}};
    j["bath"] = {{"family", to_string(m.family)}, {"reorganization_eV", c.point.lambda},
                 {"cutoff_eV", m.cutoff}, {"temperature_K", m.phonon_temperature}};
    j["geometry"] = {{"phi1_rad", c.point.phi1}, {"phi2_rad", c.point.phi2}, {"theta12_rad", c.point.theta12}};
    if (c.separation_nm) j["geometry"]["separation_nm"] = *c.separation_nm;
    else j["geometry"]["coupling_over_z_eV"] = c.point.cprime_over_z;
    j["photon"] = {{"temperature_K", m.photon_temperature},
                   {"variant", m.variant == PhotonVariant::RWA ? "rwa" : "nonrwa"},
                   {"full_cross_function", m.full_cross_function}};
    j["trap"] = {{"extraction_rate_eV", c.point.gamma_x}, {"temperature_K", m.trap_temperature},
                 {"energy", m.trap_energy == TrapEnergy::Dressed ? "dressed" : "bare"}};
    if (c.gamma_t) j["trap"]["transfer_rate_eV"] = *c.gamma_t;
    if (c.task == Task::Spectrum) {
        j["spectrum"] = {{"emission", c.spectrum.emission}, {"absorption", c.spectrum.absorption},
                         {"points", c.spectrum.points}, {"pole_points", c.spectrum.pole_points}};
        if (c.spectrum.window) j["spectrum"]["window_eV"] = {c.spectrum.window->first, c.spectrum.window->second};
    }
    if (c.task == Task::Sweep)
        j["sweep"] = {{"z", axis(c.grid.z)}, {"Delta_eV", axis(c.grid.Delta)}, {"lambda_eV", axis(c.grid.lambda)},
                      {"Cprime_over_z_eV", axis(c.grid.cprime_over_z)}, {"gamma_x_eV", axis(c.grid.gamma_x)},
                      {"phi1_rad", axis(c.grid.phi1)}, {"phi2_rad", axis(c.grid.phi2)},
                      {"theta12_rad", axis(c.grid.theta12)}};
    return j;
}

inline json to_json(const DimerParameters& p) {
    return {{"delta1_eV", p.m1.splitting}, {"delta2_eV", p.m2.splitting}, {"d1_enm", p.m1.dipole_enm},
            {"d2_enm", p.m2.dipole_enm}, {"r12_nm", p.geometry.r12_nm}, {"bare_coupling_eV", p.bare_coupling()},
            {"kappa1", p.m1.bath.kappa()}, {"kappa2", p.m2.bath.kappa()}, {"cprime_eV", p.cprime()},
            {"cross_function_limit", p.geometry.orientation().dot()}};
}

inline json to_json(const RateSet& r) {
    using io_detail::cnum, io_detail::ecf, io_detail::num;
    json j;
    j["eigensystem"] = {{"delta_plus_eV", r.eig.delta_plus}, {"delta_minus_eV", r.eig.delta_minus},
                        {"eta_eV", r.eig.eta}, {"chi_rad", r.eig.chi}, {"cprime_eV", r.eig.cprime},
                        {"detuning_eV", r.eig.detuning}};
    j["kappa1"] = r.kappa1;
    j["kappa2"] = r.kappa2;
    j["cross_function"] = r.cross_F;
    j["photon_occupation"] = {{"plus", r.N_plus}, {"minus", r.N_minus}};
    j["photon_coefficients_eV"] = {{"Gamma_plus_E", r.Gamma_plus_E}, {"Gamma_minus_E", r.Gamma_minus_E},
                                   {"Gamma_plus_A", r.Gamma_plus_A}, {"Gamma_minus_A", r.Gamma_minus_A}};
    j["photon_rates_eV"] = {{"gamma_plus_E", r.gamma_plus_E}, {"gamma_minus_E", r.gamma_minus_E},
                            {"gamma_plus_A", r.gamma_plus_A}, {"gamma_minus_A", r.gamma_minus_A}};
    j["nonsecular_eV"] = {{"Theta_plus", cnum(r.Theta_plus)}, {"Theta_minus", cnum(r.Theta_minus)},
                          {"ThetaT_plus", cnum(r.ThetaT_plus)}, {"ThetaT_minus", cnum(r.ThetaT_minus)},
                          {"Phi_plus", cnum(r.Phi_plus)}, {"Phi_minus", cnum(r.Phi_minus)},
                          {"nu_plus", num(r.nu_plus)}, {"nu_minus", num(r.nu_minus)}};
    j["renormalised_splittings_eV"] = {{"delta_plus", r.delta_t_plus}, {"delta_minus", r.delta_t_minus},
                                       {"delta_plus_full", r.delta_tf_plus}, {"delta_minus_full", r.delta_tf_minus}};
    j["phonon_eV"] = {{"zeta_xx", ecf(r.zxx)}, {"zeta_yy", ecf(r.zyy)}, {"zeta_zz", ecf(r.zzz)},
                      {"zeta_xz", ecf(r.zxz)}, {"gamma_pn_plus_to_minus", num(r.gpn_plus_eta)},
                      {"gamma_pn_minus_to_plus", num(r.gpn_plus_meta)}};
    j["monomers"] = {{"gamma1_eV", r.gamma1}, {"gamma2_eV", r.gamma2}, {"gamma12_eV", r.gamma12},
                     {"zetaE1", r.zetaE1}, {"zetaE2", r.zetaE2}, {"zetaA1", r.zetaA1}, {"zetaA2", r.zetaA2}};
    j["flags"] = r.flags;
    return j;
}

inline json to_json(const PowerResult& p) {
    using io_detail::num;
    return {{"power_pW", num(p.power_pW)}, {"voltage_V", num(p.voltage_eV)}, {"current_A", num(p.current_A)},
            {"P_alpha", num(p.P_alpha)}, {"P_beta", num(p.P_beta)}, {"gamma_t_eV", num(p.gamma_t)},
            {"delta_t_eV", num(p.delta_t)}};
}

// CSV preamble: version and the resolved config, one `#` line each.
inline void write_csv_metadata(std::ostream& os, const RunConfig& c) {
    os << "# darkstate " << version << '\n';
    os << "# config " << to_json(c).dump() << '\n';
}

inline constexpr const char* spectrum_csv_header = "omega_eV,intensity,variant,mu";

// `variant` is "full" (with sideband) or "zero_phonon".
inline void write_spectrum_rows(std::ostream& os, const Spectrum& s) {
    const auto old = os.precision(12);
    const char* variant = s.sideband ? "full" : "zero_phonon";
    const auto mu = to_string(s.mu);
    for (std::size_t i = 0; i < s.omega.size(); ++i)
        os << s.omega[i] << ',' << s.intensity[i] << ',' << variant << ',' << mu << '\n';
    os.precision(old);
}

} // namespace darkstate
