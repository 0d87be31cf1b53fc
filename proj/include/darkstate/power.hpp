// power.hpp — trap voltage, current and power; trap-rate optimisation; two-monomer benchmark

#pragma once

#include <cmath>
#include <vector>

#include "darkstate/liouvillian.hpp"
#include "darkstate/optical_rates.hpp"
#include "darkstate/quadrature.hpp"
#include "darkstate/units.hpp"

namespace darkstate {

enum class TrapEnergy { Dressed, Bare };

struct PowerOptions {
    double gamma_x{1e-7};        // extraction rate, eV
    double trap_temperature{300.0};
    PhotonVariant variant{PhotonVariant::RWA};
    TrapEnergy trap_energy{TrapEnergy::Dressed};
    double gamma_t_lo{1e-12}, gamma_t_hi{1e-2};
    int prescan{32};
};

struct PowerResult {
    double power_pW{0.0};
    double voltage_eV{0.0};
    double current_A{0.0};
    double P_alpha{0.0}, P_beta{0.0};
    double gamma_t{0.0};
    double delta_t{0.0};
    Eigen::VectorXcd state;
};

// Power for a given system generator with the trap attached. `n_levels` is the size of
// the system block; populations of trap level alpha are the first block.
inline PowerResult power_output(const Liouvillian& system, double delta_t, const TrapParameters& trap,
                                Eigen::Index source = PMM, std::vector<Eigen::Index> half_damped = {PPM, PMP}) {
    if (!(trap.gamma_t > 0.0)) throw InvalidParameter("power: trap decay rate must be > 0");
    const auto L = compose_with_trap(system, trap, source, std::move(half_damped));
    PowerResult out;
    out.state = steady_state(L);
    out.gamma_t = trap.gamma_t;
    out.delta_t = delta_t;
    const Eigen::Index n = system.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!system.population[i]) continue;
        out.P_alpha += out.state(i).real();
        out.P_beta += out.state(n + i).real();
    }
    out.P_alpha = std::max(out.P_alpha, 0.0);
    out.P_beta = std::max(out.P_beta, 0.0);
    if (out.P_alpha <= 0.0 || out.P_beta <= 0.0) return out;
    // Chemical-potential sign: V falls below delta_t as the excited trap level empties.
    out.voltage_eV = delta_t + units::thermal_energy(trap.temperature) * std::log(out.P_alpha / out.P_beta);
    const double p_eV2 = trap.gamma_t * out.P_alpha * out.voltage_eV;
    out.power_pW = units::power_eV2_to_pW(p_eV2);
    out.current_A = units::e_charge * trap.gamma_t / units::hbar * out.P_alpha;
    return out;
}

template <class Eval>
PowerResult optimize_trap_rate(Eval&& eval, const PowerOptions& o) {
    auto f = [&](double gt) { return -eval(gt).power_pW; };
    const auto m = quad::minimize_log(f, o.gamma_t_lo, o.gamma_t_hi, o.prescan, 40);
    return eval(m.x);
}

inline double trap_energy(const RateSet& r, TrapEnergy e) {
    return e == TrapEnergy::Dressed ? r.delta_t_minus : r.eig.delta_minus;
}

// Dimer power at the optimal trap rate.
inline PowerResult dimer_power(const RateSet& r, const PowerOptions& o) {
    const auto L = total_liouvillian(r, o.variant);
    const double dt = trap_energy(r, o.trap_energy);
    return optimize_trap_rate(
        [&](double gt) { return power_output(L, dt, {o.gamma_x, gt, o.trap_temperature}); }, o);
}

// Single monomer (ground, excited) with its own vibronic factors and a trap on the
// excited state.
inline PowerResult monomer_power(double gamma, double zetaA, double zetaE, double delta, double T_photon,
                                 const PowerOptions& o) {
    const double N = units::bose(delta, T_photon);
    Liouvillian L{Eigen::MatrixXcd::Zero(2, 2), {"0", "e"}, {true, true}};
    const double up = zetaA * gamma * N, down = zetaE * gamma * (1.0 + N);
    L.L(0, 0) = -up;
    L.L(1, 0) = up;
    L.L(0, 1) = down;
    L.L(1, 1) = -down;
    return optimize_trap_rate(
        [&](double gt) { return power_output(L, delta, {o.gamma_x, gt, o.trap_temperature}, 1, {}); }, o);
}

// Two independent monomers, each with its own trap optimisation; returns pW.
inline double benchmark_power(const DimerParameters& p, const RateSet& r, const PowerOptions& o) {
    const double a = monomer_power(r.gamma1, r.zetaA1, r.zetaE1, p.m1.splitting, p.photon_temperature, o).power_pW;
    const double b = monomer_power(r.gamma2, r.zetaA2, r.zetaE2, p.m2.splitting, p.photon_temperature, o).power_pW;
    return a + b;
}

} // namespace darkstate
