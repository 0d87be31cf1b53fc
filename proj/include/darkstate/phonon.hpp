// phonon.hpp — super-ohmic phonon baths, propagators, correlation kernels and the zeta factor

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "darkstate/error.hpp"
#include "darkstate/quadrature.hpp"
#include "darkstate/units.hpp"

namespace darkstate {

using cplx = std::complex<double>;

enum class BathFamily { Gaussian, Exponential };
enum class ToleranceProfile { Fast, Accurate };

inline std::string to_string(BathFamily f) { return f == BathFamily::Gaussian ? "gaussian" : "exponential"; }
inline std::string to_string(ToleranceProfile p) { return p == ToleranceProfile::Fast ? "fast" : "accurate"; }

// phi(t) sampled at t_k = k dt, k = 0 .. size-1; zero beyond the last sample.
struct PropagatorTable {
    double dt{0.02};
    std::vector<cplx> phi;
    cplx at(std::size_t k) const { return k < phi.size() ? phi[k] : cplx{}; }
};

struct GridSettings {
    double dt;        // time step, 1/eV
    double t_cap;     // longest horizon, 1/eV
    double tail_tol;  // |phi| below tail_tol * phi(0) ends the table
};

inline GridSettings grid_settings(ToleranceProfile p) {
    if (p == ToleranceProfile::Fast) return {0.04, 600.0, 1e-7};
    return {0.02, 1200.0, 1e-9};
}

class PhononBath {
public:
    // Empty bath (J = 0); kappa = 1, no phonon processes.
    PhononBath() : table_(std::make_shared<const PropagatorTable>(PropagatorTable{grid_settings(ToleranceProfile::Accurate).dt, {cplx{}, cplx{}}})) {}

    // J(w) = A w^3 exp(-(w/wc)^2) or A w^3 exp(-w/wc); T in kelvin, may be 0.
    static PhononBath make(BathFamily family, double amplitude, double cutoff, double T,
                           ToleranceProfile profile = ToleranceProfile::Accurate) {
        if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw InvalidParameter("bath: amplitude must be >= 0");
        if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw InvalidParameter("bath: cutoff must be > 0");
        if (!(T >= 0.0) || !std::isfinite(T)) throw InvalidParameter("bath: temperature must be >= 0");
        PhononBath b;
        b.family_ = family;
        b.A_ = amplitude;
        b.wc_ = cutoff;
        b.T_ = T;
        b.profile_ = profile;
        b.phi0_ = b.phi_zero(T);
        b.phi0_T0_ = b.phi_zero(0.0);
        b.table_ = std::make_shared<const PropagatorTable>(b.build_table());
        return b;
    }

    static PhononBath from_reorganization(BathFamily family, double lambda, double cutoff, double T,
                                          ToleranceProfile profile = ToleranceProfile::Accurate) {
        if (!(lambda >= 0.0)) throw InvalidParameter("bath: reorganisation energy must be >= 0");
        return make(family, amplitude_for(family, lambda, cutoff), cutoff, T, profile);
    }

    static double amplitude_for(BathFamily family, double lambda, double cutoff) {
        if (!(cutoff > 0.0)) throw InvalidParameter("bath: cutoff must be > 0");
        const double c3 = cutoff * cutoff * cutoff;
        return family == BathFamily::Gaussian ? 4.0 * lambda / (std::sqrt(std::numbers::pi) * c3)
                                              : lambda / (2.0 * c3);
    }

    BathFamily family() const { return family_; }
    double amplitude() const { return A_; }
    double cutoff() const { return wc_; }
    double temperature() const { return T_; }
    ToleranceProfile profile() const { return profile_; }

    bool empty() const { return A_ == 0.0; }

    double spectral_density(double w) const {
        if (w <= 0.0) return 0.0;
        return A_ * w * w * w * envelope(w);
    }
    // lambda = int J(w)/w dw
    double reorganization() const {
        const double c3 = wc_ * wc_ * wc_;
        return family_ == BathFamily::Gaussian ? A_ * std::sqrt(std::numbers::pi) * c3 / 4.0 : 2.0 * A_ * c3;
    }
    double phi0() const { return phi0_; }
    double phi0_zero_T() const { return phi0_T0_; }
    double kappa() const { return std::exp(-0.5 * phi0_); }
    double kappa_zero_T() const { return std::exp(-0.5 * phi0_T0_); }

    // phi(t) by adaptive quadrature; reference path, slow.
    cplx phi(double t) const {
        const double wmax = max_frequency();
        const int panels = std::max(16, static_cast<int>(std::ceil(wmax * std::abs(t) / 3.0)) + 16);
        const auto rule = quad::composite_gauss(0.0, wmax, panels);
        cplx s{};
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double w = rule.x[i];
            const double r = rho(w);
            s += rule.w[i] * r * cplx{std::cos(w * t) * coth_factor(w, T_), -std::sin(w * t)};
        }
        return s;
    }

    const PropagatorTable& table() const { return *table_; }

private:
    BathFamily family_{BathFamily::Gaussian};
    double A_{0.0}, wc_{0.3}, T_{300.0};
    ToleranceProfile profile_{ToleranceProfile::Accurate};
    double phi0_{0.0}, phi0_T0_{0.0};
    std::shared_ptr<const PropagatorTable> table_;

    double envelope(double w) const {
        const double u = w / wc_;
        return family_ == BathFamily::Gaussian ? std::exp(-u * u) : std::exp(-u);
    }
    double max_frequency() const { return family_ == BathFamily::Gaussian ? 6.5 * wc_ : 42.0 * wc_; }
    // J(w)/w^2
    double rho(double w) const { return A_ * w * envelope(w); }

    // coth(beta w / 2), with T = 0 -> 1
    static double coth_factor(double w, double T) {
        if (T <= 0.0) return 1.0;
        const double x = w / (2.0 * units::k_B * T);
        if (x > 40.0) return 1.0;
        return 1.0 / std::tanh(x);
    }
    // rho(w) * (coth - 1), finite as w -> 0
    double rho_thermal(double w, double T) const {
        if (T <= 0.0) return 0.0;
        const double beta = 1.0 / (units::k_B * T);
        const double bw = beta * w;
        if (bw > 700.0) return 0.0;
        const double n2 = bw < 1e-8 ? 2.0 / beta : 2.0 * w / std::expm1(bw);
        return A_ * envelope(w) * n2;
    }

    double phi_zero(double T) const {
        if (family_ == BathFamily::Gaussian && T <= 0.0) return A_ * wc_ * wc_ / 2.0;
        if (family_ == BathFamily::Exponential && T <= 0.0) return A_ * wc_ * wc_;
        const double wmax = max_frequency();
        auto f = [&](double w) { return rho(w) + rho_thermal(w, T); };
        return quad::adaptive(f, 0.0, wmax, 1e-13);
    }

    PropagatorTable build_table() const {
        const auto gs = grid_settings(profile_);
        PropagatorTable tab;
        tab.dt = gs.dt;
        if (A_ == 0.0) {
            tab.phi.assign(2, cplx{});
            return tab;
        }
        const bool closed_zero_T = family_ == BathFamily::Exponential;
        const double wmax_full = max_frequency();
        const double wmax_th = T_ > 0.0 ? std::min(wmax_full, 45.0 * units::k_B * T_) : 0.0;
        const double scale = std::max(phi0_, 1e-300);
        const std::size_t block = 1024;
        std::size_t k = 0;
        while (true) {
            const double t_end = gs.dt * static_cast<double>(k + block);
            // rules fine enough for the end of the block
            const double wmax = closed_zero_T ? wmax_th : wmax_full;
            quad::Rule rule;
            if (wmax > 0.0)
                rule = quad::composite_gauss(0.0, wmax, std::max(8, static_cast<int>(std::ceil(wmax * t_end / 4.0)) + 8));
            std::vector<double> wc(rule.size()), ws(rule.size());
            for (std::size_t i = 0; i < rule.size(); ++i) {
                const double w = rule.x[i];
                if (closed_zero_T) {
                    wc[i] = rule.w[i] * rho_thermal(w, T_);
                    ws[i] = 0.0;
                } else {
                    wc[i] = rule.w[i] * (rho(w) + rho_thermal(w, T_));
                    ws[i] = rule.w[i] * rho(w);
                }
            }
            double block_max = 0.0;
            for (std::size_t j = 0; j < block; ++j, ++k) {
                const double t = gs.dt * static_cast<double>(k);
                cplx v{};
                if (closed_zero_T) {
                    const cplx den = cplx{1.0, wc_ * t};
                    v = A_ * wc_ * wc_ / (den * den);
                }
                double re = 0.0, im = 0.0;
                for (std::size_t i = 0; i < rule.size(); ++i) {
                    const double ph = rule.x[i] * t;
                    re += wc[i] * std::cos(ph);
                    im -= ws[i] * std::sin(ph);
                }
                v += cplx{re, im};
                tab.phi.push_back(v);
                block_max = std::max(block_max, std::abs(v));
            }
            if (block_max < gs.tail_tol * scale) break;
            if (t_end >= gs.t_cap) break;
        }
        while (tab.phi.size() > 2 && std::abs(tab.phi.back()) < gs.tail_tol * scale * 1e-3) tab.phi.pop_back();
        return tab;
    }
};

// Fourier-Laplace transforms of the two polaron correlation shapes, for the combined
// propagator phi = phi1 + phi2 of two independent baths:
//   sinh2(w) = int_0^inf e^{iwt} sinh^2(phi(t)/2) dt,  sinh1(w) = int_0^inf e^{iwt} sinh(phi(t)) dt
struct PolaronKernels {
    cplx sinh2;
    cplx sinh1;
};

class PairKernel {
public:
    PairKernel(const PhononBath& b1, const PhononBath& b2) {
        const auto& t1 = b1.table();
        const auto& t2 = b2.table();
        if (std::abs(t1.dt - t2.dt) > 1e-15)
            throw InvalidParameter("pair kernel: baths must share a tolerance profile");
        dt_ = t1.dt;
        const std::size_t n = std::max(t1.phi.size(), t2.phi.size());
        k2_.resize(n);
        k1_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx p = t1.at(k) + t2.at(k);
            const cplx s = std::sinh(0.5 * p);
            k2_[k] = s * s;
            k1_[k] = std::sinh(p);
        }
        w_ = quad::simpson_weights(n, dt_);
    }
    PolaronKernels at(double omega) const {
        const cplx s{0.0, omega};
        return {quad::laplace_sum(w_, k2_, s, dt_), quad::laplace_sum(w_, k1_, s, dt_)};
    }

private:
    double dt_{0.02};
    std::vector<cplx> k2_, k1_;
    std::vector<double> w_;
};

// ---- zeta factor ----------------------------------------------------------------

enum class Process { Absorption, Emission };

// Ratio W(a)/W(b) of photon weights W(v) = v^3 (1 + N(v)) for emission and v^3 N(v)
// for absorption; zero when a <= 0.
inline double photon_weight_ratio(double a, double b, Process p, double T_photon) {
    if (a <= 0.0) return 0.0;
    const double cube = (a / b) * (a / b) * (a / b);
    if (T_photon <= 0.0) return p == Process::Emission ? cube : 0.0;
    const double beta = 1.0 / (units::k_B * T_photon);
    if (p == Process::Emission) {
        // (1 + N(a)) / (1 + N(b)) = (1 - e^{-beta b}) / (1 - e^{-beta a})
        return cube * (-std::expm1(-beta * b)) / (-std::expm1(-beta * a));
    }
    // N(a) / N(b) = e^{-beta (a - b)} (1 - e^{-beta b}) / (1 - e^{-beta a})
    return cube * std::exp(-beta * (a - b)) * (-std::expm1(-beta * b)) / (-std::expm1(-beta * a));
}

// Single-mode (zero phonon temperature) estimate of the vibronic enhancement factor
// zeta at optical frequency omega. Emission samples lower frequencies, absorption higher.
inline double zeta_approx(const PhononBath& bath, double omega, Process p, double T_photon) {
    if (!(omega > 0.0)) throw DomainError("zeta_approx: omega must be > 0");
    const double phi0 = bath.phi0_zero_T();
    const double k2 = std::exp(-phi0);
    if (phi0 <= 0.0) return 1.0;
    const double wt = bath.reorganization() / phi0; // effective mode frequency
    double sum = 1.0, term = 1.0;
    for (int n = 1; n < 400; ++n) {
        term *= phi0 / n;
        const double v = p == Process::Emission ? omega - n * wt : omega + n * wt;
        const double r = photon_weight_ratio(v, omega, p, T_photon);
        sum += term * r;
        if (term * std::max(r, 1.0) < 1e-16 * sum) break;
        if (p == Process::Emission && v <= 0.0) break;
    }
    return k2 * sum;
}

// Zeta from the full phonon propagator at zero temperature (reference for zeta_approx).
// The t integral is split as e^phi = 1 + phi + (e^phi - 1 - phi); the one-phonon part is
// pi J(e)/e^2 exactly, the remainder is integrated on the time grid.
inline double zeta_exact_zero_T(const PhononBath& bath0, double omega, Process p, double T_photon) {
    if (!(omega > 0.0)) throw DomainError("zeta_exact_zero_T: omega must be > 0");
    const PhononBath bath = bath0.temperature() == 0.0
                                ? bath0
                                : PhononBath::make(bath0.family(), bath0.amplitude(), bath0.cutoff(), 0.0, bath0.profile());
    const auto& tab = bath.table();
    std::vector<cplx> rem(tab.phi.size());
    for (std::size_t k = 0; k < rem.size(); ++k) {
        const cplx f = tab.phi[k];
        rem[k] = std::abs(f) < 1e-4 ? f * f / 2.0 + f * f * f / 6.0 + f * f * f * f / 24.0 : std::exp(f) - 1.0 - f;
    }
    const auto w = quad::simpson_weights(rem.size(), tab.dt);
    auto re_k = [&](double e) {
        const double one = e > 0.0 ? std::numbers::pi * bath.spectral_density(e) / (e * e) : 0.0;
        return one + quad::laplace_sum(w, rem, cplx{0.0, e}, tab.dt).real();
    };
    const double emax = p == Process::Emission
                            ? omega
                            : (bath.family() == BathFamily::Gaussian ? 12.0 : 60.0) * bath.cutoff();
    const auto rule = quad::composite_gauss(0.0, emax, 48);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double e = rule.x[i];
        const double v = p == Process::Emission ? omega - e : omega + e;
        acc += rule.w[i] * photon_weight_ratio(v, omega, p, T_photon) * re_k(e);
    }
    return bath.kappa_zero_T() * bath.kappa_zero_T() * (1.0 + acc / std::numbers::pi);
}

} // namespace darkstate
