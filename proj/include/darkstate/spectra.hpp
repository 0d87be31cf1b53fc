// spectra.hpp — absorption/emission spectra from the quantum regression theorem, sideband fractions, dark-peak intensity

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "darkstate/error.hpp"
#include "darkstate/liouvillian.hpp"
#include "darkstate/optical_rates.hpp"
#include "darkstate/quadrature.hpp"

namespace darkstate {

inline std::string to_string(Process p) { return p == Process::Emission ? "emission" : "absorption"; }

// Generator of the optical coherences (rho_{+0}, rho_{-0}) that carry the two-time
// correlation functions. Built from the same rates as the population generator.
inline Eigen::Matrix2cd optical_coherence_generator(const RateSet& r, PhotonVariant v = PhotonVariant::RWA) {
    const cplx I{0.0, 1.0};
    const bool f = v == PhotonVariant::NonRWA;
    const double dp = f ? r.delta_tf_plus : r.delta_t_plus;
    const double dm = f ? r.delta_tf_minus : r.delta_t_minus;
    const double ground = 0.5 * (r.gamma_plus_A + r.gamma_minus_A);
    const cplx Mpp = r.zxx.eta + r.zyy.eta + r.zzz.zero;
    const cplx Mmm = r.zxx.meta + r.zyy.meta + r.zzz.zero;
    const cplx Mpm = r.zxz.meta - r.zxz.zero;
    const cplx Mmp = r.zxz.zero - r.zxz.eta;
    const cplx Fp = f ? I * r.Phi_plus.real() : cplx{};
    const cplx Fm = f ? I * r.Phi_minus.real() : cplx{};
    Eigen::Matrix2cd A;
    A(0, 0) = -I * dp - 0.5 * r.gamma_plus_E - ground - Mpp;
    A(1, 1) = -I * dm - 0.5 * r.gamma_minus_E - ground - Mmm;
    A(0, 1) = -r.Theta_minus - Fp - Mpm;
    A(1, 0) = -r.Theta_plus - Fm - Mmp;
    return A;
}

// <a|j> for eigenstate a in {+, -} (rows) and monomer j in {1, 2} (columns)
inline Eigen::Matrix2d eigen_overlaps(const EigenSystem& e) {
    Eigen::Matrix2d U;
    U << e.c(), e.s(), -e.s(), e.c();
    return U;
}

struct SpectrumOptions {
    bool sideband{true};
    PhotonVariant variant{PhotonVariant::RWA};
    std::optional<std::pair<double, double>> window; // default depends on the process
    int points{4000};
    int pole_points{400};
};

// S(w) = Re int_0^inf e^{i w t} sum_ij gamma_ij g_ij(t) dt, decomposed into the exact
// zero-phonon Lorentzians and a smooth phonon-sideband part.
class SpectrumModel {
public:
    SpectrumModel(const DimerParameters& p, const RateSet& r, const Eigen::VectorXcd& rho_ss, Process mu,
                  const SpectrumOptions& opt = {})
        : mu_(mu), sideband_(opt.sideband) {
        const Eigen::Matrix2cd A = optical_coherence_generator(r, opt.variant);
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(A);
        if (es.info() != Eigen::Success) throw NumericalError("spectrum: optical block eigensolve failed", 0.0);
        a_ = es.eigenvalues();
        const Eigen::Matrix2cd W = es.eigenvectors();
        const Eigen::Matrix2cd Winv = W.inverse();
        const Eigen::Matrix2d U = eigen_overlaps(r.eig);
        const std::array<double, 2> kap{r.kappa1, r.kappa2};
        const double gam[2][2] = {{r.gamma1, r.gamma12}, {r.gamma12, r.gamma2}};

        for (int i = 0; i < 2; ++i) {
            Eigen::Vector2cd c0;
            if (mu == Process::Emission) {
                c0(0) = rho_ss(PPP) * U(0, i) + rho_ss(PPM) * U(1, i);
                c0(1) = rho_ss(PMP) * U(0, i) + rho_ss(PMM) * U(1, i);
            } else {
                c0(0) = U(0, i) * rho_ss(P00);
                c0(1) = U(1, i) * rho_ss(P00);
            }
            const Eigen::Vector2cd m = Winv * c0; // mode amplitudes
            for (int j = 0; j < 2; ++j) {
                const double pref = gam[i][j] * kap[i] * kap[j];
                for (int k = 0; k < 2; ++k) {
                    const cplx u = pref * (U(0, j) * W(0, k) + U(1, j) * W(1, k)) * m(k);
                    zpl_[k] += u;
                    g0_ += u;
                    if (i == j) diag_[j][k] += u;
                }
            }
        }
        // sideband kernels h_j(t) = exp(phi_j) - 1 (absorption) or exp(conj phi_j) - 1
        for (int j = 0; j < 2; ++j) {
            const auto& tab = (j == 0 ? p.m1.bath : p.m2.bath).table();
            dt_ = tab.dt;
            h_[j].resize(tab.phi.size());
            for (std::size_t t = 0; t < tab.phi.size(); ++t) {
                const cplx f = mu == Process::Emission ? std::conj(tab.phi[t]) : tab.phi[t];
                h_[j][t] = std::exp(f) - 1.0;
            }
            w_[j] = quad::simpson_weights(h_[j].size(), dt_);
        }
        const double lo = std::min(r.eig.delta_minus, r.delta_t_minus);
        const double hi = std::max(r.eig.delta_plus, r.delta_t_plus);
        if (opt.window) {
            window_ = *opt.window;
        } else if (mu == Process::Emission) {
            window_ = {lo - 1.5, hi + 0.5};
        } else {
            window_ = {lo - 0.5, hi + 1.5};
        }
        window_.first = std::max(window_.first, 1e-3);
    }

    Process process() const { return mu_; }
    bool sideband() const { return sideband_; }
    std::pair<double, double> window() const { return window_; }
    const Eigen::Vector2cd& poles() const { return a_; }

    // Zero-phonon part of the spectrum (exact Lorentzians).
    double zero_phonon(double w) const {
        double s = 0.0;
        for (int k = 0; k < 2; ++k) s += (-zpl_[k] / (a_(k) + cplx{0.0, w})).real();
        return s;
    }
    double phonon_sideband(double w) const {
        if (!sideband_) return 0.0;
        double s = 0.0;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (diag_[j][k] == cplx{}) continue;
                s += (diag_[j][k] * quad::laplace_sum(w_[j], h_[j], cplx{0.0, w} + a_(k), dt_)).real();
            }
        return s;
    }
    double operator()(double w) const { return zero_phonon(w) + phonon_sideband(w); }

    // int S dw over all frequencies = pi Re sum_ij gamma_ij g_ij(0); the sideband factor is 1 at t = 0
    // when included and kappa^2 otherwise, so both variants follow from the stored amplitudes.
    double total_area() const {
        double s = g0_.real();
        if (sideband_)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) s += (diag_[j][k] * h_[j].front()).real();
        return std::numbers::pi * s;
    }

    // Uniform grid on the window refined with Lorentzian-adapted points at each pole.
    std::vector<double> default_grid(int points, int pole_points) const {
        std::vector<double> g;
        g.reserve(points + 2 * pole_points);
        for (int i = 0; i < points; ++i)
            g.push_back(window_.first + (window_.second - window_.first) * i / (points - 1));
        for (int k = 0; k < 2; ++k) {
            const double c = -a_(k).imag(), hw = std::max(-a_(k).real(), 1e-15);
            for (int i = 1; i < pole_points; ++i) {
                const double th = -0.5 * std::numbers::pi + std::numbers::pi * i / pole_points;
                const double x = c + hw * std::tan(th);
                if (x > window_.first && x < window_.second) g.push_back(x);
            }
        }
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end(), [](double x, double y) { return std::abs(x - y) < 1e-15; }), g.end());
        return g;
    }

private:
    Process mu_;
    bool sideband_;
    Eigen::Vector2cd a_;
    std::array<cplx, 2> zpl_{};
    std::array<std::array<cplx, 2>, 2> diag_{};
    cplx g0_{};
    std::array<std::vector<cplx>, 2> h_;
    std::array<std::vector<double>, 2> w_;
    double dt_{0.02};
    std::pair<double, double> window_{0.0, 1.0};
};

struct Spectrum {
    Process mu{Process::Emission};
    bool sideband{true};
    std::vector<double> omega;
    std::vector<double> intensity;

    double area() const {
        double a = 0.0;
        for (std::size_t i = 1; i < omega.size(); ++i)
            a += 0.5 * (intensity[i] + intensity[i - 1]) * (omega[i] - omega[i - 1]);
        return a;
    }
};

inline Spectrum sample(const SpectrumModel& m, const std::vector<double>& grid) {
    Spectrum s{m.process(), m.sideband(), grid, {}};
    s.intensity.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) s.intensity[i] = m(grid[i]);
    return s;
}

struct SpectrumPair {
    Spectrum with_sideband, without_sideband;
};

// Spectra with and without the phonon sideband on a shared grid.
inline SpectrumPair compute_spectra(const DimerParameters& p, const RateSet& r, const Eigen::VectorXcd& rho_ss,
                                    Process mu, SpectrumOptions opt = {}) {
    opt.sideband = true;
    const SpectrumModel with(p, r, rho_ss, mu, opt);
    opt.sideband = false;
    const SpectrumModel without(p, r, rho_ss, mu, opt);
    const auto grid = with.default_grid(opt.points, opt.pole_points);
    return {sample(with, grid), sample(without, grid)};
}

// Fraction of the spectral area carried by the phonon sideband, from sampled spectra.
inline double sideband_fraction(const SpectrumPair& s) {
    const double at = s.with_sideband.area();
    if (!(std::abs(at) > 0.0)) throw DegenerateSpectrum("sideband fraction: zero total area", at);
    return (at - s.without_sideband.area()) / at;
}

// Same fraction from the t = 0 correlators (no frequency integration).
inline double sideband_fraction_exact(const DimerParameters& p, const RateSet& r, const Eigen::VectorXcd& rho_ss,
                                      Process mu, PhotonVariant v = PhotonVariant::RWA) {
    SpectrumOptions o;
    o.variant = v;
    o.sideband = true;
    const double at = SpectrumModel(p, r, rho_ss, mu, o).total_area();
    o.sideband = false;
    const double ag = SpectrumModel(p, r, rho_ss, mu, o).total_area();
    if (!(std::abs(at) > 0.0)) throw DegenerateSpectrum("sideband fraction: zero total area", at);
    return (at - ag) / at;
}

// Closed-form estimates of the sideband fraction, f = (1 - kappa^2) / (1 + kappa^2 nu).
inline double sideband_fraction_homodimer(double kappa2, double F, double sign_C, Process mu) {
    if (mu == Process::Absorption) return 1.0 - kappa2;
    return (1.0 - kappa2) / (1.0 - kappa2 * F * sign_C);
}

inline double sideband_fraction_heterodimer(const RateSet& r, const Eigen::VectorXcd& rho_ss) {
    const double kappa2 = r.kappa1 * r.kappa2;
    const double eps = r.eig.detuning != 0.0 ? r.eig.cprime / r.eig.detuning : 0.0;
    const double nu = -r.gamma12 * (eps * rho_ss(PMM).real() - 2.0 * rho_ss(PPM).real()) /
                      (rho_ss(PPP).real() * r.gamma1 + rho_ss(PMM).real() * r.gamma2);
    return (1.0 - kappa2) / (1.0 + kappa2 * nu);
}

// Area of the peak nearest `expected` above its half-maximum chord.
struct PeakArea {
    double center{0.0};
    double height{0.0};
    double width{0.0}; // full width at half maximum
    double area{0.0};
};

inline PeakArea peak_area_above_half_max(const SpectrumModel& m, double expected, double search_halfwidth) {
    // locate the maximum on a fine local grid, then polish by golden section
    const int n = 4001;
    double best = expected, fbest = -1e300;
    for (int i = 0; i < n; ++i) {
        const double x = expected - search_halfwidth + 2.0 * search_halfwidth * i / (n - 1);
        const double f = m(x);
        if (f > fbest) fbest = f, best = x;
    }
    const double h = 2.0 * search_halfwidth / (n - 1);
    auto res = boost::math::tools::brent_find_minima([&](double x) { return -m(x); }, best - h, best + h, 50);
    const double c = res.first, peak = -res.second;
    if (!(peak > 0.0)) throw PeakNotFound("no positive peak near the expected frequency", peak);
    const double half = 0.5 * peak;
    auto crossing = [&](double dir) {
        double step = std::max(h, 1e-12), inner = c, outer = c + dir * step;
        while (m(outer) > half) {
            inner = outer;
            step *= 2.0;
            outer = c + dir * step;
            if (step > 4.0 * search_halfwidth + 1.0) throw PeakNotFound("half-maximum not reached", step);
        }
        for (int it = 0; it < 200 && std::abs(outer - inner) > 1e-15 * std::abs(c); ++it) {
            const double mid = 0.5 * (inner + outer);
            (m(mid) > half ? inner : outer) = mid;
        }
        return 0.5 * (inner + outer);
    };
    const double l = crossing(-1.0), rr = crossing(1.0);
    // tan-mapped nodes cluster near the centre where the Lorentzian core lives
    const double hw = 0.5 * (rr - l);
    const auto rule = quad::composite_gauss(-1.0, 1.0, 64);
    double area = 0.0;
    const double tmax = std::atan2(rr - c, hw), tmin = std::atan2(l - c, hw);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double th = tmin + (tmax - tmin) * 0.5 * (rule.x[i] + 1.0);
        const double x = c + hw * std::tan(th);
        const double jac = hw / (std::cos(th) * std::cos(th)) * 0.5 * (tmax - tmin);
        area += rule.w[i] * jac * (m(x) - half);
    }
    return {c, peak, rr - l, area};
}

// Dark-state peak: located near the renormalised |-> frequency, searched within a few
// linewidths of the |-> pole.
inline PeakArea dark_peak(const SpectrumModel& m, const RateSet& r) {
    const auto& a = m.poles();
    int k = std::abs(-a(0).imag() - r.delta_t_minus) < std::abs(-a(1).imag() - r.delta_t_minus) ? 0 : 1;
    const double center = -a(k).imag();
    const double width = std::max(-a(k).real(), 1e-12);
    return peak_area_above_half_max(m, center, 3.0 * width);
}

} // namespace darkstate
