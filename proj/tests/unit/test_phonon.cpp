// test_phonon.cpp — spectral densities, propagator, Franck-Condon factors, zeta and detailed balance

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "darkstate/optical_rates.hpp"
#include "darkstate/phonon.hpp"
#include "darkstate/quadrature.hpp"
#include "darkstate/units.hpp"

using namespace darkstate;

namespace {

PhononBath gaussian(double lambda, double T = 300.0, ToleranceProfile p = ToleranceProfile::Accurate) {
    return PhononBath::from_reorganization(BathFamily::Gaussian, lambda, 0.3, T, p);
}

} // namespace

TEST(Bath, ReorganisationEnergyIsFirstInverseMoment) {
    for (auto fam : {BathFamily::Gaussian, BathFamily::Exponential}) {
        const auto b = PhononBath::from_reorganization(fam, 0.07, 0.25, 300.0, ToleranceProfile::Fast);
        const double hi = fam == BathFamily::Gaussian ? 3.0 : 20.0;
        const double lam = quad::adaptive([&](double w) { return w > 0 ? b.spectral_density(w) / w : 0.0; }, 0.0, hi, 1e-12);
        EXPECT_NEAR(lam, 0.07, 1e-9) << to_string(fam);
        EXPECT_NEAR(b.reorganization(), 0.07, 1e-14);
    }
}

TEST(Bath, FranckCondonAnchor) {
    // lambda = 100 meV, cutoff 0.3 eV, 300 K: 1 - kappa^2 = 0.33
    const auto b = gaussian(0.1);
    EXPECT_NEAR(b.phi0(), 0.393999, 2e-6);
    EXPECT_NEAR(b.kappa() * b.kappa(), 0.674354, 2e-6);
    EXPECT_NEAR(1.0 - b.kappa() * b.kappa(), 0.33, 5e-3);
    EXPECT_NEAR(b.phi0_zero_T(), 0.376126, 2e-6);
    EXPECT_GT(b.phi0(), b.phi0_zero_T());
}

TEST(Bath, EmptyBathIsInert) {
    const PhononBath b;
    EXPECT_TRUE(b.empty());
    EXPECT_EQ(b.kappa(), 1.0);
    EXPECT_EQ(zeta_approx(b, 2.8, Process::Emission, 6000.0), 1.0);
    const auto z = gaussian(0.0);
    EXPECT_EQ(z.kappa(), 1.0);
}

TEST(Bath, InvalidParametersThrow) {
    EXPECT_THROW(gaussian(-0.1), InvalidParameter);
    EXPECT_THROW(PhononBath::make(BathFamily::Gaussian, 1.0, 0.0, 300.0), InvalidParameter);
    EXPECT_THROW(PhononBath::make(BathFamily::Gaussian, 1.0, 0.3, -1.0), InvalidParameter);
}

TEST(Propagator, TableMatchesDirectQuadrature) {
    for (auto prof : {ToleranceProfile::Fast, ToleranceProfile::Accurate}) {
        const auto b = gaussian(0.1, 300.0, prof);
        const auto& t = b.table();
        EXPECT_NEAR(std::abs(t.at(0) - b.phi0()), 0.0, 1e-10);
        for (std::size_t k : {std::size_t{1}, std::size_t{25}, std::size_t{137}, std::size_t{400}}) {
            const double time = t.dt * static_cast<double>(k);
            EXPECT_NEAR(std::abs(t.at(k) - b.phi(time)), 0.0, 1e-8) << "t = " << time;
        }
    }
}

TEST(Propagator, ExponentialZeroTemperatureClosedForm) {
    // phi(t) = A Omega^2 / (1 + i Omega t)^2 at T = 0 for J = A w^3 e^{-w/Omega}
    const auto b = PhononBath::from_reorganization(BathFamily::Exponential, 0.05, 0.3, 0.0, ToleranceProfile::Fast);
    const double A = b.amplitude(), W = b.cutoff();
    for (double t : {0.0, 0.7, 5.0, 31.0}) {
        const cplx d{1.0, W * t};
        const cplx exact = A * W * W / (d * d);
        EXPECT_NEAR(std::abs(b.phi(t) - exact), 0.0, 1e-9 * std::abs(exact) + 1e-12) << t;
    }
}

TEST(Propagator, SymmetryAndDecay) {
    const auto b = gaussian(0.1);
    const cplx p = b.phi(1.3), m = b.phi(-1.3);
    EXPECT_NEAR(std::abs(m - std::conj(p)), 0.0, 1e-12);
    EXPECT_LT(std::abs(b.table().phi.back()), 1e-3 * b.phi0());
}

TEST(Zeta, AnchorValues) {
    const auto b = gaussian(0.1);
    EXPECT_NEAR(zeta_approx(b, 2.8, Process::Emission, 6000.0), 0.90695, 2e-5);
    EXPECT_NEAR(zeta_approx(b, 2.8, Process::Absorption, 6000.0), 0.92098, 2e-5);
}

TEST(Zeta, PhotonWeightRatio) {
    EXPECT_EQ(photon_weight_ratio(-1.0, 2.0, Process::Emission, 6000.0), 0.0);
    EXPECT_NEAR(photon_weight_ratio(2.0, 2.0, Process::Absorption, 6000.0), 1.0, 1e-15);
    const double T = 6000.0, a = 2.5, b = 2.8;
    const double exact = std::pow(a / b, 3) * units::bose(a, T) / units::bose(b, T);
    EXPECT_NEAR(photon_weight_ratio(a, b, Process::Absorption, T), exact, 1e-12 * exact);
    EXPECT_NEAR(photon_weight_ratio(a, b, Process::Emission, 0.0), std::pow(a / b, 3), 1e-15);
}

// The single-mode estimate against the full zero-temperature propagator.
TEST(Zeta, ApproximationTracksExactOracle) {
    double prev_a = 2.0, prev_e = 2.0;
    for (double lam : {0.025, 0.05, 0.1, 0.2, 0.3}) {
        const auto b = PhononBath::from_reorganization(BathFamily::Exponential, lam, 0.3, 0.0, ToleranceProfile::Fast);
        const double za = zeta_approx(b, 2.8, Process::Emission, 6000.0);
        const double ze = zeta_exact_zero_T(b, 2.8, Process::Emission, 6000.0);
        EXPECT_NEAR(za / ze, 1.0, 0.05) << "lambda " << lam;
        EXPECT_LE(za, 1.0);
        EXPECT_LE(ze, 1.0);
        EXPECT_LT(za, prev_a);
        EXPECT_LT(ze, prev_e);
        prev_a = za;
        prev_e = ze;
    }
}

TEST(Zeta, ExactOracleReducesToOneWithoutPhonons) {
    const auto b = PhononBath::from_reorganization(BathFamily::Gaussian, 1e-9, 0.3, 0.0, ToleranceProfile::Fast);
    EXPECT_NEAR(zeta_exact_zero_T(b, 2.8, Process::Emission, 6000.0), 1.0, 1e-7);
}

// Rates between the eigenstates from a thermal bath obey detailed balance.
TEST(PhononRates, DetailedBalance) {
    const auto b = gaussian(0.1);
    DimerParameters p;
    p.m1 = {2.8, 0.15, b};
    p.m2 = {2.8, 0.12, b};
    p.geometry = ideal_geometry(0.7);
    for (double cprime : {0.02, 0.075, 0.15}) {
        p.coupling_override = cprime;
        const auto r = rate_coefficients(p);
        const double eta = r.eig.eta;
        // baths at 300 K each; phi1 + phi2 is thermal at the same temperature
        const double expected = std::exp(-eta / units::thermal_energy(300.0));
        EXPECT_NEAR(r.gpn_plus_meta / r.gpn_plus_eta / expected, 1.0, 1e-3) << cprime;
        EXPECT_GT(r.gpn_plus_eta, 0.0);
    }
}

TEST(PhononRates, ScaleWithCouplingSquared) {
    const auto b = gaussian(0.1);
    DimerParameters p;
    p.m1 = {2.8, 0.15, b};
    p.m2 = {2.6, 0.12, b};
    p.geometry = ideal_geometry(0.7);
    p.coupling_override = 0.01;
    const auto r1 = rate_coefficients(p);
    p.coupling_override = 0.02;
    const auto r2 = rate_coefficients(p);
    // eta barely moves when Delta >> C', so the prefactor dominates
    const double c2s1 = std::pow(0.01 * std::cos(r1.eig.chi), 2), c2s2 = std::pow(0.02 * std::cos(r2.eig.chi), 2);
    EXPECT_NEAR(r2.zxx.eta.real() / r1.zxx.eta.real(), c2s2 / c2s1, 0.05 * c2s2 / c2s1);
}
