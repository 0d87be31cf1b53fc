// test_spectra.cpp — emission/absorption spectra, sideband fractions and dark-peak areas

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "darkstate/liouvillian.hpp"
#include "darkstate/optical_rates.hpp"
#include "darkstate/spectra.hpp"

using namespace darkstate;

namespace {

struct Setup {
    DimerParameters p;
    RateSet r;
    Eigen::VectorXcd x;
};

Setup homodimer(const PhononBath& b, double phi2 = std::numbers::pi / 2, double theta = 0.0) {
    Setup s;
    const double d1 = lifetime_to_dipole(5e-9, 2.8);
    s.p.m1 = {2.8, d1, b};
    s.p.m2 = {2.8, 0.735 * d1, b};
    const double r12 = separation_for_coupling(0.1, b.kappa() * b.kappa(), d1, d1, ideal_geometry(1).orientation());
    s.p.geometry = build_geometry(std::numbers::pi / 2, phi2, theta, r12);
    s.p.full_cross_function = true;
    s.r = rate_coefficients(s.p);
    s.x = steady_state(total_liouvillian(s.r));
    return s;
}

const PhononBath& bath100() {
    static const auto b = PhononBath::from_reorganization(BathFamily::Gaussian, 0.1, 0.3, 300.0, ToleranceProfile::Fast);
    return b;
}

} // namespace

TEST(Spectra, AbsorptionSidebandFractionIsOneMinusKappaSquared) {
    const auto s = homodimer(bath100());
    const double k2 = s.r.kappa1 * s.r.kappa2;
    const double exact = sideband_fraction_exact(s.p, s.r, s.x, Process::Absorption);
    EXPECT_NEAR(exact, 1.0 - k2, 1e-6);
    const auto sp = compute_spectra(s.p, s.r, s.x, Process::Absorption);
    EXPECT_NEAR(sideband_fraction(sp), exact, 1e-3);
    EXPECT_NEAR(sideband_fraction_homodimer(k2, 1.0, 1.0, Process::Absorption), 1.0 - k2, 1e-15);
}

TEST(Spectra, SampledAreaMatchesZeroTimeCorrelator) {
    const auto s = homodimer(bath100());
    for (auto mu : {Process::Emission, Process::Absorption})
        for (bool sb : {true, false}) {
            SpectrumOptions o;
            o.sideband = sb;
            const SpectrumModel m(s.p, s.r, s.x, mu, o);
            const auto sp = sample(m, m.default_grid(o.points, o.pole_points));
            // the window cuts the far Lorentzian tails
            EXPECT_NEAR(sp.area() / m.total_area(), 1.0, 5e-3) << to_string(mu) << " sideband " << sb;
        }
}

TEST(Spectra, NoPhononsNoSideband) {
    const auto s = homodimer(PhononBath());
    for (auto mu : {Process::Emission, Process::Absorption})
        EXPECT_NEAR(sideband_fraction_exact(s.p, s.r, s.x, mu), 0.0, 1e-12);
}

TEST(Spectra, EmissionSidebandExceedsAbsorptionForDarkState) {
    const auto s = homodimer(bath100());
    const double fe = sideband_fraction_exact(s.p, s.r, s.x, Process::Emission);
    const double fa = sideband_fraction_exact(s.p, s.r, s.x, Process::Absorption);
    EXPECT_GT(fe, fa);
    EXPECT_LT(fe, 1.0);
    // a less ideal geometry leans less on the sideband
    const auto t = homodimer(bath100(), std::numbers::pi / 2, 0.2 * std::numbers::pi);
    EXPECT_LT(sideband_fraction_exact(t.p, t.r, t.x, Process::Emission), fe);
}

TEST(Spectra, HomodimerFormulaArithmetic) {
    EXPECT_NEAR(sideband_fraction_homodimer(0.67, 1.0, 1.0, Process::Emission), 1.0, 1e-15);
    EXPECT_NEAR(sideband_fraction_homodimer(0.67, 0.0, 1.0, Process::Emission), 0.33, 1e-15);
    EXPECT_NEAR(sideband_fraction_homodimer(0.67, 1.0, -1.0, Process::Emission), 0.33 / 1.67, 1e-15);
}

TEST(Spectra, IntensityNonNegativeOnGrid) {
    const auto s = homodimer(bath100());
    for (auto mu : {Process::Emission, Process::Absorption}) {
        const SpectrumModel m(s.p, s.r, s.x, mu);
        const auto sp = sample(m, m.default_grid(2000, 200));
        const double peak = *std::max_element(sp.intensity.begin(), sp.intensity.end());
        for (double v : sp.intensity) EXPECT_GT(v, -1e-6 * peak);
    }
}

TEST(Spectra, DarkPeakSitsAtRenormalisedMinusFrequency) {
    const auto s = homodimer(bath100());
    const SpectrumModel m(s.p, s.r, s.x, Process::Absorption);
    const auto pk = dark_peak(m, s.r);
    EXPECT_GT(pk.area, 0.0);
    // the pole carries phonon shifts on top of the photon-renormalised splitting
    const auto& a = m.poles();
    const double pole = std::min(std::abs(-a(0).imag() - pk.center), std::abs(-a(1).imag() - pk.center));
    EXPECT_LT(pole, pk.width);
    EXPECT_NEAR(pk.center, s.r.delta_t_minus, 0.1 * s.r.eig.cprime);
}
