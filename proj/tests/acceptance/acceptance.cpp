// acceptance.cpp — end-to-end checks of the model against its anchor values, one PASS/FAIL line each

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "darkstate/liouvillian.hpp"
#include "darkstate/optical_rates.hpp"
#include "darkstate/power.hpp"
#include "darkstate/spectra.hpp"
#include "darkstate/sweep.hpp"

using namespace darkstate;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass{false};
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_s) {
        o.pass = false;
        o.detail += fmt(" [over time budget %.0f s]", budget_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %-32s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), dt);
    std::fflush(stdout);
}

ModelDefaults defaults() { return ModelDefaults{}; }

PhononBath gaussian(double lambda, ToleranceProfile prof = ToleranceProfile::Accurate) {
    return PhononBath::from_reorganization(BathFamily::Gaussian, lambda, 0.3, 300.0, prof);
}

struct Solved {
    DimerParameters p;
    RateSet r;
    Eigen::VectorXcd x;
};

Solved solve(const DimerParameters& p, PhotonVariant v = PhotonVariant::RWA) {
    Solved s{p, rate_coefficients(p), {}};
    s.x = steady_state(total_liouvillian(s.r, v));
    return s;
}

// Fig.-3 style homodimer: z fixed, separation holding C'/z = 100 meV in the ideal orientation.
DimerParameters homodimer(const PhononBath& b, double z, double phi1, double phi2, double theta12) {
    SweepPoint pt;
    pt.z = z;
    pt.lambda = b.reorganization();
    pt.phi1 = phi1;
    pt.phi2 = phi2;
    pt.theta12 = theta12;
    return make_dimer(defaults(), pt, b);
}

double ratio_at(const SweepPoint& pt, BathCache& cache) {
    const auto row = evaluate_point(defaults(), pt, cache);
    if (std::isnan(row.ratio)) throw NumericalError("power ratio unavailable", 0.0);
    return row.ratio;
}

} // namespace

int main() {
    const auto bath100 = gaussian(0.1);

    // Criterion 1: sideband fraction of absorption equals 1 - kappa^2.
    run(1, "absorption phonon fraction", 10.0, [&] {
        const auto s = solve(homodimer(bath100, 0.735, pi / 2, pi / 2, 0.0));
        const double exact = sideband_fraction_exact(s.p, s.r, s.x, Process::Absorption);
        const double numeric = sideband_fraction(compute_spectra(s.p, s.r, s.x, Process::Absorption));
        const bool ok = std::abs(numeric - 0.33) <= 0.01 && std::abs(numeric - exact) <= 1e-3;
        return Outcome{ok, fmt("f_A numeric %.4f, analytic %.4f, target 0.33 +- 0.01, |diff| <= 1e-3", numeric, exact)};
    });

    // Criterion 2: z minimising Gamma_-^E with the coupling following d2 = z d1 at fixed separation.
    run(2, "dark-state minimiser z_min", 30.0, [&] {
        const auto m = minimize_emission_over_z(homodimer(bath100, 1.0, pi / 2, pi / 2, 0.0), std::nullopt);
        const bool ok = std::abs(m.z - 0.735) <= 0.01;
        return Outcome{ok, fmt("z_min %.4f (target 0.735 +- 0.01)", m.z)};
    });

    // Criterion 3: perfect dark state at negligible phonon coupling.
    run(3, "weak-coupling critical ratio", 5.0, [&] {
        const auto b = gaussian(1e-5, ToleranceProfile::Fast);
        DimerParameters p;
        const double d1 = defaults().dipole1();
        p.m1 = {2.8, d1, b};
        p.m2 = {2.8, d1, b};
        p.geometry = ideal_geometry(0.6);
        p.coupling_override = 0.1;
        const auto cr = critical_ratio(p);
        const double rel = std::abs(cr.Gamma_c) / cr.gamma1;
        const bool ok = std::abs(cr.z_c - 1.0) <= 1e-3 && rel < 1e-3;
        return Outcome{ok, fmt("z_c %.6f (1 +- 1e-3), Gamma_c/gamma1 %.2e (< 1e-3)", cr.z_c, rel)};
    });

    // Criterion 4: strongly detuned dimer, |-> behaves as monomer 2.
    run(4, "localisation limit", 5.0, [&] {
        DimerParameters p;
        const double d1 = defaults().dipole1();
        p.m1 = {2.8, d1, bath100};
        p.m2 = {2.3, 0.5 * d1, bath100};
        p.geometry = ideal_geometry(0.6);
        p.coupling_override = 1e-3;
        p.full_cross_function = true;
        const auto r = rate_coefficients(p);
        const double w = r.eig.delta_minus;
        const double g2 = bare_rate(p.m2.dipole_enm, w);
        const double eE = std::abs(r.Gamma_minus_E / (zeta_approx(bath100, w, Process::Emission, 6000.0) * g2) - 1.0);
        const double eA = std::abs(r.Gamma_minus_A / (zeta_approx(bath100, w, Process::Absorption, 6000.0) * g2) - 1.0);
        return Outcome{eE < 0.01 && eA < 0.01, fmt("relative deviation E %.2e, A %.2e (< 1e-2)", eE, eA)};
    });

    // Criterion 5: counter-rotating photon terms barely move the steady state.
    run(5, "RWA fidelity on power grid", 120.0, [&] {
        BathCache cache(defaults());
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> uz(0.01, 1.0), ud(0.0, 0.6);
        const double lambdas[] = {1e-4, 0.1, 0.3}, couplings[] = {0.1, 0.01};
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            SweepPoint pt;
            pt.z = uz(rng);
            pt.Delta = ud(rng);
            pt.lambda = lambdas[k % 3];
            pt.cprime_over_z = couplings[(k / 3) % 2];
            const auto p = make_dimer(defaults(), pt, cache.get(pt.lambda));
            const auto r = rate_coefficients(p);
            const auto a = steady_state(total_liouvillian(r, PhotonVariant::RWA));
            const auto b = steady_state(total_liouvillian(r, PhotonVariant::NonRWA));
            for (Eigen::Index i : {P00, PPP, PMM})
                worst = std::max(worst, std::abs(b(i).real() / a(i).real() - 1.0));
        }
        return Outcome{worst < 0.01, fmt("worst relative population change %.2e over 20 points (< 1e-2)", worst)};
    });

    // Criterion 6: generator structure.
    run(6, "generator sanity", 60.0, [&] {
        BathCache cache(defaults());
        double col = 0.0, kms = 0.0, bose = 0.0, ic = 0.0;
        for (const auto& [z, D, cz] : {std::tuple{0.735, 0.0, 0.1}, std::tuple{0.01, 0.2, 0.1}, std::tuple{0.5, 0.05, 0.01}}) {
            SweepPoint pt;
            pt.z = z;
            pt.Delta = D;
            pt.cprime_over_z = cz;
            const auto p = make_dimer(defaults(), pt, cache.get(0.1));
            const auto r = rate_coefficients(p);
            for (auto v : {PhotonVariant::RWA, PhotonVariant::NonRWA}) {
                const auto L = compose_with_trap(total_liouvillian(r, v), {1e-7, 1e-7, 300.0});
                const double scale = L.L.cwiseAbs().maxCoeff();
                for (Eigen::Index j = 0; j < L.size(); ++j) {
                    cplx s{};
                    for (Eigen::Index i = 0; i < L.size(); ++i)
                        if (L.population[i]) s += L.L(i, j);
                    col = std::max(col, std::abs(s) / scale);
                }
            }
            const double expected = std::exp(-r.eig.eta / units::thermal_energy(300.0));
            kms = std::max(kms, std::abs(r.gpn_plus_meta / r.gpn_plus_eta / expected - 1.0));
            bose = std::max(bose, std::abs(r.gamma_plus_A / r.gamma_plus_E /
                                               (r.N_plus / (1.0 + r.N_plus) * r.Gamma_plus_A / r.Gamma_plus_E) - 1.0));
            bose = std::max(bose, std::abs(r.gamma_minus_A / r.gamma_minus_E /
                                               (r.N_minus / (1.0 + r.N_minus) * r.Gamma_minus_A / r.Gamma_minus_E) - 1.0));

            const auto L = total_liouvillian(r);
            const auto x = steady_state(L);
            const double t = 50.0 / (r.gamma_plus_A + r.gamma_minus_A + r.gamma_minus_E);
            for (Eigen::Index start : {P00, PPP, PMM}) {
                Eigen::VectorXcd rho0 = Eigen::VectorXcd::Zero(5);
                rho0(start) = 1.0;
                ic = std::max(ic, (time_evolve(L, rho0, {t}).front() - x).cwiseAbs().maxCoeff());
            }
        }
        const bool ok = col < 1e-12 && kms < 1e-3 && bose < 1e-12 && ic < 1e-8;
        return Outcome{ok, fmt("column sums %.1e, KMS %.1e, Bose %.1e, initial state %.1e", col, kms, bose, ic)};
    });

    // Criterion 7: single-mode zeta estimate against the full zero-temperature propagator.
    run(7, "zeta oracle agreement", 300.0, [&] {
        double worst = 0.0, prev_a = 2.0, prev_e = 2.0;
        bool ordered = true;
        for (double lam : {0.025, 0.05, 0.1, 0.2, 0.3}) {
            const auto b = PhononBath::from_reorganization(BathFamily::Exponential, lam, 0.3, 0.0, ToleranceProfile::Accurate);
            const double za = zeta_approx(b, 2.8, Process::Emission, 6000.0);
            const double ze = zeta_exact_zero_T(b, 2.8, Process::Emission, 6000.0);
            worst = std::max(worst, std::abs(za / ze - 1.0));
            ordered = ordered && za <= 1.0 && ze <= 1.0 && za < prev_a && ze < prev_e;
            prev_a = za;
            prev_e = ze;
        }
        return Outcome{worst < 0.2 && ordered, fmt("worst relative gap %.3f (< 0.2), bounded and decreasing: %s", worst,
                                                   ordered ? "yes" : "no")};
    });

    // Criterion 8: emission sideband fraction against the homodimer closed form.
    run(8, "homodimer emission sideband", 300.0, [&] {
        const double angles[][3] = {{pi / 2, pi / 2, 0.0}, {pi / 2, pi / 2, 0.2 * pi}, {0.6 * pi, 0.3 * pi, 0.2 * pi}};
        bool ok = true;
        std::string d;
        for (const auto& a : angles) {
            const auto s = solve(homodimer(bath100, 0.735, a[0], a[1], a[2]));
            const double num = sideband_fraction(compute_spectra(s.p, s.r, s.x, Process::Emission));
            const double k2 = s.r.kappa1 * s.r.kappa2;
            const double formula =
                sideband_fraction_homodimer(k2, s.r.cross_F, s.r.eig.cprime >= 0.0 ? 1.0 : -1.0, Process::Emission);
            const bool ideal = a[2] == 0.0;
            ok = ok && std::abs(num / formula - 1.0) <= 0.05 && (!ideal || std::abs(num - 1.0) <= 0.02);
            d += fmt("F %.3f: %.3f vs %.3f; ", s.r.cross_F, num, formula);
        }
        return Outcome{ok, d + "need 5% and ideal 1.00 +- 0.02"};
    });

    // Criterion 9: power ratio against two independent monomers.
    run(9, "power phenomenology", 600.0, [&] {
        BathCache cache(defaults());
        SweepPoint he1;
        he1.z = 0.01;
        he1.Delta = 0.2;
        he1.lambda = 0.1;
        he1.cprime_over_z = 0.1;
        he1.gamma_x = 1e-7;

        auto weak = homodimer(cache.get(1e-4), 1.0, pi / 2, pi / 2, 0.0);
        const double zmin = std::min(1.0, minimize_emission_over_z(weak, std::nullopt).z);
        SweepPoint ho1 = he1;
        ho1.z = zmin;
        ho1.Delta = 0.0;
        ho1.lambda = 1e-4;
        SweepPoint ho2 = ho1;
        ho2.z = 1.0;
        ho2.cprime_over_z = 0.01;
        SweepPoint ho2_strong = ho2;
        ho2_strong.z = 0.735;
        ho2_strong.lambda = 0.1;
        SweepPoint he2 = he1;
        he2.z = 0.1;
        he2.Delta = 0.15;
        he2.cprime_over_z = 0.01;

        const double r_he1 = ratio_at(he1, cache), r_ho1 = ratio_at(ho1, cache), r_ho2 = ratio_at(ho2, cache);
        const double r_ho2s = ratio_at(ho2_strong, cache);
        const bool a = r_he1 > 1.0, b = r_ho1 > 1.0 && r_ho1 > r_ho2, c = r_ho2s < 1.0;
        bool dd = true;
        std::string d = fmt("(a) HE1 %.3f; (b) HO1 z %.3f %.3f vs HO2 %.3f; (c) HO2 strong phonons %.3f; (d)", r_he1, zmin,
                            r_ho1, r_ho2, r_ho2s);
        const std::pair<const char*, SweepPoint> maxima[] = {{"HO1", ho1}, {"HO2", ho2}, {"HE1", he1}, {"HE2", he2}};
        for (auto [name, pt] : maxima) {
            const double lo = ratio_at(pt, cache);
            pt.gamma_x = 1e-3;
            const double hi = ratio_at(pt, cache);
            dd = dd && hi < lo;
            d += fmt(" %s %.3f->%.3f", name, lo, hi);
        }
        auto s = ho2_strong;
        s.gamma_x = 1e-3;
        const double r_ho2s_hi = ratio_at(s, cache);
        d += fmt("; info: HO2 strong phonons %.3f->%.3f", r_ho2s, r_ho2s_hi);
        return Outcome{a && b && c && dd, fmt("[a %s b %s c %s d %s] ", a ? "ok" : "no", b ? "ok" : "no", c ? "ok" : "no",
                                              dd ? "ok" : "no") + d};
    });

    // Criterion 10: unit conversion and separation anchors.
    run(10, "unit anchors", 5.0, [&] {
        const double d1 = lifetime_to_dipole(5e-9, 2.8);
        bool ok = std::abs(d1 / 0.15 - 1.0) <= 0.05;
        std::string d = fmt("d1 %.4f e nm; r12", d1);
        const double expected[2][3] = {{0.69, 0.61, 0.47}, {1.49, 1.32, 1.02}};
        const double lambdas[] = {1e-4, 0.1, 0.3}, targets[] = {0.1, 0.01};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) {
                const auto b = gaussian(lambdas[j], ToleranceProfile::Fast);
                const double r = separation_for_coupling(targets[i], b.kappa() * b.kappa(), d1, d1,
                                                         ideal_geometry(1.0).orientation());
                ok = ok && std::abs(r / expected[i][j] - 1.0) <= 0.02;
                d += fmt(" %.3f", r);
            }
        return Outcome{ok, d + " nm (within 2%)"};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
