// sweep.hpp — model defaults, per-point dimer construction and parallel parameter sweeps

#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "darkstate/geometry.hpp"
#include "darkstate/optical_rates.hpp"
#include "darkstate/phonon.hpp"
#include "darkstate/power.hpp"

namespace darkstate {

struct ModelDefaults {
    double delta1{2.8};              // monomer-1 polaron splitting, eV
    double lifetime1{5e-9};          // monomer-1 radiative lifetime at delta1, s
    double cutoff{0.3};              // bath cutoff, eV
    double phonon_temperature{300.0};
    double photon_temperature{6000.0};
    double trap_temperature{300.0};
    BathFamily family{BathFamily::Gaussian};
    ToleranceProfile profile{ToleranceProfile::Accurate};
    PhotonVariant variant{PhotonVariant::RWA};
    TrapEnergy trap_energy{TrapEnergy::Dressed};
    bool full_cross_function{true};

    double dipole1() const { return lifetime_to_dipole(lifetime1, delta1); }
};

struct SweepPoint {
    double z{1.0};
    double Delta{0.0};          // delta1' - delta2', eV
    double lambda{0.1};         // reorganisation energy of both baths, eV
    double cprime_over_z{0.1};  // eV
    double gamma_x{1e-7};       // eV
    double phi1{std::numbers::pi / 2}, phi2{std::numbers::pi / 2}, theta12{0.0};
};

// Baths are expensive to tabulate, so points sharing a reorganisation energy share one.
class BathCache {
public:
    explicit BathCache(const ModelDefaults& d) : d_(d) {}
    PhononBath get(double lambda) {
        std::lock_guard lk(m_);
        auto it = baths_.find(lambda);
        if (it != baths_.end()) return it->second;
        auto b = PhononBath::from_reorganization(d_.family, lambda, d_.cutoff, d_.phonon_temperature, d_.profile);
        baths_.emplace(lambda, b);
        return b;
    }

private:
    ModelDefaults d_;
    std::mutex m_;
    std::map<double, PhononBath> baths_;
};

// Dimer with d2 = z d1. The separation is solved so that kappa1 kappa2 C = z * C'/z in
// the ideal orientation; other angles keep that separation.
inline DimerParameters make_dimer(const ModelDefaults& d, const SweepPoint& pt, const PhononBath& bath) {
    if (!(pt.z > 0.0) || pt.z > 1.0) throw InvalidParameter("z must lie in (0, 1]");
    if (!(pt.cprime_over_z > 0.0)) throw InvalidParameter("C'/z must be > 0");
    DimerParameters p;
    const double d1 = d.dipole1();
    p.m1 = {d.delta1, d1, bath};
    p.m2 = {d.delta1 - pt.Delta, pt.z * d1, bath};
    const double r12 = separation_for_coupling(pt.cprime_over_z, bath.kappa() * bath.kappa(), d1, d1,
                                               ideal_geometry(1.0).orientation());
    p.geometry = build_geometry(pt.phi1, pt.phi2, pt.theta12, r12);
    p.photon_temperature = d.photon_temperature;
    p.full_cross_function = d.full_cross_function;
    return p;
}

struct SweepRow {
    SweepPoint point;
    double power_pW{std::numeric_limits<double>::quiet_NaN()};
    double benchmark_pW{std::numeric_limits<double>::quiet_NaN()};
    double ratio{std::numeric_limits<double>::quiet_NaN()};
    double Gamma_minus_E{std::numeric_limits<double>::quiet_NaN()};
    double Gamma_plus_A{std::numeric_limits<double>::quiet_NaN()};
    double phonon_transfer{std::numeric_limits<double>::quiet_NaN()};
    double nonsecular_freq{std::numeric_limits<double>::quiet_NaN()};
    std::vector<std::string> flags;
};

inline PowerOptions power_options(const ModelDefaults& d, double gamma_x) {
    PowerOptions o;
    o.gamma_x = gamma_x;
    o.trap_temperature = d.trap_temperature;
    o.variant = d.variant;
    o.trap_energy = d.trap_energy;
    return o;
}

// Failures become flags; the row keeps NaN outputs.
inline SweepRow evaluate_point(const ModelDefaults& d, const SweepPoint& pt, BathCache& cache) {
    SweepRow row;
    row.point = pt;
    try {
        const auto p = make_dimer(d, pt, cache.get(pt.lambda));
        const auto r = rate_coefficients(p);
        row.flags = r.flags;
        row.Gamma_minus_E = r.Gamma_minus_E;
        row.Gamma_plus_A = r.Gamma_plus_A;
        row.phonon_transfer = r.gpn_plus_eta;
        row.nonsecular_freq = r.nu_plus;
        const auto o = power_options(d, pt.gamma_x);
        const auto pr = dimer_power(r, o);
        row.power_pW = pr.power_pW;
        row.benchmark_pW = benchmark_power(p, r, o);
        row.ratio = row.benchmark_pW > 0.0 ? row.power_pW / row.benchmark_pW
                                           : std::numeric_limits<double>::quiet_NaN();
        if (pr.power_pW <= 0.0) row.flags.push_back("zero_power");
        if (pr.gamma_t <= o.gamma_t_lo * 1.01 || pr.gamma_t >= o.gamma_t_hi * 0.99)
            row.flags.push_back("gamma_t_at_bracket_edge");
    } catch (const DegenerateSteadyState&) {
        row.flags.push_back("degenerate_steady_state");
    } catch (const PositivityViolation&) {
        row.flags.push_back("positivity_violation");
    } catch (const NumericalError&) {
        row.flags.push_back("numerical_error");
    } catch (const DomainError&) {
        row.flags.push_back("domain_error");
    } catch (const InvalidParameter&) {
        row.flags.push_back("invalid_parameter");
    }
    return row;
}

struct SweepGrid {
    std::vector<double> z{1.0}, Delta{0.0}, lambda{0.1}, cprime_over_z{0.1}, gamma_x{1e-7};
    std::vector<double> phi1{std::numbers::pi / 2}, phi2{std::numbers::pi / 2}, theta12{0.0};

    std::size_t size() const {
        std::size_t n = 1;
        for (const auto* a : axes()) n *= a->size();
        return n;
    }
    bool angles_swept() const { return phi1.size() > 1 || phi2.size() > 1 || theta12.size() > 1; }
    // z varies fastest, then Delta, lambda, C'/z, gamma_x, phi1, phi2, theta12.
    SweepPoint at(std::size_t i) const {
        SweepPoint p;
        double* out[] = {&p.z, &p.Delta, &p.lambda, &p.cprime_over_z, &p.gamma_x, &p.phi1, &p.phi2, &p.theta12};
        const auto ax = axes();
        for (std::size_t k = 0; k < ax.size(); ++k) {
            *out[k] = (*ax[k])[i % ax[k]->size()];
            i /= ax[k]->size();
        }
        return p;
    }
    std::array<const std::vector<double>*, 8> axes() const {
        return {&z, &Delta, &lambda, &cprime_over_z, &gamma_x, &phi1, &phi2, &theta12};
    }
};

inline constexpr const char* sweep_csv_header =
    "z,Delta_eV,lambda_eV,Cprime_over_z_eV,gamma_x_eV,power_pW,benchmark_pW,ratio,Gamma_minus_E_eV,"
    "Gamma_plus_A_eV,phonon_transfer_eV,nonsecular_freq_eV,flags";

// Angle columns follow the flags when the grid varies an angle.
inline std::string sweep_header(const SweepGrid& g) {
    return g.angles_swept() ? std::string(sweep_csv_header) + ",phi1,phi2,theta12" : sweep_csv_header;
}

inline void write_sweep_row(std::ostream& os, const SweepRow& r, bool angles = false) {
    const auto old = os.precision(12);
    os << r.point.z << ',' << r.point.Delta << ',' << r.point.lambda << ',' << r.point.cprime_over_z << ','
       << r.point.gamma_x << ',' << r.power_pW << ',' << r.benchmark_pW << ',' << r.ratio << ',' << r.Gamma_minus_E
       << ',' << r.Gamma_plus_A << ',' << r.phonon_transfer << ',' << r.nonsecular_freq << ',';
    for (std::size_t i = 0; i < r.flags.size(); ++i) os << (i ? ";" : "") << r.flags[i];
    if (angles) os << ',' << r.point.phi1 << ',' << r.point.phi2 << ',' << r.point.theta12;
    os << '\n';
    os.precision(old);
}

// Evaluates every grid point on `threads` workers; rows come back in grid order.
// `sink` (optional) receives each row as soon as all earlier rows are done.
template <class Sink>
std::vector<SweepRow> run_sweep(const ModelDefaults& d, const SweepGrid& g, unsigned threads, Sink&& sink) {
    const std::size_t n = g.size();
    std::vector<SweepRow> rows(n);
    std::vector<char> done(n, 0);
    BathCache cache(d);
    std::atomic<std::size_t> next{0};
    std::mutex m;
    std::size_t written = 0;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            auto row = evaluate_point(d, g.at(i), cache);
            std::lock_guard lk(m);
            rows[i] = std::move(row);
            done[i] = 1;
            while (written < n && done[written]) sink(rows[written++]);
        }
    };
    threads = std::max(1u, threads);
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    return rows;
}

inline std::vector<SweepRow> run_sweep(const ModelDefaults& d, const SweepGrid& g, unsigned threads = 1) {
    return run_sweep(d, g, threads, [](const SweepRow&) {});
}

} // namespace darkstate
