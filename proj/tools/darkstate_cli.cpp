// darkstate_cli.cpp — command-line driver: rates, spectra, power, sweeps and config validation

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "darkstate/config.hpp"
#include "darkstate/io.hpp"
#include "darkstate/liouvillian.hpp"
#include "darkstate/power.hpp"
#include "darkstate/spectra.hpp"
#include "darkstate/sweep.hpp"

using namespace darkstate;

namespace {

enum Exit { Ok = 0, ConfigFailure = 2, NumericalFailure = 3 };

// Writes to the named file, or stdout when the name is empty.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw InvalidParameter("cannot open output '" + path + "'");
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

json steady_populations(const Eigen::VectorXcd& x) {
    return {{"P00", x(P00).real()}, {"Ppp", x(PPP).real()}, {"Pmm", x(PMM).real()},
            {"Ppm", {{"re", x(PPM).real()}, {"im", x(PPM).imag()}}}};
}

int run_rates(const RunConfig& c, std::ostream& os) {
    const auto p = build_dimer(c);
    const auto r = rate_coefficients(p);
    const auto x = steady_state(total_liouvillian(r, c.model.variant));
    json j{{"version", version}, {"config", to_json(c)}, {"dimer", to_json(p)}, {"rates", to_json(r)},
           {"steady_state", steady_populations(x)}};
    os << j.dump(2) << '\n';
    return Ok;
}

int run_power(const RunConfig& c, std::ostream& os) {
    const auto p = build_dimer(c);
    const auto r = rate_coefficients(p);
    const auto o = power_options(c.model, c.point.gamma_x);
    const auto pr = c.gamma_t ? power_output(total_liouvillian(r, o.variant), trap_energy(r, o.trap_energy),
                                             {o.gamma_x, *c.gamma_t, o.trap_temperature})
                              : dimer_power(r, o);
    const double bench = benchmark_power(p, r, o);
    json j{{"version", version},
           {"config", to_json(c)},
           {"dimer", to_json(p)},
           {"power", to_json(pr)},
           {"benchmark_pW", bench},
           {"ratio", bench > 0.0 ? json(pr.power_pW / bench) : json(nullptr)},
           {"Gamma_minus_E_eV", r.Gamma_minus_E},
           {"Gamma_plus_A_eV", r.Gamma_plus_A},
           {"phonon_transfer_eV", r.gpn_plus_eta},
           {"nonsecular_freq_eV", r.nu_plus},
           {"flags", r.flags}};
    os << j.dump(2) << '\n';
    return Ok;
}

int run_spectrum(const RunConfig& c, std::ostream& os) {
    const auto p = build_dimer(c);
    const auto r = rate_coefficients(p);
    const auto x = steady_state(total_liouvillian(r, c.model.variant));
    // Dark-peak intensities are quoted relative to the same dimer in the ideal orientation.
    auto ideal_cfg = c;
    ideal_cfg.point.phi1 = ideal_cfg.point.phi2 = std::numbers::pi / 2;
    ideal_cfg.point.theta12 = 0.0;
    auto pi = build_dimer(ideal_cfg);
    pi.geometry.r12_nm = p.geometry.r12_nm;
    const auto ri = rate_coefficients(pi);
    const auto xi = steady_state(total_liouvillian(ri, c.model.variant));

    SpectrumOptions so;
    so.variant = c.model.variant;
    so.points = c.spectrum.points;
    so.pole_points = c.spectrum.pole_points;
    so.window = c.spectrum.window;

    json summary;
    std::vector<Spectrum> out;
    for (auto mu : {Process::Emission, Process::Absorption}) {
        if ((mu == Process::Emission && !c.spectrum.emission) || (mu == Process::Absorption && !c.spectrum.absorption))
            continue;
        const auto sp = compute_spectra(p, r, x, mu, so);
        json s{{"f_pn_numeric", sideband_fraction(sp)}, {"f_pn_exact", sideband_fraction_exact(p, r, x, mu, so.variant)}};
        if (p.m1.splitting == p.m2.splitting)
            s["f_pn_homodimer_formula"] = sideband_fraction_homodimer(r.kappa1 * r.kappa2, r.cross_F,
                                                                      r.eig.cprime >= 0.0 ? 1.0 : -1.0, mu);
        else if (mu == Process::Emission)
            s["f_pn_heterodimer_formula"] = sideband_fraction_heterodimer(r, x);
        try {
            auto so_full = so;
            so_full.sideband = true;
            const double a = dark_peak(SpectrumModel(p, r, x, mu, so_full), r).area;
            const double a0 = dark_peak(SpectrumModel(pi, ri, xi, mu, so_full), ri).area;
            s["P_d"] = a0 > 0.0 ? json(a / a0) : json(nullptr);
        } catch (const PeakNotFound&) {
            s["P_d"] = nullptr;
        }
        summary[to_string(mu)] = s;
        out.push_back(sp.with_sideband);
        out.push_back(sp.without_sideband);
    }
    write_csv_metadata(os, c);
    os << "# summary " << summary.dump() << '\n';
    os << spectrum_csv_header << '\n';
    for (const auto& s : out) write_spectrum_rows(os, s);
    return Ok;
}

int run_sweep_task(const RunConfig& c, std::ostream& os) {
    write_csv_metadata(os, c);
    const bool angles = c.grid.angles_swept();
    os << sweep_header(c.grid) << '\n';
    const auto rows = run_sweep(c.model, c.grid, c.threads, [&](const SweepRow& row) {
        write_sweep_row(os, row, angles);
        os.flush();
    });
    std::size_t failed = 0;
    for (const auto& r : rows)
        if (std::isnan(r.ratio)) ++failed;
    if (failed) std::cerr << "darkstate: " << failed << " of " << rows.size() << " sweep points flagged without a result\n";
    return Ok;
}

int run_validate(const RunConfig& c, std::ostream& os) {
    const auto p = build_dimer(c);
    validate(p);
    const auto r = rate_coefficients(p);
    json j{{"valid", true}, {"version", version}, {"config", to_json(c)}, {"dimer", to_json(p)}, {"flags", r.flags}};
    os << j.dump(2) << '\n';
    return Ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon and phonon dynamics, spectra and power output of a light-harvesting dimer"};
    std::string config_path, task, out, profile;
    unsigned threads = 0;
    app.add_option("--config", config_path, "YAML (or JSON) run configuration; omitted means all defaults");
    app.add_option("--task", task, "Task to run")->check(CLI::IsMember({"rates", "spectrum", "power", "sweep", "validate"}));
    app.add_option("--out", out, "Output file (stdout when omitted)");
    app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--tolerance-profile", profile, "Phonon quadrature profile")->check(CLI::IsMember({"fast", "accurate"}));
    app.add_flag_callback("--version", [] { std::cout << "darkstate " << version << '\n'; std::exit(0); }, "Print version");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ConfigFailure;
    }

    try {
        RunConfig c = config_path.empty() ? load_config_string("{}") : load_config(config_path);
        if (!task.empty()) {
            const std::map<std::string, Task> tasks{{"rates", Task::Rates}, {"spectrum", Task::Spectrum},
                                                    {"power", Task::Power}, {"sweep", Task::Sweep},
                                                    {"validate", Task::Validate}};
            c.task = tasks.at(task);
        }
        if (!profile.empty()) c.model.profile = profile == "fast" ? ToleranceProfile::Fast : ToleranceProfile::Accurate;
        if (threads) c.threads = threads;
        if (!out.empty()) c.output = out;
        validate(c);

        Output o(c.output);
        switch (c.task) {
        case Task::Rates: return run_rates(c, o.get());
        case Task::Power: return run_power(c, o.get());
        case Task::Spectrum: return run_spectrum(c, o.get());
        case Task::Sweep: return run_sweep_task(c, o.get());
        case Task::Validate: return run_validate(c, o.get());
        }
    } catch (const InvalidParameter& e) {
        std::cerr << "darkstate: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const DomainError& e) {
        std::cerr << "darkstate: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const NumericalError& e) {
        std::cerr << "darkstate: numerical failure: " << e.what() << " (achieved " << e.achieved << ")\n";
        return NumericalFailure;
    }
    return Ok;
}
