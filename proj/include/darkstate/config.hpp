// config.hpp — YAML/JSON run configuration with unit-suffixed quantities and strict keys

#pragma once

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "darkstate/error.hpp"
#include "darkstate/spectra.hpp"
#include "darkstate/sweep.hpp"

namespace darkstate {

// Schema violations carry the offending field path and (when known) the 1-based line.
class ConfigError : public InvalidParameter {
public:
    ConfigError(const std::string& field, int line, const std::string& msg)
        : InvalidParameter(format(field, line, msg)), field_(field), line_(line) {}
    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    static std::string format(const std::string& field, int line, const std::string& msg) {
        std::string s = "config";
        if (line > 0) s += ":" + std::to_string(line);
        if (!field.empty()) s += ": " + field;
        return s + ": " + msg;
    }
    std::string field_;
    int line_;
};

enum class Task { Rates, Spectrum, Power, Sweep, Validate };

inline std::string to_string(Task t) {
    switch (t) {
    case Task::Rates: return "rates";
    case Task::Spectrum: return "spectrum";
    case Task::Power: return "power";
    case Task::Sweep: return "sweep";
    case Task::Validate: return "validate";
    }
    return "?";
}

struct SpectrumSettings {
    bool emission{true}, absorption{true};
    int points{4000};
    int pole_points{400};
    std::optional<std::pair<double, double>> window;
};

struct RunConfig {
    Task task{Task::Rates};
    ModelDefaults model;
    SweepPoint point{0.735, 0.0, 0.1, 0.1, 1e-7};
    std::optional<double> separation_nm; // replaces the C'/z separation solve
    std::optional<double> gamma_t;       // fixed trap rate; optimised when absent
    SpectrumSettings spectrum;
    SweepGrid grid;
    std::string output;
    unsigned threads{1};
};

namespace config_detail {

struct Unit {
    const char* name;
    double factor;
};

// Canonical units: eV, s, nm, e nm, K.
inline const std::map<std::string, std::vector<Unit>>& unit_table() {
    static const std::map<std::string, std::vector<Unit>> t{
        {"energy", {{"eV", 1.0}, {"meV", 1e-3}, {"ueV", 1e-6}, {"neV", 1e-9}, {"peV", 1e-12}}},
        {"time", {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}, {"fs", 1e-15}}},
        {"length", {{"nm", 1.0}, {"A", 0.1}, {"pm", 1e-3}}},
        {"dipole", {{"e nm", 1.0}, {"enm", 1.0}, {"D", 0.0208194}}},
        {"temperature", {{"K", 1.0}}},
        {"dimensionless", {}},
        {"angle", {{"rad", 1.0}, {"pi", std::numbers::pi}, {"deg", std::numbers::pi / 180.0}}},
    };
    return t;
}

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

class Reader {
public:
    Reader(const YAML::Node& n, std::string path) : node_(n), path_(std::move(path)) {
        if (n && !n.IsNull() && !n.IsMap()) fail("", "expected a mapping");
    }

    int line() const { return node_.Mark().line >= 0 ? node_.Mark().line + 1 : 0; }

    [[noreturn]] void fail(const std::string& key, const std::string& msg, const YAML::Node* at = nullptr) const {
        int ln = line();
        if (at && at->Mark().line >= 0) ln = at->Mark().line + 1;
        throw ConfigError(join(key), ln, msg);
    }

    std::string join(const std::string& key) const {
        if (key.empty()) return path_;
        return path_.empty() ? key : path_ + "." + key;
    }

    YAML::Node get(const std::string& key) {
        seen_.insert(key);
        // Missing keys come back as valid but undefined nodes; yaml-cpp's own lookup
        // result for a missing key throws on most accessors.
        if (!node_ || node_.IsNull()) return YAML::Node(YAML::NodeType::Undefined);
        const YAML::Node& n = node_;
        const YAML::Node v = n[key];
        return v.IsDefined() ? v : YAML::Node(YAML::NodeType::Undefined);
    }

    Reader child(const std::string& key) { return Reader(get(key), join(key)); }

    // Rejects keys that no accessor asked for.
    void finish() const {
        if (!node_ || node_.IsNull()) return;
        for (const auto& kv : node_) {
            const auto k = kv.first.as<std::string>();
            if (!seen_.count(k)) fail(k, "unknown key", &kv.first);
        }
    }

    double quantity(const YAML::Node& v, const std::string& key, const std::string& kind) const {
        if (!v.IsScalar()) fail(key, "expected a " + kind + " value", &v);
        const auto text = trim(v.Scalar());
        double x = 0.0;
        const char* b = text.data();
        const char* e = text.data() + text.size();
        auto res = std::from_chars(b, e, x);
        if (res.ec != std::errc()) fail(key, "cannot parse '" + text + "' as a " + kind, &v);
        const auto unit = trim(std::string(res.ptr, e));
        if (unit.empty()) return x;
        for (const auto& u : unit_table().at(kind))
            if (unit == u.name) return x * u.factor;
        fail(key, "unit '" + unit + "' is not a " + kind + " unit", &v);
    }

    template <class T>
    void opt(const std::string& key, T& out, const std::string& kind) {
        const auto v = get(key);
        if (v) out = static_cast<T>(quantity(v, key, kind));
    }
    void opt_optional(const std::string& key, std::optional<double>& out, const std::string& kind) {
        const auto v = get(key);
        if (v) out = quantity(v, key, kind);
    }

    template <class T>
    void scalar(const std::string& key, T& out) {
        const auto v = get(key);
        if (!v) return;
        try {
            out = v.as<T>();
        } catch (const YAML::Exception&) {
            fail(key, "wrong value type", &v);
        }
    }

    template <class E>
    void choice(const std::string& key, E& out, const std::vector<std::pair<std::string, E>>& options) {
        const auto v = get(key);
        if (!v) return;
        if (!v.IsScalar()) fail(key, "expected a string", &v);
        for (const auto& [name, val] : options)
            if (v.Scalar() == name) {
                out = val;
                return;
            }
        std::string all;
        for (const auto& o : options) all += (all.empty() ? "" : ", ") + o.first;
        fail(key, "'" + v.Scalar() + "' is not one of {" + all + "}", &v);
    }

    // Scalar, list, or {from, to, count, scale: linear|log}.
    void axis(const std::string& key, std::vector<double>& out, const std::string& kind) {
        const auto v = get(key);
        if (!v) return;
        if (v.IsScalar()) {
            out = {quantity(v, key, kind)};
        } else if (v.IsSequence()) {
            out.clear();
            for (const auto& e : v) out.push_back(quantity(e, key, kind));
            if (out.empty()) fail(key, "axis must not be empty", &v);
        } else {
            Reader r(v, join(key));
            double from = 0.0, to = 0.0;
            int count = 0;
            std::string scale = "linear";
            const auto f = r.get("from"), t = r.get("to");
            if (!f || !t) r.fail("", "range needs 'from' and 'to'");
            from = r.quantity(f, "from", kind);
            to = r.quantity(t, "to", kind);
            r.scalar("count", count);
            r.scalar("scale", scale);
            r.finish();
            if (count < 1) r.fail("count", "must be >= 1");
            if (scale != "linear" && scale != "log") r.fail("scale", "must be linear or log");
            if (scale == "log" && !(from > 0.0 && to > 0.0)) r.fail("scale", "log axis needs positive bounds");
            out.resize(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i) {
                const double u = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
                out[static_cast<std::size_t>(i)] =
                    scale == "log" ? std::exp(std::log(from) + u * (std::log(to) - std::log(from)))
                                   : from + u * (to - from);
            }
        }
    }

private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> seen_;
};

} // namespace config_detail

// Physical consistency checks that go beyond the schema.
inline void validate(const RunConfig& c) {
    auto bad = [](const std::string& field, const std::string& msg) { throw ConfigError(field, 0, msg); };
    const auto& m = c.model;
    if (!(m.delta1 > 0.0)) bad("monomer1.splitting", "must be > 0");
    if (!(m.lifetime1 > 0.0)) bad("monomer1.lifetime", "must be > 0");
    if (!(m.cutoff > 0.0)) bad("bath.cutoff", "must be > 0");
    if (!(m.phonon_temperature >= 0.0)) bad("bath.temperature", "must be >= 0");
    if (!(m.photon_temperature >= 0.0)) bad("photon.temperature", "must be >= 0");
    if (!(m.trap_temperature > 0.0)) bad("trap.temperature", "must be > 0");
    const auto& p = c.point;
    if (!(p.z > 0.0) || p.z > 1.0) bad("monomer2.dipole_ratio", "must lie in (0, 1]");
    if (p.Delta < 0.0) bad("monomer2.detuning", "monomer 2 must not lie above monomer 1 (z <= 1 ordering)");
    if (!(p.Delta < m.delta1)) bad("monomer2.detuning", "monomer 2 splitting must stay positive");
    if (!(p.lambda >= 0.0)) bad("bath.reorganization", "must be >= 0");
    if (!(p.cprime_over_z > 0.0)) bad("geometry.coupling_over_z", "must be > 0");
    if (!(p.gamma_x >= 0.0)) bad("trap.extraction_rate", "must be >= 0");
    if (c.separation_nm && !(*c.separation_nm > 0.0)) bad("geometry.separation", "must be > 0");
    if (c.gamma_t && !(*c.gamma_t > 0.0)) bad("trap.transfer_rate", "must be > 0");
    if (c.spectrum.points < 16) bad("spectrum.points", "must be >= 16");
    if (c.spectrum.pole_points < 0) bad("spectrum.pole_points", "must be >= 0");
    if (c.spectrum.window && !(c.spectrum.window->first < c.spectrum.window->second))
        bad("spectrum.window", "lower bound must be below upper bound");
    if (c.threads < 1) bad("threads", "must be >= 1");
    for (double z : c.grid.z)
        if (!(z > 0.0) || z > 1.0) bad("sweep.z", "values must lie in (0, 1]");
    for (double d : c.grid.Delta)
        if (d < 0.0 || !(d < m.delta1)) bad("sweep.Delta", "values must lie in [0, monomer1.splitting)");
    for (double l : c.grid.lambda)
        if (!(l >= 0.0)) bad("sweep.lambda", "values must be >= 0");
    for (double v : c.grid.cprime_over_z)
        if (!(v > 0.0)) bad("sweep.Cprime_over_z", "values must be > 0");
    for (double g : c.grid.gamma_x)
        if (!(g >= 0.0)) bad("sweep.gamma_x", "values must be >= 0");
}

// Parses a YAML document (JSON is accepted as a YAML subset). Missing keys keep their
// defaults, so an empty document gives the default homodimer.
inline RunConfig parse_config(const YAML::Node& root) {
    using config_detail::Reader;
    RunConfig c;
    Reader top(root, "");
    top.choice("task", c.task,
               {{"rates", Task::Rates}, {"spectrum", Task::Spectrum}, {"power", Task::Power},
                {"sweep", Task::Sweep}, {"validate", Task::Validate}});
    top.choice("tolerance_profile", c.model.profile,
               {{"fast", ToleranceProfile::Fast}, {"accurate", ToleranceProfile::Accurate}});
    top.scalar("threads", c.threads);
    top.scalar("output", c.output);

    {
        auto m1 = top.child("monomer1");
        m1.opt("splitting", c.model.delta1, "energy");
        const auto life = m1.get("lifetime"), dip = m1.get("dipole");
        if (life && dip) m1.fail("dipole", "give either lifetime or dipole, not both", &dip);
        if (life) c.model.lifetime1 = m1.quantity(life, "lifetime", "time");
        if (dip) {
            const double d = m1.quantity(dip, "dipole", "dipole");
            if (!(d > 0.0)) m1.fail("dipole", "must be > 0", &dip);
            c.model.lifetime1 = dipole_to_lifetime(d, c.model.delta1);
        }
        m1.finish();
    }
    {
        auto m2 = top.child("monomer2");
        const auto det = m2.get("detuning"), spl = m2.get("splitting");
        if (det && spl) m2.fail("splitting", "give either detuning or splitting, not both", &spl);
        if (det) c.point.Delta = m2.quantity(det, "detuning", "energy");
        if (spl) c.point.Delta = c.model.delta1 - m2.quantity(spl, "splitting", "energy");
        m2.opt("dipole_ratio", c.point.z, "dimensionless");
        m2.finish();
    }
    {
        auto b = top.child("bath");
        b.choice("family", c.model.family, {{"gaussian", BathFamily::Gaussian}, {"exponential", BathFamily::Exponential}});
        b.opt("reorganization", c.point.lambda, "energy");
        b.opt("cutoff", c.model.cutoff, "energy");
        b.opt("temperature", c.model.phonon_temperature, "temperature");
        b.finish();
    }
    {
        auto g = top.child("geometry");
        g.opt("phi1", c.point.phi1, "angle");
        g.opt("phi2", c.point.phi2, "angle");
        g.opt("theta12", c.point.theta12, "angle");
        const auto cz = g.get("coupling_over_z"), sep = g.get("separation");
        if (cz && sep) g.fail("separation", "give either coupling_over_z or separation, not both", &sep);
        if (cz) c.point.cprime_over_z = g.quantity(cz, "coupling_over_z", "energy");
        if (sep) c.separation_nm = g.quantity(sep, "separation", "length");
        g.finish();
    }
    {
        auto ph = top.child("photon");
        ph.opt("temperature", c.model.photon_temperature, "temperature");
        ph.choice("variant", c.model.variant, {{"rwa", PhotonVariant::RWA}, {"nonrwa", PhotonVariant::NonRWA}});
        ph.scalar("full_cross_function", c.model.full_cross_function);
        ph.finish();
    }
    {
        auto t = top.child("trap");
        t.opt("extraction_rate", c.point.gamma_x, "energy");
        t.opt("temperature", c.model.trap_temperature, "temperature");
        t.choice("energy", c.model.trap_energy, {{"dressed", TrapEnergy::Dressed}, {"bare", TrapEnergy::Bare}});
        t.opt_optional("transfer_rate", c.gamma_t, "energy");
        t.finish();
    }
    {
        auto s = top.child("spectrum");
        std::string proc = "both";
        s.choice("process", proc, {{"both", std::string("both")}, {"emission", std::string("emission")},
                                   {"absorption", std::string("absorption")}});
        c.spectrum.emission = proc != "absorption";
        c.spectrum.absorption = proc != "emission";
        s.scalar("points", c.spectrum.points);
        s.scalar("pole_points", c.spectrum.pole_points);
        const auto w = s.get("window");
        if (w) {
            if (!w.IsSequence() || w.size() != 2) s.fail("window", "expected [lower, upper]", &w);
            c.spectrum.window = std::make_pair(s.quantity(w[0], "window", "energy"), s.quantity(w[1], "window", "energy"));
        }
        s.finish();
    }
    // Sweep axes default to the single-point values.
    c.grid.z = {c.point.z};
    c.grid.Delta = {c.point.Delta};
    c.grid.lambda = {c.point.lambda};
    c.grid.cprime_over_z = {c.point.cprime_over_z};
    c.grid.gamma_x = {c.point.gamma_x};
    c.grid.phi1 = {c.point.phi1};
    c.grid.phi2 = {c.point.phi2};
    c.grid.theta12 = {c.point.theta12};
    {
        auto sw = top.child("sweep");
        sw.axis("z", c.grid.z, "dimensionless");
        sw.axis("Delta", c.grid.Delta, "energy");
        sw.axis("lambda", c.grid.lambda, "energy");
        sw.axis("Cprime_over_z", c.grid.cprime_over_z, "energy");
        sw.axis("gamma_x", c.grid.gamma_x, "energy");
        sw.axis("phi1", c.grid.phi1, "angle");
        sw.axis("phi2", c.grid.phi2, "angle");
        sw.axis("theta12", c.grid.theta12, "angle");
        sw.finish();
    }
    top.finish();
    validate(c);
    return c;
}

inline RunConfig load_config_string(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("", e.mark.line + 1, e.msg);
    }
    return parse_config(root);
}

inline RunConfig load_config(const std::string& path) {
    YAML::Node root;
    try {
        root = YAML::LoadFile(path);
    } catch (const YAML::BadFile&) {
        throw ConfigError("", 0, "cannot open '" + path + "'");
    } catch (const YAML::ParserException& e) {
        throw ConfigError("", e.mark.line + 1, e.msg);
    }
    return parse_config(root);
}

// Dimer for the single-point tasks.
inline DimerParameters build_dimer(const RunConfig& c) {
    const auto bath = PhononBath::from_reorganization(c.model.family, c.point.lambda, c.model.cutoff,
                                                      c.model.phonon_temperature, c.model.profile);
    auto p = make_dimer(c.model, c.point, bath);
    if (c.separation_nm) p.geometry.r12_nm = *c.separation_nm;
    return p;
}

} // namespace darkstate
