// scenario.hpp — Scenario configuration (JSON), figure presets, the run
// engine that drives the computation paths, and the machine-readable run
// report.
//
// Output conventions: CSV files with one header row naming columns and
// units, times in units of 1/Omega_0, frequencies as offsets from omega_c in
// units of Omega_0, numeric cells formatted %.12e. A report.json is written
// for every run, including failed ones.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapres/analytic.hpp"
#include "gapres/core.hpp"
#include "gapres/csv.hpp"
#include "gapres/dynamics.hpp"
#include "gapres/entanglement.hpp"
#include "gapres/observables.hpp"

namespace gapres {

// Configuration or input-file problems; maps to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

enum class Path { analytic, pseudomode_ode, bath_oracle };
enum class Output { populations, spectrum, currents, concurrences, densities, totals };

inline const char* to_string(Path p) {
    switch (p) {
        case Path::analytic: return "analytic";
        case Path::pseudomode_ode: return "pseudomode_ode";
        case Path::bath_oracle: return "bath_oracle";
    }
    return "?";
}

inline const char* to_string(Output o) {
    switch (o) {
        case Output::populations: return "populations";
        case Output::spectrum: return "spectrum";
        case Output::currents: return "currents";
        case Output::concurrences: return "concurrences";
        case Output::densities: return "densities";
        case Output::totals: return "totals";
    }
    return "?";
}

struct EtaSweep {
    double eta_min{0.05};
    double eta_max{10.0};
    std::size_t points{50};
};

struct ScenarioConfig {
    ReservoirSpec spec;
    std::vector<Path> paths{Path::pseudomode_ode};
    std::vector<Output> outputs{Output::populations};
    double t_max{50.0};
    std::size_t t_steps{501};
    std::size_t n_modes{4000};
    double cutoff{40.0};
    double tol{1e-9};
    std::string output_dir{"out"};
    double spectrum_window{5.0};              // |delta| <= window for emitted surfaces
    std::size_t density_axis_max_points{400}; // stride cap for mode-mode snapshots
    std::optional<double> density_row_delta;  // omega_mu - omega_c for the row series
    std::vector<double> snapshot_times;
    bool reference_lorentzian{false};         // add the W2=Gamma2=0 reference to snapshots
    std::optional<EtaSweep> eta_sweep;
};

struct RunReport {
    std::string preset;   // empty when launched from a config file
    ScenarioConfig config;
    ValidationReport validation;
    DerivedConstants constants;
    std::optional<double> recurrence_horizon;
    std::optional<double> coverage;
    std::vector<std::string> warnings;
    std::vector<std::string> output_files;
    double wall_time_s{0.0};
    std::string error;    // empty on success
    int exit_code{0};
};

// --------------------------------- JSON I/O ----------------------------------

namespace detail {

using nlohmann::json;

inline double get_number(const json& j, const std::string& key, double fallback,
                         bool required = false) {
    if (!j.contains(key)) {
        if (required) throw config_error("config: missing required key '" + key + "'");
        return fallback;
    }
    if (!j.at(key).is_number()) throw config_error("config: key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline std::size_t get_count(const json& j, const std::string& key, std::size_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_unsigned())
        throw config_error("config: key '" + key + "' must be a nonnegative integer");
    return j.at(key).get<std::size_t>();
}

inline void check_keys(const json& j, const std::vector<std::string>& known,
                       const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw config_error("config: unknown key '" + it.key() + "' in " + where);
    }
}

inline Path parse_path(const std::string& s) {
    if (s == "analytic") return Path::analytic;
    if (s == "pseudomode_ode") return Path::pseudomode_ode;
    if (s == "bath_oracle") return Path::bath_oracle;
    throw config_error("config: unknown path '" + s +
                       "' (valid: analytic, pseudomode_ode, bath_oracle)");
}

inline Output parse_output(const std::string& s) {
    for (Output o : {Output::populations, Output::spectrum, Output::currents,
                     Output::concurrences, Output::densities, Output::totals})
        if (s == to_string(o)) return o;
    throw config_error("config: unknown output '" + s +
                       "' (valid: populations, spectrum, currents, concurrences, densities, totals)");
}

inline json number_or_string(double x) {
    if (std::isfinite(x)) return x;
    return x > 0 ? "infinity" : "-infinity";
}

} // namespace detail

inline ScenarioConfig config_from_json(const nlohmann::json& j) {
    using detail::get_count;
    using detail::get_number;
    ScenarioConfig c;

    detail::check_keys(j,
                       {"schema_version", "spec", "paths", "outputs", "t_max", "t_steps",
                        "n_modes", "cutoff", "tol", "output_dir", "spectrum_window",
                        "density_axis_max_points", "density_row_delta", "snapshot_times",
                        "reference_lorentzian", "eta_sweep"},
                       "top level");
    if (!j.contains("schema_version")) throw config_error("config: missing 'schema_version'");
    if (!j.at("schema_version").is_number_integer() || j.at("schema_version").get<int>() != 1)
        throw config_error("config: unsupported schema_version (expected 1)");
    if (!j.contains("spec") || !j.at("spec").is_object())
        throw config_error("config: missing 'spec' object");

    const auto& js = j.at("spec");
    detail::check_keys(js, {"gamma1", "gamma2", "w1", "w2", "omega_c", "omega_0", "omega_big0"},
                       "spec");
    c.spec.gamma1 = get_number(js, "gamma1", 0.0, true);
    c.spec.gamma2 = get_number(js, "gamma2", 0.0);
    c.spec.w1 = get_number(js, "w1", 1.0);
    c.spec.w2 = get_number(js, "w2", 0.0);
    c.spec.omega_c = get_number(js, "omega_c", 0.0);
    c.spec.omega_0 = get_number(js, "omega_0", c.spec.omega_c);
    c.spec.omega_big0 = get_number(js, "omega_big0", 1.0);

    if (j.contains("paths")) {
        if (!j.at("paths").is_array()) throw config_error("config: 'paths' must be an array");
        c.paths.clear();
        for (const auto& p : j.at("paths")) c.paths.push_back(detail::parse_path(p.get<std::string>()));
    }
    if (j.contains("outputs")) {
        if (!j.at("outputs").is_array()) throw config_error("config: 'outputs' must be an array");
        c.outputs.clear();
        for (const auto& o : j.at("outputs"))
            c.outputs.push_back(detail::parse_output(o.get<std::string>()));
    }
    c.t_max = get_number(j, "t_max", c.t_max);
    c.t_steps = get_count(j, "t_steps", c.t_steps);
    c.n_modes = get_count(j, "n_modes", c.n_modes);
    c.cutoff = get_number(j, "cutoff", c.cutoff);
    c.tol = get_number(j, "tol", c.tol);
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    c.spectrum_window = get_number(j, "spectrum_window", c.spectrum_window);
    c.density_axis_max_points = get_count(j, "density_axis_max_points", c.density_axis_max_points);
    if (j.contains("density_row_delta") && !j.at("density_row_delta").is_null())
        c.density_row_delta = get_number(j, "density_row_delta", 0.0, true);
    if (j.contains("snapshot_times")) {
        if (!j.at("snapshot_times").is_array())
            throw config_error("config: 'snapshot_times' must be an array");
        for (const auto& t : j.at("snapshot_times")) c.snapshot_times.push_back(t.get<double>());
    }
    if (j.contains("reference_lorentzian"))
        c.reference_lorentzian = j.at("reference_lorentzian").get<bool>();
    if (j.contains("eta_sweep") && !j.at("eta_sweep").is_null()) {
        const auto& s = j.at("eta_sweep");
        detail::check_keys(s, {"eta_min", "eta_max", "points"}, "eta_sweep");
        EtaSweep sw;
        sw.eta_min = get_number(s, "eta_min", sw.eta_min);
        sw.eta_max = get_number(s, "eta_max", sw.eta_max);
        sw.points = get_count(s, "points", sw.points);
        c.eta_sweep = sw;
    }
    return c;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

inline nlohmann::json config_to_json(const ScenarioConfig& c) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["spec"] = {{"gamma1", c.spec.gamma1},   {"gamma2", c.spec.gamma2},
                 {"w1", c.spec.w1},           {"w2", c.spec.w2},
                 {"omega_c", c.spec.omega_c}, {"omega_0", c.spec.omega_0},
                 {"omega_big0", c.spec.omega_big0}};
    j["paths"] = nlohmann::json::array();
    for (Path p : c.paths) j["paths"].push_back(to_string(p));
    j["outputs"] = nlohmann::json::array();
    for (Output o : c.outputs) j["outputs"].push_back(to_string(o));
    j["t_max"] = c.t_max;
    j["t_steps"] = c.t_steps;
    j["n_modes"] = c.n_modes;
    j["cutoff"] = c.cutoff;
    j["tol"] = c.tol;
    j["output_dir"] = c.output_dir;
    j["spectrum_window"] = c.spectrum_window;
    j["density_axis_max_points"] = c.density_axis_max_points;
    if (c.density_row_delta) j["density_row_delta"] = *c.density_row_delta;
    j["snapshot_times"] = c.snapshot_times;
    j["reference_lorentzian"] = c.reference_lorentzian;
    if (c.eta_sweep)
        j["eta_sweep"] = {{"eta_min", c.eta_sweep->eta_min},
                          {"eta_max", c.eta_sweep->eta_max},
                          {"points", c.eta_sweep->points}};
    return j;
}

inline nlohmann::json report_to_json(const RunReport& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["preset"] = r.preset.empty() ? nlohmann::json() : nlohmann::json(r.preset);
    j["config"] = config_to_json(r.config);
    j["validation"] = {{"valid", r.validation.valid()},
                       {"violations", r.validation.violations},
                       {"perfect_gap", r.validation.perfect_gap},
                       {"resonant", r.validation.resonant},
                       {"oscillatory", r.validation.oscillatory}};
    if (r.validation.valid()) {
        j["derived_constants"] = {
            {"gamma_p1", r.constants.gamma_p1},
            {"gamma_p2", r.constants.gamma_p2},
            {"v", r.constants.v},
            {"big_gamma", r.constants.big_gamma},
            {"big_omega", {{"re", r.constants.big_omega.real()}, {"im", r.constants.big_omega.imag()}}},
            {"eta", detail::number_or_string(r.constants.eta)}};
    }
    j["recurrence_horizon"] =
        r.recurrence_horizon ? nlohmann::json(*r.recurrence_horizon) : nlohmann::json();
    j["coverage"] = r.coverage ? nlohmann::json(*r.coverage) : nlohmann::json();
    j["warnings"] = r.warnings;
    j["output_files"] = r.output_files;
    j["wall_time_s"] = r.wall_time_s;
    j["error"] = r.error;
    j["exit_code"] = r.exit_code;
    return j;
}

// ---------------------------------- presets ----------------------------------

inline std::vector<std::string> preset_names() {
    return {"fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig2d", "fig3", "fig4a", "fig4b",
            "fig5", "fig7"};
}

// Parameter sets from the figure captions: the gap reservoir with
// Gamma_1 = 10, Gamma_2 = 0.2 (weak coupling, eta = sqrt 2) and the strong
// coupling pair Gamma_1 = 0.5, Gamma_2 = 0.01; weights W_1 = 50 W_2 with
// W_1 - W_2 = 1 give a perfect gap in both cases.
inline ScenarioConfig preset_config(const std::string& name) {
    ReservoirSpec weak{10.0, 0.2, 50.0 / 49.0, 1.0 / 49.0, 0.0, 0.0, 1.0};
    ReservoirSpec strong{0.5, 0.01, 50.0 / 49.0, 1.0 / 49.0, 0.0, 0.0, 1.0};

    ScenarioConfig c;
    c.output_dir = "out_" + name;
    if (name == "fig1a") {
        c.spec = weak;
        c.paths = {Path::analytic};
        c.outputs = {Output::populations};
        c.t_max = 50.0;
        c.t_steps = 1001;
    } else if (name == "fig1b") {
        c.spec = weak;
        c.paths = {};
        c.outputs = {};
        c.eta_sweep = EtaSweep{0.05, 10.0, 50};
    } else if (name == "fig2a" || name == "fig2b") {
        c.spec = name == "fig2a" ? weak : strong;
        c.paths = {Path::bath_oracle};
        c.outputs = {Output::spectrum};
        c.t_max = 50.0;
        c.t_steps = 201;
    } else if (name == "fig2c" || name == "fig2d") {
        c.spec = name == "fig2c" ? weak : strong;
        c.paths = {Path::bath_oracle};
        c.outputs = {Output::spectrum};
        c.t_max = 50.0;
        c.t_steps = 2;
        c.snapshot_times = {50.0};
        c.reference_lorentzian = true;
    } else if (name == "fig3") {
        c.spec = weak;
        c.paths = {Path::bath_oracle};
        c.outputs = {Output::currents};
        c.t_max = 50.0;
        c.t_steps = 501;
    } else if (name == "fig4a" || name == "fig4b") {
        c.spec = name == "fig4a" ? weak : strong;
        c.paths = {Path::analytic};
        c.outputs = {Output::concurrences};
        c.t_max = 30.0;
        c.t_steps = 3001;
    } else if (name == "fig5") {
        c.spec = weak;
        c.paths = {Path::bath_oracle};
        c.outputs = {Output::densities};
        c.t_max = 50.0;
        c.t_steps = 201;
        c.n_modes = 4001; // odd count puts omega_c and omega_c + 0.1 exactly on the grid
        c.snapshot_times = {10.0, 30.0};
        c.density_row_delta = 0.1;
    } else if (name == "fig7") {
        c.spec = weak;
        c.paths = {Path::bath_oracle};
        c.outputs = {Output::totals};
        c.t_max = 50.0;
        c.t_steps = 501;
    } else {
        std::string msg = "unknown preset '" + name + "'; valid names:";
        for (const auto& n : preset_names()) msg += " " + n;
        throw config_error(msg);
    }
    return c;
}

// --------------------------------- run engine --------------------------------

namespace detail {

inline bool path_supports(Path p, Output o) {
    switch (o) {
        case Output::populations: return true;
        case Output::concurrences: return p == Path::analytic || p == Path::pseudomode_ode;
        case Output::spectrum:
        case Output::currents:
        case Output::densities:
        case Output::totals: return p == Path::analytic || p == Path::bath_oracle;
    }
    return false;
}

// Requested outputs must be producible by at least one requested path
// (currents and spectra need bath amplitudes, concurrences need pseudomode
// amplitudes).
inline void check_compatibility(const ScenarioConfig& c) {
    for (Output o : c.outputs) {
        bool ok = false;
        for (Path p : c.paths) ok = ok || path_supports(p, o);
        if (!ok)
            throw config_error(std::string("config: output '") + to_string(o) +
                               "' is incompatible with the requested paths (needs " +
                               (o == Output::concurrences ? "analytic or pseudomode_ode"
                                                          : "analytic or bath_oracle") +
                               ")");
    }
    if (!c.outputs.empty() && c.paths.empty())
        throw config_error("config: outputs requested but no computation path given");
    if (!(c.t_max > 0)) throw config_error("config: t_max must be > 0");
    if (c.t_steps < 2 && !c.outputs.empty())
        throw config_error("config: t_steps must be >= 2");
    if (c.eta_sweep) {
        const auto& s = *c.eta_sweep;
        if (!(s.eta_min > 0) || !(s.eta_max > s.eta_min) || s.points < 2)
            throw config_error("config: eta_sweep requires 0 < eta_min < eta_max and points >= 2");
    }
}

inline std::vector<double> time_grid(double t_max, std::size_t steps) {
    std::vector<double> t(steps);
    for (std::size_t i = 0; i < steps; ++i)
        t[i] = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
    return t;
}

inline std::string format_time_tag(double t) {
    std::ostringstream os;
    os << "t" << t;
    std::string s = os.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

// File name for an output: plain when exactly one requested path produces
// it, suffixed by the path otherwise.
inline std::string output_file_name(const ScenarioConfig& c, Output o, Path p,
                                    const std::string& stem) {
    int producers = 0;
    for (Path q : c.paths) producers += path_supports(q, o) ? 1 : 0;
    if (producers <= 1) return stem + ".csv";
    return stem + "_" + to_string(p) + ".csv";
}

struct PathData {
    std::vector<AmplitudeState> amplitudes;      // analytic / pseudomode_ode
    std::vector<complexd> atom_amplitudes;       // per time node (all paths)
    std::vector<SpectrumSlice> spectra;          // analytic / bath_oracle
    std::vector<BathState> bath_states;          // bath_oracle
};

} // namespace detail

class ScenarioRunner {
public:
    explicit ScenarioRunner(ScenarioConfig config, std::string preset = "")
        : c_(std::move(config)), preset_(std::move(preset)) {}

    RunReport run() {
        const auto t0 = std::chrono::steady_clock::now();
        RunReport r;
        r.preset = preset_;
        r.config = c_;
        r.validation = validate_spec(c_.spec);
        try {
            run_impl(r);
        } catch (const config_error& e) {
            r.error = e.what();
            r.exit_code = 2;
        } catch (const precondition_error& e) {
            r.error = e.what();
            r.exit_code = 4;
        } catch (const integration_error& e) {
            std::ostringstream os;
            os << e.what() << " (reached t = " << e.t_reached() << ")";
            r.error = os.str();
            r.exit_code = 3;
        } catch (const std::exception& e) {
            r.error = e.what();
            r.exit_code = 3;
        }
        r.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_report(r);
        return r;
    }

private:
    ScenarioConfig c_;
    std::string preset_;

    std::filesystem::path out_path(const std::string& name) const {
        return std::filesystem::path(c_.output_dir) / name;
    }

    void write_report(RunReport& r) const {
        std::error_code ec;
        std::filesystem::create_directories(c_.output_dir, ec);
        const auto path = out_path("report.json");
        std::ofstream out(path, std::ios::binary);
        if (out) {
            out << report_to_json(r).dump(2) << "\n";
            r.output_files.push_back("report.json");
        }
    }

    void run_impl(RunReport& r) {
        detail::check_compatibility(c_);
        if (!r.validation.valid()) throw precondition_error(r.validation.summary());
        r.constants = derive_constants(c_.spec);

        std::error_code ec;
        std::filesystem::create_directories(c_.output_dir, ec);
        if (ec) throw std::runtime_error("cannot create output directory: " + c_.output_dir);

        if (c_.eta_sweep) emit_eta_sweep(r);
        if (c_.outputs.empty()) return;

        const auto t_grid = detail::time_grid(c_.t_max, c_.t_steps);

        const bool needs_grid = std::any_of(c_.outputs.begin(), c_.outputs.end(), [&](Output o) {
            return o != Output::populations && o != Output::concurrences;
        });
        BathGrid grid;
        if (needs_grid || std::count(c_.paths.begin(), c_.paths.end(), Path::bath_oracle)) {
            grid = build_bath_grid(c_.spec, c_.n_modes, c_.cutoff);
            r.recurrence_horizon = grid.recurrence_horizon();
            r.coverage = grid.coverage;
            for (const auto& w : grid.warnings) r.warnings.push_back(w);
            if (c_.t_max > grid.recurrence_horizon()) {
                std::ostringstream os;
                os << "requested t_max " << c_.t_max << " exceeds the recurrence horizon "
                   << grid.recurrence_horizon() << "; bath-oracle results beyond it are spurious";
                r.warnings.push_back(os.str());
            }
        }

        for (Path p : c_.paths) {
            detail::PathData data = compute_path(p, grid, t_grid);
            for (Output o : c_.outputs) {
                if (!detail::path_supports(p, o)) continue;
                emit_output(r, p, o, grid, t_grid, data);
            }
        }
    }

    detail::PathData compute_path(Path p, const BathGrid& grid,
                                  const std::vector<double>& t_grid) const {
        detail::PathData d;
        const bool wants_slices = std::any_of(c_.outputs.begin(), c_.outputs.end(), [&](Output o) {
            return o == Output::spectrum || o == Output::densities || o == Output::totals ||
                   o == Output::currents;
        });
        switch (p) {
            case Path::analytic: {
                d.amplitudes.reserve(t_grid.size());
                for (double t : t_grid) d.amplitudes.push_back(amplitudes_closed_form(c_.spec, t));
                for (const auto& a : d.amplitudes) d.atom_amplitudes.push_back(a.c_a);
                if (wants_slices) {
                    d.spectra.reserve(t_grid.size());
                    for (double t : t_grid) d.spectra.push_back(analytic_spectrum(c_.spec, grid, t));
                }
                break;
            }
            case Path::pseudomode_ode: {
                d.amplitudes = integrate_pseudomodes(c_.spec, t_grid, c_.tol);
                for (const auto& a : d.amplitudes) d.atom_amplitudes.push_back(a.c_a);
                break;
            }
            case Path::bath_oracle: {
                d.bath_states = integrate_bath(c_.spec, grid, t_grid, c_.tol);
                for (const auto& s : d.bath_states) d.atom_amplitudes.push_back(s.c_a);
                if (wants_slices) {
                    d.spectra.reserve(d.bath_states.size());
                    for (const auto& s : d.bath_states) d.spectra.push_back(spectrum(grid, s));
                }
                break;
            }
        }
        return d;
    }

    std::vector<std::size_t> window_indices(const BathGrid& grid, double window) const {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < grid.n_modes(); ++k)
            if (std::abs(grid.omegas[k] - c_.spec.omega_c) <= window + 1e-12) idx.push_back(k);
        return idx;
    }

    void emit_output(RunReport& r, Path p, Output o, const BathGrid& grid,
                     const std::vector<double>& t_grid, const detail::PathData& data) {
        switch (o) {
            case Output::populations: emit_populations(r, p, t_grid, data); break;
            case Output::concurrences: emit_concurrences(r, p, data); break;
            case Output::spectrum: emit_spectrum(r, p, grid, data); break;
            case Output::currents: emit_currents(r, p, grid, data); break;
            case Output::densities: emit_densities(r, p, grid, data); break;
            case Output::totals: emit_totals(r, p, grid, data); break;
        }
    }

    // Columns are normalized to Omega_0 units regardless of the spec's unit
    // system: times as Omega_0 t, frequencies as (omega - omega_c)/Omega_0.
    double tu(double t) const { return t * c_.spec.omega_big0; }
    double du(double omega) const { return (omega - c_.spec.omega_c) / c_.spec.omega_big0; }

    void emit_populations(RunReport& r, Path p, const std::vector<double>& t_grid,
                          const detail::PathData& data) {
        const auto name = detail::output_file_name(c_, Output::populations, p, "populations");
        CsvWriter w(out_path(name).string());
        if (p == Path::bath_oracle) {
            w.header({"t[1/Omega0]", "p_atom[1]", "p_reservoir[1]"});
            for (const auto& s : data.bath_states)
                w.row({tu(s.t), std::norm(s.c_a), s.norm() - std::norm(s.c_a)});
        } else {
            w.header({"t[1/Omega0]", "p_atom[1]", "p_mode1[1]", "p_mode2[1]", "p_vacuum[1]"});
            for (const auto& a : data.amplitudes)
                w.row({tu(a.t), std::norm(a.c_a), std::norm(a.a_1), std::norm(a.a_2), a.pi_j});
        }
        (void)t_grid;
        r.output_files.push_back(name);
    }

    void emit_concurrences(RunReport& r, Path p, const detail::PathData& data) {
        const auto name = detail::output_file_name(c_, Output::concurrences, p, "concurrences");
        CsvWriter w(out_path(name).string());
        w.header({"t[1/Omega0]", "c_a1[1]", "c_a2[1]", "c_a12[1]", "c2_a1[1]", "c2_a2[1]",
                  "c2_a12[1]", "tangle[1]"});
        for (const auto& a : data.amplitudes) {
            const auto rec = concurrences(a);
            w.row({tu(rec.t), std::sqrt(rec.c2_a1), std::sqrt(rec.c2_a2), std::sqrt(rec.c2_a12),
                   rec.c2_a1, rec.c2_a2, rec.c2_a12, rec.tangle});
        }
        r.output_files.push_back(name);
    }

    void emit_spectrum(RunReport& r, Path p, const BathGrid& grid, const detail::PathData& data) {
        const auto idx = window_indices(grid, c_.spectrum_window);
        const auto name = detail::output_file_name(c_, Output::spectrum, p, "spectrum");
        {
            CsvWriter w(out_path(name).string());
            w.header({"t[1/Omega0]", "delta[Omega0]", "S[1/Omega0]"});
            for (const auto& s : data.spectra)
                for (std::size_t k : idx)
                    w.row({tu(s.t), du(grid.omegas[k]), s.values[k] * c_.spec.omega_big0});
        }
        r.output_files.push_back(name);
        if (!c_.snapshot_times.empty()) emit_spectrum_snapshots(r, p, grid, data);
    }

    std::size_t slice_index_for_time(double t) const {
        const double dt = c_.t_max / static_cast<double>(c_.t_steps - 1);
        const double pos = t / dt;
        const auto k = static_cast<std::size_t>(std::llround(pos));
        if (k >= c_.t_steps || std::abs(pos - static_cast<double>(k)) > 1e-9)
            throw config_error("snapshot time " + std::to_string(t) + " is not on the time grid");
        return k;
    }

    void emit_spectrum_snapshots(RunReport& r, Path p, const BathGrid& grid,
                                 const detail::PathData& data) {
        // Optional single-Lorentzian reference (W2 = Gamma2 = 0, W1 = 1):
        // always computed with the bath oracle on the same frequency axis.
        std::vector<SpectrumSlice> ref;
        if (c_.reference_lorentzian) {
            ReservoirSpec rs = c_.spec;
            rs.gamma2 = 0.0;
            rs.w1 = 1.0;
            rs.w2 = 0.0;
            auto rgrid = build_bath_grid(rs, c_.n_modes, c_.cutoff);
            std::vector<double> ts{0.0};
            for (double t : c_.snapshot_times)
                if (t > 0) ts.push_back(t);
            std::sort(ts.begin(), ts.end());
            auto states = integrate_bath(rs, rgrid, ts, c_.tol);
            for (const auto& st : states) ref.push_back(spectrum(rgrid, st));
        }
        const auto idx = window_indices(grid, c_.spectrum_window);
        for (double t : c_.snapshot_times) {
            const auto k = slice_index_for_time(t);
            const auto stem = detail::output_file_name(
                c_, Output::spectrum, p, "spectrum_snapshot_" + detail::format_time_tag(tu(t)));
            CsvWriter w(out_path(stem).string());
            const SpectrumSlice* rslice = nullptr;
            for (const auto& s : ref)
                if (std::abs(s.t - t) < 1e-12) rslice = &s;
            if (rslice)
                w.header({"delta[Omega0]", "S[1/Omega0]", "S_lorentzian[1/Omega0]"});
            else
                w.header({"delta[Omega0]", "S[1/Omega0]"});
            for (std::size_t i : idx) {
                std::vector<double> row{du(grid.omegas[i]),
                                        data.spectra[k].values[i] * c_.spec.omega_big0};
                if (rslice) row.push_back(rslice->values[i] * c_.spec.omega_big0);
                w.row(row);
            }
            r.output_files.push_back(stem);
        }
    }

    void emit_currents(RunReport& r, Path p, const BathGrid& grid, const detail::PathData& data) {
        const auto idx = window_indices(grid, c_.spectrum_window);
        const auto jname = detail::output_file_name(c_, Output::currents, p, "currents");
        const auto qname = detail::output_file_name(c_, Output::currents, p, "net_current");
        CsvWriter wj(out_path(jname).string());
        CsvWriter wq(out_path(qname).string());
        wj.header({"t[1/Omega0]", "delta[Omega0]", "J[1]"});
        wq.header({"t[1/Omega0]", "Q[Omega0]"});
        const std::size_t nt =
            p == Path::bath_oracle ? data.bath_states.size() : data.spectra.size();
        for (std::size_t s = 0; s < nt; ++s) {
            CurrentSlice cs = p == Path::bath_oracle
                                  ? current(c_.spec, grid, data.bath_states[s])
                                  : analytic_current_slice(grid, data, s);
            for (std::size_t k : idx) wj.row({tu(cs.t), du(grid.omegas[k]), cs.j_values[k]});
            wq.row({tu(cs.t), cs.q / c_.spec.omega_big0});
        }
        r.output_files.push_back(jname);
        r.output_files.push_back(qname);
    }

    CurrentSlice analytic_current_slice(const BathGrid& grid, const detail::PathData& data,
                                        std::size_t s) const {
        return current(c_.spec, grid, analytic_bath_state(c_.spec, grid, data.spectra[s].t));
    }

    void emit_densities(RunReport& r, Path p, const BathGrid& grid, const detail::PathData& data) {
        const auto idx = window_indices(grid, c_.spectrum_window);
        const double o0 = c_.spec.omega_big0;
        {
            const auto name =
                detail::output_file_name(c_, Output::densities, p, "density_atom_modes");
            CsvWriter w(out_path(name).string());
            w.header({"t[1/Omega0]", "delta[Omega0]", "E_A[1/Omega0]"});
            for (std::size_t s = 0; s < data.spectra.size(); ++s) {
                const auto ea = density_atom_modes(data.atom_amplitudes[s], data.spectra[s]);
                for (std::size_t k : idx)
                    w.row({tu(data.spectra[s].t), du(grid.omegas[k]), ea[k] * o0});
            }
            r.output_files.push_back(name);
        }
        if (c_.density_row_delta) {
            const double target = c_.spec.omega_c + *c_.density_row_delta;
            std::size_t row = 0;
            for (std::size_t k = 1; k < grid.n_modes(); ++k)
                if (std::abs(grid.omegas[k] - target) < std::abs(grid.omegas[row] - target))
                    row = k;
            if (std::abs(grid.omegas[row] - target) > 0.5 * grid.delta_omega + 1e-12)
                r.warnings.push_back("density row frequency snapped to nearest grid mode");
            const auto name = detail::output_file_name(c_, Output::densities, p, "density_modes_row");
            CsvWriter w(out_path(name).string());
            w.header({"t[1/Omega0]", "delta_lambda[Omega0]", "delta_mu[Omega0]",
                      "E_R[1/Omega0^2]"});
            for (const auto& s : data.spectra) {
                const auto dm = density_modes_modes(s);
                for (std::size_t k : idx)
                    w.row({tu(s.t), du(grid.omegas[k]), du(grid.omegas[row]),
                           dm.value(k, row) * o0 * o0});
            }
            r.output_files.push_back(name);
        }
        for (double t : c_.snapshot_times) {
            const auto k = slice_index_for_time(t);
            const auto dm = density_modes_modes(data.spectra[k]);
            const std::size_t stride =
                std::max<std::size_t>(1, (idx.size() + c_.density_axis_max_points - 1) /
                                             c_.density_axis_max_points);
            const auto name = detail::output_file_name(
                c_, Output::densities, p, "density_modes_" + detail::format_time_tag(tu(t)));
            CsvWriter w(out_path(name).string());
            w.header({"delta_lambda[Omega0]", "delta_mu[Omega0]", "E_R[1/Omega0^2]"});
            for (std::size_t i = 0; i < idx.size(); i += stride)
                for (std::size_t j = 0; j < idx.size(); j += stride)
                    w.row({du(grid.omegas[idx[i]]), du(grid.omegas[idx[j]]),
                           dm.value(idx[i], idx[j]) * o0 * o0});
            r.output_files.push_back(name);
        }
    }

    void emit_totals(RunReport& r, Path p, const BathGrid& grid, const detail::PathData& data) {
        const auto name = detail::output_file_name(c_, Output::totals, p, "totals");
        CsvWriter w(out_path(name).string());
        w.header({"t[1/Omega0]", "C2_A[1]", "C2_R[1]", "C2[1]"});
        for (std::size_t s = 0; s < data.spectra.size(); ++s) {
            const auto tot = entanglement_totals(data.atom_amplitudes[s], grid, data.spectra[s]);
            w.row({tu(data.spectra[s].t), tot.c2_a_total, tot.c2_r_total, tot.c2_total});
        }
        r.output_files.push_back(name);
    }

    // Final-population sweep over eta at fixed Gamma_1/Gamma_2 ratio,
    // log-spaced; depends on eta only.
    void emit_eta_sweep(RunReport& r) {
        const auto& sw = *c_.eta_sweep;
        const auto base = validate_spec(c_.spec);
        if (!base.perfect_gap || !base.resonant)
            throw precondition_error("eta sweep requires a perfect-gap resonant spec");
        CsvWriter w(out_path("trapping_sweep.csv").string());
        w.header({"eta[1]", "p_atom_inf[1]", "p_mode1_inf[1]", "p_vacuum_inf[1]"});
        const double ratio = c_.spec.gamma1 / c_.spec.gamma2;
        for (std::size_t i = 0; i < sw.points; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(sw.points - 1);
            const double eta = sw.eta_min * std::pow(sw.eta_max / sw.eta_min, f);
            ReservoirSpec s = c_.spec;
            // sqrt(G1 G2) = 2 Omega_0 / eta at fixed ratio G1/G2
            const double g2 = 2.0 * s.omega_big0 / (eta * std::sqrt(ratio));
            s.gamma2 = g2;
            s.gamma1 = ratio * g2;
            const auto lim = trapping_limits(s);
            w.row({eta, lim.c_a_inf * lim.c_a_inf, lim.a_1_inf * lim.a_1_inf, lim.pi_j_inf});
        }
        r.output_files.push_back("trapping_sweep.csv");
    }
};

inline RunReport run_scenario(const ScenarioConfig& config, const std::string& preset = "") {
    return ScenarioRunner(config, preset).run();
}

inline RunReport run_preset(const std::string& name) {
    return run_scenario(preset_config(name), name);
}

inline RunReport run_config(const std::string& path) { return run_scenario(load_config(path)); }

} // namespace gapres
