// cli.hpp — Command-line front end: figure presets, config-file runs,
// validation and trapping-limit queries.
//
// Exit codes: 0 success, 2 config error, 3 numeric failure,
// 4 precondition (validity-gate) rejection.

#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapres/analytic.hpp"
#include "gapres/core.hpp"
#include "gapres/scenario.hpp"

namespace gapres::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitPrecondition = 4;

namespace detail {

struct Overrides {
    std::optional<std::string> out_dir;
    std::optional<double> tol;
    std::optional<std::size_t> modes;
    std::optional<double> cutoff;
    std::optional<double> t_max;

    void apply(ScenarioConfig& c) const {
        if (out_dir) c.output_dir = *out_dir;
        if (tol) c.tol = *tol;
        if (modes) c.n_modes = *modes;
        if (cutoff) c.cutoff = *cutoff;
        if (t_max) c.t_max = *t_max;
    }
};

inline void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--out-dir", ov.out_dir, "Output directory (overrides config)");
    cmd->add_option("--tol", ov.tol, "Integrator tolerance (overrides config)");
    cmd->add_option("--modes", ov.modes, "Number of bath modes (overrides config)");
    cmd->add_option("--cutoff", ov.cutoff, "Bath half-width in Omega_0 (overrides config)");
    cmd->add_option("--t-max", ov.t_max, "Final time in 1/Omega_0 (overrides config)");
}

inline int finish_run(const RunReport& r, std::ostream& out, std::ostream& err) {
    for (const auto& w : r.warnings) err << "warning: " << w << "\n";
    if (!r.error.empty()) {
        err << "error: " << r.error << "\n";
        return r.exit_code;
    }
    out << "wrote " << r.output_files.size() << " file(s) to " << r.config.output_dir << ":\n";
    for (const auto& f : r.output_files) out << "  " << f << "\n";
    return kExitOk;
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"Two-level atom in a band-gap structured reservoir: analytic, pseudomode-ODE "
                 "and discretized-bath computation paths with CSV plot data"};
    app.require_subcommand(1);

    std::string preset_name, config_path;
    bool dump_config = false;
    detail::Overrides ov_preset, ov_run;

    auto* preset = app.add_subcommand("preset", "Run a figure preset");
    preset->add_option("name", preset_name, "Preset name (see `preset list`)")->required();
    preset->add_flag("--dump-config", dump_config,
                     "Print the preset's resolved config as JSON and exit");
    detail::add_override_flags(preset, ov_preset);

    auto* runc = app.add_subcommand("run", "Run a JSON scenario config");
    runc->add_option("config", config_path, "Path to config JSON")->required();
    detail::add_override_flags(runc, ov_run);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Validate the spec in a config file");
    validate->add_option("config", validate_path, "Path to config JSON")->required();

    std::string limits_path;
    auto* limits = app.add_subcommand("limits", "Print trapping-state limits for a config");
    limits->add_option("config", limits_path, "Path to config JSON")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (preset->parsed()) {
            if (preset_name == "list") {
                for (const auto& n : preset_names()) out << n << "\n";
                return kExitOk;
            }
            auto cfg = preset_config(preset_name);
            ov_preset.apply(cfg);
            if (dump_config) {
                out << config_to_json(cfg).dump(2) << "\n";
                return kExitOk;
            }
            return detail::finish_run(run_scenario(cfg, preset_name), out, err);
        }
        if (runc->parsed()) {
            auto cfg = load_config(config_path);
            ov_run.apply(cfg);
            return detail::finish_run(run_scenario(cfg), out, err);
        }
        if (validate->parsed()) {
            const auto cfg = load_config(validate_path);
            const auto rep = validate_spec(cfg.spec);
            nlohmann::json j{{"valid", rep.valid()},
                             {"violations", rep.violations},
                             {"perfect_gap", rep.perfect_gap},
                             {"resonant", rep.resonant},
                             {"oscillatory", rep.oscillatory}};
            out << j.dump(2) << "\n";
            return rep.valid() ? kExitOk : kExitPrecondition;
        }
        if (limits->parsed()) {
            const auto cfg = load_config(limits_path);
            const auto lim = trapping_limits(cfg.spec);
            const auto d = derive_constants(cfg.spec);
            nlohmann::json j{{"eta", d.eta},
                             {"c_a_inf", lim.c_a_inf},
                             {"a_1_inf", lim.a_1_inf},
                             {"pi_j_inf", lim.pi_j_inf},
                             {"p_atom_inf", lim.c_a_inf * lim.c_a_inf},
                             {"p_mode1_inf", lim.a_1_inf * lim.a_1_inf}};
            out << j.dump(2) << "\n";
            return kExitOk;
        }
    } catch (const config_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const integration_error& e) {
        err << "error: " << e.what() << " (reached t = " << e.t_reached() << ")\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace gapres::cli
