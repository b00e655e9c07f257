#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "subrad/bundled.hpp"
#include "subrad/errors.hpp"
#include "subrad/scenario.hpp"

namespace subrad::cli {

// exit codes of the subrad tool
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numerics = 3;
inline constexpr int exit_io = 4;

namespace detail {

/// Bundled scenario name or a path to a config file on disk.
inline ScenarioConfig resolve_scenario(const std::string& arg) {
    const auto& bundled = bundled_scenarios();
    if (const auto it = bundled.find(arg); it != bundled.end()) return parse_scenario(it->second);
    return load_scenario_file(arg);
}

inline std::filesystem::path default_out_dir() {
    if (const char* env = std::getenv("SUBRAD_OUT_DIR"); env && *env) return env;
    return ".";
}

inline void seed_fixtures(const std::filesystem::path& out_dir, std::ostream& os) {
    const auto dir = out_dir / "scenarios";
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    for (const auto& [name, text] : bundled_scenarios()) {
        const auto path = dir / (name + ".json");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw io_error("cannot write " + path.string());
        out << text << "\n";
        os << "seeded " << path.string() << "\n";
    }
}

}  // namespace detail

/// Full command-line driver; kept out of main() so tests can exercise the
/// argument handling and exit-code mapping in-process.
inline int run_main(int argc, const char* const* argv, std::ostream& os = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"subrad: dissipative one-excitation dynamics of N two-level atoms in a lossy cavity"};
    app.require_subcommand(1);

    std::string run_config;
    std::string out_dir_arg;
    std::string engine_override;
    bool seed = false;
    auto* run = app.add_subcommand("run", "run a scenario and write CSV tables");
    run->add_option("config", run_config, "bundled scenario name or path to a JSON config")
        ->required();
    run->add_option("--out", out_dir_arg, "output directory (default: SUBRAD_OUT_DIR or .)");
    run->add_option("--engine", engine_override, "override the configured engine")
        ->check(CLI::IsMember({"analytic", "ode", "both"}));
    run->add_flag("--seed-fixtures", seed, "also write the bundled scenario files to <out>/scenarios");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a scenario file and report every violation");
    validate->add_option("config", validate_path, "path to a JSON config")->required();

    auto* list = app.add_subcommand("list", "list bundled scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, os, err);
        return exit_config;
    }

    try {
        if (list->parsed()) {
            for (const auto& name : list_scenarios()) os << name << "\n";
            return exit_ok;
        }
        if (validate->parsed()) {
            try {
                load_scenario_file(validate_path);
            } catch (const config_error& e) {
                for (const auto& v : e.violations()) err << v << "\n";
                return exit_config;
            }
            os << validate_path << ": ok\n";
            return exit_ok;
        }
        // run
        const auto out_dir = out_dir_arg.empty() ? detail::default_out_dir()
                                                 : std::filesystem::path(out_dir_arg);
        if (seed) detail::seed_fixtures(out_dir, os);
        ScenarioConfig config = detail::resolve_scenario(run_config);
        if (!engine_override.empty()) {
            config.engine = engine_override == "analytic" ? Engine::analytic
                            : engine_override == "ode"    ? Engine::ode
                                                          : Engine::both;
            if (config.engine != Engine::ode && !config.point_like)
                throw config_error({"engine: the analytic solution requires point_like geometry"});
        }
        for (const auto& path : run_and_write(config, out_dir)) os << "wrote " << path.string() << "\n";
        return exit_ok;
    } catch (const config_error& e) {
        err << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const numerics_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerics;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << "\n";
        return exit_numerics;
    }
}

}  // namespace subrad::cli
