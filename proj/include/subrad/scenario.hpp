#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subrad/analytic.hpp"
#include "subrad/concurrence.hpp"
#include "subrad/density.hpp"
#include "subrad/dicke.hpp"
#include "subrad/errors.hpp"
#include "subrad/kernels.hpp"
#include "subrad/lindblad.hpp"
#include "subrad/transform.hpp"

namespace subrad {

enum class Engine { analytic, ode, both };

enum class Output { rho_elements, concurrence_pair, concurrence_total, survival, dicke_report };

struct TimeGrid {
    double t_max = 0.0;
    int n_points = 0;
    bool log_spaced = false;
    double t_min = 0.0;  // first point of a log-spaced grid

    std::vector<double> times() const {
        std::vector<double> t(n_points);
        if (log_spaced) {
            const double ratio = t_max / t_min;
            for (int i = 0; i < n_points; ++i)
                t[i] = t_min * std::pow(ratio, static_cast<double>(i) / (n_points - 1));
        } else {
            for (int i = 0; i < n_points; ++i)
                t[i] = t_max * static_cast<double>(i) / (n_points - 1);
        }
        return t;
    }
};

struct ScenarioConfig {
    std::string name;
    SystemParams params;
    bool point_like = true;
    AtomGeometry geometry;  // used only when point_like is false
    TimeGrid time;
    Engine engine = Engine::analytic;
    std::vector<Output> outputs;
    std::optional<double> ode_step;
    bool allow_indefinite = false;

    DissipationKernel kernel() const {
        return point_like ? build_point_like_kernel(params) : build_kernel(params, geometry);
    }
};

namespace detail {

inline const std::map<std::string, Output>& output_names() {
    static const std::map<std::string, Output> m = {
        {"rho_elements", Output::rho_elements},
        {"concurrence_pair", Output::concurrence_pair},
        {"concurrence_total", Output::concurrence_total},
        {"survival", Output::survival},
        {"dicke_report", Output::dicke_report},
    };
    return m;
}

inline bool get_number(const nlohmann::json& j, const char* key, double& out) {
    if (!j.contains(key) || !j[key].is_number()) return false;
    out = j[key].get<double>();
    return true;
}

}  // namespace detail

/// Checks every field of a parsed scenario document and returns the full
/// list of violations, each naming the offending field.
inline std::vector<std::string> validate_scenario(const nlohmann::json& j) {
    std::vector<std::string> bad;
    if (!j.is_object()) return {"document: top level must be a JSON object"};

    static const std::set<std::string> known = {
        "name",         "n_atoms",     "coupling",   "cavity_rate", "atomic_rate",
        "cavity_freq",  "atomic_freq", "lamb_shift", "point_like",  "positions",
        "dipole_direction", "t_max",   "n_points",   "log_spaced",  "t_min",
        "engine",       "outputs",     "ode_step",   "allow_indefinite"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) bad.push_back(key + ": unknown key");

    if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
        bad.push_back("name: required non-empty string");
    else {
        const auto name = j["name"].get<std::string>();
        if (name.find_first_not_of(
                "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") !=
            std::string::npos)
            bad.push_back("name: only letters, digits, '_' and '-' are allowed");
    }

    long n_atoms = 0;
    if (!j.contains("n_atoms") || !j["n_atoms"].is_number_integer() ||
        (n_atoms = j["n_atoms"].get<long>()) < 1)
        bad.push_back("n_atoms: required integer >= 1");

    const auto need_nonneg = [&](const char* key) {
        double v;
        if (!detail::get_number(j, key, v) || !(v >= 0.0))
            bad.push_back(std::string(key) + ": required number >= 0");
    };
    const auto need_pos = [&](const char* key) {
        double v;
        if (!detail::get_number(j, key, v) || !(v > 0.0))
            bad.push_back(std::string(key) + ": required number > 0");
    };
    need_nonneg("coupling");
    need_nonneg("cavity_rate");
    need_nonneg("atomic_rate");
    need_pos("cavity_freq");
    need_pos("atomic_freq");
    if (j.contains("lamb_shift") && !j["lamb_shift"].is_number())
        bad.push_back("lamb_shift: must be a number");

    bool point_like = true;
    if (j.contains("point_like")) {
        if (j["point_like"].is_boolean())
            point_like = j["point_like"].get<bool>();
        else
            bad.push_back("point_like: must be a boolean");
    }
    if (point_like) {
        if (j.contains("positions")) bad.push_back("positions: only allowed when point_like is false");
        if (j.contains("dipole_direction"))
            bad.push_back("dipole_direction: only allowed when point_like is false");
    } else {
        if (!j.contains("positions") || !j["positions"].is_array())
            bad.push_back("positions: required array of [x, y, z] when point_like is false");
        else {
            const auto& pos = j["positions"];
            if (n_atoms >= 1 && static_cast<long>(pos.size()) != n_atoms)
                bad.push_back("positions: must have exactly n_atoms entries");
            for (const auto& p : pos)
                if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
                    !p[2].is_number()) {
                    bad.push_back("positions: every entry must be [x, y, z] in meters");
                    break;
                }
        }
        if (!j.contains("dipole_direction") || !j["dipole_direction"].is_array() ||
            j["dipole_direction"].size() != 3)
            bad.push_back("dipole_direction: required [x, y, z] unit vector when point_like is false");
        else {
            const auto& d = j["dipole_direction"];
            if (d[0].is_number() && d[1].is_number() && d[2].is_number()) {
                const double nrm = std::sqrt(d[0].get<double>() * d[0].get<double>() +
                                             d[1].get<double>() * d[1].get<double>() +
                                             d[2].get<double>() * d[2].get<double>());
                if (std::abs(nrm - 1.0) > 1e-12)
                    bad.push_back("dipole_direction: must have unit norm (within 1e-12)");
            } else {
                bad.push_back("dipole_direction: entries must be numbers");
            }
        }
    }

    need_pos("t_max");
    if (!j.contains("n_points") || !j["n_points"].is_number_integer() ||
        j["n_points"].get<long>() < 2)
        bad.push_back("n_points: required integer >= 2");
    bool log_spaced = false;
    if (j.contains("log_spaced")) {
        if (j["log_spaced"].is_boolean())
            log_spaced = j["log_spaced"].get<bool>();
        else
            bad.push_back("log_spaced: must be a boolean");
    }
    if (log_spaced) {
        double t_min, t_max;
        if (!detail::get_number(j, "t_min", t_min) || !(t_min > 0.0))
            bad.push_back("t_min: required number > 0 when log_spaced is true");
        else if (detail::get_number(j, "t_max", t_max) && !(t_min < t_max))
            bad.push_back("t_min: must be smaller than t_max");
    } else if (j.contains("t_min")) {
        bad.push_back("t_min: only allowed when log_spaced is true");
    }

    std::string engine = "analytic";
    if (!j.contains("engine") || !j["engine"].is_string())
        bad.push_back("engine: required string, one of analytic | ode | both");
    else {
        engine = j["engine"].get<std::string>();
        if (engine != "analytic" && engine != "ode" && engine != "both")
            bad.push_back("engine: must be one of analytic | ode | both");
    }
    if ((engine == "analytic" || engine == "both") && !point_like)
        bad.push_back("engine: the analytic solution requires point_like geometry");

    if (!j.contains("outputs") || !j["outputs"].is_array() || j["outputs"].empty())
        bad.push_back("outputs: required non-empty array");
    else {
        std::set<std::string> seen;
        for (const auto& o : j["outputs"]) {
            if (!o.is_string() || !detail::output_names().count(o.get<std::string>())) {
                bad.push_back("outputs: unknown entry " + o.dump());
                continue;
            }
            const auto s = o.get<std::string>();
            if (!seen.insert(s).second) bad.push_back("outputs: duplicate entry " + s);
            if ((s == "concurrence_pair" || s == "concurrence_total" || s == "dicke_report") &&
                n_atoms == 1)
                bad.push_back("outputs: " + s + " requires n_atoms >= 2");
        }
    }

    if (j.contains("ode_step")) {
        double v;
        if (!detail::get_number(j, "ode_step", v) || !(v > 0.0))
            bad.push_back("ode_step: must be a number > 0");
    }
    if (j.contains("allow_indefinite") && !j["allow_indefinite"].is_boolean())
        bad.push_back("allow_indefinite: must be a boolean");

    return bad;
}

/// Parses and validates a scenario document; throws config_error carrying
/// every violation found.
inline ScenarioConfig parse_scenario(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error({std::string("document: not valid JSON: ") + e.what()});
    }
    const auto bad = validate_scenario(j);
    if (!bad.empty()) throw config_error(bad);

    ScenarioConfig c;
    c.name = j["name"].get<std::string>();
    c.params.n_atoms = j["n_atoms"].get<int>();
    c.params.coupling = j["coupling"].get<double>();
    c.params.cavity_rate = j["cavity_rate"].get<double>();
    c.params.atomic_rate = j["atomic_rate"].get<double>();
    c.params.cavity_freq = j["cavity_freq"].get<double>();
    c.params.atomic_freq = j["atomic_freq"].get<double>();
    c.params.lamb_shift = j.value("lamb_shift", 0.0);
    c.point_like = j.value("point_like", true);
    if (!c.point_like) {
        for (const auto& p : j["positions"])
            c.geometry.positions.emplace_back(p[0].get<double>(), p[1].get<double>(),
                                              p[2].get<double>());
        const auto& d = j["dipole_direction"];
        c.geometry.dipole_direction =
            Vec3(d[0].get<double>(), d[1].get<double>(), d[2].get<double>());
    }
    c.time.t_max = j["t_max"].get<double>();
    c.time.n_points = j["n_points"].get<int>();
    c.time.log_spaced = j.value("log_spaced", false);
    c.time.t_min = j.value("t_min", 0.0);
    const auto engine = j["engine"].get<std::string>();
    c.engine = engine == "analytic" ? Engine::analytic
               : engine == "ode"    ? Engine::ode
                                    : Engine::both;
    for (const auto& o : j["outputs"]) c.outputs.push_back(detail::output_names().at(o.get<std::string>()));
    if (j.contains("ode_step")) c.ode_step = j["ode_step"].get<double>();
    c.allow_indefinite = j.value("allow_indefinite", false);
    return c;
}

inline ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read scenario file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ScenarioResult {
    Table main;
    std::optional<Table> comparison;  // engine == both: per-time max deviation
    std::optional<Table> dicke;       // single-row late-time report
};

namespace detail {

inline std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct EnginePoint {
    AnalyticState tilde;                      // collective-basis elements
    std::optional<DensityMatrix> original;    // per-atom basis state (ode route)
};

inline AnalyticState elements_from_matrix(const DensityMatrix& rho_tilde, double t) {
    const int n = static_cast<int>(rho_tilde.rows()) - 2;
    AnalyticState s;
    s.n_atoms = n;
    s.t = t;
    s.rho_vacuum = rho_tilde(vacuum_index(), vacuum_index()).real();
    s.rho_bright = rho_tilde(atom_row(1, n), atom_row(1, n)).real();
    s.rho_dark = n >= 2 ? rho_tilde(atom_row(2, n), atom_row(2, n)).real() : 0.0;
    s.rho_bright_photon = rho_tilde(atom_row(1, n), photon_index(n));
    s.rho_photon = rho_tilde(photon_index(n), photon_index(n)).real();
    return s;
}

}  // namespace detail

/**
 * Runs one scenario and produces its output tables. The analytic engine
 * evaluates the closed-form collective-basis solution; the ode engine
 * integrates the full master equation in the frame rotating at the cavity
 * frequency and transforms into the collective basis for reporting. With
 * engine = both the main table comes from the analytic route and a
 * comparison table reports the max entrywise deviation per time point.
 */
inline ScenarioResult run_scenario(const ScenarioConfig& config) {
    config.params.validate();
    if (!config.point_like) config.geometry.validate(config.params.n_atoms);
    const int n = config.params.n_atoms;
    const auto grid = config.time.times();
    const TransformU u = build_u(n);

    const bool want_ode = config.engine == Engine::ode || config.engine == Engine::both;
    const bool want_analytic = config.engine == Engine::analytic || config.engine == Engine::both;

    std::vector<detail::EnginePoint> points(grid.size());
    std::vector<DensityMatrix> ode_tilde;

    if (want_ode) {
        const auto kernel = config.kernel();
        const auto spec = GeneratorSpec::make(rotating_frame_hamiltonian(config.params, kernel),
                                              config.params.cavity_rate, kernel.gamma_matrix,
                                              config.allow_indefinite);
        PropagateOptions opt;
        opt.step = config.ode_step;
        std::vector<double> ode_grid = grid;
        bool dropped_origin = false;
        if (ode_grid.front() > 0.0) {  // log grids start after t = 0
            ode_grid.insert(ode_grid.begin(), 0.0);
            dropped_origin = true;
        }
        const auto traj = propagate(spec, one_excitation_mixture(n), ode_grid, opt);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const auto& rho = traj.states[g + (dropped_origin ? 1 : 0)];
            const DensityMatrix tilde = forward_transform(rho, u);
            ode_tilde.push_back(tilde);
            points[g].original = rho;
            if (!want_analytic) points[g].tilde = detail::elements_from_matrix(tilde, grid[g]);
        }
    }
    if (want_analytic) {
        for (std::size_t g = 0; g < grid.size(); ++g)
            points[g].tilde = analytic_state(config.params, grid[g]);
    }

    ScenarioResult result;
    result.main.columns.push_back("time_s");
    for (const auto out : config.outputs) {
        switch (out) {
            case Output::rho_elements:
                for (const char* c : {"rho_vacuum", "rho_bright", "rho_dark",
                                      "re_rho_bright_photon", "im_rho_bright_photon", "rho_photon"})
                    result.main.columns.push_back(c);
                break;
            case Output::concurrence_pair: result.main.columns.push_back("c_pair"); break;
            case Output::concurrence_total: result.main.columns.push_back("c_bt"); break;
            case Output::survival: result.main.columns.push_back("survival"); break;
            case Output::dicke_report: break;  // separate table
        }
    }

    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto& s = points[g].tilde;
        std::vector<double> row{grid[g]};
        for (const auto out : config.outputs) {
            switch (out) {
                case Output::rho_elements:
                    row.insert(row.end(),
                               {s.rho_vacuum, s.rho_bright, s.rho_dark, s.rho_bright_photon.real(),
                                s.rho_bright_photon.imag(), s.rho_photon});
                    break;
                case Output::concurrence_pair:
                case Output::concurrence_total: {
                    if (want_analytic) {
                        const double c_pair = conditional_pair_concurrence(s);
                        row.push_back(out == Output::concurrence_pair
                                          ? c_pair
                                          : total_binary_concurrence(c_pair, n));
                    } else {
                        // generic route; pairs need not be identical for
                        // explicit geometries, so the total is a real sum
                        const DensityMatrix cond = conditioned_state(*points[g].original);
                        if (out == Output::concurrence_pair) {
                            row.push_back(wootters_concurrence(pair_reduced_density(cond, 1, 2)));
                        } else {
                            double total = 0.0;
                            for (int i = 1; i <= n; ++i)
                                for (int j = i + 1; j <= n; ++j)
                                    total += wootters_concurrence(pair_reduced_density(cond, i, j));
                            row.push_back(total);
                        }
                    }
                    break;
                }
                case Output::survival:
                    row.push_back(1.0 - s.rho_vacuum);
                    break;
                case Output::dicke_report: break;
            }
        }
        result.main.rows.push_back(std::move(row));
    }

    if (config.engine == Engine::both) {
        Table cmp;
        cmp.columns = {"time_s", "max_abs_dev"};
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const DensityMatrix ana = analytic_density(points[g].tilde);
            cmp.rows.push_back({grid[g], (ana - ode_tilde[g]).cwiseAbs().maxCoeff()});
        }
        result.comparison = std::move(cmp);
    }

    const bool want_dicke = std::count(config.outputs.begin(), config.outputs.end(),
                                       Output::dicke_report) > 0;
    if (want_dicke) {
        DensityMatrix final_state =
            want_ode ? *points.back().original
                     : back_transform(analytic_density(points.back().tilde), u);
        const DickeReport rep = analyze_asymptotic(final_state, n);
        Table t;
        t.columns = {"n_atoms",          "vacuum_weight",     "trapping_probability",
                     "s_quantum_number", "sz_eigenvalue",     "max_s_minus_norm",
                     "total_spin_residual", "sz_residual",    "mixture_residual"};
        const double max_norm =
            *std::max_element(rep.s_minus_norms.begin(), rep.s_minus_norms.end());
        t.rows.push_back({static_cast<double>(rep.n_atoms), rep.vacuum_weight,
                          rep.trapping_probability, rep.s_quantum_number, rep.sz_eigenvalue,
                          max_norm, rep.total_spin_residual, rep.sz_residual,
                          rep.mixture_residual});
        result.dicke = std::move(t);
    }
    return result;
}

/// Writes a table as CSV: fixed column order, 17 significant digits,
/// "\n" line endings. Output is byte-stable for a given config and build.
inline void write_csv(const Table& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path.string());
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << detail::format_value(row[c]);
        out << "\n";
    }
    if (!out) throw io_error("failed while writing " + path.string());
}

/// Runs a scenario and writes its tables under out_dir; returns the paths.
inline std::vector<std::filesystem::path> run_and_write(const ScenarioConfig& config,
                                                        const std::filesystem::path& out_dir) {
    const ScenarioResult result = run_scenario(config);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::vector<std::filesystem::path> written;
    const auto main_path = out_dir / (config.name + ".csv");
    write_csv(result.main, main_path);
    written.push_back(main_path);
    if (result.comparison) {
        const auto p = out_dir / (config.name + "_compare.csv");
        write_csv(*result.comparison, p);
        written.push_back(p);
    }
    if (result.dicke) {
        const auto p = out_dir / (config.name + "_dicke.csv");
        write_csv(*result.dicke, p);
        written.push_back(p);
    }
    return written;
}

}  // namespace subrad
