// Command-line driver: load a scenario or preset, apply overrides, run, and
// emit snapshot + diagnostics CSVs. Exit codes: 0 success, 1 numerical
// failure, 2 configuration error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "edchrom/csv_io.hpp"
#include "edchrom/diagnostics.hpp"
#include "edchrom/errors.hpp"
#include "edchrom/integrate.hpp"
#include "edchrom/scenario.hpp"

namespace fs = std::filesystem;
using namespace edchrom;

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium-dispersive multi-component chromatography column solver"};

    std::string scenario_path, preset_name, scheme_str, out_dir = ".";
    int m_override = 0;
    double ratio_override = 0.0, t_final_override = -1.0;
    double c0 = 1.0, c1 = 1.0;
    bool check_stability = false, list_presets = false;

    auto* opt_scenario = app.add_option("--scenario", scenario_path, "Scenario JSON file");
    auto* opt_preset = app.add_option("--preset", preset_name, "Named preset scenario");
    opt_scenario->excludes(opt_preset);
    opt_preset->excludes(opt_scenario);
    app.add_option("--m", m_override, "Override the cell count");
    app.add_option("--dt-over-dz", ratio_override, "Override the time-step ratio dt/dz");
    app.add_option("--scheme", scheme_str,
                   "Override the scheme (upwind-fe, explicit-rk2, imex-rk2, ncs1, ncs2)");
    app.add_option("--t-final", t_final_override, "Override the final time");
    app.add_option("--out-dir", out_dir, "Directory for the CSV output (default: .)");
    app.add_flag("--check-stability", check_stability,
                 "Print the dt/dz stability bounds for the configuration and exit");
    app.add_option("--c0", c0, "Constant in the explicit stability bound (default 1)");
    app.add_option("--c1", c1, "Constant in the IMEX stability bound (default 1)");
    app.add_flag("--list-presets", list_presets, "List available presets and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; flag misuse is a config error
    }

    try {
        if (list_presets) {
            for (const auto& name : preset_names()) std::cout << name << "\n";
            return 0;
        }
        if (scenario_path.empty() == preset_name.empty())
            throw ConfigError("exactly one of --scenario or --preset is required");

        Scenario scenario =
            preset_name.empty() ? load_scenario(scenario_path) : make_preset(preset_name);
        RunConfig& cfg = scenario.config;

        if (m_override != 0) {
            if (m_override < 5) throw ConfigError("--m must be >= 5");
            cfg.m = m_override;
        }
        if (ratio_override != 0.0) {
            if (!(ratio_override > 0.0)) throw ConfigError("--dt-over-dz must be > 0");
            cfg.dt_over_dz = ratio_override;
        }
        if (!scheme_str.empty()) {
            const auto s = scheme_from_name(scheme_str);
            if (!s) throw ConfigError("unknown scheme '" + scheme_str + "'");
            cfg.scheme = *s;
        }
        if (t_final_override >= 0.0) {
            cfg.t_final = t_final_override;
            std::erase_if(cfg.snapshots, [&](double t) { return t > cfg.t_final; });
        }

        const Grid grid(cfg.m);
        if (check_stability) {
            std::printf("explicit dt/dz bound: %.4f\n",
                        explicit_stability_bound(cfg.phys, grid, c0));
            std::printf("imex dt/dz bound: %.4f\n", imex_stability_bound(cfg.phys, c1));
            return 0;
        }

        const RunResult result = run(cfg);

        fs::create_directories(out_dir);
        for (const auto& snap : result.snapshots) {
            const fs::path path = fs::path(out_dir) / snapshot_filename(scenario.name, snap.time);
            write_snapshot_csv(path.string(), grid, snap);
            std::cout << "wrote " << path.string() << "\n";
        }
        const fs::path diag_path =
            fs::path(out_dir) / diagnostics_filename(scenario.name);
        write_diagnostics_csv(diag_path.string(), result.diagnostics,
                              cfg.isotherm.components());
        std::cout << "wrote " << diag_path.string() << "\n";

        // Displacement-style runs (a final segment feeding only the
        // strongest-affinity component) get the operating-line prediction.
        const auto& segs = cfg.injection.segments;
        if (!segs.empty()) {
            const auto& feed = segs.back().c;
            const int n = cfg.isotherm.components();
            int nonzero = -1, count = 0;
            for (int i = 0; i < n; ++i)
                if (feed[i] > 0.0) {
                    nonzero = i;
                    ++count;
                }
            if (count == 1 && nonzero == n - 1 && n > 1) {
                const auto flags = operating_line_check(cfg.isotherm, nonzero, feed[nonzero]);
                std::printf("operating line (displacer component %d at c=%g):", nonzero + 1,
                            feed[nonzero]);
                for (int i = 0; i < n; ++i) {
                    if (i == nonzero) continue;
                    std::printf(" component %d plateau=%s", i + 1, flags[i] ? "yes" : "no");
                }
                std::printf("\n");
            }
        }

        std::printf("run %s: scheme=%s m=%d dt/dz=%g Da=%g steps=%ld", scenario.name.c_str(),
                    std::string(scheme_name(cfg.scheme)).c_str(), cfg.m, cfg.dt_over_dz,
                    cfg.phys.Da, result.steps);
        if (cfg.scheme == SchemeKind::ImexRK2)
            std::printf(" max_newton=%d", result.max_newton_iterations);
        if (std::isfinite(result.conservation_defect))
            std::printf(" conservation_defect=%.3e", result.conservation_defect);
        std::printf("\n");
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
