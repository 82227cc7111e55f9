/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leaksim/power_path.hpp"
#include "leaksim/report.hpp"
#include "leaksim/scenario_io.hpp"
#include "leaksim/sim_engine.hpp"

namespace fs = std::filesystem;
using namespace leaksim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

void write_run_artifacts(const fs::path& dir, const SimResult& r) {
  fs::create_directories(dir);
  write_trace_csv((dir / "trace.csv").string(), r.trace);
  write_events_jsonl((dir / "events.jsonl").string(), r.events);
  write_report_txt((dir / "report.txt").string(), r);
  write_summary_json((dir / "summary.json").string(), r);
}

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir) {
  Scenario s = load_scenario_file(scenario_path);
  if (seed) s.seed = *seed;
  const SimResult r = run(s);
  write_run_artifacts(out_dir, r);
  std::cout << render_report(r);
  std::cout << "\nartifacts written to " << out_dir << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& scenario_path, const std::string& param_name,
              const std::string& values_csv, const std::string& out_dir) {
  const Scenario s = load_scenario_file(scenario_path);
  const SweepParam param = sweep_param_from_string(param_name);
  const std::vector<std::string> values = split_csv(values_csv);
  const auto points = sweep(s, param, values);

  fs::create_directories(out_dir);
  for (const auto& p : points) {
    const fs::path sub =
        fs::path(out_dir) / (std::string(to_string(param)) + "=" + p.value);
    write_run_artifacts(sub, p.result);
  }
  write_sweep_overlay_csv((fs::path(out_dir) / "sweep_overlay.csv").string(),
                          param, points);

  std::printf("%-14s %18s %20s %10s\n", to_string(param), "activation_min",
              "first_cycle_beacons", "brownouts");
  for (const auto& p : points) {
    const auto& sum = p.result.summary;
    const int first =
        sum.beacons_per_cycle.empty() ? 0 : sum.beacons_per_cycle[0];
    if (sum.activation_time)
      std::printf("%-14s %18.9g %20d %10d\n", p.value.c_str(),
                  *sum.activation_time / 60.0, first, sum.brownouts);
    else
      std::printf("%-14s %18s %20d %10d\n", p.value.c_str(), "none", first,
                  sum.brownouts);
  }
  std::cout << "artifacts written to " << out_dir << "\n";
  return kExitOk;
}

int cmd_size_cap(double e_load_j, double eff, double v_on, double v_off) {
  const double e_required = e_load_j / eff;
  const double usable_per_farad = usable_energy(1.0, v_on, v_off);
  const double c = required_capacitance(e_load_j, eff, v_on, v_off);
  std::printf("e_required_j: %.9g\n", e_required);
  std::printf("usable_energy_j_per_f: %.9g\n", usable_per_farad);
  std::printf("required_capacitance_f: %.9g\n", c);
  return kExitOk;
}

int cmd_montecarlo(const std::string& scenario_path, int n,
                   std::optional<std::uint64_t> master_seed, double jitter_pct,
                   const std::string& out_dir) {
  const Scenario s = load_scenario_file(scenario_path);
  JitterSpec jitter;
  jitter.i_peak_pct = jitter_pct;
  jitter.i_plateau_pct = jitter_pct;
  const MonteCarloResult mc =
      run_monte_carlo(s, n, master_seed.value_or(s.seed), jitter);

  fs::create_directories(out_dir);
  write_mc_runs_csv((fs::path(out_dir) / "mc_runs.csv").string(), mc);
  write_mc_stats_json((fs::path(out_dir) / "mc_stats.json").string(), mc);

  std::printf("runs: %d  (activation observed in %d)\n", mc.n,
              mc.activation_time.n);
  std::printf("activation_time_min: mean %.9g  sd %.9g  min %.9g  max %.9g\n",
              mc.activation_time.mean / 60.0, mc.activation_time.sd / 60.0,
              mc.activation_time.min / 60.0, mc.activation_time.max / 60.0);
  std::printf("first_cycle_beacons: mean %.9g  sd %.9g\n",
              mc.first_cycle_beacons.mean, mc.first_cycle_beacons.sd);
  std::cout << "artifacts written to " << out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "leaksim: deterministic simulator of a water-activated, battery-free "
      "LTE-M leak sensor node"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = ".", param_name, values_csv;
  std::optional<std::uint64_t> seed, master_seed;
  int n = 50;
  double jitter_pct = 0.10;
  double e_load_j = 0.0, eff = 0.0, v_on = 0.0, v_off = 0.0;

  auto* c_run = app.add_subcommand("run", "simulate one scenario");
  c_run->add_option("scenario", scenario_path, "scenario file")->required();
  c_run->add_option("--seed", seed, "override the scenario seed");
  c_run->add_option("--out", out_dir, "output directory (default .)");

  auto* c_sweep =
      app.add_subcommand("sweep", "run the scenario across parameter values");
  c_sweep->add_option("scenario", scenario_path, "scenario file")->required();
  c_sweep->add_option("--param", param_name,
                      "capacitance_f|depth_mm|idle_interval_s|psm_enabled|"
                      "band_mode|gate_mode")
      ->required();
  c_sweep->add_option("--values", values_csv, "comma-separated values")
      ->required();
  c_sweep->add_option("--out", out_dir, "output directory (default .)");

  auto* c_size = app.add_subcommand(
      "size-cap", "required capacitance for a per-cycle load energy");
  c_size->add_option("--e-load-j", e_load_j, "load energy per cycle [J]")
      ->required();
  c_size->add_option("--eff", eff, "end-to-end efficiency (0, 1]")->required();
  c_size->add_option("--v-on", v_on, "gate close threshold [V]")->required();
  c_size->add_option("--v-off", v_off, "gate open threshold [V]")->required();

  auto* c_mc = app.add_subcommand("montecarlo",
                                  "repeat the scenario with jittered "
                                  "harvester currents and derived seeds");
  c_mc->add_option("scenario", scenario_path, "scenario file")->required();
  c_mc->add_option("--n", n, "number of runs (default 50)")
      ->check(CLI::PositiveNumber);
  c_mc->add_option("--master-seed", master_seed,
                   "master seed (default: scenario seed)");
  c_mc->add_option("--jitter", jitter_pct,
                   "relative half-width of the uniform current jitter "
                   "(default 0.10)");
  c_mc->add_option("--out", out_dir, "output directory (default .)");

  try {
    app.parse(argc, argv);
    if (c_run->parsed()) return cmd_run(scenario_path, seed, out_dir);
    if (c_sweep->parsed())
      return cmd_sweep(scenario_path, param_name, values_csv, out_dir);
    if (c_size->parsed()) return cmd_size_cap(e_load_j, eff, v_on, v_off);
    if (c_mc->parsed())
      return cmd_montecarlo(scenario_path, n, master_seed, jitter_pct, out_dir);
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
