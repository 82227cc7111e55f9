/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leaksim/node_fsm.hpp"
#include "leaksim/scenario.hpp"

namespace leaksim {

struct TracePoint {
  double t = 0.0;          // [s] sample time (end of window)
  double v_cap = 0.0;      // [V]
  double i_harvest = 0.0;  // [A] charge current into the cap, window mean
  double i_load = 0.0;     // [A] load current from the cap, window mean
  GatePhase gate = GatePhase::Charging;
  NodePhase node = NodePhase::Off;
};

struct Event {
  double t = 0.0;
  std::string kind;  // activation|gate_open|gate_close|beacon|brownout|warning
  nlohmann::json data;
};

struct RunSummary {
  std::optional<double> activation_time;  // [s] first gate close
  int cycles = 0;                         // gate activation cycles
  std::vector<int> beacons_per_cycle;     // delivered, indexed by cycle-1
  int beacons_delivered = 0;
  int beacons_undelivered = 0;
  int brownouts = 0;
  double v_on = 0.0;   // [V] thresholds in force
  double v_off = 0.0;  // [V]
  double v_gate_open_mean = 0.0;  // [V] mean rail voltage at disconnection
  double v_cap_end = 0.0;         // [V]
  double e_harvest_in = 0.0;   // [J] drawn from the harvester
  double e_charged = 0.0;      // [J] delivered into the cap (post-efficiency)
  double e_load = 0.0;         // [J] modem draw from the cap
  double e_quiescent = 0.0;    // [J] gate divider draw
  double de_cap = 0.0;         // [J] cap energy change over the run
  double audit_residual_rel = 0.0;  // |e_charged-(de_cap+e_load+e_q)|/e_charged
  double wall_time_s = 0.0;
};

struct SimResult {
  Scenario scenario;
  std::vector<TracePoint> trace;
  std::vector<Event> events;
  std::vector<BeaconRecord> beacons;
  RunSummary summary;
};

/// Fixed-step coupled simulation of one scenario. Deterministic: identical
/// scenario + seed give identical results. Throws std::invalid_argument on
/// scenario validation failure; operating-point non-convergence is a warning
/// event, never a crash.
SimResult run(const Scenario& s);

struct JitterSpec {
  double i_peak_pct = 0.10;     // multiplicative, uniform +-
  double i_plateau_pct = 0.10;
};

struct McRun {
  int index = 0;
  std::uint64_t seed = 0;
  double i_peak = 0.0;     // [A] jittered harvester endpoints
  double i_plateau = 0.0;  // [A]
  std::optional<double> activation_time;  // [s]
  int first_cycle_beacons = 0;
  int beacons_delivered = 0;
  int brownouts = 0;
};

struct McStats {
  double mean = 0.0, sd = 0.0, min = 0.0, max = 0.0;
  int n = 0;
};

struct MonteCarloResult {
  int n = 0;
  std::uint64_t master_seed = 0;
  JitterSpec jitter;
  std::vector<McRun> runs;        // merged by run index
  McStats activation_time;        // over runs that activated
  McStats first_cycle_beacons;
};

/// n jittered runs derived deterministically from the master seed (the
/// scenario's own seed field is ignored: run i uses seed master + i, and its
/// jitter draws come from an independent derived stream). n = 1 with zero
/// jitter reduces to run(s) with seed == master.
MonteCarloResult run_monte_carlo(const Scenario& s, int n,
                                 std::uint64_t master_seed,
                                 const JitterSpec& jitter = {});

enum class SweepParam {
  Capacitance,
  Depth,
  IdleInterval,
  PsmEnabled,
  BandMode,
  GateMode
};

struct SweepPoint {
  std::string value;  // textual parameter value
  SimResult result;
};

/// One full run per value, all other parameters and the seed shared.
std::vector<SweepPoint> sweep(const Scenario& s, SweepParam param,
                              const std::vector<std::string>& values);

SweepParam sweep_param_from_string(const std::string& name);
const char* to_string(SweepParam p);

/// Apply one sweep value to a scenario copy (exposed for tests/CLI).
Scenario apply_sweep_value(const Scenario& s, SweepParam param,
                           const std::string& value);

}  // namespace leaksim
