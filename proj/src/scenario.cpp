/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "leaksim/scenario.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace leaksim {

GateParams effective_gate_params(const Scenario& s) {
  switch (s.gate_mode) {
    case GateMode::Resistors:
      return s.gate;
    case GateMode::Ideal: {
      GateParams g = solve_gate_network(kGateVon, kGateVoffIdeal, s.gate.v_ref,
                                        s.gate_solve_r1);
      g.i_quiescent = s.gate.i_quiescent;
      return g;
    }
    case GateMode::Measured:
    default: {
      GateParams g = solve_gate_network(kGateVon, kGateVoffMeasured,
                                        s.gate.v_ref, s.gate_solve_r1);
      g.i_quiescent = s.gate.i_quiescent;
      return g;
    }
  }
}

namespace {

bool near_multiple(double x, double quantum) {
  const double r = x / quantum;
  return std::abs(r - std::round(r)) < 1e-6;
}

}  // namespace

void validate(const Scenario& s) {
  std::ostringstream bad;
  auto fail = [&](const std::string& msg) { bad << "  - " << msg << "\n"; };

  if (s.duration <= 0.0) fail("run: duration_s must be > 0");
  if (s.dt <= 0.0) fail("run: dt_s must be > 0");
  if (s.dt > 0.0 && s.duration > 0.0 && s.dt > s.duration)
    fail("run: dt_s must not exceed duration_s");
  if (s.modem_trace_dt <= 0.0 || s.modem_trace_dt > s.dt)
    fail("run: modem_trace_dt_s must be in (0, dt_s]");
  else if (!near_multiple(s.dt, s.modem_trace_dt))
    fail("run: dt_s must be an integer multiple of modem_trace_dt_s");
  if (s.trace_sample_every < s.dt)
    fail("run: trace_sample_every_s must be >= dt_s");
  else if (!near_multiple(s.trace_sample_every, s.dt))
    fail("run: trace_sample_every_s must be an integer multiple of dt_s");
  else if (s.duration > 0.0 && !near_multiple(s.duration, s.trace_sample_every))
    fail("run: duration_s must be an integer multiple of trace_sample_every_s");

  if (s.depth_mm < 0.0) fail("water: depth_mm must be >= 0");
  if (s.water_schedule.empty()) fail("water: schedule must not be empty");
  for (std::size_t k = 0; k < s.water_schedule.size(); ++k) {
    if (s.water_schedule[k].first < 0.0)
      fail("water: schedule times must be >= 0");
    if (k > 0 && s.water_schedule[k].first <= s.water_schedule[k - 1].first)
      fail("water: schedule times must be strictly increasing");
  }

  const auto& h = s.harvester;
  if (h.v_peak <= 0.0 || h.v_plateau <= 0.0 || h.v_peak < h.v_plateau)
    fail("harvester: require v_peak >= v_plateau > 0");
  if (h.i_peak <= 0.0 || h.i_plateau <= 0.0 || h.i_peak < h.i_plateau)
    fail("harvester: require i_peak >= i_plateau > 0");
  if (h.tau_v <= 0.0 || h.tau_i <= 0.0)
    fail("harvester: settle time constants must be > 0");
  if (h.ref_depth <= 0.0) fail("harvester: ref_depth_mm must be > 0");
  if (h.drying_tau <= 0.0) fail("harvester: drying_tau_s must be > 0");
  if (h.rewet_factor < 0.0 || h.rewet_factor > 1.0)
    fail("harvester: rewet_factor must be in [0, 1]");

  if (s.capacitance <= 0.0) fail("capacitor: capacitance_f must be > 0");
  if (s.esr < 0.0) fail("capacitor: esr_ohm must be >= 0");
  if (s.v_init < 0.0 || s.v_init > s.boost.v_out_set)
    fail("capacitor: v_init_v must be in [0, v_out_set_v]");

  const auto& b = s.boost;
  if (b.v_in_min <= 0.0) fail("boost: v_in_min_v must be > 0");
  if (b.v_out_set <= b.v_in_min)
    fail("boost: v_out_set_v must exceed v_in_min_v");
  if (b.source_draw_fraction <= 0.0 || b.source_draw_fraction > 1.0)
    fail("boost: source_draw_fraction must be in (0, 1]");
  if (b.i_out_max <= 0.0) fail("boost: i_out_max_a must be > 0");
  if (b.eff_points.empty()) fail("boost: eff_points must not be empty");
  for (std::size_t k = 0; k < b.eff_points.size(); ++k) {
    if (b.eff_points[k].second <= 0.0 || b.eff_points[k].second > 1.0)
      fail("boost: efficiencies must be in (0, 1]");
    if (b.eff_points[k].first < 0.0)
      fail("boost: anchor currents must be >= 0");
    if (k > 0 && b.eff_points[k].first <= b.eff_points[k - 1].first)
      fail("boost: anchor currents must be strictly increasing");
  }

  if (s.gate_mode == GateMode::Resistors) {
    try {
      gate_thresholds(s.gate);
    } catch (const std::exception& e) {
      fail(std::string("gate: ") + e.what());
    }
  }
  if (s.gate.v_ref <= 0.0) fail("gate: v_ref_v must be > 0");
  if (s.gate.i_quiescent < 0.0) fail("gate: i_quiescent_a must be >= 0");
  if (s.gate_solve_r1 <= 0.0) fail("gate: solve_r1_ohm must be > 0");

  const auto& m = s.modem;
  if (m.idle_interval <= 0.0) fail("modem: idle_interval_s must be > 0");
  if (m.v_min_operate <= 0.0) fail("modem: v_min_operate_v must be > 0");
  if (m.v_nominal <= 0.0) fail("modem: v_nominal_v must be > 0");
  if (m.i_startup_req < 0.0) fail("modem: i_startup_req_a must be >= 0");
  if (m.ntn_tx_scale < 1.0) fail("modem: ntn_tx_scale must be >= 1");
  if (m.psm_idle_avg < 0.0) fail("modem: psm_idle_avg_a must be >= 0");
  if (s.boot_delay < 0.0) fail("modem: boot_delay_s must be >= 0");

  if (s.radio.rsrp_sd < 0.0 || s.radio.rsrq_sd < 0.0 || s.radio.sinr_sd < 0.0)
    fail("radio: standard deviations must be >= 0");

  const std::string msg = bad.str();
  if (!msg.empty())
    throw std::invalid_argument("invalid scenario:\n" + msg);
}

const char* to_string(GateMode m) {
  switch (m) {
    case GateMode::Measured: return "measured";
    case GateMode::Ideal: return "ideal";
    case GateMode::Resistors: return "resistors";
  }
  return "?";
}

}  // namespace leaksim
