/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "leaksim/sim_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace leaksim {

namespace {

// All floats that land in serialized artifacts are rounded to 9 significant
// digits so re-runs are file-comparable across platforms.
double round9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::atof(buf);
}

struct EnergyLedger {
  double in = 0.0;       // harvester side
  double charged = 0.0;  // into the cap, post-efficiency
  double load = 0.0;
  double quiescent = 0.0;
};

}  // namespace

SimResult run(const Scenario& s) {
  validate(s);
  const auto t_begin = std::chrono::steady_clock::now();

  SimResult res;
  res.scenario = s;

  const GateParams gp = effective_gate_params(s);
  const auto [v_on, v_off] = gate_thresholds(gp);

  Rng rng(s.seed);
  NodeFsm fsm(s.modem, s.radio, s.dt, s.modem_trace_dt, s.boot_delay, s.esr);
  HarvesterState hs;
  hs.depth = s.depth_mm;
  Supercapacitor cap{s.capacitance, s.v_init, s.esr, s.boost.v_out_set};
  GateState gate{GatePhase::Charging, v_on, v_off};

  const auto n_ticks = static_cast<std::int64_t>(std::llround(s.duration / s.dt));
  const auto sample_every =
      static_cast<std::int64_t>(std::llround(s.trace_sample_every / s.dt));

  res.trace.reserve(static_cast<std::size_t>(n_ticks / sample_every) + 2);
  res.trace.push_back({0.0, cap.v, 0.0, 0.0, gate.phase, fsm.phase()});

  EnergyLedger e;
  const double v_start = cap.v;
  std::size_t wi = 0;
  bool wet = false;
  double prev_i_out = 0.0;
  bool warned_fixed_point = false;
  double win_i_out = 0.0, win_i_load = 0.0;
  double v_open_sum = 0.0;
  int n_open = 0;
  int cycles = 0;
  std::optional<double> activation;

  for (std::int64_t tick = 0; tick < n_ticks; ++tick) {
    const double t0 = static_cast<double>(tick) * s.dt;
    const double t1 = static_cast<double>(tick + 1) * s.dt;

    while (wi < s.water_schedule.size() &&
           s.water_schedule[wi].first <= t0 + 0.5 * s.dt) {
      wet = s.water_schedule[wi].second;
      ++wi;
    }
    advance_water(s.harvester, hs, s.dt, wet);

    OperatingPoint op;
    if (const auto src = thevenin(s.harvester, hs)) {
      op = solve_operating_point(s.boost, src->v_oc, src->r_int, cap.v,
                                 prev_i_out);
      if (!op.converged && !warned_fixed_point) {
        warned_fixed_point = true;
        Event w;
        w.t = round9(t1);
        w.kind = "warning";
        w.data = {{"message",
                   "operating-point fixed point did not converge; "
                   "holding previous charge current"},
                  {"v_oc", round9(src->v_oc)}};
        res.events.push_back(std::move(w));
      }
    }
    prev_i_out = op.i_out;

    const double i_load = gate.phase == GatePhase::Active ? fsm.demand(cap.v) : 0.0;
    const double i_q = cap.v > 0.0 ? gp.i_quiescent : 0.0;
    const double i_net = op.i_out - i_load - i_q;
    const double v_new = cap_integrate(cap, i_net, s.dt);

    // Midpoint-voltage accounting keeps the audit identity exact; a clamp at
    // the rail limits shows up as an adjusted charge (ceiling) or quiescent
    // (floor) term for the partial tick.
    const double i_net_actual = (v_new - cap.v) * cap.capacitance / s.dt;
    double i_out_eff = op.i_out;
    double i_q_eff = i_q;
    const double delta = i_net - i_net_actual;
    if (delta > 0.0) i_out_eff = std::max(0.0, op.i_out - delta);
    else if (delta < 0.0) i_q_eff = std::max(0.0, i_q + delta);
    const double v_mid = 0.5 * (cap.v + v_new);
    const double e_load_tick = v_mid * i_load * s.dt;

    e.in += op.v_in * op.i_in * s.dt;
    e.charged += v_mid * i_out_eff * s.dt;
    e.load += e_load_tick;
    e.quiescent += v_mid * i_q_eff * s.dt;
    cap.v = v_new;

    const GatePhase gate_before = gate.phase;
    gate = gate_step(gate, v_new);
    if (gate_before == GatePhase::Charging && gate.phase == GatePhase::Active) {
      ++cycles;
      Event ev;
      ev.t = round9(t1);
      ev.kind = "gate_close";
      ev.data = {{"v_cap", round9(v_new)}, {"cycle", cycles}};
      res.events.push_back(ev);
      if (!activation) {
        activation = t1;
        Event act;
        act.t = round9(t1);
        act.kind = "activation";
        act.data = {{"v_cap", round9(v_new)}, {"cycle", cycles}};
        res.events.push_back(act);
      }
    } else if (gate_before == GatePhase::Active &&
               gate.phase == GatePhase::Charging) {
      v_open_sum += v_new;
      ++n_open;
      Event ev;
      ev.t = round9(t1);
      ev.kind = "gate_open";
      ev.data = {{"v_cap", round9(v_new)}, {"cycle", cycles}};
      res.events.push_back(ev);
    }

    const NodePhase phase_before = fsm.phase();
    const auto out =
        fsm.step(gate.phase == GatePhase::Active, v_new, t1, e_load_tick, rng);
    if (out.beacon) {
      const BeaconRecord& b = *out.beacon;
      res.beacons.push_back(b);
      Event ev;
      ev.t = round9(b.t_end);
      ev.kind = "beacon";
      const std::string payload = beacon_payload(b.seq, b.t_end, s.device_id);
      ev.data = {{"seq", b.seq},
                 {"cycle", b.cycle_index},
                 {"t_start", round9(b.t_start)},
                 {"t_end", round9(b.t_end)},
                 {"energy_j", round9(b.energy)},
                 {"delivered", b.delivered},
                 {"latency_s", round9(b.latency)},
                 {"payload", payload},
                 {"payload_bytes", payload.size()}};
      res.events.push_back(std::move(ev));
    }
    if (out.brownout) {
      Event ev;
      ev.t = round9(t1);
      ev.kind = "brownout";
      ev.data = {{"phase", to_string(phase_before)},
                 {"v_cap", round9(v_new)},
                 {"cycle", cycles}};
      res.events.push_back(std::move(ev));
    }

    win_i_out += i_out_eff;
    win_i_load += i_load;
    if ((tick + 1) % sample_every == 0) {
      res.trace.push_back({t1, v_new,
                           win_i_out / static_cast<double>(sample_every),
                           win_i_load / static_cast<double>(sample_every),
                           gate.phase, fsm.phase()});
      win_i_out = 0.0;
      win_i_load = 0.0;
    }
  }

  RunSummary& sum = res.summary;
  sum.activation_time = activation;
  sum.cycles = cycles;
  sum.v_on = v_on;
  sum.v_off = v_off;
  sum.v_cap_end = cap.v;
  sum.v_gate_open_mean = n_open > 0 ? v_open_sum / n_open : 0.0;
  sum.beacons_per_cycle.assign(static_cast<std::size_t>(std::max(cycles, 0)), 0);
  for (const auto& b : res.beacons) {
    if (b.delivered) {
      ++sum.beacons_delivered;
      if (b.cycle_index >= 1 &&
          b.cycle_index <= static_cast<int>(sum.beacons_per_cycle.size()))
        ++sum.beacons_per_cycle[static_cast<std::size_t>(b.cycle_index - 1)];
    } else {
      ++sum.beacons_undelivered;
    }
  }
  for (const auto& ev : res.events)
    if (ev.kind == "brownout") ++sum.brownouts;
  sum.e_harvest_in = e.in;
  sum.e_charged = e.charged;
  sum.e_load = e.load;
  sum.e_quiescent = e.quiescent;
  sum.de_cap = 0.5 * cap.capacitance * (cap.v * cap.v - v_start * v_start);
  const double rhs = sum.de_cap + sum.e_load + sum.e_quiescent;
  sum.audit_residual_rel =
      std::abs(sum.e_charged - rhs) / std::max(sum.e_charged, 1e-12);
  sum.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin)
          .count();
  return res;
}

MonteCarloResult run_monte_carlo(const Scenario& s, int n,
                                 std::uint64_t master_seed,
                                 const JitterSpec& jitter) {
  if (n < 1) throw std::invalid_argument("monte carlo requires n >= 1");
  MonteCarloResult mc;
  mc.n = n;
  mc.master_seed = master_seed;
  mc.jitter = jitter;
  mc.runs.reserve(static_cast<std::size_t>(n));

  for (int i = 0; i < n; ++i) {
    Rng jr(Rng::derive_seed(master_seed, 1000003ULL + static_cast<std::uint64_t>(i)));
    Scenario si = s;
    si.seed = master_seed + static_cast<std::uint64_t>(i);
    si.harvester.i_peak *= 1.0 + jitter.i_peak_pct * (2.0 * jr.uniform01() - 1.0);
    si.harvester.i_plateau *=
        1.0 + jitter.i_plateau_pct * (2.0 * jr.uniform01() - 1.0);
    const SimResult r = run(si);

    McRun row;
    row.index = i;
    row.seed = si.seed;
    row.i_peak = si.harvester.i_peak;
    row.i_plateau = si.harvester.i_plateau;
    row.activation_time = r.summary.activation_time;
    row.first_cycle_beacons = r.summary.beacons_per_cycle.empty()
                                  ? 0
                                  : r.summary.beacons_per_cycle.front();
    row.beacons_delivered = r.summary.beacons_delivered;
    row.brownouts = r.summary.brownouts;
    mc.runs.push_back(row);
  }

  auto stats_of = [](const std::vector<double>& xs) {
    McStats st;
    st.n = static_cast<int>(xs.size());
    if (xs.empty()) return st;
    st.min = *std::min_element(xs.begin(), xs.end());
    st.max = *std::max_element(xs.begin(), xs.end());
    double sum = 0.0;
    for (double x : xs) sum += x;
    st.mean = sum / static_cast<double>(xs.size());
    double acc = 0.0;
    for (double x : xs) acc += (x - st.mean) * (x - st.mean);
    st.sd = xs.size() > 1
                ? std::sqrt(acc / static_cast<double>(xs.size() - 1))
                : 0.0;
    return st;
  };
  std::vector<double> act, beac;
  for (const auto& r : mc.runs) {
    if (r.activation_time) act.push_back(*r.activation_time);
    beac.push_back(static_cast<double>(r.first_cycle_beacons));
  }
  mc.activation_time = stats_of(act);
  mc.first_cycle_beacons = stats_of(beac);
  return mc;
}

Scenario apply_sweep_value(const Scenario& s, SweepParam param,
                           const std::string& value) {
  Scenario out = s;
  auto as_double = [&]() {
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty())
      throw std::invalid_argument("malformed sweep value '" + value + "'");
    return x;
  };
  switch (param) {
    case SweepParam::Capacitance: out.capacitance = as_double(); break;
    case SweepParam::Depth: out.depth_mm = as_double(); break;
    case SweepParam::IdleInterval: out.modem.idle_interval = as_double(); break;
    case SweepParam::PsmEnabled:
      if (value == "true" || value == "1") out.modem.psm_enabled = true;
      else if (value == "false" || value == "0") out.modem.psm_enabled = false;
      else throw std::invalid_argument("psm_enabled value must be true|false");
      break;
    case SweepParam::BandMode:
      if (value == "terrestrial") out.modem.band_mode = BandMode::Terrestrial;
      else if (value == "ntn_band2") out.modem.band_mode = BandMode::NtnBand2;
      else throw std::invalid_argument("band_mode value must be terrestrial|ntn_band2");
      break;
    case SweepParam::GateMode:
      if (value == "measured") out.gate_mode = GateMode::Measured;
      else if (value == "ideal") out.gate_mode = GateMode::Ideal;
      else throw std::invalid_argument("gate_mode value must be measured|ideal");
      break;
  }
  return out;
}

std::vector<SweepPoint> sweep(const Scenario& s, SweepParam param,
                              const std::vector<std::string>& values) {
  if (values.empty()) throw std::invalid_argument("sweep requires values");
  std::vector<SweepPoint> out;
  out.reserve(values.size());
  for (const auto& v : values)
    out.push_back({v, run(apply_sweep_value(s, param, v))});
  return out;
}

SweepParam sweep_param_from_string(const std::string& name) {
  if (name == "capacitance" || name == "capacitance_f")
    return SweepParam::Capacitance;
  if (name == "depth" || name == "depth_mm") return SweepParam::Depth;
  if (name == "idle_interval" || name == "idle_interval_s")
    return SweepParam::IdleInterval;
  if (name == "psm_enabled") return SweepParam::PsmEnabled;
  if (name == "band_mode") return SweepParam::BandMode;
  if (name == "gate_mode") return SweepParam::GateMode;
  throw std::invalid_argument("unknown sweep parameter '" + name + "'");
}

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::Capacitance: return "capacitance_f";
    case SweepParam::Depth: return "depth_mm";
    case SweepParam::IdleInterval: return "idle_interval_s";
    case SweepParam::PsmEnabled: return "psm_enabled";
    case SweepParam::BandMode: return "band_mode";
    case SweepParam::GateMode: return "gate_mode";
  }
  return "?";
}

}  // namespace leaksim
