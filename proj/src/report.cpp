/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "leaksim/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace leaksim {

namespace {

std::string fmt9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f.good()) throw std::ios_base::failure("write to '" + path + "' failed");
}

nlohmann::json summary_json(const SimResult& r) {
  const RunSummary& s = r.summary;
  nlohmann::json j;
  if (s.activation_time) j["activation_time_s"] = *s.activation_time;
  else j["activation_time_s"] = nullptr;
  j["cycles"] = s.cycles;
  j["beacons_per_cycle"] = s.beacons_per_cycle;
  j["beacons_delivered"] = s.beacons_delivered;
  j["beacons_undelivered"] = s.beacons_undelivered;
  j["brownouts"] = s.brownouts;
  j["v_on_v"] = s.v_on;
  j["v_off_v"] = s.v_off;
  j["v_gate_open_mean_v"] = s.v_gate_open_mean;
  j["v_cap_end_v"] = s.v_cap_end;
  j["energy"] = {{"harvest_in_j", s.e_harvest_in},
                 {"charged_j", s.e_charged},
                 {"load_j", s.e_load},
                 {"quiescent_j", s.e_quiescent},
                 {"de_cap_j", s.de_cap},
                 {"audit_residual_rel", s.audit_residual_rel}};
  j["audit_pass"] = s.audit_residual_rel <= 0.01;
  return j;
}

}  // namespace

void write_trace_csv(const std::string& path,
                     const std::vector<TracePoint>& trace) {
  auto f = open_out(path);
  f << "t_s,v_cap_v,i_harvest_a,i_load_a,gate,node_phase\n";
  for (const auto& p : trace) {
    f << fmt9(p.t) << ',' << fmt9(p.v_cap) << ',' << fmt9(p.i_harvest) << ','
      << fmt9(p.i_load) << ',' << to_string(p.gate) << ','
      << to_string(p.node) << '\n';
  }
  finish(f, path);
}

void write_events_jsonl(const std::string& path,
                        const std::vector<Event>& events) {
  auto f = open_out(path);
  for (const auto& ev : events) {
    nlohmann::json j = {{"t", ev.t}, {"kind", ev.kind}, {"data", ev.data}};
    f << j.dump() << '\n';
  }
  finish(f, path);
}

std::string render_report(const SimResult& r) {
  const Scenario& sc = r.scenario;
  const RunSummary& s = r.summary;
  std::ostringstream out;

  out << "leaksim run report\n";
  out << "==================\n";
  out << "device_id: " << sc.device_id << "\n";
  out << "seed: " << sc.seed << "\n";
  out << "duration_s: " << fmt9(sc.duration) << "  dt_s: " << fmt9(sc.dt)
      << "\n";
  out << "depth_mm: " << fmt9(sc.depth_mm) << "  capacitance_f: "
      << fmt9(sc.capacitance) << "\n";
  out << "gate: v_on " << fmt9(s.v_on) << " V, v_off " << fmt9(s.v_off)
      << " V\n";
  out << "modem: psm " << (sc.modem.psm_enabled ? "on" : "off") << ", band "
      << to_string(sc.modem.band_mode) << ", idle_interval_s "
      << fmt9(sc.modem.idle_interval) << "\n";
  out << "\n";

  out << "summary\n";
  out << "-------\n";
  if (s.activation_time)
    out << "activation_time_s: " << fmt9(*s.activation_time) << "  ("
        << fmt9(*s.activation_time / 60.0) << " min)\n";
  else
    out << "activation_time_s: none\n";
  out << "cycles: " << s.cycles << "\n";
  out << "beacons_per_cycle:";
  for (int b : s.beacons_per_cycle) out << ' ' << b;
  out << "\n";
  out << "beacons_delivered: " << s.beacons_delivered << "\n";
  out << "beacons_undelivered: " << s.beacons_undelivered << "\n";
  out << "brownouts: " << s.brownouts << "\n";
  out << "v_gate_open_mean_v: " << fmt9(s.v_gate_open_mean) << "\n";
  out << "v_cap_end_v: " << fmt9(s.v_cap_end) << "\n";
  out << "\n";

  out << "energy audit\n";
  out << "------------\n";
  out << "e_harvest_in_j: " << fmt9(s.e_harvest_in) << "\n";
  out << "e_charged_j: " << fmt9(s.e_charged) << "\n";
  out << "e_load_j: " << fmt9(s.e_load) << "\n";
  out << "e_quiescent_j: " << fmt9(s.e_quiescent) << "\n";
  out << "de_cap_j: " << fmt9(s.de_cap) << "\n";
  out << "audit_residual_rel: " << fmt9(s.audit_residual_rel) << "\n";
  out << "\n";

  out << "reproduction table (bench reference values)\n";
  out << "-------------------------------------------\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %14s %12s %14s %8s\n", "metric",
                "simulated", "reference", "tolerance", "result");
  out << line;

  auto row = [&](const char* name, const std::string& sim,
                 const std::string& ref, const std::string& tol, bool pass) {
    std::snprintf(line, sizeof line, "%-28s %14s %12s %14s %8s\n", name,
                  sim.c_str(), ref.c_str(), tol.c_str(),
                  pass ? "PASS" : "FAIL");
    out << line;
  };

  {
    const bool have = s.activation_time.has_value();
    const double min = have ? *s.activation_time / 60.0 : 0.0;
    row("activation_time_min", have ? fmt9(min) : "none", "23", "+/- 4",
        have && std::abs(min - 23.0) <= 4.0);
  }
  {
    const int first = s.beacons_per_cycle.empty() ? 0 : s.beacons_per_cycle[0];
    row("first_cycle_beacons", std::to_string(first), "8", "[6, 10]",
        first >= 6 && first <= 10);
  }
  {
    const bool have = s.cycles > 0 && s.v_gate_open_mean > 0.0;
    row("gate_open_voltage_v", have ? fmt9(s.v_gate_open_mean) : "none",
        fmt9(s.v_off), "+/- 0.05",
        have && std::abs(s.v_gate_open_mean - s.v_off) <= 0.05);
  }
  {
    double e_sum = 0.0;
    int n = 0;
    for (const auto& b : r.beacons)
      if (b.delivered) {
        e_sum += b.energy;
        ++n;
      }
    const double mean = n > 0 ? e_sum / n : 0.0;
    row("beacon_energy_j", n > 0 ? fmt9(mean) : "none", "0.35", "+/- 5%",
        n > 0 && std::abs(mean - 0.35) <= 0.05 * 0.35);
  }
  row("energy_audit_residual_rel", fmt9(s.audit_residual_rel), "0",
      "<= 0.01", s.audit_residual_rel <= 0.01);

  return out.str();
}

void write_report_txt(const std::string& path, const SimResult& result) {
  auto f = open_out(path);
  f << render_report(result);
  finish(f, path);
}

void write_summary_json(const std::string& path, const SimResult& result) {
  auto f = open_out(path);
  f << summary_json(result).dump(2) << '\n';
  finish(f, path);
}

void write_sweep_overlay_csv(const std::string& path, SweepParam param,
                             const std::vector<SweepPoint>& points) {
  if (points.empty()) throw std::invalid_argument("sweep overlay needs points");
  const std::size_t n = points.front().result.trace.size();
  for (const auto& p : points)
    if (p.result.trace.size() != n)
      throw std::invalid_argument("sweep traces differ in length");

  auto f = open_out(path);
  f << "t_s";
  for (const auto& p : points)
    f << ",v_cap_v:" << to_string(param) << '=' << p.value;
  f << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    f << fmt9(points.front().result.trace[i].t);
    for (const auto& p : points) f << ',' << fmt9(p.result.trace[i].v_cap);
    f << '\n';
  }
  finish(f, path);
}

void write_mc_runs_csv(const std::string& path, const MonteCarloResult& mc) {
  auto f = open_out(path);
  f << "run,seed,i_peak_a,i_plateau_a,activation_time_s,first_cycle_beacons,"
       "beacons_delivered,brownouts\n";
  for (const auto& r : mc.runs) {
    f << r.index << ',' << r.seed << ',' << fmt9(r.i_peak) << ','
      << fmt9(r.i_plateau) << ','
      << (r.activation_time ? fmt9(*r.activation_time) : "nan") << ','
      << r.first_cycle_beacons << ',' << r.beacons_delivered << ','
      << r.brownouts << '\n';
  }
  finish(f, path);
}

void write_mc_stats_json(const std::string& path, const MonteCarloResult& mc) {
  auto stats = [](const McStats& s) {
    return nlohmann::json{
        {"mean", s.mean}, {"sd", s.sd}, {"min", s.min}, {"max", s.max},
        {"n", s.n}};
  };
  nlohmann::json j;
  j["n"] = mc.n;
  j["master_seed"] = mc.master_seed;
  j["jitter"] = {{"i_peak_pct", mc.jitter.i_peak_pct},
                 {"i_plateau_pct", mc.jitter.i_plateau_pct}};
  j["activation_time_s"] = stats(mc.activation_time);
  j["first_cycle_beacons"] = stats(mc.first_cycle_beacons);

  auto f = open_out(path);
  f << j.dump(2) << '\n';
  finish(f, path);
}

}  // namespace leaksim
