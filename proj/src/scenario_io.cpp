/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "leaksim/scenario_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace leaksim {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& v, int line) {
  const std::string t = trim(v);
  if (t.empty()) throw ParseError(line, "empty numeric value");
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw ParseError(line, "malformed number '" + t + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& v, int line) {
  const std::string t = trim(v);
  if (t.empty()) throw ParseError(line, "empty integer value");
  char* end = nullptr;
  const std::uint64_t x = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size())
    throw ParseError(line, "malformed integer '" + t + "'");
  return x;
}

bool parse_bool(const std::string& v, int line) {
  const std::string t = trim(v);
  if (t == "true" || t == "1" || t == "on" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "off" || t == "no") return false;
  throw ParseError(line, "malformed boolean '" + t + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::set<std::string> seen;
  int line = 0;

  const std::set<std::string> known_sections = {
      "run", "water", "harvester", "capacitor", "gate", "boost", "modem",
      "radio"};

  while (std::getline(in, raw)) {
    ++line;
    std::string l = raw;
    const auto hash = l.find_first_of("#;");
    if (hash != std::string::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;

    if (l.front() == '[') {
      if (l.back() != ']') throw ParseError(line, "unterminated section header");
      section = trim(l.substr(1, l.size() - 2));
      if (!known_sections.count(section))
        throw ParseError(line, "unknown section [" + section + "]");
      continue;
    }
    if (section.empty())
      throw ParseError(line, "key/value before any [section]");

    const auto eq = l.find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected key = value");
    const std::string key = trim(l.substr(0, eq));
    const std::string val = trim(l.substr(eq + 1));
    if (key.empty()) throw ParseError(line, "empty key");
    const std::string qual = section + "." + key;
    if (!seen.insert(qual).second)
      throw ParseError(line, "duplicate key '" + qual + "'");

    auto unknown = [&]() -> ParseError {
      return ParseError(line, "unknown key '" + key + "' in [" + section + "]");
    };

    if (section == "run") {
      if (key == "duration_s") s.duration = parse_double(val, line);
      else if (key == "dt_s") s.dt = parse_double(val, line);
      else if (key == "modem_trace_dt_s") s.modem_trace_dt = parse_double(val, line);
      else if (key == "trace_sample_every_s") s.trace_sample_every = parse_double(val, line);
      else if (key == "seed") s.seed = parse_u64(val, line);
      else if (key == "device_id") s.device_id = val;
      else throw unknown();
    } else if (section == "water") {
      if (key == "depth_mm") s.depth_mm = parse_double(val, line);
      else if (key == "schedule") {
        s.water_schedule.clear();
        for (const auto& item : split(val, ',')) {
          const auto parts = split(trim(item), ':');
          if (parts.size() != 2)
            throw ParseError(line, "schedule entries must be t:wet|dry");
          const double t = parse_double(parts[0], line);
          const std::string st = trim(parts[1]);
          if (st != "wet" && st != "dry")
            throw ParseError(line, "schedule state must be wet or dry");
          s.water_schedule.emplace_back(t, st == "wet");
        }
      } else throw unknown();
    } else if (section == "harvester") {
      auto& h = s.harvester;
      if (key == "v_peak_v") h.v_peak = parse_double(val, line);
      else if (key == "v_plateau_v") h.v_plateau = parse_double(val, line);
      else if (key == "i_peak_a") h.i_peak = parse_double(val, line);
      else if (key == "i_plateau_a") h.i_plateau = parse_double(val, line);
      else if (key == "tau_v_s") h.tau_v = parse_double(val, line);
      else if (key == "tau_i_s") h.tau_i = parse_double(val, line);
      else if (key == "ref_depth_mm") h.ref_depth = parse_double(val, line);
      else if (key == "drying_tau_s") h.drying_tau = parse_double(val, line);
      else if (key == "rewet_factor") h.rewet_factor = parse_double(val, line);
      else throw unknown();
    } else if (section == "capacitor") {
      if (key == "capacitance_f") s.capacitance = parse_double(val, line);
      else if (key == "esr_ohm") s.esr = parse_double(val, line);
      else if (key == "v_init_v") s.v_init = parse_double(val, line);
      else throw unknown();
    } else if (section == "gate") {
      if (key == "mode") {
        const std::string m = trim(val);
        if (m == "measured") s.gate_mode = GateMode::Measured;
        else if (m == "ideal") s.gate_mode = GateMode::Ideal;
        else if (m == "resistors") s.gate_mode = GateMode::Resistors;
        else throw ParseError(line, "gate mode must be measured|ideal|resistors");
      }
      else if (key == "r1_ohm") s.gate.r1 = parse_double(val, line);
      else if (key == "r2_ohm") s.gate.r2 = parse_double(val, line);
      else if (key == "r4_ohm") s.gate.r4 = parse_double(val, line);
      else if (key == "v_ref_v") s.gate.v_ref = parse_double(val, line);
      else if (key == "i_quiescent_a") s.gate.i_quiescent = parse_double(val, line);
      else if (key == "solve_r1_ohm") s.gate_solve_r1 = parse_double(val, line);
      else throw unknown();
    } else if (section == "boost") {
      auto& b = s.boost;
      if (key == "v_out_set_v") b.v_out_set = parse_double(val, line);
      else if (key == "v_in_min_v") b.v_in_min = parse_double(val, line);
      else if (key == "source_draw_fraction") b.source_draw_fraction = parse_double(val, line);
      else if (key == "i_out_max_a") b.i_out_max = parse_double(val, line);
      else if (key == "eff_points") {
        b.eff_points.clear();
        for (const auto& item : split(val, ',')) {
          const auto parts = split(trim(item), ':');
          if (parts.size() != 2)
            throw ParseError(line, "eff_points entries must be i_out:eta");
          b.eff_points.emplace_back(parse_double(parts[0], line),
                                    parse_double(parts[1], line));
        }
      } else throw unknown();
    } else if (section == "modem") {
      auto& m = s.modem;
      if (key == "psm_enabled") m.psm_enabled = parse_bool(val, line);
      else if (key == "band_mode") {
        const std::string bm = trim(val);
        if (bm == "terrestrial") m.band_mode = BandMode::Terrestrial;
        else if (bm == "ntn_band2") m.band_mode = BandMode::NtnBand2;
        else throw ParseError(line, "band_mode must be terrestrial|ntn_band2");
      }
      else if (key == "idle_interval_s") m.idle_interval = parse_double(val, line);
      else if (key == "v_min_operate_v") m.v_min_operate = parse_double(val, line);
      else if (key == "i_startup_req_a") m.i_startup_req = parse_double(val, line);
      else if (key == "v_nominal_v") m.v_nominal = parse_double(val, line);
      else if (key == "ntn_tx_scale") m.ntn_tx_scale = parse_double(val, line);
      else if (key == "psm_idle_avg_a") m.psm_idle_avg = parse_double(val, line);
      else if (key == "boot_delay_s") s.boot_delay = parse_double(val, line);
      else throw unknown();
    } else if (section == "radio") {
      auto& r = s.radio;
      if (key == "rsrp_mean_dbm") r.rsrp_mean = parse_double(val, line);
      else if (key == "rsrp_sd_db") r.rsrp_sd = parse_double(val, line);
      else if (key == "rsrq_mean_db") r.rsrq_mean = parse_double(val, line);
      else if (key == "rsrq_sd_db") r.rsrq_sd = parse_double(val, line);
      else if (key == "sinr_mean_db") r.sinr_mean = parse_double(val, line);
      else if (key == "sinr_sd_db") r.sinr_sd = parse_double(val, line);
      else throw unknown();
    }
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream o;
  o << "# leaksim scenario\n";
  o << "[run]\n";
  o << "duration_s = " << fmt_double(s.duration) << "\n";
  o << "dt_s = " << fmt_double(s.dt) << "\n";
  o << "modem_trace_dt_s = " << fmt_double(s.modem_trace_dt) << "\n";
  o << "trace_sample_every_s = " << fmt_double(s.trace_sample_every) << "\n";
  o << "seed = " << s.seed << "\n";
  o << "device_id = " << s.device_id << "\n";
  o << "\n[water]\n";
  o << "depth_mm = " << fmt_double(s.depth_mm) << "\n";
  o << "schedule = ";
  for (std::size_t k = 0; k < s.water_schedule.size(); ++k) {
    if (k) o << ",";
    o << fmt_double(s.water_schedule[k].first) << ":"
      << (s.water_schedule[k].second ? "wet" : "dry");
  }
  o << "\n";
  const auto& h = s.harvester;
  o << "\n[harvester]\n";
  o << "v_peak_v = " << fmt_double(h.v_peak) << "\n";
  o << "v_plateau_v = " << fmt_double(h.v_plateau) << "\n";
  o << "i_peak_a = " << fmt_double(h.i_peak) << "\n";
  o << "i_plateau_a = " << fmt_double(h.i_plateau) << "\n";
  o << "tau_v_s = " << fmt_double(h.tau_v) << "\n";
  o << "tau_i_s = " << fmt_double(h.tau_i) << "\n";
  o << "ref_depth_mm = " << fmt_double(h.ref_depth) << "\n";
  o << "drying_tau_s = " << fmt_double(h.drying_tau) << "\n";
  o << "rewet_factor = " << fmt_double(h.rewet_factor) << "\n";
  o << "\n[capacitor]\n";
  o << "capacitance_f = " << fmt_double(s.capacitance) << "\n";
  o << "esr_ohm = " << fmt_double(s.esr) << "\n";
  o << "v_init_v = " << fmt_double(s.v_init) << "\n";
  o << "\n[gate]\n";
  o << "mode = " << to_string(s.gate_mode) << "\n";
  o << "r1_ohm = " << fmt_double(s.gate.r1) << "\n";
  o << "r2_ohm = " << fmt_double(s.gate.r2) << "\n";
  o << "r4_ohm = " << fmt_double(s.gate.r4) << "\n";
  o << "v_ref_v = " << fmt_double(s.gate.v_ref) << "\n";
  o << "i_quiescent_a = " << fmt_double(s.gate.i_quiescent) << "\n";
  o << "solve_r1_ohm = " << fmt_double(s.gate_solve_r1) << "\n";
  const auto& b = s.boost;
  o << "\n[boost]\n";
  o << "v_out_set_v = " << fmt_double(b.v_out_set) << "\n";
  o << "v_in_min_v = " << fmt_double(b.v_in_min) << "\n";
  o << "source_draw_fraction = " << fmt_double(b.source_draw_fraction) << "\n";
  o << "i_out_max_a = " << fmt_double(b.i_out_max) << "\n";
  o << "eff_points = ";
  for (std::size_t k = 0; k < b.eff_points.size(); ++k) {
    if (k) o << ",";
    o << fmt_double(b.eff_points[k].first) << ":"
      << fmt_double(b.eff_points[k].second);
  }
  o << "\n";
  const auto& m = s.modem;
  o << "\n[modem]\n";
  o << "psm_enabled = " << (m.psm_enabled ? "true" : "false") << "\n";
  o << "band_mode = " << to_string(m.band_mode) << "\n";
  o << "idle_interval_s = " << fmt_double(m.idle_interval) << "\n";
  o << "v_min_operate_v = " << fmt_double(m.v_min_operate) << "\n";
  o << "i_startup_req_a = " << fmt_double(m.i_startup_req) << "\n";
  o << "v_nominal_v = " << fmt_double(m.v_nominal) << "\n";
  o << "ntn_tx_scale = " << fmt_double(m.ntn_tx_scale) << "\n";
  o << "psm_idle_avg_a = " << fmt_double(m.psm_idle_avg) << "\n";
  o << "boot_delay_s = " << fmt_double(s.boot_delay) << "\n";
  const auto& r = s.radio;
  o << "\n[radio]\n";
  o << "rsrp_mean_dbm = " << fmt_double(r.rsrp_mean) << "\n";
  o << "rsrp_sd_db = " << fmt_double(r.rsrp_sd) << "\n";
  o << "rsrq_mean_db = " << fmt_double(r.rsrq_mean) << "\n";
  o << "rsrq_sd_db = " << fmt_double(r.rsrq_sd) << "\n";
  o << "sinr_mean_db = " << fmt_double(r.sinr_mean) << "\n";
  o << "sinr_sd_db = " << fmt_double(r.sinr_sd) << "\n";
  return o.str();
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void save_scenario_file(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write scenario file: " + path);
  out << serialize_scenario(s);
  if (!out) throw std::ios_base::failure("short write: " + path);
}

}  // namespace leaksim
