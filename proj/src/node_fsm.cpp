/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "leaksim/node_fsm.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace leaksim {

std::string beacon_payload(std::uint64_t seq, double now,
                           const std::string& device_id) {
  nlohmann::json j;
  j["device_id"] = device_id;
  j["seq"] = seq;
  j["status"] = "leak-active";
  j["timestamp_s"] = now;
  return j.dump();
}

NodeFsm::NodeFsm(const ModemConfig& cfg, const RadioConditions& rc,
                 double tick_dt, double trace_dt, double boot_delay,
                 double rail_esr)
    : m_cfg(cfg),
      m_rc(rc),
      m_dt(tick_dt),
      m_trace_dt(trace_dt),
      m_boot_delay(boot_delay),
      m_rail_esr(rail_esr) {
  if (tick_dt <= 0.0 || trace_dt <= 0.0 || trace_dt > tick_dt)
    throw std::invalid_argument("require 0 < trace_dt <= tick_dt");
}

double NodeFsm::demand(double v_cap) const {
  if (m_phase == NodePhase::Off || m_phase == NodePhase::Brownout ||
      m_phase == NodePhase::Booting)
    return 0.0;
  if (m_tick_in_phase >= static_cast<std::int64_t>(m_tick_current.size()))
    return 0.0;
  const double i_nominal = m_tick_current[m_tick_in_phase];
  if (v_cap <= 0.0) return 0.0;
  return i_nominal * m_cfg.v_nominal / v_cap;
}

void NodeFsm::build_trace(const PhaseProfile& profile, Rng& rng) {
  const auto raw = synthesize_current(profile, m_trace_dt, rng);
  const auto block = static_cast<std::size_t>(std::llround(m_dt / m_trace_dt));
  m_phase_ticks = static_cast<std::int64_t>(raw.size() / block);
  m_tick_current.assign(m_phase_ticks, 0.0);
  for (std::int64_t t = 0; t < m_phase_ticks; ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < block; ++j)
      acc += raw[static_cast<std::size_t>(t) * block + j];
    m_tick_current[t] = acc / static_cast<double>(block);
  }
}

void NodeFsm::enter_phase(NodePhase next, double t_now, Rng& rng) {
  m_phase = next;
  m_tick_in_phase = 0;
  switch (next) {
    case NodePhase::Booting:
      ++m_cycle;
      m_phase_ticks = static_cast<std::int64_t>(std::llround(m_boot_delay / m_dt));
      m_tick_current.clear();
      break;
    case NodePhase::Attaching: {
      m_attach_duration = sample_attach_duration(m_rc, rng);
      // Align to the tick grid; scale the profile to the sampled duration.
      m_attach_duration = std::max(m_dt, std::round(m_attach_duration / m_dt) * m_dt);
      PhaseProfile p = profile_for(m_cfg, PhaseKind::NetworkSearch);
      p.energy_at_nominal *= m_attach_duration / p.duration;
      p.duration = m_attach_duration;
      build_trace(p, rng);
      break;
    }
    case NodePhase::Transmitting:
      build_trace(profile_for(m_cfg, PhaseKind::Transmit), rng);
      m_beacon_t_start = t_now;
      m_beacon_energy = 0.0;
      ++m_seq;
      break;
    case NodePhase::Idle:
      build_trace(profile_for(m_cfg, PhaseKind::Idle), rng);
      break;
    case NodePhase::Off:
    case NodePhase::Brownout:
      m_phase_ticks = 0;
      m_tick_current.clear();
      break;
  }
}

NodeFsm::StepOutcome NodeFsm::step(bool gate_closed, double v_cap,
                                   double t_now, double e_load, Rng& rng) {
  StepOutcome out;
  if (m_phase == NodePhase::Transmitting) m_beacon_energy += e_load;

  const bool powered = m_phase != NodePhase::Off && m_phase != NodePhase::Brownout;
  const bool undervolt = powered && v_cap < m_cfg.v_min_operate;

  if (powered && (!gate_closed || undervolt)) {
    // Every powered phase decays through Brownout to Off, but only an
    // interrupted operation counts as a brownout; losing the rail during
    // Idle is the expected end-of-cycle disconnection.
    if (m_phase == NodePhase::Idle && !undervolt) {
      out.disconnected = true;
    } else {
      if (m_phase == NodePhase::Transmitting) {
        BeaconRecord rec;
        rec.seq = m_seq;
        rec.t_start = m_beacon_t_start;
        rec.t_end = t_now;
        rec.energy = m_beacon_energy;
        rec.delivered = false;
        rec.cycle_index = m_cycle;
        out.beacon = rec;
      }
      out.brownout = true;
    }
    enter_phase(NodePhase::Brownout, t_now, rng);
    out.phase = m_phase;
    return out;
  }

  switch (m_phase) {
    case NodePhase::Off:
      if (gate_closed) {
        enter_phase(NodePhase::Booting, t_now, rng);
        // Inrush check against the rail (matters only with nonzero ESR).
        if (v_cap - m_cfg.i_startup_req * m_rail_esr < m_cfg.v_min_operate) {
          out.brownout = true;
          enter_phase(NodePhase::Brownout, t_now, rng);
          break;
        }
        if (m_phase_ticks == 0) enter_phase(NodePhase::Attaching, t_now, rng);
      }
      break;
    case NodePhase::Brownout:
      if (!gate_closed) enter_phase(NodePhase::Off, t_now, rng);
      // Gate still closed: hold until the rail recovers, then retry.
      else if (v_cap >= m_cfg.v_min_operate + 0.1)
        enter_phase(NodePhase::Booting, t_now, rng);
      break;
    case NodePhase::Booting:
      ++m_tick_in_phase;
      if (m_tick_in_phase >= m_phase_ticks)
        enter_phase(NodePhase::Attaching, t_now, rng);
      break;
    case NodePhase::Attaching:
      ++m_tick_in_phase;
      if (m_tick_in_phase >= m_phase_ticks)
        enter_phase(NodePhase::Transmitting, t_now, rng);
      break;
    case NodePhase::Transmitting:
      ++m_tick_in_phase;
      if (m_tick_in_phase >= m_phase_ticks) {
        BeaconRecord rec;
        rec.seq = m_seq;
        rec.t_start = m_beacon_t_start;
        rec.t_end = t_now;
        rec.energy = m_beacon_energy;
        rec.delivered = true;
        rec.latency = link_latency(m_cfg, m_rc, rng);
        rec.cycle_index = m_cycle;
        out.beacon = rec;
        enter_phase(NodePhase::Idle, t_now, rng);
      }
      break;
    case NodePhase::Idle:
      ++m_tick_in_phase;
      if (m_tick_in_phase >= m_phase_ticks)
        enter_phase(NodePhase::Transmitting, t_now, rng);
      break;
  }
  out.phase = m_phase;
  return out;
}

const char* to_string(NodePhase p) {
  switch (p) {
    case NodePhase::Off: return "off";
    case NodePhase::Booting: return "booting";
    case NodePhase::Attaching: return "attaching";
    case NodePhase::Transmitting: return "transmitting";
    case NodePhase::Idle: return "idle";
    case NodePhase::Brownout: return "brownout";
  }
  return "?";
}

}  // namespace leaksim
