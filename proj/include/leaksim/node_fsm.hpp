/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leaksim/modem.hpp"
#include "leaksim/rng.hpp"

namespace leaksim {

enum class NodePhase { Off, Booting, Attaching, Transmitting, Idle, Brownout };

struct BeaconRecord {
  std::uint64_t seq = 0;
  double t_start = 0.0;  // [s]
  double t_end = 0.0;    // [s]
  double energy = 0.0;   // [J] drawn from the cap during the transmit phase
  bool delivered = false;
  double latency = 0.0;  // [s] one-way link latency (delivered beacons)
  int cycle_index = 0;   // activation cycle the beacon belongs to
};

/// Application payload for one beacon (JSON text). Length is what the energy
/// model's transmit phase carries; content is for the event log.
std::string beacon_payload(std::uint64_t seq, double now,
                           const std::string& device_id = "leak-node-01");

/// Node behaviour while powered: Off -> Booting -> Attaching ->
/// (Transmitting -> Idle)* with exactly one attach per activation cycle.
/// Booting is zero-length by default. Gate opening during Idle is the normal
/// end-of-cycle disconnection; during Booting/Attaching/Transmitting it is a
/// brownout that aborts the in-flight operation.
class NodeFsm {
 public:
  struct StepOutcome {
    NodePhase phase = NodePhase::Off;
    std::optional<BeaconRecord> beacon;  // finalised during this step
    bool brownout = false;               // operation aborted this step
    bool disconnected = false;           // normal cycle end this step
  };

  NodeFsm(const ModemConfig& cfg, const RadioConditions& rc, double tick_dt,
          double trace_dt, double boot_delay = 0.0, double rail_esr = 0.0);

  /// Demanded supply current for the tick starting now. The modem regulates
  /// internally, so the trace current scales by v_nominal/v_cap (constant
  /// power per sample). Zero when unpowered.
  double demand(double v_cap) const;

  /// Advance one tick. gate_closed/v_cap are the post-integration rail state;
  /// e_load is the energy actually drawn from the cap during the tick.
  StepOutcome step(bool gate_closed, double v_cap, double t_now, double e_load,
                   Rng& rng);

  NodePhase phase() const { return m_phase; }
  int cycle_index() const { return m_cycle; }
  double attach_duration() const { return m_attach_duration; }

 private:
  void enter_phase(NodePhase next, double t_now, Rng& rng);
  void build_trace(const PhaseProfile& profile, Rng& rng);

  ModemConfig m_cfg;
  RadioConditions m_rc;
  double m_dt;        // [s] engine tick
  double m_trace_dt;  // [s] synthesized trace resolution
  double m_boot_delay;
  double m_rail_esr;  // [Ohm] for the startup inrush check

  NodePhase m_phase = NodePhase::Off;
  std::int64_t m_tick_in_phase = 0;
  std::int64_t m_phase_ticks = 0;
  std::vector<double> m_tick_current;  // per-tick mean of the phase trace
  double m_attach_duration = 0.0;      // [s] sampled for the current cycle

  std::uint64_t m_seq = 0;
  int m_cycle = 0;
  double m_beacon_t_start = 0.0;
  double m_beacon_energy = 0.0;
};

const char* to_string(NodePhase p);

}  // namespace leaksim
