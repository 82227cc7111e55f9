/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

#include "leaksim/rng.hpp"

namespace leaksim {

enum class PhaseKind { NetworkSearch, Idle, Transmit };

/// One row of the modem's electrical behaviour: duration, current envelope
/// and the energy the phase consumes at the nominal bench supply.
struct PhaseProfile {
  PhaseKind kind = PhaseKind::Idle;
  double duration = 0.0;           // [s]
  double i_peak = 0.0;             // [A]
  double i_avg = 0.0;              // [A]
  double energy_at_nominal = 0.0;  // [J] at v_nominal
};

enum class BandMode { Terrestrial, NtnBand2 };

struct ModemConfig {
  bool psm_enabled = false;
  BandMode band_mode = BandMode::Terrestrial;
  double idle_interval = 120.0;   // [s] firmware-timed gap between beacons
  double v_min_operate = 3.2;     // [V] undervoltage lockout
  double i_startup_req = 0.25;    // [A] inrush the rail must support
  double v_nominal = 4.87;        // [V] supply at which the table was taken
  double ntn_tx_scale = 1.4;      // [-] transmit power factor in NTN band
  double psm_idle_avg = 3e-6;     // [A] idle floor with PSM enabled
};

struct RadioConditions {
  double rsrp_mean = -97.8;  // [dBm]
  double rsrp_sd = 3.9;      // [dB]
  double rsrq_mean = -9.3;   // [dB]
  double rsrq_sd = 1.3;      // [dB]
  double sinr_mean = 11.5;   // [dB]
  double sinr_sd = 2.8;      // [dB]
};

/// Electrical phase table for the given configuration. PSM replaces the idle
/// average with the sleep floor; NTN scales transmit average and energy by
/// ntn_tx_scale. Idle duration and energy follow idle_interval.
std::vector<PhaseProfile> phase_table(const ModemConfig& cfg);

PhaseProfile profile_for(const ModemConfig& cfg, PhaseKind kind);

/// Synthetic supply-current trace for one phase instance: a low baseline plus
/// rectangular bursts at i_peak, placed by rng. The sample mean equals i_avg
/// exactly (baseline solved after burst placement) and max equals i_peak, so
/// both trace constraints hold at any admissible dt. Throws when dt is too
/// coarse to place a single peak sample (n < i_peak/i_avg) or n < 10.
std::vector<double> synthesize_current(const PhaseProfile& phase, double dt,
                                       Rng& rng);

/// Trapezoidal energy of a current trace at a fixed supply voltage:
/// E = v * sum((i_k + i_{k+1})/2) * dt.
double energy_of_trace(const std::vector<double>& trace, double v_supply,
                       double dt);

/// Attach (network search) duration sampler: lognormal with median 30 s whose
/// location shifts with the RSRP deviation from the reference mean (worse
/// signal -> longer attach), clamped to [10, 180] s. All randomness derives
/// from the RSRP draw, so rsrp_sd = 0 at nominal mean gives exactly 30 s.
double sample_attach_duration(const RadioConditions& rc, Rng& rng);

/// One-way beacon delivery latency: uniform in [0, 15] ms terrestrial,
/// [20, 40] ms over the NTN band (LEO path).
double link_latency(const ModemConfig& cfg, const RadioConditions& rc,
                    Rng& rng);

const char* to_string(PhaseKind k);
const char* to_string(BandMode m);

}  // namespace leaksim
