/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "leaksim/modem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leaksim {

namespace {

// Bench-measured phase envelope at the nominal 4.87 V supply.
constexpr double kSearchDuration = 30.0;   // [s]
constexpr double kSearchPeak = 0.2487;     // [A]
constexpr double kSearchAvg = 0.0149;      // [A]
constexpr double kSearchEnergy = 2.15;     // [J]
constexpr double kIdleRefDuration = 120.0; // [s]
constexpr double kIdlePeak = 0.0572;       // [A]
constexpr double kIdleAvg = 0.00172;       // [A]
constexpr double kIdleEnergy = 0.98;       // [J]
constexpr double kTxDuration = 12.0;       // [s]
constexpr double kTxPeak = 0.2391;         // [A]
constexpr double kTxAvg = 0.00612;         // [A]
constexpr double kTxEnergy = 0.35;         // [J]

// Attach sampler: median and RSRP sensitivity of the lognormal location.
constexpr double kAttachMedian = 30.0;   // [s]
constexpr double kAttachRsrpRef = -97.8; // [dBm]
constexpr double kAttachSlope = 0.001;   // [1/dB] on the log-duration
constexpr double kAttachMin = 10.0;      // [s]
constexpr double kAttachMax = 180.0;     // [s]

constexpr double kTerrestrialLatencyMax = 0.015; // [s]
constexpr double kNtnLatencyMin = 0.020;         // [s]
constexpr double kNtnLatencyMax = 0.040;         // [s]

}  // namespace

std::vector<PhaseProfile> phase_table(const ModemConfig& cfg) {
  if (cfg.idle_interval <= 0.0)
    throw std::invalid_argument("idle_interval must be > 0");
  PhaseProfile search{PhaseKind::NetworkSearch, kSearchDuration, kSearchPeak,
                      kSearchAvg, kSearchEnergy};
  const double idle_scale = cfg.idle_interval / kIdleRefDuration;
  PhaseProfile idle{PhaseKind::Idle, cfg.idle_interval, kIdlePeak, kIdleAvg,
                    kIdleEnergy * idle_scale};
  if (cfg.psm_enabled) {
    idle.i_avg = cfg.psm_idle_avg;
    idle.energy_at_nominal = cfg.psm_idle_avg * cfg.v_nominal *
                             cfg.idle_interval;
  }
  PhaseProfile tx{PhaseKind::Transmit, kTxDuration, kTxPeak, kTxAvg,
                  kTxEnergy};
  if (cfg.band_mode == BandMode::NtnBand2) {
    tx.i_avg *= cfg.ntn_tx_scale;
    tx.energy_at_nominal *= cfg.ntn_tx_scale;
  }
  return {search, idle, tx};
}

PhaseProfile profile_for(const ModemConfig& cfg, PhaseKind kind) {
  for (const auto& p : phase_table(cfg))
    if (p.kind == kind) return p;
  throw std::invalid_argument("unknown phase kind");
}

std::vector<double> synthesize_current(const PhaseProfile& phase, double dt,
                                       Rng& rng) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
  if (phase.i_peak < phase.i_avg || phase.i_avg < 0.0)
    throw std::invalid_argument("require i_peak >= i_avg >= 0");
  const std::size_t n =
      static_cast<std::size_t>(std::llround(phase.duration / dt));
  if (n < 10)
    throw std::invalid_argument("dt too coarse: fewer than 10 samples");
  if (phase.i_peak <= 0.0) return std::vector<double>(n, 0.0);
  if (phase.i_peak == phase.i_avg) return std::vector<double>(n, phase.i_avg);

  // Peak-sample budget keeping the compensated baseline non-negative.
  const double budget = static_cast<double>(n) * phase.i_avg / phase.i_peak;
  const auto k_max = static_cast<std::size_t>(budget);
  if (k_max < 1)
    throw std::invalid_argument(
        "dt too coarse to realise i_peak within the mean constraint");
  std::size_t k = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(0.5 * budget)), 1, k_max);

  // Spread the k peak samples over short rectangular bursts (~30 ms, the
  // scale of paging/grant activity), one burst per equal segment, jittered
  // start within the segment.
  const auto burst_w = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(0.030 / dt)));
  const std::size_t n_bursts =
      std::clamp<std::size_t>(k / burst_w, 1, std::min<std::size_t>(64, k));
  const double base =
      (static_cast<double>(n) * phase.i_avg - static_cast<double>(k) * phase.i_peak) /
      static_cast<double>(n - k);

  std::vector<double> trace(n, base);
  const std::size_t seg = n / n_bursts;
  std::size_t placed = 0;
  for (std::size_t b = 0; b < n_bursts; ++b) {
    std::size_t w = k / n_bursts + (b < k % n_bursts ? 1 : 0);
    w = std::min(w, seg);  // never overflow the segment
    if (w == 0) continue;
    const std::size_t slack = seg - w;
    const std::size_t start =
        b * seg + (slack > 0 ? static_cast<std::size_t>(rng.below(slack + 1)) : 0);
    for (std::size_t j = 0; j < w; ++j) trace[start + j] = phase.i_peak;
    placed += w;
  }
  // Exact mean: recompute the baseline for the samples actually placed.
  if (placed != k && placed > 0 && placed < n) {
    const double b2 =
        (static_cast<double>(n) * phase.i_avg -
         static_cast<double>(placed) * phase.i_peak) /
        static_cast<double>(n - placed);
    for (auto& x : trace)
      if (x != phase.i_peak) x = b2;
  }
  return trace;
}

double energy_of_trace(const std::vector<double>& trace, double v_supply,
                       double dt) {
  if (v_supply < 0.0) throw std::invalid_argument("v_supply must be >= 0");
  if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
  if (trace.size() < 2) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < trace.size(); ++k)
    acc += 0.5 * (trace[k] + trace[k + 1]);
  return v_supply * acc * dt;
}

double sample_attach_duration(const RadioConditions& rc, Rng& rng) {
  const double rsrp = rng.normal(rc.rsrp_mean, rc.rsrp_sd);
  const double t = kAttachMedian * std::exp(kAttachSlope * (kAttachRsrpRef - rsrp));
  return std::clamp(t, kAttachMin, kAttachMax);
}

double link_latency(const ModemConfig& cfg, const RadioConditions&, Rng& rng) {
  if (cfg.band_mode == BandMode::NtnBand2)
    return rng.uniform(kNtnLatencyMin, kNtnLatencyMax);
  return rng.uniform(0.0, kTerrestrialLatencyMax);
}

const char* to_string(PhaseKind k) {
  switch (k) {
    case PhaseKind::NetworkSearch: return "network_search";
    case PhaseKind::Idle: return "idle";
    case PhaseKind::Transmit: return "transmit";
  }
  return "?";
}

const char* to_string(BandMode m) {
  return m == BandMode::NtnBand2 ? "ntn_band2" : "terrestrial";
}

}  // namespace leaksim
