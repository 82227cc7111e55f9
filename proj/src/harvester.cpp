/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "leaksim/harvester.hpp"

#include <cmath>
#include <stdexcept>

namespace leaksim {

namespace {

// Depth-curve saturation constant [mm]. Set by tools/calibrate against the
// reference activation times at 0.5 / 1.0 / 1.5 mm standing depth.
constexpr double kDepthSaturationMm = 0.045;

// Exponential settle from a first-contact peak towards the wetted plateau.
double settle(double peak, double plateau, double tau, double t) {
  return plateau + (peak - plateau) * std::exp(-t / tau);
}

bool never_wetted(const HarvesterState& s) {
  return !s.wetted && s.t_wet <= 0.0 && s.dry_elapsed <= 0.0;
}

// Output decay once water is removed; 1.0 while wetted.
double drying_decay(const HarvesterParams& p, const HarvesterState& s) {
  if (s.wetted) return 1.0;
  return std::exp(-s.dry_elapsed / p.drying_tau);
}

}  // namespace

double ocv(const HarvesterParams& p, const HarvesterState& s) {
  if (never_wetted(s)) return 0.0;
  return settle(p.v_peak, p.v_plateau, p.tau_v, s.t_wet) * s.degradation *
         drying_decay(p, s);
}

double scc(const HarvesterParams& p, const HarvesterState& s) {
  if (never_wetted(s)) return 0.0;
  return settle(p.i_peak, p.i_plateau, p.tau_i, s.t_wet) * s.degradation *
         drying_decay(p, s) * depth_rate_factor(s.depth, p.ref_depth);
}

double depth_rate_factor(double depth_mm, double ref_depth_mm) {
  if (ref_depth_mm <= 0.0) throw std::invalid_argument("ref_depth must be > 0");
  if (depth_mm < 0.0) throw std::invalid_argument("depth must be >= 0");
  const double k = kDepthSaturationMm;
  return (depth_mm / (depth_mm + k)) / (ref_depth_mm / (ref_depth_mm + k));
}

std::optional<TheveninSource> thevenin(const HarvesterParams& p,
                                       const HarvesterState& s) {
  const double v = ocv(p, s);
  const double i = scc(p, s);
  if (i <= 0.0 || v <= 0.0) return std::nullopt;
  return TheveninSource{v, v / i};
}

void advance_water(const HarvesterParams& p, HarvesterState& s, double dt,
                   bool water_present) {
  if (dt < 0.0) throw std::invalid_argument("dt must be >= 0");
  if (water_present) {
    if (!s.wetted) {
      if (!never_wetted(s)) s.degradation *= p.rewet_factor;  // re-wet
      s.wetted = true;
      s.dry_elapsed = 0.0;
    }
    s.t_wet += dt;
  } else {
    if (s.wetted) s.wetted = false;
    if (s.t_wet > 0.0) s.dry_elapsed += dt;
  }
}

}  // namespace leaksim
