/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>

namespace leaksim {

/// Water-activated electrochemical harvester, modelled as a time-varying
/// Thevenin source. Open-circuit voltage and short-circuit current both
/// settle exponentially from a first-contact peak to a wetted plateau;
/// removal decays the output, re-wetting recovers only a weak fraction.
struct HarvesterParams {
  double v_peak = 2.7;       // [V]  OCV at first wetting
  double v_plateau = 1.6;    // [V]  OCV fully settled while wet
  double i_peak = 0.450;     // [A]  SCC at first wetting
  double i_plateau = 0.150;  // [A]  SCC fully settled while wet
  double tau_v = 386.0;      // [s]  OCV settle time constant (calibrated)
  double tau_i = 386.0;      // [s]  SCC settle time constant (calibrated)
  double ref_depth = 1.0;    // [mm] depth at which rate factor = 1
  double drying_tau = 600.0; // [s]  output decay after water removal
  double rewet_factor = 0.3; // [-]  surviving fraction per dry/wet cycle
};

struct HarvesterState {
  bool wetted = false;        // water currently present
  double t_wet = 0.0;         // [s] cumulative wetted time
  double depth = 1.0;         // [mm] standing water depth
  double dry_elapsed = 0.0;   // [s] since water removal (0 while wetted)
  double degradation = 1.0;   // [-] multiplicative reaction loss, in [0,1]
};

struct TheveninSource {
  double v_oc = 0.0;   // [V]
  double r_int = 0.0;  // [Ohm]
};

/// Open-circuit voltage for the current state. 0 V if never wetted.
double ocv(const HarvesterParams& p, const HarvesterState& s);

/// Short-circuit current capability for the current state, including the
/// depth rate factor. 0 A if never wetted.
double scc(const HarvesterParams& p, const HarvesterState& s);

/// Saturating depth factor on current capability, d/(d+k) normalised to 1 at
/// ref_depth. Monotone non-decreasing, 0 at zero depth.
double depth_rate_factor(double depth_mm, double ref_depth_mm);

/// Equivalent source for the present instant: v_oc = ocv, r_int = ocv/scc.
/// Empty when the source cannot deliver current (never wetted, fully decayed,
/// or zero depth): an absent source, not a division fault.
std::optional<TheveninSource> thevenin(const HarvesterParams& p,
                                       const HarvesterState& s);

/// Advance wet/dry bookkeeping by dt. Wetted time accrues only while wet;
/// dry_elapsed accrues only after first wetting; a dry->wet transition
/// multiplies degradation by rewet_factor and clears dry_elapsed.
void advance_water(const HarvesterParams& p, HarvesterState& s, double dt,
                   bool water_present);

}  // namespace leaksim
