/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <utility>
#include <vector>

namespace leaksim {

/// Storage element between boost output and load rail. Ideal capacitor with
/// optional series resistance for sensitivity studies.
struct Supercapacitor {
  double capacitance = 1.5;  // [F]
  double v = 0.0;            // [V] cell voltage
  double esr = 0.0;          // [Ohm]
  double v_max = 5.0;        // [V] regulation ceiling of the charging rail
};

/// Boost converter behavioural model. Efficiency is interpolated piecewise
/// linearly over (i_out, eta) anchors, clamped to the end anchors outside
/// their range.
struct BoostParams {
  double v_out_set = 5.0;  // [V] output regulation setpoint
  double v_in_min = 0.9;   // [V] minimum startup/run input voltage
  std::vector<std::pair<double, double>> eff_points = {
      {0.010, 0.82}, {0.050, 0.80}, {0.150, 0.76}, {0.250, 0.73}};
  // Average fraction of the source's maximum sustainable current (referenced
  // to v_in_min) that the PFM converter draws. Calibrated; see README.
  double source_draw_fraction = 0.0656;
  double i_out_max = 0.25;  // [A] output current clamp (startup precharge)
};

/// Hysteretic comparator network gating the load rail (shunt-reference
/// comparator with feedback resistors r1/r2/r4).
struct GateParams {
  double r1 = 100e3;          // [Ohm]
  double r2 = 100e3;          // [Ohm]
  double r4 = 100e3;          // [Ohm]
  double v_ref = 1.24;        // [V] internal reference
  double i_quiescent = 40e-6; // [A] divider + comparator standing draw
};

enum class GatePhase { Charging, Active };

const char* to_string(GatePhase p);

struct GateState {
  GatePhase phase = GatePhase::Charging;
  double v_on = 0.0;   // [V] close (connect) threshold
  double v_off = 0.0;  // [V] open (disconnect) threshold
};

struct BoostTransfer {
  double i_out = 0.0;  // [A] current delivered at the output rail
  bool running = false;
};

/// Joint source/converter operating point for one step.
struct OperatingPoint {
  double v_in = 0.0;   // [V] harvester terminal voltage
  double i_in = 0.0;   // [A] drawn from the harvester
  double i_out = 0.0;  // [A] delivered into the capacitor rail
  double eta = 0.0;    // [-] converter efficiency at i_out
  bool running = false;
  bool converged = true;  // efficiency fixed point converged
};

/// Comparator thresholds from the resistor network:
///   v_on  = v_ref * (1 + r1 / (r2 || r4))
///   v_off = v_ref * (1 + (r1 || r4) / r2)
/// Throws std::invalid_argument on non-positive resistances/reference or a
/// degenerate network (v_on <= v_off).
std::pair<double, double> gate_thresholds(const GateParams& g);

/// Solve r2/r4 for requested thresholds with r1 fixed; inverse of
/// gate_thresholds. Throws when the targets are unrealisable.
GateParams solve_gate_network(double v_on, double v_off, double v_ref,
                              double r1);

/// One comparator evaluation: Charging->Active at v_cap >= v_on,
/// Active->Charging at v_cap < v_off, unchanged otherwise.
GateState gate_step(const GateState& s, double v_cap);

/// Converter efficiency at output current i_out.
double efficiency_at(const BoostParams& b, double i_out);

/// Bench transfer at the regulation setpoint: output current satisfying
/// v_out_set * i_out = eta(i_out) * v_in * i_in. running = (v_in >= v_in_min);
/// i_out = 0 when not running. Negative inputs rejected.
BoostTransfer boost_transfer(const BoostParams& b, double v_in,
                             double i_charge_avail);

/// Same power balance evaluated at an explicit output voltage (the cap rail
/// sits below regulation while charging). Applies the output current clamp.
BoostTransfer boost_transfer_at(const BoostParams& b, double v_in,
                                double i_charge_avail, double v_out);

/// Source loading policy + transfer, one step. The converter draws
/// i_in = fraction * (v_oc - v_in_min)/r_int, which keeps v_in >= v_in_min by
/// construction; charge current then follows from the power balance at v_cap
/// with the efficiency fixed point (<= 20 iterations to 1e-6, converged flag
/// cleared on failure with i_out falling back to i_out_prev).
OperatingPoint solve_operating_point(const BoostParams& b, double v_oc,
                                     double r_int, double v_cap,
                                     double i_out_prev);

/// Euler step of the cell voltage: v += i_net*dt/C, clamped to [0, v_max].
double cap_integrate(const Supercapacitor& c, double i_net, double dt);

/// Energy released between the connect and disconnect thresholds:
/// 0.5*C*(v_on^2 - v_off^2). Requires v_on >= v_off >= 0, c > 0; equal
/// thresholds bound a zero-energy window, inverted ones are an error.
double usable_energy(double c_farads, double v_on, double v_off);

/// Capacitance delivering e_load_j through a path of efficiency eff across
/// the same threshold window: (e/eff) / (0.5*(v_on^2 - v_off^2)).
double required_capacitance(double e_load_j, double eff, double v_on,
                            double v_off);

}  // namespace leaksim
