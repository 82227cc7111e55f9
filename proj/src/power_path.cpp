/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "leaksim/power_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leaksim {

namespace {

double parallel(double a, double b) { return a * b / (a + b); }

}  // namespace

std::pair<double, double> gate_thresholds(const GateParams& g) {
  if (g.r1 <= 0.0 || g.r2 <= 0.0 || g.r4 <= 0.0)
    throw std::invalid_argument("gate resistances must be > 0");
  if (g.v_ref <= 0.0) throw std::invalid_argument("v_ref must be > 0");
  const double v_on = g.v_ref * (1.0 + g.r1 / parallel(g.r2, g.r4));
  const double v_off = g.v_ref * (1.0 + parallel(g.r1, g.r4) / g.r2);
  if (v_on <= v_off)
    throw std::invalid_argument("degenerate gate network: v_on <= v_off");
  return {v_on, v_off};
}

GateParams solve_gate_network(double v_on, double v_off, double v_ref,
                              double r1) {
  if (v_ref <= 0.0 || r1 <= 0.0)
    throw std::invalid_argument("v_ref and r1 must be > 0");
  const double a = v_on / v_ref - 1.0;   // r1 / (r2 || r4)
  const double b = v_off / v_ref - 1.0;  // (r1 || r4) / r2
  if (b <= 0.0 || a <= b)
    throw std::invalid_argument("unrealisable gate thresholds");
  GateParams g;
  g.v_ref = v_ref;
  g.r1 = r1;
  g.r4 = r1 * (1.0 + b) / (a - b);
  g.r2 = r1 * g.r4 / (b * (r1 + g.r4));
  return g;
}

GateState gate_step(const GateState& s, double v_cap) {
  GateState out = s;
  if (s.phase == GatePhase::Charging && v_cap >= s.v_on)
    out.phase = GatePhase::Active;
  else if (s.phase == GatePhase::Active && v_cap < s.v_off)
    out.phase = GatePhase::Charging;
  return out;
}

double efficiency_at(const BoostParams& b, double i_out) {
  if (i_out < 0.0) throw std::invalid_argument("i_out must be >= 0");
  if (b.eff_points.empty())
    throw std::invalid_argument("efficiency curve has no anchors");
  const auto& pts = b.eff_points;
  if (i_out <= pts.front().first) return pts.front().second;
  if (i_out >= pts.back().first) return pts.back().second;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (i_out <= pts[k].first) {
      const double x0 = pts[k - 1].first, y0 = pts[k - 1].second;
      const double x1 = pts[k].first, y1 = pts[k].second;
      return y0 + (y1 - y0) * (i_out - x0) / (x1 - x0);
    }
  }
  return pts.back().second;
}

namespace {

// Fixed point of i_out = eta(i_out) * p_in / v_out, at most 20 iterations to
// 1e-6 A. Returns convergence flag.
bool solve_i_out(const BoostParams& b, double p_in, double v_out,
                 double& i_out) {
  double i = efficiency_at(b, 0.0) * p_in / v_out;
  for (int k = 0; k < 20; ++k) {
    const double next = efficiency_at(b, i) * p_in / v_out;
    if (std::abs(next - i) < 1e-6) {
      i_out = next;
      return true;
    }
    i = next;
  }
  i_out = i;
  return false;
}

}  // namespace

BoostTransfer boost_transfer(const BoostParams& b, double v_in,
                             double i_charge_avail) {
  return boost_transfer_at(b, v_in, i_charge_avail, b.v_out_set);
}

BoostTransfer boost_transfer_at(const BoostParams& b, double v_in,
                                double i_charge_avail, double v_out) {
  if (i_charge_avail < 0.0)
    throw std::invalid_argument("i_charge_avail must be >= 0");
  if (v_in < 0.0) throw std::invalid_argument("v_in must be >= 0");
  if (v_out <= 0.0) throw std::invalid_argument("v_out must be > 0");
  BoostTransfer t;
  t.running = v_in >= b.v_in_min;
  if (!t.running) return t;
  double i_out = 0.0;
  solve_i_out(b, v_in * i_charge_avail, v_out, i_out);
  t.i_out = std::min(i_out, b.i_out_max);
  return t;
}

OperatingPoint solve_operating_point(const BoostParams& b, double v_oc,
                                     double r_int, double v_cap,
                                     double i_out_prev) {
  OperatingPoint op;
  if (v_oc < b.v_in_min || r_int <= 0.0) return op;  // cannot sustain startup
  op.running = true;
  op.i_in = b.source_draw_fraction * (v_oc - b.v_in_min) / r_int;
  op.v_in = v_oc - op.i_in * r_int;
  if (v_cap >= b.v_out_set) {  // regulation ceiling: charging ceases
    op.i_in = 0.0;
    op.v_in = v_oc;
    op.eta = efficiency_at(b, 0.0);
    return op;
  }
  const double p_in = op.v_in * op.i_in;
  const double v_out = std::max(v_cap, 1e-3);
  double i_out = 0.0;
  op.converged = solve_i_out(b, p_in, v_out, i_out);
  if (!op.converged) i_out = i_out_prev;
  if (i_out > b.i_out_max) {
    // Output-limited: back off the input draw so the power balance holds
    // exactly. eta*i_in*(v_oc - i_in*r) = v_out*i_out, small root.
    i_out = b.i_out_max;
    const double eta = efficiency_at(b, i_out);
    const double q = v_out * i_out;
    const double disc = eta * eta * v_oc * v_oc - 4.0 * eta * r_int * q;
    if (disc >= 0.0) {
      op.i_in = (eta * v_oc - std::sqrt(disc)) / (2.0 * eta * r_int);
      op.v_in = v_oc - op.i_in * r_int;
    }
  }
  op.i_out = i_out;
  op.eta = efficiency_at(b, i_out);
  return op;
}

double cap_integrate(const Supercapacitor& c, double i_net, double dt) {
  if (c.capacitance <= 0.0)
    throw std::invalid_argument("capacitance must be > 0");
  if (dt < 0.0) throw std::invalid_argument("dt must be >= 0");
  const double v = c.v + i_net * dt / c.capacitance;
  return std::clamp(v, 0.0, c.v_max);
}

double usable_energy(double c_farads, double v_on, double v_off) {
  if (c_farads <= 0.0) throw std::invalid_argument("capacitance must be > 0");
  if (v_off < 0.0 || v_on < v_off)
    throw std::invalid_argument("require v_on >= v_off >= 0");
  return 0.5 * c_farads * (v_on * v_on - v_off * v_off);
}

double required_capacitance(double e_load_j, double eff, double v_on,
                            double v_off) {
  if (e_load_j <= 0.0) throw std::invalid_argument("load energy must be > 0");
  if (eff <= 0.0 || eff > 1.0)
    throw std::invalid_argument("efficiency must be in (0, 1]");
  if (v_off < 0.0 || v_on <= v_off)
    throw std::invalid_argument("require v_on > v_off >= 0");
  return (e_load_j / eff) / (0.5 * (v_on * v_on - v_off * v_off));
}

const char* to_string(GatePhase p) {
  return p == GatePhase::Active ? "active" : "charging";
}

}  // namespace leaksim
