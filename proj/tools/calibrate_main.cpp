/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
// Developer tool: documents and re-runs the one-time calibration that fixed
// the shipped defaults, then verifies every calibration-sensitive target.
//
// Two knobs are swept jointly on the default scenario:
//   - boost source-draw fraction (lambda): sets the settled input power and
//     with it both the activation time and where inside the 132-s beacon
//     period each cycle's gate-open crossing lands;
//   - harvester settle time constant (tau): sets how much extra energy the
//     fresh-source transient contributes, which moves activation (and the
//     first cycle's crossing) without touching the settled power.
// One knob cannot hit activation-window and brownout-free simultaneously:
// the steady crossing sweeps a full period per ~0.0078 of lambda while the
// allowed activation band spans only ~0.0056, so tau is used to pull
// activation into band at a lambda whose crossings sit mid-idle.
//
// The depth saturation constant in harvester.cpp is pinned to the
// depth_rate_factor(depth, ref_depth) signature and is therefore a module
// constant: it was scanned by recompilation (0.035..0.050) and only needs
// touching if the depth windows verified below drift.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "leaksim/modem.hpp"
#include "leaksim/sim_engine.hpp"

using namespace leaksim;

namespace {

struct GridPoint {
  double tau = 0.0;
  double lambda = 0.0;
  std::optional<double> activation_min;
  int first_beacons = 0;
  int brownouts = 0;
  double idle_margin_s = 0.0;  // min distance of a gate-open to an idle edge
};

Scenario default_scenario() { return Scenario{}; }

Scenario brownout_scenario() {
  Scenario s;
  s.duration = 7200.0;
  s.capacitance = 0.3;
  s.depth_mm = 0.05;
  s.radio.rsrp_sd = 0.0;
  return s;
}

// Smallest distance from any gate-open to the edges of the idle window it
// fell in. Crossings outside idle show up as brownouts and are rejected
// separately, so this only grades how centered the clean disconnects are.
double idle_margin(const SimResult& r, double idle_interval) {
  double margin = 1e9;
  double last_beacon_end = -1.0;
  for (const auto& ev : r.events) {
    if (ev.kind == "beacon") {
      last_beacon_end = ev.t;
    } else if (ev.kind == "gate_open" && last_beacon_end >= 0.0) {
      const double d1 = ev.t - last_beacon_end;
      const double d2 = last_beacon_end + idle_interval - ev.t;
      margin = std::min(margin, std::min(d1, d2));
    }
  }
  return margin;
}

GridPoint evaluate(double tau, double lambda) {
  Scenario s = default_scenario();
  s.harvester.tau_v = tau;
  s.harvester.tau_i = tau;
  s.boost.source_draw_fraction = lambda;
  const SimResult r = run(s);
  GridPoint g;
  g.tau = tau;
  g.lambda = lambda;
  if (r.summary.activation_time)
    g.activation_min = *r.summary.activation_time / 60.0;
  g.first_beacons = r.summary.beacons_per_cycle.empty()
                        ? 0
                        : r.summary.beacons_per_cycle[0];
  g.brownouts = r.summary.brownouts;
  g.idle_margin_s = idle_margin(r, s.modem.idle_interval);
  return g;
}

// Activation must leave room for the depth sweep: 0.5 mm runs ~2.2 min
// slower and 1.5 mm ~0.7 min faster than 1.0 mm, and both must stay within
// their own +/- 2 min windows around 24 and 21 min.
bool feasible(const GridPoint& g) {
  return g.activation_min && *g.activation_min >= 21.5 &&
         *g.activation_min <= 24.0 && g.first_beacons >= 6 &&
         g.first_beacons <= 10 && g.brownouts == 0 && g.idle_margin_s >= 15.0;
}

bool check(bool ok, const char* what, const std::string& detail) {
  std::printf("  [%s] %s: %s\n", ok ? "ok" : "FAIL", what, detail.c_str());
  return ok;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  const bool grid_only = argc > 1 && std::string(argv[1]) == "--grid-only";
  const Scenario shipped = default_scenario();
  const double tau0 = shipped.harvester.tau_v;
  const double lam0 = shipped.boost.source_draw_fraction;

  std::printf("tau x lambda grid (default scenario, 4 h each)\n");
  std::printf("%6s %8s %16s %14s %10s %14s %9s\n", "tau_s", "lambda",
              "activation_min", "first_beacons", "brownouts", "idle_margin_s",
              "feasible");

  const GridPoint* best = nullptr;
  std::vector<GridPoint> grid;
  grid.reserve(45);
  for (double tau = tau0 - 16.0; tau <= tau0 + 16.0 + 1e-9; tau += 8.0)
    for (double lam = lam0 - 0.0016; lam <= lam0 + 0.0016 + 1e-9;
         lam += 0.0004)
      grid.push_back(evaluate(tau, lam));
  for (const auto& g : grid) {
    std::printf("%6.0f %8.4f %16s %14d %10d %14s %9s\n", g.tau, g.lambda,
                g.activation_min ? fmt(*g.activation_min).c_str() : "none",
                g.first_beacons, g.brownouts, fmt(g.idle_margin_s).c_str(),
                feasible(g) ? "yes" : "-");
    if (feasible(g) && (!best || g.idle_margin_s > best->idle_margin_s))
      best = &g;
  }
  if (!best) {
    std::printf("no feasible point in the grid\n");
    return 1;
  }
  std::printf("grid best: tau = %.0f, lambda = %.4f (activation %s min, "
              "%d beacons, margin %s s)\n",
              best->tau, best->lambda, fmt(*best->activation_min).c_str(),
              best->first_beacons, fmt(best->idle_margin_s).c_str());

  const GridPoint ship = evaluate(tau0, lam0);
  bool all_ok = check(
      feasible(ship), "shipped defaults feasible",
      "tau = " + fmt(tau0) + ", lambda = " + fmt(lam0) + " -> activation " +
          (ship.activation_min ? fmt(*ship.activation_min) : "none") +
          " min, " + std::to_string(ship.first_beacons) + " beacons, " +
          std::to_string(ship.brownouts) + " brownouts, margin " +
          fmt(ship.idle_margin_s) + " s");
  if (grid_only) return all_ok ? 0 : 1;

  std::printf("\nverification at shipped defaults\n");

  {
    const char* names[3] = {"0.5 mm", "1.0 mm", "1.5 mm"};
    const double refs[3] = {24.0, 23.0, 21.0};
    const auto pts = sweep(shipped, SweepParam::Depth, {"0.5", "1.0", "1.5"});
    double prev = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto& sum = pts[static_cast<std::size_t>(i)].result.summary;
      const double m = sum.activation_time ? *sum.activation_time / 60.0 : -1.0;
      all_ok &= check(m > 0.0 && std::abs(m - refs[i]) <= 2.0,
                      "depth activation", std::string(names[i]) + " -> " +
                                              fmt(m) + " min (ref " +
                                              fmt(refs[i]) + " +/- 2)");
      if (i > 0)
        all_ok &= check(m < prev, "depth monotonicity",
                        fmt(m) + " < " + fmt(prev));
      prev = m;
    }
  }

  {
    const auto pts =
        sweep(shipped, SweepParam::Capacitance, {"1.0", "1.5", "2.0"});
    double prev = -1.0;
    for (const auto& pt : pts) {
      const auto& sum = pt.result.summary;
      const double m = sum.activation_time ? *sum.activation_time / 60.0 : -1.0;
      all_ok &= check(m > prev, "capacitance activation ordering",
                      pt.value + " F -> " + fmt(m) + " min");
      prev = m;
    }
  }

  {
    const SimResult r = run(brownout_scenario());
    const auto& sum = r.summary;
    all_ok &= check(sum.cycles >= 3, "0.3 F cycles",
                    std::to_string(sum.cycles) + " cycles");
    all_ok &= check(sum.brownouts == sum.cycles, "0.3 F brownout per cycle",
                    std::to_string(sum.brownouts) + " brownouts over " +
                        std::to_string(sum.cycles) + " cycles");
    all_ok &= check(sum.beacons_delivered == 0, "0.3 F zero delivered",
                    std::to_string(sum.beacons_delivered) + " delivered");
  }

  {
    Scenario on = shipped;
    on.modem.psm_enabled = true;
    const SimResult r_off = run(shipped);
    const SimResult r_on = run(on);
    const int b_off = r_off.summary.beacons_per_cycle.empty()
                          ? 0
                          : r_off.summary.beacons_per_cycle[0];
    const int b_on = r_on.summary.beacons_per_cycle.empty()
                         ? 0
                         : r_on.summary.beacons_per_cycle[0];
    all_ok &= check(b_on > b_off, "psm beacons increase",
                    std::to_string(b_off) + " -> " + std::to_string(b_on));
    const double e_idle_off =
        profile_for(shipped.modem, PhaseKind::Idle).energy_at_nominal;
    const double e_idle_on =
        profile_for(on.modem, PhaseKind::Idle).energy_at_nominal;
    all_ok &= check(e_idle_off / e_idle_on >= 500.0, "psm idle energy ratio",
                    fmt(e_idle_off / e_idle_on) + "x");
  }

  {
    JitterSpec jitter;
    const MonteCarloResult mc = run_monte_carlo(shipped, 20, 42, jitter);
    const double sd_min = mc.activation_time.sd / 60.0;
    all_ok &= check(mc.activation_time.n == 20, "mc activations observed",
                    std::to_string(mc.activation_time.n) + "/20");
    all_ok &= check(sd_min >= 0.5 && sd_min <= 7.0, "mc activation sd",
                    fmt(sd_min) + " min (band [0.5, 7])");
  }

  std::printf("\ncalibration %s\n", all_ok ? "PASSED" : "FAILED");
  return all_ok ? 0 : 1;
}
