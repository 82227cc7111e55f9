/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leaksim/power_path.hpp"
#include "leaksim/rng.hpp"

using namespace leaksim;

TEST_CASE("threshold formulas on the symmetric network") {
  GateParams g;  // 100 kOhm triple, v_ref 1.24
  const auto [v_on, v_off] = gate_thresholds(g);
  CHECK(v_on == doctest::Approx(3.72).epsilon(1e-9));
  CHECK(v_off == doctest::Approx(1.86).epsilon(1e-9));
}

TEST_CASE("threshold solve inverts the formulas") {
  const GateParams g = solve_gate_network(4.87, 3.67, 1.24, 1e6);
  const auto [v_on, v_off] = gate_thresholds(g);
  CHECK(v_on == doctest::Approx(4.87).epsilon(1e-9));
  CHECK(v_off == doctest::Approx(3.67).epsilon(1e-9));

  const GateParams gi = solve_gate_network(4.87, 3.25, 1.24, 1e6);
  const auto [von_i, voff_i] = gate_thresholds(gi);
  CHECK(von_i == doctest::Approx(4.87).epsilon(1e-9));
  CHECK(voff_i == doctest::Approx(3.25).epsilon(1e-9));

  // Random realisable targets round-trip through the resistor network.
  Rng rng(21);
  for (int k = 0; k < 1000; ++k) {
    const double v_ref = rng.uniform(0.5, 2.5);
    const double b = rng.uniform(0.1, 3.0);
    const double a = b + rng.uniform(0.1, 3.0);
    const double v_off_t = v_ref * (1.0 + b);
    const double v_on_t = v_ref * (1.0 + a);
    const double r1 = std::pow(10.0, rng.uniform(3.0, 7.0));
    const GateParams gr = solve_gate_network(v_on_t, v_off_t, v_ref, r1);
    const auto [von_r, voff_r] = gate_thresholds(gr);
    CHECK(von_r == doctest::Approx(v_on_t).epsilon(1e-9));
    CHECK(voff_r == doctest::Approx(v_off_t).epsilon(1e-9));
  }
}

TEST_CASE("any positive network has strict hysteresis") {
  Rng rng(22);
  for (int k = 0; k < 1000; ++k) {
    GateParams g;
    g.r1 = std::pow(10.0, rng.uniform(2.0, 7.0));
    g.r2 = std::pow(10.0, rng.uniform(2.0, 7.0));
    g.r4 = std::pow(10.0, rng.uniform(2.0, 7.0));
    g.v_ref = rng.uniform(0.5, 3.0);
    const auto [v_on, v_off] = gate_thresholds(g);
    CHECK(v_on > v_off);
  }
}

TEST_CASE("degenerate networks and targets are rejected") {
  GateParams g;
  g.r1 = 0.0;
  CHECK_THROWS_AS(gate_thresholds(g), std::invalid_argument);
  g.r1 = -5.0;
  CHECK_THROWS_AS(gate_thresholds(g), std::invalid_argument);
  g = GateParams{};
  g.v_ref = 0.0;
  CHECK_THROWS_AS(gate_thresholds(g), std::invalid_argument);

  // v_off at or below v_ref leaves no solvable divider; inverted or equal
  // thresholds have no hysteresis.
  CHECK_THROWS_AS(solve_gate_network(4.87, 1.0, 1.24, 1e6),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_gate_network(3.67, 4.87, 1.24, 1e6),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_gate_network(3.67, 3.67, 1.24, 1e6),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_gate_network(4.87, 3.67, 1.24, 0.0),
                  std::invalid_argument);
}

TEST_CASE("hysteresis alternation over random voltage walks") {
  Rng rng(23);
  for (int seq = 0; seq < 1000; ++seq) {
    GateState s{GatePhase::Charging, 4.87, 3.67};
    double v = rng.uniform(0.0, 5.0);
    int last_edge = -1;  // +1 close, 0 open
    for (int step = 0; step < 100; ++step) {
      v = std::clamp(v + rng.uniform(-0.8, 0.8), 0.0, 5.0);
      const GateState next = gate_step(s, v);
      if (next.phase != s.phase) {
        const int edge = next.phase == GatePhase::Active ? 1 : 0;
        // Strict alternation: a close can only follow an open and vice
        // versa.
        CHECK(edge != last_edge);
        last_edge = edge;
        if (edge == 1) CHECK(v >= s.v_on);
        else CHECK(v < s.v_off);
      } else {
        // No chatter inside the hysteresis band.
        if (s.phase == GatePhase::Charging) CHECK(v < s.v_on);
        else CHECK(v >= s.v_off);
      }
      s = next;
    }
  }
}

TEST_CASE("gate step edge values") {
  const GateState charging{GatePhase::Charging, 4.87, 3.67};
  CHECK(gate_step(charging, 4.87).phase == GatePhase::Active);
  CHECK(gate_step(charging, 4.8699).phase == GatePhase::Charging);
  const GateState active{GatePhase::Active, 4.87, 3.67};
  CHECK(gate_step(active, 4.0).phase == GatePhase::Active);
  CHECK(gate_step(active, 3.67).phase == GatePhase::Active);
  CHECK(gate_step(active, 3.66).phase == GatePhase::Charging);
}

TEST_CASE("efficiency curve anchors, interpolation, clamps") {
  const BoostParams b;
  CHECK(efficiency_at(b, 0.010) == doctest::Approx(0.82).epsilon(1e-12));
  CHECK(efficiency_at(b, 0.050) == doctest::Approx(0.80).epsilon(1e-12));
  CHECK(efficiency_at(b, 0.150) == doctest::Approx(0.76).epsilon(1e-12));
  CHECK(efficiency_at(b, 0.250) == doctest::Approx(0.73).epsilon(1e-12));
  CHECK(efficiency_at(b, 0.030) == doctest::Approx(0.81).epsilon(1e-12));
  CHECK(efficiency_at(b, 0.002) == doctest::Approx(0.82).epsilon(1e-12));
  CHECK(efficiency_at(b, 0.500) == doctest::Approx(0.73).epsilon(1e-12));
  CHECK_THROWS_AS(efficiency_at(b, -0.01), std::invalid_argument);

  Rng rng(24);
  for (int k = 0; k < 1000; ++k) {
    const double eta = efficiency_at(b, rng.uniform(0.0, 0.5));
    CHECK(eta > 0.0);
    CHECK(eta <= 1.0);
    CHECK(eta >= 0.73);
    CHECK(eta <= 0.82);
  }
}

TEST_CASE("boost transfer power balance examples") {
  BoostParams b;

  // Below the startup voltage the converter is off.
  const BoostTransfer off = boost_transfer(b, 0.8, 0.1);
  CHECK_FALSE(off.running);
  CHECK(off.i_out == 0.0);

  // Flat 0.80 curve: i_out = eta * v_in * i_in / v_out.
  b.eff_points = {{0.1, 0.80}};
  const BoostTransfer t = boost_transfer(b, 1.2, 0.1);
  CHECK(t.running);
  CHECK(t.i_out == doctest::Approx(0.0192).epsilon(1e-9));

  // Lossless unity conversion at equal voltages passes current through.
  b.eff_points = {{0.1, 1.0}};
  const BoostTransfer u = boost_transfer_at(b, 1.2, 0.05, 1.2);
  CHECK(u.i_out == doctest::Approx(0.05).epsilon(1e-9));

  CHECK_THROWS_AS(boost_transfer(b, -1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(boost_transfer(b, 1.2, -0.1), std::invalid_argument);
}

TEST_CASE("operating point respects the draw policy and power balance") {
  const BoostParams b;
  Rng rng(25);
  for (int k = 0; k < 1000; ++k) {
    const double v_oc = rng.uniform(0.91, 3.0);
    const double r_int = rng.uniform(3.0, 30.0);
    const double v_cap = rng.uniform(0.0, 4.99);
    const OperatingPoint op = solve_operating_point(b, v_oc, r_int, v_cap, 0.0);
    CHECK(op.running);
    CHECK(op.v_in >= b.v_in_min - 1e-12);
    CHECK(op.v_in == doctest::Approx(v_oc - op.i_in * r_int).epsilon(1e-12));
    CHECK(op.i_out <= b.i_out_max + 1e-12);
    if (op.converged && op.i_out < b.i_out_max - 1e-9) {
      const double v_out = std::max(v_cap, 1e-3);
      const double residual =
          op.i_out * v_out - op.eta * op.v_in * op.i_in;
      CHECK(std::abs(residual) <= 2e-6 * v_out + 1e-12);
    }
  }

  // Below startup: no operating point.
  const OperatingPoint dead = solve_operating_point(b, 0.85, 5.0, 2.0, 0.3);
  CHECK_FALSE(dead.running);
  CHECK(dead.i_out == 0.0);

  // At the regulation ceiling charging ceases.
  const OperatingPoint full = solve_operating_point(b, 2.7, 6.0, 5.0, 0.1);
  CHECK(full.running);
  CHECK(full.i_in == 0.0);
  CHECK(full.i_out == 0.0);
}

TEST_CASE("operating point falls back when the fixed point oscillates") {
  // A cliff in the efficiency curve makes the fixed-point map oscillate
  // between the two plateaus; the solver must flag it and hold the
  // caller-provided previous current.
  BoostParams b;
  b.eff_points = {{0.001, 1.0}, {0.002, 0.05}};
  b.source_draw_fraction = 0.5;
  const OperatingPoint op = solve_operating_point(b, 1.9, 50.0, 3.0, 0.123);
  CHECK(op.running);
  CHECK_FALSE(op.converged);
  CHECK(op.i_out == doctest::Approx(0.123).epsilon(1e-12));
}

TEST_CASE("capacitor integration and clamps") {
  Supercapacitor c{1.5, 2.0, 0.0, 5.0};
  CHECK(cap_integrate(c, 0.015, 1.0) == doctest::Approx(2.01).epsilon(1e-12));
  CHECK(cap_integrate(c, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));

  c.v = 5.0;
  CHECK(cap_integrate(c, 0.5, 1.0) == 5.0);
  c.v = 0.0;
  CHECK(cap_integrate(c, -0.5, 1.0) == 0.0);

  c.capacitance = 0.0;
  CHECK_THROWS_AS(cap_integrate(c, 0.1, 1.0), std::invalid_argument);
  c.capacitance = 1.5;
  CHECK_THROWS_AS(cap_integrate(c, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("usable energy window") {
  CHECK(usable_energy(1.0, 4.87, 3.25) == doctest::Approx(6.58).epsilon(2e-3));
  CHECK(usable_energy(1.0, 4.87, 3.25) ==
        doctest::Approx(0.5 * (4.87 * 4.87 - 3.25 * 3.25)).epsilon(1e-12));
  CHECK(usable_energy(1.5, 4.87, 3.67) ==
        doctest::Approx(7.686).epsilon(1e-9));
  CHECK(usable_energy(2.0, 3.0, 3.0) == 0.0);
  CHECK_THROWS_AS(usable_energy(0.0, 4.87, 3.25), std::invalid_argument);
  CHECK_THROWS_AS(usable_energy(1.0, 3.25, 4.87), std::invalid_argument);
  CHECK_THROWS_AS(usable_energy(1.0, 1.0, -0.5), std::invalid_argument);
}

TEST_CASE("required capacitance examples and round trip") {
  CHECK(required_capacitance(3.49, 0.75, 4.87, 3.25) ==
        doctest::Approx(0.71).epsilon(5e-3));
  CHECK(required_capacitance(3.49, 0.75, 4.87, 3.67) ==
        doctest::Approx(0.908).epsilon(1e-3));
  CHECK(required_capacitance(6.58, 1.0, 4.87, 3.25) ==
        doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(required_capacitance(0.0, 0.75, 4.87, 3.25),
                  std::invalid_argument);
  CHECK_THROWS_AS(required_capacitance(3.49, 0.0, 4.87, 3.25),
                  std::invalid_argument);
  CHECK_THROWS_AS(required_capacitance(3.49, 1.1, 4.87, 3.25),
                  std::invalid_argument);
  CHECK_THROWS_AS(required_capacitance(3.49, 0.75, 3.25, 3.25),
                  std::invalid_argument);

  Rng rng(26);
  for (int k = 0; k < 1000; ++k) {
    const double c = std::pow(10.0, rng.uniform(-2.0, 2.0));
    const double eta = rng.uniform(0.05, 1.0);
    const double v_off = rng.uniform(0.0, 8.0);
    const double v_on = v_off + rng.uniform(0.01, 8.0);
    const double e = usable_energy(c, v_on, v_off) * eta;
    CHECK(required_capacitance(e, eta, v_on, v_off) ==
          doctest::Approx(c).epsilon(1e-9));
  }
}
