/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "leaksim/harvester.hpp"
#include "leaksim/modem.hpp"
#include "leaksim/power_path.hpp"

namespace leaksim {

/// How the gate thresholds are configured: solved for the bench-measured
/// disconnect (4.87/3.67 V), for the ideal design values (4.87/3.25 V), or
/// taken from an explicit resistor network.
enum class GateMode { Measured, Ideal, Resistors };

struct Scenario {
  // run
  double duration = 14400.0;          // [s]
  double dt = 0.01;                   // [s] dynamics step
  double modem_trace_dt = 0.001;      // [s] modem trace resolution
  double trace_sample_every = 0.1;    // [s] trace.csv sample spacing
  std::uint64_t seed = 42;
  std::string device_id = "leak-node-01";

  // water
  double depth_mm = 1.0;
  // (time, wet?) change points, strictly increasing in time.
  std::vector<std::pair<double, bool>> water_schedule = {{0.0, true}};

  HarvesterParams harvester;

  // capacitor
  double capacitance = 1.5;  // [F]
  double esr = 0.0;          // [Ohm]
  double v_init = 0.0;       // [V]

  // gate
  GateMode gate_mode = GateMode::Measured;
  GateParams gate;  // authoritative when gate_mode == Resistors
  double gate_solve_r1 = 1e6;  // [Ohm] fixed leg when solving modes

  BoostParams boost;

  ModemConfig modem;
  double boot_delay = 0.0;  // [s]

  RadioConditions radio;
};

/// Bench-measured and ideal disconnect thresholds the gate modes target.
constexpr double kGateVon = 4.87;          // [V]
constexpr double kGateVoffMeasured = 3.67; // [V]
constexpr double kGateVoffIdeal = 3.25;    // [V]

/// Resistor network realising the scenario's gate mode.
GateParams effective_gate_params(const Scenario& s);

/// Throws std::invalid_argument describing every constraint violation.
void validate(const Scenario& s);

const char* to_string(GateMode m);

}  // namespace leaksim
