/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "leaksim/modem.hpp"
#include "leaksim/rng.hpp"

using namespace leaksim;

namespace {

double trace_mean(const std::vector<double>& t) {
  return std::accumulate(t.begin(), t.end(), 0.0) /
         static_cast<double>(t.size());
}

}  // namespace

TEST_CASE("phase table reproduces the bench envelope") {
  const ModemConfig cfg;
  const auto table = phase_table(cfg);
  REQUIRE(table.size() == 3);

  const PhaseProfile& search = table[0];
  CHECK(search.kind == PhaseKind::NetworkSearch);
  CHECK(search.duration == 30.0);
  CHECK(search.i_peak == doctest::Approx(0.2487));
  CHECK(search.i_avg == doctest::Approx(0.0149));
  CHECK(search.energy_at_nominal == doctest::Approx(2.15));

  const PhaseProfile& idle = table[1];
  CHECK(idle.kind == PhaseKind::Idle);
  CHECK(idle.duration == 120.0);
  CHECK(idle.i_peak == doctest::Approx(0.0572));
  CHECK(idle.i_avg == doctest::Approx(0.00172));
  CHECK(idle.energy_at_nominal == doctest::Approx(0.98));

  const PhaseProfile& tx = table[2];
  CHECK(tx.kind == PhaseKind::Transmit);
  CHECK(tx.duration == 12.0);
  CHECK(tx.i_peak == doctest::Approx(0.2391));
  CHECK(tx.i_avg == doctest::Approx(0.00612));
  CHECK(tx.energy_at_nominal == doctest::Approx(0.35));

  // Self-consistency: tabulated energy within 5% of i_avg * v * duration.
  for (const auto& p : table) {
    const double e = p.i_avg * cfg.v_nominal * p.duration;
    CHECK(std::abs(p.energy_at_nominal - e) / e < 0.05);
    CHECK(p.i_peak >= p.i_avg);
    CHECK(p.i_avg > 0.0);
    CHECK(p.duration > 0.0);
  }

  CHECK_THROWS_AS(phase_table(ModemConfig{.idle_interval = 0.0}),
                  std::invalid_argument);
}

TEST_CASE("idle profile follows the configured interval") {
  ModemConfig cfg;
  cfg.idle_interval = 60.0;
  const PhaseProfile idle = profile_for(cfg, PhaseKind::Idle);
  CHECK(idle.duration == 60.0);
  CHECK(idle.energy_at_nominal == doctest::Approx(0.49));
}

TEST_CASE("psm idle floor") {
  ModemConfig cfg;
  cfg.psm_enabled = true;
  const PhaseProfile idle = profile_for(cfg, PhaseKind::Idle);
  CHECK(idle.i_avg == doctest::Approx(3e-6));
  CHECK(idle.i_peak == doctest::Approx(0.0572));  // wake spikes survive
  CHECK(idle.energy_at_nominal <= 1.8e-3);

  const PhaseProfile base = profile_for(ModemConfig{}, PhaseKind::Idle);
  CHECK(base.energy_at_nominal / idle.energy_at_nominal >= 500.0);
}

TEST_CASE("ntn band scales transmit only") {
  ModemConfig cfg;
  cfg.band_mode = BandMode::NtnBand2;
  const auto table = phase_table(cfg);
  const ModemConfig base;
  CHECK(table[2].i_avg == doctest::Approx(0.00612 * 1.4));
  CHECK(table[2].energy_at_nominal == doctest::Approx(0.35 * 1.4));
  CHECK(table[2].i_peak == doctest::Approx(0.2391));
  CHECK(table[0].energy_at_nominal ==
        profile_for(base, PhaseKind::NetworkSearch).energy_at_nominal);
  CHECK(table[1].energy_at_nominal ==
        profile_for(base, PhaseKind::Idle).energy_at_nominal);
}

TEST_CASE("synthesized traces hit peak and mean for every phase and seed") {
  const ModemConfig cfg;
  const auto table = phase_table(cfg);
  for (int seed = 0; seed < 334; ++seed) {
    for (const auto& p : table) {
      Rng rng(static_cast<std::uint64_t>(seed));
      const auto trace = synthesize_current(p, 1e-3, rng);
      CHECK(trace.size() == static_cast<std::size_t>(
                                std::llround(p.duration / 1e-3)));
      CHECK(*std::max_element(trace.begin(), trace.end()) == p.i_peak);
      CHECK(trace_mean(trace) == doctest::Approx(p.i_avg).epsilon(1e-9));
      for (double x : trace) CHECK(x >= 0.0);
    }
  }
}

TEST_CASE("psm idle trace synthesizes at 1 ms") {
  ModemConfig cfg;
  cfg.psm_enabled = true;
  Rng rng(5);
  const auto trace = synthesize_current(profile_for(cfg, PhaseKind::Idle),
                                        1e-3, rng);
  CHECK(trace_mean(trace) == doctest::Approx(3e-6).epsilon(1e-9));
  CHECK(*std::max_element(trace.begin(), trace.end()) ==
        doctest::Approx(0.0572));
}

TEST_CASE("trace synthesis rejects impossible requests") {
  const ModemConfig cfg;
  const PhaseProfile tx = profile_for(cfg, PhaseKind::Transmit);
  Rng rng(6);
  // 12 samples cannot carry a 239 mA peak at a 6 mA mean.
  CHECK_THROWS_AS(synthesize_current(tx, 1.0, rng), std::invalid_argument);
  // Fewer than 10 samples is rejected outright.
  const PhaseProfile search = profile_for(cfg, PhaseKind::NetworkSearch);
  CHECK_THROWS_AS(synthesize_current(search, 10.0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(synthesize_current(search, 0.0, rng),
                  std::invalid_argument);
  PhaseProfile bad = tx;
  bad.i_peak = 0.001;  // below i_avg
  CHECK_THROWS_AS(synthesize_current(bad, 1e-3, rng), std::invalid_argument);
}

TEST_CASE("degenerate flat phase synthesizes a constant trace") {
  PhaseProfile p{PhaseKind::Idle, 1.0, 0.002, 0.002, 0.0};
  Rng rng(7);
  const auto trace = synthesize_current(p, 1e-3, rng);
  for (double x : trace) CHECK(x == 0.002);
}

TEST_CASE("trace synthesis is deterministic per seed") {
  const PhaseProfile tx = profile_for(ModemConfig{}, PhaseKind::Transmit);
  Rng a(42), b(42), c(43);
  const auto ta = synthesize_current(tx, 1e-3, a);
  const auto tb = synthesize_current(tx, 1e-3, b);
  const auto tc = synthesize_current(tx, 1e-3, c);
  CHECK(ta == tb);
  CHECK(ta != tc);
}

TEST_CASE("trapezoidal energy is exact on constant and linear signals") {
  // Constant 10 mA for 10 s at 5 V: rectangle = trapezoid = 0.5 J.
  const std::vector<double> flat(101, 0.010);
  CHECK(energy_of_trace(flat, 5.0, 0.1) == doctest::Approx(0.5).epsilon(1e-12));

  // Linear ramp 0 -> 100 mA over 10 s at 5 V: exactly 2.5 J.
  std::vector<double> ramp(101);
  for (std::size_t k = 0; k < ramp.size(); ++k)
    ramp[k] = 0.1 * static_cast<double>(k) / 100.0;
  CHECK(energy_of_trace(ramp, 5.0, 0.1) == doctest::Approx(2.5).epsilon(1e-12));

  CHECK(energy_of_trace({}, 5.0, 0.1) == 0.0);
  CHECK(energy_of_trace({0.01}, 5.0, 0.1) == 0.0);
  CHECK_THROWS_AS(energy_of_trace(flat, -1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(energy_of_trace(flat, 5.0, 0.0), std::invalid_argument);
}

TEST_CASE("synthesized phases integrate to the bench energies") {
  const ModemConfig cfg;
  const double refs[3] = {2.15, 0.98, 0.35};
  const auto table = phase_table(cfg);
  for (int k = 0; k < 3; ++k) {
    Rng rng(100 + static_cast<std::uint64_t>(k));
    const auto trace = synthesize_current(table[static_cast<std::size_t>(k)],
                                          1e-3, rng);
    const double e = energy_of_trace(trace, cfg.v_nominal, 1e-3);
    CHECK(std::abs(e - refs[k]) / refs[k] < 0.05);
  }
}

TEST_CASE("attach duration sampler") {
  RadioConditions rc;

  // Degenerate distribution at the reference signal: exactly the median.
  rc.rsrp_sd = 0.0;
  Rng rng(8);
  CHECK(sample_attach_duration(rc, rng) == doctest::Approx(30.0).epsilon(1e-12));

  // Weaker fixed signal lengthens the attach.
  RadioConditions weak = rc;
  weak.rsrp_mean = -110.0;
  Rng rng2(8);
  const double t_weak = sample_attach_duration(weak, rng2);
  CHECK(t_weak > 30.0);

  // Median over the bench signal statistics stays near 30 s, and a
  // -110 dBm mean pushes most samples above it.
  RadioConditions bench;
  Rng rng3(9);
  std::vector<double> samples;
  int above = 0;
  for (int k = 0; k < 1000; ++k)
    samples.push_back(sample_attach_duration(bench, rng3));
  std::sort(samples.begin(), samples.end());
  const double median = samples[500];
  CHECK(std::abs(median - 30.0) / 30.0 < 0.10);
  Rng rng4(9);
  for (int k = 0; k < 1000; ++k)
    if (sample_attach_duration(weak, rng4) > 30.0) ++above;
  CHECK(above > 500);

  // Clamps bound pathological signal levels.
  RadioConditions abyss;
  abyss.rsrp_sd = 0.0;
  abyss.rsrp_mean = -98.0 - 3000.0;
  Rng rng5(10);
  CHECK(sample_attach_duration(abyss, rng5) == 180.0);
  abyss.rsrp_mean = -98.0 + 3000.0;
  CHECK(sample_attach_duration(abyss, rng5) == 10.0);

  // Determinism: same seed, same sequence.
  Rng a(77), b(77);
  for (int k = 0; k < 100; ++k)
    CHECK(sample_attach_duration(bench, a) == sample_attach_duration(bench, b));
}

TEST_CASE("link latency ranges per band") {
  const RadioConditions rc;
  ModemConfig terrestrial;
  ModemConfig ntn;
  ntn.band_mode = BandMode::NtnBand2;

  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double t = link_latency(terrestrial, rc, rng);
    CHECK(t >= 0.0);
    CHECK(t <= 0.015);
    const double n = link_latency(ntn, rc, rng);
    CHECK(n >= 0.020);
    CHECK(n <= 0.040);
  }

  Rng a(12), b(12);
  CHECK(link_latency(ntn, rc, a) == link_latency(ntn, rc, b));
}

TEST_CASE("phase names round trip") {
  CHECK(to_string(PhaseKind::NetworkSearch) == std::string("network_search"));
  CHECK(to_string(PhaseKind::Idle) == std::string("idle"));
  CHECK(to_string(PhaseKind::Transmit) == std::string("transmit"));
  CHECK(to_string(BandMode::Terrestrial) == std::string("terrestrial"));
  CHECK(to_string(BandMode::NtnBand2) == std::string("ntn_band2"));
}
