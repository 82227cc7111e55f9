/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leaksim/harvester.hpp"
#include "leaksim/rng.hpp"

using namespace leaksim;

namespace {

HarvesterState wet_state(double t_wet, double depth = 1.0,
                         double degradation = 1.0) {
  HarvesterState s;
  s.wetted = true;
  s.t_wet = t_wet;
  s.depth = depth;
  s.degradation = degradation;
  return s;
}

}  // namespace

TEST_CASE("first-contact and settled source endpoints") {
  const HarvesterParams p;

  const HarvesterState fresh = wet_state(0.0);
  CHECK(ocv(p, fresh) == doctest::Approx(2.7).epsilon(1e-12));
  CHECK(scc(p, fresh) == doctest::Approx(0.450).epsilon(1e-12));
  const auto src0 = thevenin(p, fresh);
  REQUIRE(src0.has_value());
  CHECK(src0->v_oc == doctest::Approx(2.7).epsilon(1e-12));
  CHECK(src0->r_int == doctest::Approx(6.0).epsilon(1e-12));

  const HarvesterState settled = wet_state(1e9);
  CHECK(ocv(p, settled) == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(scc(p, settled) == doctest::Approx(0.150).epsilon(1e-12));
  const auto src1 = thevenin(p, settled);
  REQUIRE(src1.has_value());
  CHECK(src1->r_int == doctest::Approx(1.6 / 0.15).epsilon(1e-12));
}

TEST_CASE("exponential settling towards the plateau") {
  const HarvesterParams p;
  const HarvesterState at_tau = wet_state(p.tau_v);
  const double expect_v = 1.6 + (2.7 - 1.6) * std::exp(-1.0);
  CHECK(ocv(p, at_tau) == doctest::Approx(expect_v).epsilon(1e-12));

  // 30 min after first contact the source is essentially settled.
  const HarvesterState late = wet_state(1800.0);
  CHECK(ocv(p, late) - 1.6 < 0.02);

  // Monotone decay: v_peak >= ocv(t1) >= ocv(t2) >= v_plateau for t1 <= t2.
  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double t1 = rng.uniform(0.0, 5000.0);
    const double t2 = t1 + rng.uniform(0.0, 5000.0);
    const double v1 = ocv(p, wet_state(t1));
    const double v2 = ocv(p, wet_state(t2));
    CHECK(v1 >= v2);
    CHECK(v1 <= p.v_peak + 1e-12);
    CHECK(v2 >= p.v_plateau - 1e-12);
  }
}

TEST_CASE("never-wetted source is absent") {
  const HarvesterParams p;
  const HarvesterState s;
  CHECK(ocv(p, s) == 0.0);
  CHECK(scc(p, s) == 0.0);
  CHECK_FALSE(thevenin(p, s).has_value());
}

TEST_CASE("depth rate factor shape") {
  CHECK(depth_rate_factor(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(depth_rate_factor(0.0, 1.0) == 0.0);

  // Saturation limit (ref + k)/ref pins the knee constant the depth sweep
  // was calibrated with.
  CHECK(depth_rate_factor(1e12, 1.0) == doctest::Approx(1.045).epsilon(1e-6));

  Rng rng(12);
  for (int k = 0; k < 1000; ++k) {
    const double ref = rng.uniform(0.1, 3.0);
    const double d1 = rng.uniform(0.0, 3.0);
    const double d2 = d1 + rng.uniform(1e-6, 3.0);
    CHECK(depth_rate_factor(d1, ref) < depth_rate_factor(d2, ref));
  }

  CHECK_THROWS_AS(depth_rate_factor(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(depth_rate_factor(-0.1, 1.0), std::invalid_argument);
}

TEST_CASE("zero depth means no deliverable current") {
  const HarvesterParams p;
  const HarvesterState s = wet_state(100.0, 0.0);
  CHECK(ocv(p, s) > 0.0);
  CHECK(scc(p, s) == 0.0);
  CHECK_FALSE(thevenin(p, s).has_value());
}

TEST_CASE("drying decay and rewet penalty") {
  const HarvesterParams p;
  HarvesterState s;

  advance_water(p, s, 100.0, true);
  CHECK(s.wetted);
  CHECK(s.t_wet == doctest::Approx(100.0));
  CHECK(s.dry_elapsed == 0.0);
  const double v_wet = ocv(p, s);
  const double i_wet = scc(p, s);

  // Removing water decays the output with the drying time constant while
  // the settle clock t_wet holds still.
  advance_water(p, s, p.drying_tau, false);
  CHECK_FALSE(s.wetted);
  CHECK(s.t_wet == doctest::Approx(100.0));
  CHECK(s.dry_elapsed == doctest::Approx(p.drying_tau));
  CHECK(ocv(p, s) == doctest::Approx(v_wet * std::exp(-1.0)).epsilon(1e-12));
  CHECK(scc(p, s) == doctest::Approx(i_wet * std::exp(-1.0)).epsilon(1e-12));

  // Re-wetting clears the decay but keeps only the rewet fraction.
  advance_water(p, s, 0.0, true);
  CHECK(s.wetted);
  CHECK(s.dry_elapsed == 0.0);
  CHECK(s.degradation == doctest::Approx(p.rewet_factor).epsilon(1e-12));
  CHECK(ocv(p, s) == doctest::Approx(v_wet * p.rewet_factor).epsilon(1e-12));

  // A second dry/wet cycle compounds the loss.
  advance_water(p, s, 10.0, false);
  advance_water(p, s, 0.0, true);
  CHECK(s.degradation ==
        doctest::Approx(p.rewet_factor * p.rewet_factor).epsilon(1e-12));
}

TEST_CASE("fully degraded source is absent") {
  const HarvesterParams p;
  const HarvesterState s = wet_state(10.0, 1.0, 0.0);
  CHECK_FALSE(thevenin(p, s).has_value());
}

TEST_CASE("water bookkeeping rules") {
  const HarvesterParams p;
  HarvesterState s;

  // Dry time before first wetting accrues nothing.
  advance_water(p, s, 500.0, false);
  CHECK(s.t_wet == 0.0);
  CHECK(s.dry_elapsed == 0.0);
  CHECK_FALSE(thevenin(p, s).has_value());

  // First wetting never counts as a rewet.
  advance_water(p, s, 1.0, true);
  CHECK(s.degradation == 1.0);

  CHECK_THROWS_AS(advance_water(p, s, -1.0, true), std::invalid_argument);
}

TEST_CASE("source stays bounded over random histories") {
  const HarvesterParams p;
  Rng rng(13);
  const double f_max = depth_rate_factor(1e12, p.ref_depth);
  for (int k = 0; k < 1000; ++k) {
    HarvesterState s;
    s.depth = rng.uniform(0.0, 5.0);
    const int steps = 1 + static_cast<int>(rng.below(20));
    for (int j = 0; j < steps; ++j)
      advance_water(p, s, rng.uniform(0.0, 900.0), rng.uniform01() < 0.5);
    const double v = ocv(p, s);
    const double i = scc(p, s);
    CHECK(v >= 0.0);
    CHECK(v <= p.v_peak + 1e-12);
    CHECK(i >= 0.0);
    CHECK(i <= p.i_peak * f_max + 1e-12);
    if (const auto src = thevenin(p, s)) {
      CHECK(src->v_oc == v);
      CHECK(src->r_int == doctest::Approx(v / i).epsilon(1e-12));
      CHECK(src->r_int > 0.0);
    } else {
      CHECK((v <= 0.0 || i <= 0.0));
    }
  }
}
