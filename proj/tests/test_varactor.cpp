// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <random>

#include "risopt/errors.hpp"
#include "risopt/varactor.hpp"

using namespace risopt;

namespace
{
constexpr double kF = 3.55e9;
}

TEST_CASE("capacitance endpoints map to the realizable reactance range", "[varactor]")
{
  CHECK(std::abs(reactance_of_capacitance(2.1e-12, kF) - (-21.35)) < 0.005);
  CHECK(std::abs(reactance_of_capacitance(0.23e-12, kF) - (-194.9)) < 0.05);
  // Close to the rounded -20 / -200 ohm figures quoted for the device.
  CHECK(std::abs(reactance_of_capacitance(2.1e-12, kF) + 20.0) < 2.0);
  CHECK(std::abs(reactance_of_capacitance(0.23e-12, kF) + 200.0) < 10.0);
  CHECK(capacitance_of_reactance(-21.35, kF) == Catch::Approx(2.1e-12).epsilon(1e-3));
  CHECK(capacitance_of_reactance(-194.9, kF) == Catch::Approx(0.23e-12).epsilon(1e-3));
  CHECK(reactance_of_capacitance(1e3, kF) < 0.0);
  CHECK(reactance_of_capacitance(1e3, kF) > -1e-9);
}

TEST_CASE("reactance and capacitance are exact inverses", "[varactor]")
{
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ux(-1000.0, -0.1);
  for (int t = 0; t < 100; ++t)
  {
    const double x = ux(rng);
    CHECK(reactance_of_capacitance(capacitance_of_reactance(x, kF), kF) == Catch::Approx(x).epsilon(1e-12));
  }
  CHECK_THROWS_AS(capacitance_of_reactance(0.0, kF), DomainError);
  CHECK_THROWS_AS(capacitance_of_reactance(15.0, kF), DomainError);
  CHECK_THROWS_AS(reactance_of_capacitance(-1e-12, kF), DomainError);
}

TEST_CASE("bias polynomial anchor values", "[varactor]")
{
  const VaractorModel m;
  // Hand-evaluated polynomial values.
  const VoltageResult hi = bias_voltage(m, -200.0);
  CHECK(std::abs(hi.raw - 21.57) < 1e-9);
  CHECK(hi.voltage == 20.0);
  CHECK(hi.clamped);
  const VoltageResult lo = bias_voltage(m, -20.0);
  CHECK(std::abs(lo.raw - (-0.339528)) < 1e-9);
  CHECK(lo.voltage == 0.0);
  CHECK(lo.clamped);
  const VoltageResult mid = bias_voltage(m, -100.0);
  CHECK(std::abs(mid.raw - 7.255) < 1e-9);
  CHECK_FALSE(mid.clamped);
  // Realizable endpoints land within 2 V of the 0 V / 20 V operating points.
  CHECK(std::abs(bias_voltage(m, m.x_max(kF)).raw - 0.0) < 2.0);
  CHECK(std::abs(bias_voltage(m, m.x_min(kF)).raw - 20.0) < 2.0);
}

TEST_CASE("bias polynomial increases with |x| over the realizable range", "[varactor]")
{
  const VaractorModel m;
  double prev = bias_voltage(m, -21.35).raw;
  for (double mag = 21.45; mag <= 194.9; mag += 0.1)
  {
    const double v = bias_voltage(m, -mag).raw;
    REQUIRE(v > prev);
    prev = v;
  }
}

TEST_CASE("clipping to the nearest realizable reactance", "[varactor]")
{
  const VaractorModel m;
  const ClipResult in = clip_reactance(m, -50.0, kF);
  CHECK(in.reactance == -50.0);
  CHECK_FALSE(in.clipped);
  const ClipResult ind = clip_reactance(m, 30.0, kF);
  CHECK(ind.reactance == Catch::Approx(-21.35).margin(0.005));
  CHECK(ind.clipped);
  const ClipResult deep = clip_reactance(m, -500.0, kF);
  CHECK(deep.reactance == Catch::Approx(-194.9).margin(0.05));
  CHECK(deep.clipped);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ux(-600.0, 300.0);
  for (int t = 0; t < 200; ++t)
  {
    const double x = ux(rng);
    const ClipResult once = clip_reactance(m, x, kF);
    const ClipResult twice = clip_reactance(m, once.reactance, kF);
    CHECK(twice.reactance == once.reactance);
    CHECK_FALSE(twice.clipped);
    CHECK(std::abs(x - twice.reactance) <= std::abs(x - once.reactance));
  }
}

TEST_CASE("realized load adds the series loss", "[varactor]")
{
  VaractorModel m;
  const cdouble a = realized_load(m, 2.1e-12, kF);
  CHECK(a.real() == 5.4);
  CHECK(a.imag() == Catch::Approx(-21.35).margin(0.005));
  const cdouble b = realized_load(m, 0.23e-12, kF);
  CHECK(b.imag() == Catch::Approx(-194.9).margin(0.05));
  m.series_resistance = 0.0;
  CHECK(realized_load(m, 1e-12, kF).real() == 0.0);
  CHECK_THROWS_AS(realized_load(m, 3e-12, kF), RangeError);
  CHECK_THROWS_AS(realized_load(m, 0.1e-12, kF), RangeError);
}

TEST_CASE("bias point respects the device ranges", "[varactor]")
{
  const VaractorModel m;
  for (double x : {-500.0, -194.0, -100.0, -22.0, 5.0, 120.0})
  {
    const BiasPoint b = bias_point(m, x, kF);
    CHECK(b.capacitance >= m.c_min);
    CHECK(b.capacitance <= m.c_max);
    CHECK(b.voltage >= m.v_min);
    CHECK(b.voltage <= m.v_max);
  }
  CHECK(bias_point(m, 120.0, kF).clipped);
  CHECK_FALSE(bias_point(m, -100.0, kF).clipped);
}

TEST_CASE("tolerance interpolates in log capacitance", "[varactor]")
{
  const VaractorModel m;
  CHECK(m.tolerance(m.c_min) == Catch::Approx(0.5));
  CHECK(m.tolerance(m.c_max) == Catch::Approx(0.1));
  CHECK(m.tolerance(std::sqrt(m.c_min * m.c_max)) == Catch::Approx(0.3));
  VaractorModel bad;
  bad.c_min = 3e-12;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
