// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "risopt/dipole.hpp"
#include "risopt/errors.hpp"
#include "support/oracles.hpp"

using namespace risopt;

namespace
{

// At f = c0 the wavelength is exactly 1 m.
constexpr double kUnitFreq = constants::c0;

double rel(cdouble a, cdouble b)
{
  return std::abs(a - b) / std::abs(b);
}

DipoleSpec wire(double length, double radius)
{
  DipoleSpec d;
  d.length = length;
  d.strip_width = 4.0 * radius;
  d.feed_gap = 0.0;
  return d;
}

}  // namespace

TEST_CASE("thin half-wave self impedance", "[dipole]")
{
  const DipoleSpec d = wire(0.5, 1e-6);
  const ImpedanceResult z = self_impedance(d, kUnitFreq);
  const cdouble ref = oracle::induced_emf_self(0.25, 1e-6, 2.0 * constants::pi);
  CHECK(rel(z.value, ref) < 1e-6);
  CHECK(rel(z.value, cdouble(73.1, 42.5)) < 0.01);
  CHECK_FALSE(z.outside_validity);
}

TEST_CASE("short dipole follows the (l/lambda)^2 law and is capacitive", "[dipole]")
{
  const DipoleSpec d = wire(0.1, 1e-4);
  const cdouble z = self_impedance(d, kUnitFreq).value;
  const cdouble ref = oracle::induced_emf_self(0.05, 1e-4, 2.0 * constants::pi);
  CHECK(rel(z, ref) < 0.01);
  CHECK(z.real() == Catch::Approx(20.0 * constants::pi * constants::pi * 0.01).epsilon(0.02));
  CHECK(z.imag() < 0.0);
  CHECK(z.real() == Catch::Approx(closed_form::input_radiation_resistance(0.1, kUnitFreq)).epsilon(1e-6));
}

TEST_CASE("strip element self impedance regression", "[dipole]")
{
  const DipoleSpec d;  // 32 mm x 5 mm strip
  const double f = 3.55e9;
  const cdouble z = self_impedance(d, f).value;
  const cdouble ref = oracle::induced_emf_self(0.016, 0.00125, wavenumber(f));
  CHECK(rel(z, ref) < 0.01);
  // Frozen from the quadrature oracle above.
  CHECK(rel(z, cdouble(34.819654, -58.855960)) < 1e-6);
}

TEST_CASE("side-by-side half-wave pair at half a wavelength", "[dipole]")
{
  const DipoleSpec d = wire(0.5, 1e-6);
  const cdouble z = mutual_impedance(d, d, 0.5, 0.0, kUnitFreq).value;
  const cdouble ref = oracle::mixed_potential(0.25, 0.25, 0.5, 0.0, 2.0 * constants::pi);
  CHECK(rel(z, ref) < 0.02);
  CHECK(rel(z, cdouble(-12.5, -29.9)) < 0.02);
}

TEST_CASE("mutual impedance decays as 1/r in the far field", "[dipole]")
{
  const DipoleSpec d = wire(0.5, 1e-6);
  const double near = std::abs(mutual_impedance(d, d, 0.5, 0.0, kUnitFreq).value);
  const double far = std::abs(mutual_impedance(d, d, 100.0, 0.0, kUnitFreq).value);
  const double farther = std::abs(mutual_impedance(d, d, 200.0, 0.0, kUnitFreq).value);
  CHECK(far < near);
  CHECK(200.0 * farther == Catch::Approx(100.0 * far).epsilon(1e-3));
}

TEST_CASE("mutual impedance is reciprocal in its arguments", "[dipole]")
{
  const DipoleSpec a = wire(0.41, 2e-3);
  const DipoleSpec b = wire(0.23, 5e-4);
  for (auto [rho, z0] : {std::pair{0.2, 0.0}, std::pair{0.15, 0.3}, std::pair{0.0, 0.5}, std::pair{0.4, -0.7}})
  {
    const cdouble ab = mutual_impedance(a, b, rho, z0, kUnitFreq).value;
    const cdouble ba = mutual_impedance(b, a, rho, z0, kUnitFreq).value;
    CHECK(rel(ab, ba) < 1e-12);
  }
}

TEST_CASE("degenerate arrangements match the classical closed forms", "[dipole]")
{
  const DipoleSpec d = wire(0.5, 1e-6);
  for (double dist : {0.55, 0.75, 1.0, 1.6})
  {
    INFO("center distance " << dist);
    const cdouble general = mutual_impedance(d, d, 1e-9, dist, kUnitFreq).value;
    const cdouble exact = mutual_impedance(d, d, 0.0, dist, kUnitFreq).value;
    const cdouble closed = closed_form::collinear_half_wave(dist, kUnitFreq);
    CHECK(rel(general, closed) < 1e-8);
    CHECK(rel(exact, closed) < 1e-8);
  }
  for (double sep : {0.05, 0.25, 0.5, 1.3})
  {
    INFO("separation " << sep);
    const cdouble general = mutual_impedance(d, d, sep, 0.0, kUnitFreq).value;
    CHECK(rel(general, closed_form::side_by_side_half_wave(sep, kUnitFreq)) < 1e-8);
  }
}

TEST_CASE("randomized geometries agree with both quadrature routes", "[dipole]")
{
  std::mt19937_64 rng(2024);
  auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  const double k = 2.0 * constants::pi;
  for (int trial = 0; trial < 20; ++trial)
  {
    const double l1 = u(0.1, 0.6);
    const double l2 = u(0.1, 0.6);
    const double r1 = u(1e-4, 5e-3);
    const DipoleSpec a = wire(l1, r1);
    const DipoleSpec b = wire(l2, u(1e-4, 5e-3));
    INFO("trial " << trial << " l1=" << l1 << " l2=" << l2);

    const cdouble zs = self_impedance(a, kUnitFreq).value;
    CHECK(rel(zs, oracle::induced_emf_self(0.5 * l1, r1, k)) < 0.01);

    double rho = u(0.05, 0.8);
    double z0 = u(-0.8, 0.8);
    if (trial % 5 == 0)
    {
      rho = 0.0;  // collinear with a gap
      z0 = 0.5 * (l1 + l2) + u(0.02, 0.5);
    }
    const cdouble zm = mutual_impedance(a, b, rho, z0, kUnitFreq).value;
    CHECK(rel(zm, oracle::induced_emf(0.5 * l1, 0.5 * l2, rho, z0, k)) < 0.01);
    if (rho > 0.0)
    {
      CHECK(rel(zm, oracle::mixed_potential(0.5 * l1, 0.5 * l2, rho, z0, k)) < 0.01);
    }
  }
}

TEST_CASE("validity flag and argument errors", "[dipole]")
{
  CHECK(self_impedance(wire(1.2, 1e-3), kUnitFreq).outside_validity);
  CHECK_FALSE(self_impedance(wire(0.9, 1e-3), kUnitFreq).outside_validity);
  CHECK(mutual_impedance(wire(1.0, 1e-3), wire(0.2, 1e-3), 0.5, 0.0, kUnitFreq).outside_validity);

  const DipoleSpec d = wire(0.5, 1e-3);
  CHECK_THROWS_AS(mutual_impedance(d, d, 0.0, 0.0, kUnitFreq), DomainError);
  CHECK_THROWS_AS(mutual_impedance(d, d, 0.0, 0.3, kUnitFreq), DomainError);
  CHECK_THROWS_AS(self_impedance(d, 0.0), DomainError);
  CHECK_THROWS_AS(self_impedance(wire(-0.1, 1e-3), kUnitFreq), ConfigError);
}
