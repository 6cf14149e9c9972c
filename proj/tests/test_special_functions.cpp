// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "risopt/errors.hpp"
#include "risopt/special_functions.hpp"
#include "support/oracles.hpp"

using namespace risopt;

TEST_CASE("Si and Ci agree with direct quadrature", "[special]")
{
  std::mt19937_64 rng(11);
  std::vector<double> points{1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 3.99, 4.0, 4.01, 7.5, 12.0, 40.0, 150.0, 400.0};
  for (int i = 0; i < 40; ++i)
  {
    points.push_back(std::exp(std::uniform_real_distribution<double>(std::log(1e-3), std::log(300.0))(rng)));
  }
  for (double x : points)
  {
    INFO("x = " << x);
    CHECK(std::abs(sine_integral(x) - oracle::si(x)) < 1e-10);
    CHECK(std::abs(cosine_integral(x) - oracle::ci(x)) < 1e-10);
  }
}

TEST_CASE("Si and Ci tabulated values", "[special]")
{
  CHECK(sine_integral(1.0) == Catch::Approx(0.946083070367183).epsilon(1e-13));
  CHECK(cosine_integral(1.0) == Catch::Approx(0.337403922900968).epsilon(1e-13));
  CHECK(sine_integral(0.0) == 0.0);
}

TEST_CASE("pair evaluation matches the single functions", "[special]")
{
  for (double x : {0.3, 2.5, 4.5, 33.0})
  {
    const SiCi p = sine_cosine_integrals(x);
    CHECK(p.si == Catch::Approx(sine_integral(x)).epsilon(1e-15));
    CHECK(p.ci == Catch::Approx(cosine_integral(x)).epsilon(1e-15));
  }
}

TEST_CASE("Si tends to pi/2 and Ci to zero", "[special]")
{
  CHECK(std::abs(sine_integral(1e4) - constants::pi / 2) < 1e-4);
  CHECK(std::abs(cosine_integral(1e4)) < 1e-4);
}

TEST_CASE("Ci rejects non-positive and non-finite arguments", "[special]")
{
  CHECK_THROWS_AS(cosine_integral(0.0), DomainError);
  CHECK_THROWS_AS(cosine_integral(-1.0), DomainError);
  CHECK_THROWS_AS(sine_integral(-1.0), DomainError);
  CHECK_THROWS_AS(sine_integral(std::nan("")), DomainError);
}
