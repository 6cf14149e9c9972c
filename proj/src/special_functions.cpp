// SPDX-License-Identifier: Apache-2.0

#include "risopt/special_functions.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "risopt/constants.hpp"
#include "risopt/errors.hpp"

namespace risopt
{

namespace
{

constexpr double kSeriesLimit = 4.0;
constexpr int kMaxTerms = 200;

// Power series, accurate to a few ulps of O(1) for u < 4.
SiCi series(double u)
{
  const double u2 = u * u;
  double si = 0.0;
  double term = u;  // (-1)^k u^(2k+1) / (2k+1)!
  for (int k = 0; k < kMaxTerms; ++k)
  {
    const double contrib = term / (2 * k + 1);
    si += contrib;
    if (std::abs(contrib) < 1e-18 * std::abs(si))
    {
      break;
    }
    term *= -u2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }

  double cin = 0.0;  // sum_{k>=1} (-1)^k u^(2k) / (2k (2k)!)
  term = -u2 / 2.0;  // (-1)^k u^(2k) / (2k)!
  for (int k = 1; k < kMaxTerms; ++k)
  {
    const double contrib = term / (2 * k);
    cin += contrib;
    if (std::abs(contrib) < 1e-18 * (std::abs(cin) + 1e-300))
    {
      break;
    }
    term *= -u2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
  }
  const double ci = u > 0.0 ? constants::euler_gamma + std::log(u) + cin
                            : -std::numeric_limits<double>::infinity();
  return {si, ci};
}

// Auxiliary functions through E1(iu) = e^{-iu} / (iu + 1 - 1/(iu + 3 - 4/(iu + 5 - ...))),
// evaluated with the modified Lentz algorithm. Converges quickly for u >= 4.
SiCi continued_fraction(double u)
{
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  std::complex<double> b(1.0, u);
  std::complex<double> c = 1.0 / tiny;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 2; i < 10 * kMaxTerms; ++i)
  {
    const double a = -static_cast<double>(i - 1) * static_cast<double>(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps)
    {
      break;
    }
  }
  // h is now e^{iu} E1(iu) = g(u) - i f(u).
  h *= std::complex<double>(std::cos(u), -std::sin(u));
  return {constants::pi / 2.0 + h.imag(), -h.real()};
}

}  // namespace

SiCi sine_cosine_integrals(double u)
{
  if (!std::isfinite(u) || u < 0.0)
  {
    throw DomainError("sine/cosine integral requires a finite, non-negative argument");
  }
  return u < kSeriesLimit ? series(u) : continued_fraction(u);
}

double sine_integral(double u)
{
  if (!std::isfinite(u) || u < 0.0)
  {
    throw DomainError("sine_integral: argument must be finite and >= 0");
  }
  if (u == 0.0)
  {
    return 0.0;
  }
  return sine_cosine_integrals(u).si;
}

double cosine_integral(double u)
{
  if (!std::isfinite(u) || u <= 0.0)
  {
    throw DomainError("cosine_integral: argument must be finite and > 0");
  }
  return sine_cosine_integrals(u).ci;
}

}  // namespace risopt
