// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_SPECIAL_FUNCTIONS_HPP
#define RISOPT_SPECIAL_FUNCTIONS_HPP

namespace risopt
{

/// Sine integral Si(u) = int_0^u sin(t)/t dt for u >= 0, absolute error below 1e-10.
/// Throws DomainError for negative or non-finite input.
double sine_integral(double u);

/// Cosine integral Ci(u) = gamma + ln u + int_0^u (cos t - 1)/t dt for u > 0.
/// Throws DomainError for u <= 0 or non-finite input.
double cosine_integral(double u);

/// Both integrals at once; cheaper than two separate calls for u >= 4.
struct SiCi
{
  double si;
  double ci;
};
SiCi sine_cosine_integrals(double u);

}  // namespace risopt

#endif  // RISOPT_SPECIAL_FUNCTIONS_HPP
