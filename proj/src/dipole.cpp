// SPDX-License-Identifier: Apache-2.0

#include "risopt/dipole.hpp"

#include <cmath>
#include <string>

#include "risopt/errors.hpp"
#include "risopt/special_functions.hpp"

namespace risopt
{

using namespace std::complex_literals;

void DipoleSpec::validate() const
{
  if (!(length > 0.0) || !(strip_width > 0.0) || !(strip_width < length) || !(feed_gap >= 0.0))
  {
    throw ConfigError("dipole requires length > 0, 0 < strip_width < length, feed_gap >= 0 (length=" +
                      std::to_string(length) + ", strip_width=" + std::to_string(strip_width) + ")");
  }
}

namespace
{

// Antiderivative of e^{-jw}/w.
cdouble g_exp(double w)
{
  const SiCi v = sine_cosine_integrals(w);
  return {v.ci, -v.si};
}

// The substitution v = R + zeta (or u = R - zeta) turns the Green's function integrals into
// differences of g_exp. Both helpers evaluate their argument without cancellation when the
// observation point is close to the source axis.
class AxialIntegrals
{
public:
  AxialIntegrals(double k, double rho) : k_(k), rho_(rho) {}

  // int_a^b e^{-jk(R+zeta)} / R dzeta
  cdouble plus(double a, double b) const
  {
    if (rho_ == 0.0 && b <= 0.0)
    {
      // On the axis behind the source R + zeta vanishes and the integrand is 1/|zeta|.
      return std::log(std::abs(a) / std::abs(b));
    }
    return g_exp(k_ * v(b)) - g_exp(k_ * v(a));
  }

  // int_a^b e^{-jk(R-zeta)} / R dzeta
  cdouble minus(double a, double b) const
  {
    if (rho_ == 0.0 && a >= 0.0)
    {
      return std::log(b / a);
    }
    return -(g_exp(k_ * u(b)) - g_exp(k_ * u(a)));
  }

private:
  double radius(double zeta) const { return std::hypot(rho_, zeta); }
  double v(double zeta) const
  {
    const double r = radius(zeta);
    return zeta >= 0.0 ? r + zeta : rho_ * rho_ / (r - zeta);
  }
  double u(double zeta) const
  {
    const double r = radius(zeta);
    return zeta <= 0.0 ? r - zeta : rho_ * rho_ / (r + zeta);
  }

  double k_;
  double rho_;
};

// Reaction between a sinusoidal filament of half-length h1 at the origin and a second filament
// of half-length h2 centered at (rho, z0). The field of the first filament is exact (two end
// sources and a center source); the integration over the second is done in closed form.
cdouble echelon(double h1, double h2, double rho, double z0, double k)
{
  const AxialIntegrals integ(k, rho);
  const double zp[3] = {h1, -h1, 0.0};
  const double cp[3] = {1.0, 1.0, -2.0 * std::cos(k * h1)};

  cdouble sum = 0.0;
  for (int p = 0; p < 3; ++p)
  {
    const double d = z0 - zp[p];
    const cdouble upper = std::exp(1i * (k * (h2 + d))) * integ.plus(d, d + h2) -
                          std::exp(-1i * (k * (h2 + d))) * integ.minus(d, d + h2);
    const cdouble lower = std::exp(1i * (k * (h2 - d))) * integ.minus(d - h2, d) -
                          std::exp(-1i * (k * (h2 - d))) * integ.plus(d - h2, d);
    sum += cp[p] * (upper + lower) / 2i;
  }
  const double norm = std::sin(k * h1) * std::sin(k * h2);
  return 1i * constants::eta0 / (4.0 * constants::pi * norm) * sum;
}

}  // namespace

ImpedanceResult self_impedance(const DipoleSpec &spec, double frequency)
{
  spec.validate();
  if (!(frequency > 0.0))
  {
    throw DomainError("self_impedance: frequency must be > 0");
  }
  const double k = wavenumber(frequency);
  const double h = spec.half_length();
  return {echelon(h, h, spec.equivalent_radius(), 0.0, k), spec.length >= wavelength(frequency)};
}

ImpedanceResult mutual_impedance(const DipoleSpec &a, const DipoleSpec &b, double radial_sep,
                                 double axial_offset, double frequency)
{
  a.validate();
  b.validate();
  if (!(frequency > 0.0))
  {
    throw DomainError("mutual_impedance: frequency must be > 0");
  }
  radial_sep = std::abs(radial_sep);
  if (radial_sep == 0.0 && std::abs(axial_offset) <= a.half_length() + b.half_length())
  {
    throw DomainError("mutual_impedance: collinear dipoles overlap or touch (axial offset " +
                      std::to_string(axial_offset) + " m)");
  }
  const double k = wavenumber(frequency);
  const double lambda = wavelength(frequency);
  const bool flag = a.length >= lambda || b.length >= lambda;
  return {echelon(a.half_length(), b.half_length(), radial_sep, axial_offset, k), flag};
}

namespace closed_form
{

cdouble side_by_side_half_wave(double separation, double frequency)
{
  const double k = wavenumber(frequency);
  const double l = 0.5 * wavelength(frequency);
  const double u0 = k * separation;
  const double r = std::hypot(separation, l);
  const double u1 = k * (r + l);
  const double u2 = k * (r - l);
  const double scale = constants::eta0 / (4.0 * constants::pi);
  const double re = scale * (2.0 * cosine_integral(u0) - cosine_integral(u1) - cosine_integral(u2));
  const double im = -scale * (2.0 * sine_integral(u0) - sine_integral(u1) - sine_integral(u2));
  return {re, im};
}

cdouble collinear_half_wave(double center_distance, double frequency)
{
  const double k = wavenumber(frequency);
  const double l = 0.5 * wavelength(frequency);
  const double h = center_distance;
  const double v0 = k * h;
  const double v1 = 2.0 * k * (h + l);
  const double v2 = 2.0 * k * (h - l);
  const double v3 = (h * h - l * l) / (h * h);
  const double scale = constants::eta0 / (8.0 * constants::pi);
  const double si_bracket = 2.0 * sine_integral(2.0 * v0) - sine_integral(v2) - sine_integral(v1);
  const double ci_a = -2.0 * cosine_integral(2.0 * v0) + cosine_integral(v2) + cosine_integral(v1) - std::log(v3);
  const double ci_b = 2.0 * cosine_integral(2.0 * v0) - cosine_integral(v2) - cosine_integral(v1) - std::log(v3);
  const double re = -scale * std::cos(v0) * ci_a + scale * std::sin(v0) * si_bracket;
  const double im = -scale * std::cos(v0) * si_bracket + scale * std::sin(v0) * ci_b;
  return {re, im};
}

double input_radiation_resistance(double length, double frequency)
{
  const double kl = wavenumber(frequency) * length;
  const double g = constants::euler_gamma;
  const double rr = constants::eta0 / (2.0 * constants::pi) *
                    (g + std::log(kl) - cosine_integral(kl) +
                     0.5 * std::sin(kl) * (sine_integral(2.0 * kl) - 2.0 * sine_integral(kl)) +
                     0.5 * std::cos(kl) *
                         (g + std::log(kl / 2.0) + cosine_integral(2.0 * kl) - 2.0 * cosine_integral(kl)));
  const double s = std::sin(kl / 2.0);
  return rr / (s * s);
}

}  // namespace closed_form

}  // namespace risopt
