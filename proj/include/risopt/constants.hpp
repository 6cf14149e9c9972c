// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_CONSTANTS_HPP
#define RISOPT_CONSTANTS_HPP

#include <complex>
#include <numbers>

namespace risopt
{

using cdouble = std::complex<double>;

namespace constants
{

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double c0 = 299792458.0;            // m/s
inline constexpr double mu0 = 1.25663706212e-6;      // H/m
inline constexpr double eta0 = mu0 * c0;             // free-space wave impedance, ohm

}  // namespace constants

inline double wavelength(double frequency) { return constants::c0 / frequency; }
inline double wavenumber(double frequency) { return 2.0 * constants::pi * frequency / constants::c0; }
inline double deg2rad(double deg) { return deg * constants::pi / 180.0; }

}  // namespace risopt

#endif  // RISOPT_CONSTANTS_HPP
