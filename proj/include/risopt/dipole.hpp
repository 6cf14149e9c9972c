// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_DIPOLE_HPP
#define RISOPT_DIPOLE_HPP

#include "risopt/constants.hpp"

namespace risopt
{

/// Flat strip dipole, center fed. The strip is treated as a wire of radius strip_width / 4.
struct DipoleSpec
{
  double length = 0.032;       // m
  double strip_width = 0.005;  // m
  double feed_gap = 0.002;     // m, not used by the thin-wire model

  double half_length() const { return 0.5 * length; }
  double equivalent_radius() const { return 0.25 * strip_width; }

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;
};

/// Impedance value with a flag raised when the sinusoidal-current model is outside its
/// range of validity (length >= one wavelength).
struct ImpedanceResult
{
  cdouble value;
  bool outside_validity = false;
};

/// Induced-EMF self impedance of a center-fed thin dipole carrying a sinusoidal current,
/// referred to the feed-point current.
ImpedanceResult self_impedance(const DipoleSpec &spec, double frequency);

/// Induced-EMF mutual impedance of two parallel dipoles in echelon: dipole b is displaced
/// from dipole a by radial_sep perpendicular to the common axis direction and by
/// axial_offset along it. Side-by-side (axial_offset = 0) and collinear (radial_sep = 0)
/// arrangements are both covered. Reciprocal in (a, b).
/// Throws DomainError when the two filaments overlap.
ImpedanceResult mutual_impedance(const DipoleSpec &a, const DipoleSpec &b, double radial_sep,
                                 double axial_offset, double frequency);

namespace closed_form
{

// Classical textbook expressions for odd-multiple half-wave dipoles of equal length. Used to
// cross-check the general echelon evaluation in its two degenerate arrangements.
cdouble side_by_side_half_wave(double separation, double frequency);
cdouble collinear_half_wave(double center_distance, double frequency);

// Radiation resistance of a thin dipole of length l (far-field power, referred to the input current).
double input_radiation_resistance(double length, double frequency);

}  // namespace closed_form

}  // namespace risopt

#endif  // RISOPT_DIPOLE_HPP
