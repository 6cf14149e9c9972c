// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_VARACTOR_HPP
#define RISOPT_VARACTOR_HPP

#include "risopt/constants.hpp"

namespace risopt
{

/// Varactor diode model: quartic bias-voltage fit v(x) over the capacitive reactance x, the
/// realizable capacitance range, and a constant series loss. Defaults describe the
/// SMV2201-040LF.
struct VaractorModel
{
  double a = -3.55;      // V
  double b = -1.77e-1;   // V/ohm
  double c = -8.28e-4;   // V/ohm^2
  double d = 8.5e-8;     // V/ohm^3
  double e = 1.47e-8;    // V/ohm^4
  double c_min = 0.23e-12;  // F
  double c_max = 2.1e-12;   // F
  double v_min = 0.0;       // V
  double v_max = 20.0;      // V
  double series_resistance = 5.4;  // ohm

  // Relative device spread (half-width of a uniform distribution) at c_min and c_max,
  // interpolated linearly in log C in between.
  double tolerance_at_c_min = 0.5;
  double tolerance_at_c_max = 0.1;

  void validate() const;

  /// Reactance interval [x(c_min), x(c_max)] realizable at `frequency`.
  double x_min(double frequency) const;
  double x_max(double frequency) const;

  /// Relative spread for a nominal capacitance.
  double tolerance(double capacitance) const;
};

/// x = -1 / (2 pi f C). Throws DomainError unless C > 0 and f > 0.
double reactance_of_capacitance(double capacitance, double frequency);

/// Exact inverse of reactance_of_capacitance. Throws DomainError for x >= 0 (not capacitive).
double capacitance_of_reactance(double reactance, double frequency);

struct VoltageResult
{
  double voltage;
  double raw;  // polynomial value before clamping
  bool clamped;
};

/// Bias voltage from the quartic fit, clamped into [v_min, v_max].
VoltageResult bias_voltage(const VaractorModel &model, double reactance);

struct ClipResult
{
  double reactance;
  bool clipped;
};

/// Nearest realizable reactance (distance measured in ohms). Inductive requests land on the
/// x(c_max) end.
ClipResult clip_reactance(const VaractorModel &model, double reactance, double frequency);

/// series_resistance + j x(C). Throws RangeError for C outside [c_min, c_max].
cdouble realized_load(const VaractorModel &model, double capacitance, double frequency);

/// Full control point for one element: clipped reactance, capacitance and bias voltage.
struct BiasPoint
{
  double capacitance;
  double reactance;
  double voltage;
  bool clipped;
  bool clamped;
};
BiasPoint bias_point(const VaractorModel &model, double reactance, double frequency);

}  // namespace risopt

#endif  // RISOPT_VARACTOR_HPP
