// SPDX-License-Identifier: Apache-2.0

#include "risopt/varactor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "risopt/errors.hpp"

namespace risopt
{

void VaractorModel::validate() const
{
  if (!(c_min > 0.0) || !(c_min < c_max) || !(v_min < v_max) || !(series_resistance >= 0.0))
  {
    throw ConfigError("varactor: need 0 < c_min < c_max, v_min < v_max, series_resistance >= 0");
  }
  if (tolerance_at_c_min < 0.0 || tolerance_at_c_max < 0.0 || tolerance_at_c_min >= 1.0 ||
      tolerance_at_c_max >= 1.0)
  {
    throw ConfigError("varactor: tolerances must lie in [0, 1)");
  }
}

double VaractorModel::x_min(double frequency) const { return reactance_of_capacitance(c_min, frequency); }
double VaractorModel::x_max(double frequency) const { return reactance_of_capacitance(c_max, frequency); }

double VaractorModel::tolerance(double capacitance) const
{
  const double t = std::clamp(std::log(capacitance / c_min) / std::log(c_max / c_min), 0.0, 1.0);
  return tolerance_at_c_min + t * (tolerance_at_c_max - tolerance_at_c_min);
}

double reactance_of_capacitance(double capacitance, double frequency)
{
  if (!(capacitance > 0.0) || !(frequency > 0.0))
  {
    throw DomainError("reactance_of_capacitance: need C > 0 and f > 0");
  }
  return -1.0 / (2.0 * constants::pi * frequency * capacitance);
}

double capacitance_of_reactance(double reactance, double frequency)
{
  if (!(reactance < 0.0))
  {
    throw DomainError("capacitance_of_reactance: reactance " + std::to_string(reactance) +
                      " ohm is not capacitive");
  }
  if (!(frequency > 0.0))
  {
    throw DomainError("capacitance_of_reactance: need f > 0");
  }
  return -1.0 / (2.0 * constants::pi * frequency * reactance);
}

VoltageResult bias_voltage(const VaractorModel &m, double x)
{
  const double raw = m.a + x * (m.b + x * (m.c + x * (m.d + x * m.e)));
  const double v = std::clamp(raw, m.v_min, m.v_max);
  return {v, raw, v != raw};
}

ClipResult clip_reactance(const VaractorModel &m, double x, double frequency)
{
  const double lo = m.x_min(frequency);
  const double hi = m.x_max(frequency);
  if (x < lo)
  {
    return {lo, true};
  }
  if (x > hi)
  {
    return {hi, true};
  }
  return {x, false};
}

cdouble realized_load(const VaractorModel &m, double capacitance, double frequency)
{
  if (!(capacitance >= m.c_min && capacitance <= m.c_max))
  {
    throw RangeError("realized_load: capacitance " + std::to_string(capacitance * 1e12) +
                     " pF outside the realizable range");
  }
  return {m.series_resistance, reactance_of_capacitance(capacitance, frequency)};
}

BiasPoint bias_point(const VaractorModel &m, double reactance, double frequency)
{
  const ClipResult clip = clip_reactance(m, reactance, frequency);
  const double cap = std::clamp(capacitance_of_reactance(clip.reactance, frequency), m.c_min, m.c_max);
  const VoltageResult v = bias_voltage(m, clip.reactance);
  return {cap, clip.reactance, v.voltage, clip.clipped, v.clamped};
}

}  // namespace risopt
