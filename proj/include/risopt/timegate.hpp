// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_TIMEGATE_HPP
#define RISOPT_TIMEGATE_HPP

#include <span>
#include <vector>

#include "risopt/scene.hpp"
#include "risopt/varactor.hpp"

namespace risopt
{

/// Complex transfer sampled on the uniform grid f_k = f_start + k (f_stop - f_start) / (n - 1).
struct FrequencyResponse
{
  double f_start = 0.0;
  double f_stop = 0.0;
  std::vector<cdouble> values;

  std::size_t size() const { return values.size(); }
  double step() const { return (f_stop - f_start) / static_cast<double>(values.size() - 1); }
  double frequency(std::size_t k) const { return f_start + static_cast<double>(k) * step(); }
  std::size_t center_index() const { return (values.size() - 1) / 2; }

  void validate() const;
};

struct FrequencyGrid
{
  double f_start = 2.05e9;
  double f_stop = 5.05e9;
  std::size_t n_points = 601;
};

/// Hann-tapered gate supported on [start, start + width]. `taper` is the fraction of the width
/// spent in the two raised-cosine edges; taper = 1 is the plain Hann window.
struct GateConfig
{
  double start = 0.0;    // s
  double width = 10e-9;  // s
  double taper = 1.0;

  void validate() const;
};

/// Complex envelope in time (band-pass mode: the band is shifted to baseband before the
/// inverse transform). Sample m sits at t = m * dt.
struct TimeResponse
{
  double dt = 0.0;           // s
  std::size_t n_band = 0;    // number of frequency samples it came from
  double f_start = 0.0;
  double f_stop = 0.0;
  std::vector<cdouble> samples;

  double span() const { return dt * static_cast<double>(samples.size()); }
};

/// S21-style transducer coefficient 2 sqrt(R_S R_R) i_2 / V_s of the loaded scene at every
/// grid frequency. Element capacitances are converted to reactance per frequency.
FrequencyResponse synthesize_response(const SceneConfig &scene, const VaractorModel &model,
                                      std::span<const double> capacitances, const FrequencyGrid &grid,
                                      bool include_los, int threads = 1);

/// Gate 1 ns ahead of the RIS-path arrival (d_t + d_r)/c, 10 ns wide, with 1 ns edges so the
/// rising edge ends at the anticipated arrival.
GateConfig auto_gate(const SceneConfig &scene);

/// Zero-padded inverse DFT, h_m = (1/n) sum_k X_k e^{+j 2 pi k m / (n * pad_factor)}.
TimeResponse to_time(const FrequencyResponse &fr, int pad_factor = 8);

/// Forward transform back onto the original frequency grid; exact inverse of to_time.
FrequencyResponse to_frequency(const TimeResponse &tr);

/// Multiply by the Hann gate. Throws RangeError if the gate leaves the unambiguous span.
TimeResponse apply_gate(const TimeResponse &tr, const GateConfig &gate);

/// Gated spectrum.
FrequencyResponse gate_response(const FrequencyResponse &fr, const GateConfig &gate, int pad_factor = 8);

/// Band-center gain of the gate for a unit path at the gate center (unity up to band-edge
/// truncation).
cdouble gate_gain(const FrequencyResponse &fr, const GateConfig &gate, int pad_factor = 8);

/// Band-center value of the gated spectrum divided by gate_gain.
cdouble gated_center_value(const FrequencyResponse &fr, const GateConfig &gate, int pad_factor = 8);

}  // namespace risopt

#endif  // RISOPT_TIMEGATE_HPP
