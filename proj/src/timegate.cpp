// SPDX-License-Identifier: Apache-2.0

#include "risopt/timegate.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include "risopt/errors.hpp"
#include "risopt/evaluation.hpp"
#include "risopt/parallel.hpp"

namespace risopt
{
namespace
{

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex &planner_mutex()
{
  static std::mutex m;
  return m;
}

void dft(std::vector<cdouble> &data, int sign)
{
  const int n = static_cast<int>(data.size());
  auto *buf = reinterpret_cast<fftw_complex *>(data.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr)
  {
    throw Error("FFTW failed to create a plan of length " + std::to_string(n));
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

double gate_weight(double t, const GateConfig &gate)
{
  const double x = (t - gate.start) / gate.width;
  if (x <= 0.0 || x >= 1.0)
  {
    return 0.0;
  }
  const double edge = std::min(x, 1.0 - x);
  if (edge >= 0.5 * gate.taper)
  {
    return 1.0;
  }
  const double s = std::sin(constants::pi * edge / gate.taper);
  return s * s;
}

cdouble raw_gated_center(const FrequencyResponse &fr, const GateConfig &gate, int pad_factor)
{
  const FrequencyResponse g = gate_response(fr, gate, pad_factor);
  return g.values[g.center_index()];
}

}  // namespace

void FrequencyResponse::validate() const
{
  if (values.size() < 2)
  {
    throw ConfigError("frequency response needs at least 2 points");
  }
  if (!(f_start < f_stop) || !(f_start >= 0.0))
  {
    throw ConfigError("frequency response needs 0 <= f_start < f_stop");
  }
}

void GateConfig::validate() const
{
  if (!(width > 0.0) || !std::isfinite(width))
  {
    throw ConfigError("gate width must be positive");
  }
  if (!(start >= 0.0) || !std::isfinite(start))
  {
    throw ConfigError("gate start must be non-negative");
  }
  if (!(taper > 0.0 && taper <= 1.0))
  {
    throw ConfigError("gate taper must lie in (0, 1]");
  }
}

FrequencyResponse synthesize_response(const SceneConfig &scene, const VaractorModel &model,
                                      std::span<const double> capacitances, const FrequencyGrid &grid,
                                      bool include_los, int threads)
{
  if (grid.n_points < 2 || !(grid.f_start > 0.0) || !(grid.f_start < grid.f_stop))
  {
    throw ConfigError("frequency grid needs n >= 2 and 0 < f_start < f_stop");
  }
  if (static_cast<int>(capacitances.size()) != scene.element_count())
  {
    throw ConfigError("expected " + std::to_string(scene.element_count()) + " capacitances, got " +
                      std::to_string(capacitances.size()));
  }
  FrequencyResponse out;
  out.f_start = grid.f_start;
  out.f_stop = grid.f_stop;
  out.values.assign(grid.n_points, cdouble{0.0, 0.0});

  const double rs = scene.source_impedance.real();
  const double rr = scene.receiver_impedance.real();
  const double scale = 2.0 * std::sqrt(rs * rr);
  parallel_for(grid.n_points, threads, [&](std::size_t k) {
    SceneConfig local = scene;
    local.frequency = out.frequency(k);
    PortNetwork net = build_scene_matrix(local);
    if (!include_los)
    {
      net = zero_los(net);
    }
    const LoadSet loads = loads_from_capacitances(local, model, capacitances, local.frequency);
    const Eigen::VectorXcd i = solve_loaded_network(net, loads);
    out.values[k] = scale * i(1);
  });
  return out;
}

GateConfig auto_gate(const SceneConfig &scene)
{
  GateConfig g;
  g.start = std::max(0.0, (scene.tx_distance + scene.rx_distance) / constants::c0 - 1e-9);
  g.width = 10e-9;
  g.taper = 0.2;
  return g;
}

TimeResponse to_time(const FrequencyResponse &fr, int pad_factor)
{
  fr.validate();
  if (pad_factor < 1)
  {
    throw ConfigError("pad factor must be >= 1");
  }
  const std::size_t n = fr.size();
  const std::size_t npad = n * static_cast<std::size_t>(pad_factor);
  TimeResponse tr;
  tr.n_band = n;
  tr.f_start = fr.f_start;
  tr.f_stop = fr.f_stop;
  tr.dt = 1.0 / (static_cast<double>(npad) * fr.step());
  tr.samples.assign(npad, cdouble{0.0, 0.0});
  std::copy(fr.values.begin(), fr.values.end(), tr.samples.begin());
  dft(tr.samples, FFTW_BACKWARD);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto &s : tr.samples)
  {
    s *= inv_n;
  }
  return tr;
}

FrequencyResponse to_frequency(const TimeResponse &tr)
{
  if (tr.n_band < 2 || tr.samples.size() < tr.n_band)
  {
    throw ConfigError("time response is inconsistent with its band");
  }
  std::vector<cdouble> work = tr.samples;
  dft(work, FFTW_FORWARD);
  FrequencyResponse fr;
  fr.f_start = tr.f_start;
  fr.f_stop = tr.f_stop;
  const double scale = static_cast<double>(tr.n_band) / static_cast<double>(work.size());
  fr.values.resize(tr.n_band);
  for (std::size_t k = 0; k < tr.n_band; ++k)
  {
    fr.values[k] = scale * work[k];
  }
  return fr;
}

TimeResponse apply_gate(const TimeResponse &tr, const GateConfig &gate)
{
  gate.validate();
  const double span = tr.span();
  if (gate.start + gate.width > span * (1.0 + 1e-12))
  {
    char buf[160];
    std::snprintf(buf, sizeof buf, "gate [%.4g, %.4g] ns leaves the unambiguous span of %.4g ns", gate.start * 1e9,
                  (gate.start + gate.width) * 1e9, span * 1e9);
    throw RangeError(buf);
  }
  TimeResponse out = tr;
  for (std::size_t m = 0; m < out.samples.size(); ++m)
  {
    out.samples[m] *= gate_weight(static_cast<double>(m) * tr.dt, gate);
  }
  return out;
}

FrequencyResponse gate_response(const FrequencyResponse &fr, const GateConfig &gate, int pad_factor)
{
  return to_frequency(apply_gate(to_time(fr, pad_factor), gate));
}

cdouble gate_gain(const FrequencyResponse &fr, const GateConfig &gate, int pad_factor)
{
  FrequencyResponse ref;
  ref.f_start = fr.f_start;
  ref.f_stop = fr.f_stop;
  ref.values.resize(fr.size());
  const double tau = gate.start + 0.5 * gate.width;
  for (std::size_t k = 0; k < ref.size(); ++k)
  {
    ref.values[k] = std::polar(1.0, -2.0 * constants::pi * ref.frequency(k) * tau);
  }
  return raw_gated_center(ref, gate, pad_factor) / ref.values[ref.center_index()];
}

cdouble gated_center_value(const FrequencyResponse &fr, const GateConfig &gate, int pad_factor)
{
  return raw_gated_center(fr, gate, pad_factor) / gate_gain(fr, gate, pad_factor);
}

}  // namespace risopt
