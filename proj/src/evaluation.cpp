// SPDX-License-Identifier: Apache-2.0

#include "risopt/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "risopt/errors.hpp"
#include "risopt/parallel.hpp"

namespace risopt
{

void LoadSet::validate() const
{
  if (source_impedance.real() < 0.0 || receiver_impedance.real() < 0.0)
  {
    throw ConfigError("load set: source and receiver impedances must be passive");
  }
  for (std::size_t n = 0; n < loads.size(); ++n)
  {
    if (loads[n].real() < 0.0)
    {
      throw ConfigError("load set: element " + std::to_string(n + 1) + " has negative resistance");
    }
  }
}

LoadSet loads_from_capacitances(const SceneConfig &scene, const VaractorModel &model,
                                std::span<const double> capacitances, double frequency)
{
  LoadSet out;
  out.source_impedance = scene.source_impedance;
  out.receiver_impedance = scene.receiver_impedance;
  out.loads.reserve(capacitances.size());
  for (double c : capacitances)
  {
    out.loads.emplace_back(model.series_resistance, reactance_of_capacitance(c, frequency));
  }
  return out;
}

Eigen::VectorXcd solve_loaded_network(const PortNetwork &net, const LoadSet &loads, cdouble source_voltage,
                                      int source_port)
{
  const int n = net.n_ports();
  if (static_cast<int>(loads.loads.size()) != n - 2)
  {
    throw ConfigError("load set has " + std::to_string(loads.loads.size()) + " element loads, network has " +
                      std::to_string(n - 2) + " RIS ports");
  }
  if (source_port < 0 || source_port >= n)
  {
    throw RangeError("source port out of range");
  }
  Eigen::MatrixXcd system = net.z;
  system(0, 0) += loads.source_impedance;
  system(1, 1) += loads.receiver_impedance;
  for (int k = 0; k < n - 2; ++k)
  {
    system(k + 2, k + 2) += loads.loads[static_cast<std::size_t>(k)];
  }

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs[source_port] = source_voltage;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14))
  {
    throw SingularError("loaded network is singular (reciprocal condition " + std::to_string(rcond) + ")", rcond);
  }
  Eigen::VectorXcd i = lu.solve(rhs);
  i += lu.solve(rhs - system * i);  // one step of iterative refinement
  return i;
}

double compute_pte(const Eigen::VectorXcd &currents, const PortNetwork &net, const LoadSet &loads,
                   cdouble source_voltage)
{
  (void)net;
  const double p_r = 0.5 * std::norm(currents[1]) * loads.receiver_impedance.real();
  const cdouble v1 = source_voltage - loads.source_impedance * currents[0];
  const double p_t = 0.5 * (v1 * std::conj(currents[0])).real();
  if (!(p_t > 0.0))
  {
    throw PhysicsError("transmit port delivers no power (P_t = " + std::to_string(p_t) + " W)");
  }
  return p_r / p_t;
}

double network_pte(const PortNetwork &net, const LoadSet &loads)
{
  loads.validate();
  return compute_pte(solve_loaded_network(net, loads), net, loads);
}

double compute_brcs(double pte, const SceneConfig &scene)
{
  const double lambda = wavelength(scene.frequency);
  const double four_pi_cubed = std::pow(4.0 * constants::pi, 3);
  const double dt2 = scene.tx_distance * scene.tx_distance;
  const double dr2 = scene.rx_distance * scene.rx_distance;
  return four_pi_cubed * dt2 * dr2 * pte / (scene.tx_gain * scene.rx_gain * lambda * lambda);
}

double to_db(double linear)
{
  return linear > 0.0 ? 10.0 * std::log10(linear) : -std::numeric_limits<double>::infinity();
}

double scene_brcs(const SceneConfig &scene, const LoadSet &loads, bool zero_direct_path)
{
  PortNetwork net = build_scene_matrix(scene);
  if (zero_direct_path)
  {
    net = zero_los(net);
  }
  return compute_brcs(network_pte(net, loads), scene);
}

double plate_brcs(double width, double height, double alpha_deg, double beta_deg, double frequency)
{
  if (!(std::abs(alpha_deg) < 90.0) || !(std::abs(beta_deg) < 90.0))
  {
    throw DomainError("plate_brcs: |angles| must be < 90 deg");
  }
  const double lambda = wavelength(frequency);
  const double al = deg2rad(alpha_deg);
  const double be = deg2rad(beta_deg);
  const double area = width * height / lambda;
  const double obliquity = 0.5 * (std::cos(al) + std::cos(be));
  const double u = constants::pi * width / lambda * (std::sin(al) + std::sin(be));
  const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
  return 4.0 * constants::pi * area * area * obliquity * obliquity * sinc * sinc;
}

SweepResult angle_sweep(SceneConfig scene, const LoadSet &loads, double beta, std::span<const double> alphas,
                        bool zero_direct_path, int threads)
{
  loads.validate();
  scene.tx_angle_beta = beta;
  SweepResult rows(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t i) {
    SceneConfig at = scene;
    at.rx_angle_alpha = alphas[i];
    PortNetwork net = build_scene_matrix(at);
    if (zero_direct_path)
    {
      net = zero_los(net);
    }
    const double pte = network_pte(net, loads);
    const double brcs = compute_brcs(pte, at);
    rows[i] = {alphas[i], beta, pte, brcs, to_db(brcs)};
  });
  return rows;
}

std::vector<SensitivityPoint> sensitivity_sweep(const SceneConfig &scene, const LoadSet &loads,
                                                const VaractorModel &model, int element_index,
                                                std::span<const double> capacitance_grid, bool zero_direct_path)
{
  loads.validate();
  const int n = static_cast<int>(loads.loads.size());
  if (element_index < 1 || element_index > n)
  {
    throw RangeError("sensitivity_sweep: element index " + std::to_string(element_index) + " outside [1, " +
                     std::to_string(n) + "]");
  }
  const double slack = 1e-9;
  for (double c : capacitance_grid)
  {
    if (c < model.c_min * (1.0 - slack) || c > model.c_max * (1.0 + slack))
    {
      throw RangeError("sensitivity_sweep: grid capacitance " + std::to_string(c * 1e12) +
                       " pF outside the varactor range");
    }
  }
  PortNetwork net = build_scene_matrix(scene);
  if (zero_direct_path)
  {
    net = zero_los(net);
  }
  std::vector<SensitivityPoint> out;
  out.reserve(capacitance_grid.size());
  LoadSet trial = loads;
  for (double c : capacitance_grid)
  {
    trial.loads[static_cast<std::size_t>(element_index - 1)] =
        cdouble(model.series_resistance, reactance_of_capacitance(c, scene.frequency));
    out.push_back({c, to_db(compute_brcs(network_pte(net, trial), scene))});
  }
  return out;
}

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double percentile(std::vector<double> sorted, double q)
{
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

MonteCarloResult tolerance_monte_carlo(const SceneConfig &scene, const VaractorModel &model,
                                       std::span<const double> capacitances, int trials, std::uint64_t seed,
                                       bool zero_direct_path, int threads)
{
  if (trials < 1)
  {
    throw ConfigError("tolerance_monte_carlo: trials must be >= 1");
  }
  model.validate();
  PortNetwork net = build_scene_matrix(scene);
  if (zero_direct_path)
  {
    net = zero_los(net);
  }

  MonteCarloResult out;
  out.brcs_db.resize(static_cast<std::size_t>(trials));
  parallel_for(out.brcs_db.size(), threads, [&](std::size_t t) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t)));
    std::vector<double> perturbed(capacitances.begin(), capacitances.end());
    for (double &c : perturbed)
    {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
      c *= 1.0 + model.tolerance(c) * u;
    }
    const LoadSet loads = loads_from_capacitances(scene, model, perturbed, scene.frequency);
    out.brcs_db[t] = to_db(compute_brcs(network_pte(net, loads), scene));
  });

  double sum = 0.0;
  for (double v : out.brcs_db)
  {
    sum += v;
  }
  out.mean = sum / static_cast<double>(trials);
  out.p5 = percentile(out.brcs_db, 0.05);
  out.p95 = percentile(out.brcs_db, 0.95);
  return out;
}

}  // namespace risopt
