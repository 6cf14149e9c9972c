// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_EVALUATION_HPP
#define RISOPT_EVALUATION_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "risopt/scene.hpp"
#include "risopt/varactor.hpp"

namespace risopt
{

/// Terminations of every port: Tx source, Rx receiver and one load per RIS element.
struct LoadSet
{
  std::vector<cdouble> loads;  // ohm, RIS port order
  cdouble source_impedance{50.0, 0.0};
  cdouble receiver_impedance{50.0, 0.0};

  /// Throws ConfigError on an active (Re < 0) termination.
  void validate() const;
};

/// Loads R_s + j x(C) for a list of element capacitances; terminations taken from the scene.
LoadSet loads_from_capacitances(const SceneConfig &scene, const VaractorModel &model,
                                std::span<const double> capacitances, double frequency);

/// Port currents i = (Z + Z_L)^-1 V_s e_source. Throws SingularError with a reciprocal
/// condition estimate when the loaded system is singular.
Eigen::VectorXcd solve_loaded_network(const PortNetwork &net, const LoadSet &loads, cdouble source_voltage = 1.0,
                                      int source_port = 0);

/// Receiver-delivered over transmitter-delivered power. Throws PhysicsError when the
/// delivered transmit power is not positive.
double compute_pte(const Eigen::VectorXcd &currents, const PortNetwork &net, const LoadSet &loads,
                   cdouble source_voltage = 1.0);

/// Convenience: solve and evaluate PTE in one go.
double network_pte(const PortNetwork &net, const LoadSet &loads);

/// Bistatic RCS from the inverted radar equation, sigma = (4 pi)^3 d_t^2 d_r^2 PTE / (G_t G_r lambda^2).
double compute_brcs(double pte, const SceneConfig &scene);

double to_db(double linear);

/// Build the scene, optionally drop the direct path, solve with `loads`, return BRCS in m^2.
double scene_brcs(const SceneConfig &scene, const LoadSet &loads, bool zero_direct_path = true);

/// Physical-optics bistatic RCS of a flat a x b plate, scan in the plane of the width a.
double plate_brcs(double width, double height, double alpha_deg, double beta_deg, double frequency);

struct SweepRow
{
  double alpha;  // deg
  double beta;   // deg
  double pte;
  double brcs;     // m^2
  double brcs_db;  // dB re 1 m^2
};
using SweepResult = std::vector<SweepRow>;

/// Receiver swept over `alphas` with fixed loads. The scene matrix is rebuilt at each angle.
SweepResult angle_sweep(SceneConfig scene, const LoadSet &loads, double beta, std::span<const double> alphas,
                        bool zero_direct_path = true, int threads = 1);

struct SensitivityPoint
{
  double capacitance;  // F
  double brcs_db;
};

/// BRCS while one element (1-based) runs through `capacitance_grid`, every other load untouched.
std::vector<SensitivityPoint> sensitivity_sweep(const SceneConfig &scene, const LoadSet &loads,
                                                const VaractorModel &model, int element_index,
                                                std::span<const double> capacitance_grid,
                                                bool zero_direct_path = true);

struct MonteCarloResult
{
  std::vector<double> brcs_db;
  double mean = 0.0;
  double p5 = 0.0;
  double p95 = 0.0;
};

/// BRCS spread under device tolerance: every trial scales each nominal capacitance by
/// (1 + u), u uniform in +-model.tolerance(C). Deterministic for a given seed.
MonteCarloResult tolerance_monte_carlo(const SceneConfig &scene, const VaractorModel &model,
                                       std::span<const double> capacitances, int trials, std::uint64_t seed,
                                       bool zero_direct_path = true, int threads = 1);

}  // namespace risopt

#endif  // RISOPT_EVALUATION_HPP
