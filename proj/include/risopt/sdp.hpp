// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_SDP_HPP
#define RISOPT_SDP_HPP

#include <Eigen/Dense>
#include <vector>

namespace risopt::sdp
{

/// Dense complex Hermitian SDP in standard form:
///
///   maximize   Re tr(objective * X)
///   subject to Re tr(constraints[k] * X) = rhs[k],  X >= 0 (PSD).
///
/// All matrices must be Hermitian and of equal size.
struct Problem
{
  Eigen::MatrixXcd objective;
  std::vector<Eigen::MatrixXcd> constraints;
  Eigen::VectorXd rhs;

  Eigen::Index dimension() const { return objective.rows(); }
};

struct Options
{
  double tolerance = 1e-8;  // relative primal/dual infeasibility and duality gap
  int max_iterations = 200;
  double step_fraction = 0.98;
};

struct Result
{
  Eigen::MatrixXcd x;  // primal PSD matrix
  Eigen::VectorXd y;   // constraint multipliers
  Eigen::MatrixXcd s;  // dual slack y.A - objective, PSD at optimum
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

/// Infeasible-start primal-dual interior-point method (HKM direction, Mehrotra
/// predictor-corrector). Deterministic and single threaded.
/// Throws ConvergenceError after max_iterations, InfeasibleError when the iterates diverge in a
/// way that certifies primal infeasibility or unboundedness.
Result solve(const Problem &problem, const Options &options = {});

/// Re tr(a * b) for Hermitian a, b.
double inner(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

}  // namespace risopt::sdp

#endif  // RISOPT_SDP_HPP
