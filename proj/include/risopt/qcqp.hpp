// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_QCQP_HPP
#define RISOPT_QCQP_HPP

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "risopt/scene.hpp"

namespace risopt
{

/// Receiver-power maximization over port currents i, lifted to I = i i^H:
///
///   maximize  tr(B I)
///   s.t.      tr(A_t I) = P_t        (delivered transmit power)
///             tr(M_R I) = 0          (receiver termination v_2 = -Z_R i_2)
///             tr(A_n I) = 0, n >= 3  (lossless RIS terminations)
///             I >= 0
///
/// Port indices are 0-based in the matrices: 0 = Tx, 1 = Rx, 2.. = RIS.
struct QcqpLift
{
  Eigen::MatrixXcd objective;                   // B = 1/2 Re(Z_R) e_2 e_2^T
  Eigen::MatrixXcd tx_power;                    // A_t = herm(1/2 e_1 e_1^T Z)
  Eigen::MatrixXcd rx_termination;              // M_R = conj(c) c^T, c^T = e_2^T Z + Z_R e_2^T
  std::vector<Eigen::MatrixXcd> reactive_ports; // A_n = herm(1/2 e_n e_n^T Z)
  double tx_power_target = 1.0;                 // W

  Eigen::MatrixXcd z_effective;  // Z with the series loss folded into the RIS diagonal
  cdouble receiver_impedance;
  double series_resistance = 0.0;
  std::vector<std::string> warnings;

  int n_ports() const { return static_cast<int>(objective.rows()); }
  int element_count() const { return n_ports() - 2; }
  int constraint_count() const { return 2 + element_count(); }
};

QcqpLift build_lift(const PortNetwork &net, cdouble receiver_impedance, double tx_power = 1.0,
                    double series_resistance = 0.0);

struct SdpSolution
{
  Eigen::MatrixXcd lifted;      // I_opt, A^2
  double objective = 0.0;       // W
  double duality_gap = 0.0;     // relative
  int iterations = 0;
  Eigen::VectorXd eigenvalues;  // descending
  double max_constraint_residual = 0.0;  // relative

  // Principal factor of the solve, i ~ sqrt(lambda_1) u_1, taken from the scaled problem.
  Eigen::VectorXcd principal;
};

/// Solve the relaxation. The receiver equality is enforced exactly by restricting I to the
/// null space of c^T; the remaining (N+1)-dimensional problem goes to the interior-point solver.
/// Throws InfeasibleError (with certificate) or ConvergenceError.
SdpSolution solve_sdp(const QcqpLift &lift, double tol = 1e-8, int max_iterations = 200);

/// lambda_2 / lambda_1 of a Hermitian PSD matrix; 0 for rank one. Throws DomainError if lambda_1 <= 0.
double tightness_ratio(const Eigen::MatrixXcd &lifted);
double tightness_ratio(const SdpSolution &sol);

/// Build a solution object around a given lifted matrix (used for planted checks).
SdpSolution solution_from_lifted(const Eigen::MatrixXcd &lifted, const QcqpLift &lift);

struct PortLoad
{
  int port;  // 1-based
  double reactance;
  cdouble current;
  double passivity_residual;
  bool indeterminate;
};

struct LoadSolution
{
  Eigen::VectorXcd currents;  // all N+2 ports
  std::vector<PortLoad> ports;  // RIS ports only
  double pte = 0.0;
  double objective = 0.0;  // W
  double tightness_ratio = 0.0;
  double max_passivity_residual = 0.0;

  std::vector<double> reactances() const;
};

struct RecoverOptions
{
  double max_tightness_ratio = 1e-4;
  double indeterminate_reactance = 0.0;  // assigned to ports carrying no current
};

/// Rank-one recovery of currents and loading reactances. Throws NotTightError when the
/// relaxation is loose.
LoadSolution recover_solution(const SdpSolution &sol, const QcqpLift &lift, const RecoverOptions &options = {});

struct BruteForceResult
{
  std::vector<double> x_best;
  double pte_best = 0.0;
  std::size_t evaluations = 0;
};

/// Exhaustive PTE search over the Cartesian product grid^N, loads series_resistance + j x.
/// Ties go to the lexicographically smallest grid index. Refuses N > 3 (ComplexityError).
BruteForceResult brute_force_pte(const PortNetwork &net, std::span<const double> x_grid, cdouble receiver_impedance,
                                 cdouble source_impedance, double series_resistance = 0.0, int threads = 1);

}  // namespace risopt

#endif  // RISOPT_QCQP_HPP
