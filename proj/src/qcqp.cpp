// SPDX-License-Identifier: Apache-2.0

#include "risopt/qcqp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "risopt/errors.hpp"
#include "risopt/evaluation.hpp"
#include "risopt/parallel.hpp"
#include "risopt/sdp.hpp"

namespace risopt
{

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace
{

MatrixXcd herm(const MatrixXcd &m) { return 0.5 * (m + m.adjoint()); }

// herm(1/2 e_p e_p^T Z): the quadratic form of 1/2 Re(v_p conj(i_p)).
MatrixXcd port_power(const MatrixXcd &z, Index p)
{
  MatrixXcd m = MatrixXcd::Zero(z.rows(), z.cols());
  m.row(p) = 0.5 * z.row(p);
  return herm(m);
}

}  // namespace

QcqpLift build_lift(const PortNetwork &net, cdouble receiver_impedance, double tx_power, double series_resistance)
{
  if (!(receiver_impedance.real() > 0.0))
  {
    throw ConfigError("build_lift: receiver impedance must have a positive real part");
  }
  if (!(tx_power > 0.0))
  {
    throw ConfigError("build_lift: transmit power must be > 0");
  }
  if (!(series_resistance >= 0.0))
  {
    throw ConfigError("build_lift: series resistance must be >= 0");
  }
  const Index n = net.n_ports();
  if (n < 2)
  {
    throw ConfigError("build_lift: network needs Tx and Rx ports");
  }

  QcqpLift lift;
  lift.z_effective = net.z;
  for (Index p = 2; p < n; ++p)
  {
    lift.z_effective(p, p) += series_resistance;
  }
  lift.receiver_impedance = receiver_impedance;
  lift.series_resistance = series_resistance;
  lift.tx_power_target = tx_power;
  if (!net.los_zeroed)
  {
    lift.warnings.emplace_back("direct Tx-Rx coupling is present; the optimizer will exploit the LOS path");
  }

  const MatrixXcd &z = lift.z_effective;
  lift.objective = MatrixXcd::Zero(n, n);
  lift.objective(1, 1) = 0.5 * receiver_impedance.real();
  lift.tx_power = port_power(z, 0);

  Eigen::RowVectorXcd c = z.row(1);
  c[1] += receiver_impedance;
  lift.rx_termination = c.adjoint() * c;  // conj(c) c^T

  for (Index p = 2; p < n; ++p)
  {
    lift.reactive_ports.push_back(port_power(z, p));
  }
  return lift;
}

namespace
{

// Basis T of the null space of c^T: i = T y with y = (i_tx, i_ris...) and i_rx eliminated.
MatrixXcd receiver_elimination(const QcqpLift &lift)
{
  const Index n = lift.n_ports();
  const MatrixXcd &z = lift.z_effective;
  const cdouble denom = z(1, 1) + lift.receiver_impedance;
  MatrixXcd t = MatrixXcd::Zero(n, n - 1);
  for (Index j = 0; j < n - 1; ++j)
  {
    const Index port = j == 0 ? 0 : j + 1;
    t(port, j) = 1.0;
    t(1, j) = -z(1, port) / denom;
  }
  return t;
}

struct Reduced
{
  MatrixXcd t;
  MatrixXcd objective;
  std::vector<MatrixXcd> constraints;  // A_t first, then RIS ports
  VectorXd rhs;
};

Reduced reduce(const QcqpLift &lift)
{
  Reduced r;
  r.t = receiver_elimination(lift);
  auto project = [&](const MatrixXcd &m) { return herm(r.t.adjoint() * m * r.t); };
  r.objective = project(lift.objective);
  r.constraints.push_back(project(lift.tx_power));
  for (const auto &a : lift.reactive_ports)
  {
    r.constraints.push_back(project(a));
  }
  r.rhs = VectorXd::Zero(static_cast<Index>(r.constraints.size()));
  r.rhs[0] = lift.tx_power_target;
  return r;
}

// Variable scaling y = D w followed by unit-norm rows and objective; returns the solver result.
sdp::Result solve_scaled(const Reduced &r, const VectorXd &d, double tol, int max_iterations)
{
  const MatrixXcd dm = d.cast<cdouble>().asDiagonal();
  sdp::Problem p;
  p.objective = herm(dm * r.objective * dm);
  const double on = p.objective.norm();
  if (on > 0.0)
  {
    p.objective /= on;
  }
  p.rhs = r.rhs;
  for (std::size_t k = 0; k < r.constraints.size(); ++k)
  {
    MatrixXcd a = herm(dm * r.constraints[k] * dm);
    const double an = a.norm();
    if (an > 0.0)
    {
      a /= an;
      p.rhs[static_cast<Index>(k)] /= an;
    }
    p.constraints.push_back(std::move(a));
  }
  sdp::Options opt;
  opt.tolerance = tol;
  opt.max_iterations = max_iterations;
  return sdp::solve(p, opt);
}

VectorXd initial_scaling(const QcqpLift &lift, const Reduced &r)
{
  const Index m = r.t.cols();
  VectorXd d(m);
  const double att = r.constraints[0](0, 0).real();
  d[0] = std::sqrt(lift.tx_power_target / std::max(std::abs(att), 1e-300));
  const MatrixXcd &z = lift.z_effective;
  for (Index j = 1; j < m; ++j)
  {
    const Index port = j + 1;
    const double coupling = std::abs(z(port, 0)) / std::max(std::abs(z(port, port)), 1e-300);
    d[j] = d[0] * std::max(coupling, 1e-6);
  }
  return d;
}

// Decide between genuine infeasibility and a numerical failure: maximize the transmit power
// over trace-normalized lifted currents satisfying the lossless constraints. Returns the
// certificate message when no positive transmit power is attainable.
std::optional<std::string> infeasibility_certificate(const Reduced &r, const VectorXd &d)
{
  const MatrixXcd dm = d.cast<cdouble>().asDiagonal();
  sdp::Problem p;
  p.objective = herm(dm * r.constraints[0] * dm);
  const double on = p.objective.norm();
  if (on > 0.0)
  {
    p.objective /= on;
  }
  for (std::size_t k = 1; k < r.constraints.size(); ++k)
  {
    MatrixXcd a = herm(dm * r.constraints[k] * dm);
    const double an = a.norm();
    p.constraints.push_back(an > 0.0 ? MatrixXcd(a / an) : a);
  }
  const Index m = r.t.cols();
  p.constraints.push_back(MatrixXcd::Identity(m, m));
  p.rhs = VectorXd::Zero(static_cast<Index>(p.constraints.size()));
  p.rhs[p.rhs.size() - 1] = 1.0;

  sdp::Options opt;
  opt.tolerance = 1e-9;
  sdp::Result aux;
  try
  {
    aux = sdp::solve(p, opt);
  }
  catch (const Error &)
  {
    return std::nullopt;
  }
  if (aux.primal_objective <= 1e-9)
  {
    std::ostringstream msg;
    msg << "relaxation infeasible: no lossless RIS termination lets the transmitter deliver power "
           "(max normalized transmit power "
        << aux.primal_objective << "); certificate multipliers [";
    for (Index k = 0; k < aux.y.size(); ++k)
    {
      msg << (k ? ", " : "") << aux.y[k];
    }
    msg << "]";
    return msg.str();
  }
  return std::nullopt;
}

VectorXd descending_eigenvalues(const MatrixXcd &m)
{
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm(m), Eigen::EigenvaluesOnly);
  VectorXd ev = es.eigenvalues().reverse();
  return ev;
}

double relative_residual(const MatrixXcd &a, const MatrixXcd &x, double target)
{
  const double scale = a.norm() * x.norm();
  return scale > 0.0 ? std::abs(sdp::inner(a, x) - target) / scale : 0.0;
}

double max_residual(const QcqpLift &lift, const MatrixXcd &x)
{
  double worst = std::max(relative_residual(lift.tx_power, x, lift.tx_power_target),
                          relative_residual(lift.rx_termination, x, 0.0));
  for (const auto &a : lift.reactive_ports)
  {
    worst = std::max(worst, relative_residual(a, x, 0.0));
  }
  return worst;
}

}  // namespace

SdpSolution solution_from_lifted(const MatrixXcd &lifted, const QcqpLift &lift)
{
  SdpSolution sol;
  sol.lifted = herm(lifted);
  sol.objective = sdp::inner(lift.objective, sol.lifted);
  sol.eigenvalues = descending_eigenvalues(sol.lifted);
  sol.max_constraint_residual = max_residual(lift, sol.lifted);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(sol.lifted);
  const Index top = sol.lifted.rows() - 1;
  sol.principal = std::sqrt(std::max(es.eigenvalues()[top], 0.0)) * es.eigenvectors().col(top);
  return sol;
}

SdpSolution solve_sdp(const QcqpLift &lift, double tol, int max_iterations)
{
  const Reduced r = reduce(lift);
  VectorXd d = initial_scaling(lift, r);

  sdp::Result res;
  try
  {
    // A loose first pass fixes the variable scaling from the diagonal of the solution.
    const sdp::Result first = solve_scaled(r, d, std::max(tol, 1e-5), max_iterations);
    const VectorXd diag = first.x.diagonal().real().cwiseMax(0.0).cwiseSqrt();
    const double floor = 1e-8 * diag.maxCoeff();
    for (Index j = 0; j < d.size(); ++j)
    {
      d[j] *= std::max(diag[j], floor);
    }
    // Passivity residuals of the recovered loads scale with the gap; aim two decades below tol.
    const double target = std::max(1e-2 * tol, 1e-12);
    try
    {
      res = solve_scaled(r, d, std::min(target, tol), max_iterations);
    }
    catch (const ConvergenceError &)
    {
      res = solve_scaled(r, d, tol, max_iterations);
    }
  }
  catch (const Error &e)
  {
    if (auto cert = infeasibility_certificate(r, d))
    {
      throw InfeasibleError(*cert);
    }
    throw;
  }

  const MatrixXcd dm = d.cast<cdouble>().asDiagonal();
  const MatrixXcd y = herm(dm * res.x * dm);

  SdpSolution sol;
  sol.lifted = herm(r.t * y * r.t.adjoint());
  sol.objective = sdp::inner(lift.objective, sol.lifted);
  sol.duality_gap = res.relative_gap;
  sol.iterations = res.iterations;
  sol.eigenvalues = descending_eigenvalues(sol.lifted);
  sol.max_constraint_residual = max_residual(lift, sol.lifted);

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm(res.x));
  const Index top = res.x.rows() - 1;
  const VectorXcd w = std::sqrt(std::max(es.eigenvalues()[top], 0.0)) * es.eigenvectors().col(top);
  sol.principal = r.t * (dm * w);
  return sol;
}

double tightness_ratio(const MatrixXcd &lifted)
{
  const VectorXd ev = descending_eigenvalues(lifted);
  if (ev.size() == 0 || !(ev[0] > 0.0))
  {
    throw DomainError("tightness_ratio: largest eigenvalue is not positive (degenerate solution)");
  }
  if (ev.size() == 1)
  {
    return 0.0;
  }
  return std::max(ev[1], 0.0) / ev[0];
}

double tightness_ratio(const SdpSolution &sol)
{
  if (sol.eigenvalues.size() == 0 || !(sol.eigenvalues[0] > 0.0))
  {
    throw DomainError("tightness_ratio: largest eigenvalue is not positive (degenerate solution)");
  }
  if (sol.eigenvalues.size() == 1)
  {
    return 0.0;
  }
  return std::max(sol.eigenvalues[1], 0.0) / sol.eigenvalues[0];
}

std::vector<double> LoadSolution::reactances() const
{
  std::vector<double> out;
  out.reserve(ports.size());
  for (const auto &p : ports)
  {
    out.push_back(p.reactance);
  }
  return out;
}

LoadSolution recover_solution(const SdpSolution &sol, const QcqpLift &lift, const RecoverOptions &options)
{
  const double ratio = tightness_ratio(sol);
  if (ratio > options.max_tightness_ratio)
  {
    std::ostringstream msg;
    msg << "relaxation is not tight: lambda_2/lambda_1 = " << ratio;
    throw NotTightError(msg.str(), ratio);
  }

  LoadSolution out;
  out.tightness_ratio = ratio;
  out.currents = sol.principal;
  if (std::abs(out.currents[0]) > 0.0)
  {
    out.currents *= std::conj(out.currents[0]) / std::abs(out.currents[0]);  // Tx current real, positive
  }
  const VectorXcd v = lift.z_effective * out.currents;
  const double norm_i = out.currents.norm();
  for (Index p = 2; p < out.currents.size(); ++p)
  {
    const cdouble ip = out.currents[p];
    const cdouble s = v[p] * std::conj(ip);
    PortLoad port{static_cast<int>(p + 1), 0.0, ip, 0.0, false};
    if (std::abs(ip) < 1e-12 * norm_i)
    {
      port.indeterminate = true;
      port.reactance = options.indeterminate_reactance;
    }
    else
    {
      port.reactance = -s.imag() / std::norm(ip);
      const double denom = std::abs(v[p]) * std::abs(ip);
      port.passivity_residual = denom > 0.0 ? std::abs(s.real()) / denom : 0.0;
    }
    out.max_passivity_residual = std::max(out.max_passivity_residual, port.passivity_residual);
    out.ports.push_back(port);
  }
  out.objective = sol.objective;
  out.pte = sol.objective / lift.tx_power_target;
  return out;
}

BruteForceResult brute_force_pte(const PortNetwork &net, std::span<const double> x_grid, cdouble receiver_impedance,
                                 cdouble source_impedance, double series_resistance, int threads)
{
  const int n = net.element_count();
  if (n > 3)
  {
    throw ComplexityError("brute_force_pte: " + std::to_string(n) + " elements would need grid^" +
                          std::to_string(n) + " evaluations; refusing N > 3");
  }
  if (x_grid.empty())
  {
    throw ConfigError("brute_force_pte: empty reactance grid");
  }

  const std::size_t g = x_grid.size();
  std::size_t total = 1;
  for (int k = 0; k < n; ++k)
  {
    total *= g;
  }

  auto decode = [&](std::size_t index) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k)
    {
      x[static_cast<std::size_t>(k)] = x_grid[index % g];
      index /= g;
    }
    return x;
  };

  const int workers = std::max(1, threads);
  const std::size_t chunks = static_cast<std::size_t>(workers);
  std::vector<double> chunk_best(chunks, -1.0);
  std::vector<std::size_t> chunk_arg(chunks, total);
  parallel_for(chunks, workers, [&](std::size_t c) {
    LoadSet loads;
    loads.source_impedance = source_impedance;
    loads.receiver_impedance = receiver_impedance;
    loads.loads.resize(static_cast<std::size_t>(n));
    const std::size_t begin = total * c / chunks;
    const std::size_t end = total * (c + 1) / chunks;
    for (std::size_t idx = begin; idx < end; ++idx)
    {
      const auto x = decode(idx);
      for (int k = 0; k < n; ++k)
      {
        loads.loads[static_cast<std::size_t>(k)] = cdouble(series_resistance, x[static_cast<std::size_t>(k)]);
      }
      const double pte = network_pte(net, loads);
      if (pte > chunk_best[c])
      {
        chunk_best[c] = pte;
        chunk_arg[c] = idx;
      }
    }
  });

  BruteForceResult out;
  std::size_t best_index = total;
  out.pte_best = -1.0;
  for (std::size_t c = 0; c < chunks; ++c)
  {
    if (chunk_arg[c] < total && chunk_best[c] > out.pte_best)
    {
      out.pte_best = chunk_best[c];
      best_index = chunk_arg[c];
    }
  }
  out.x_best = decode(best_index);
  out.evaluations = total;
  return out;
}

}  // namespace risopt
