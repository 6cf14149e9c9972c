// SPDX-License-Identifier: Apache-2.0

#include "risopt/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "risopt/errors.hpp"

namespace risopt::sdp
{

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double inner(const MatrixXcd &a, const MatrixXcd &b) { return a.cwiseProduct(b.transpose()).sum().real(); }

namespace
{

MatrixXcd herm(const MatrixXcd &m) { return 0.5 * (m + m.adjoint()); }

// Largest alpha with x + alpha * dx still PSD (infinity when dx keeps it PSD for every alpha).
double max_step(const MatrixXcd &x, const MatrixXcd &dx)
{
  Eigen::LLT<MatrixXcd> llt(x);
  if (llt.info() != Eigen::Success)
  {
    return 0.0;
  }
  const MatrixXcd l_inv_dx = llt.matrixL().solve(dx);
  const MatrixXcd m = llt.matrixL().solve(l_inv_dx.adjoint()).adjoint();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm(m), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

MatrixXcd adjoint_map(const std::vector<MatrixXcd> &a, const VectorXd &y, Index n)
{
  MatrixXcd out = MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < a.size(); ++k)
  {
    out += y[static_cast<Index>(k)] * a[k];
  }
  return out;
}

VectorXd forward_map(const std::vector<MatrixXcd> &a, const MatrixXcd &x)
{
  VectorXd out(static_cast<Index>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k)
  {
    out[static_cast<Index>(k)] = inner(a[k], x);
  }
  return out;
}

}  // namespace

Result solve(const Problem &problem, const Options &options)
{
  const Index n = problem.dimension();
  const auto m = static_cast<Index>(problem.constraints.size());
  if (n == 0 || problem.objective.cols() != n || problem.rhs.size() != m)
  {
    throw ConfigError("sdp: inconsistent problem dimensions");
  }
  for (const auto &a : problem.constraints)
  {
    if (a.rows() != n || a.cols() != n)
    {
      throw ConfigError("sdp: constraint matrix has the wrong size");
    }
  }

  // Internally: minimize <c, x> with c = -objective; dual maximize b'y, s = c - A*(y).
  const MatrixXcd c = -problem.objective;
  const auto &a = problem.constraints;
  const VectorXd &b = problem.rhs;

  const double norm_b = b.norm();
  const double norm_c = c.norm();
  double max_a = 0.0;
  double xi = std::max(10.0, std::sqrt(static_cast<double>(n)));
  for (Index k = 0; k < m; ++k)
  {
    const double na = a[static_cast<std::size_t>(k)].norm();
    max_a = std::max(max_a, na);
    xi = std::max(xi, static_cast<double>(n) * (1.0 + std::abs(b[k])) / (1.0 + na));
  }
  const double eta = std::max({10.0, std::sqrt(static_cast<double>(n)), max_a, norm_c});

  MatrixXcd x = xi * MatrixXcd::Identity(n, n);
  MatrixXcd s = eta * MatrixXcd::Identity(n, n);
  VectorXd y = VectorXd::Zero(m);
  const double start_scale = x.norm() + s.norm();

  Result result;
  for (int iter = 0; iter <= options.max_iterations; ++iter)
  {
    const VectorXd rp = b - forward_map(a, x);
    const MatrixXcd rd = c - adjoint_map(a, y, n) - s;
    const double pobj = inner(c, x);
    const double dobj = b.dot(y);
    const double gap = inner(x, s);
    const double mu = gap / static_cast<double>(n);

    result.primal_residual = rp.norm() / (1.0 + norm_b);
    result.dual_residual = rd.norm() / (1.0 + norm_c);
    result.relative_gap = std::abs(gap) / (1.0 + std::abs(pobj) + std::abs(dobj));
    result.primal_objective = -pobj;
    result.dual_objective = -dobj;
    result.iterations = iter;

    if (result.primal_residual <= options.tolerance && result.dual_residual <= options.tolerance &&
        result.relative_gap <= options.tolerance)
    {
      result.x = x;
      result.y = -y;
      result.s = s;
      return result;
    }

    const double x_norm = x.norm();
    const double y_norm = y.norm();
    if (!std::isfinite(x_norm) || !std::isfinite(y_norm))
    {
      throw ConvergenceError("sdp: iterates became non-finite at iteration " + std::to_string(iter));
    }
    if (x_norm > 1e12 * (1.0 + start_scale) && result.dual_residual > 1e3 * options.tolerance)
    {
      throw InfeasibleError("sdp: primal iterates diverge (objective unbounded, dual infeasible); |X| = " +
                            std::to_string(x_norm));
    }
    if (y_norm > 1e12 * (1.0 + start_scale) && result.primal_residual > 1e3 * options.tolerance)
    {
      throw InfeasibleError("sdp: dual iterates diverge (primal infeasible); |y| = " + std::to_string(y_norm));
    }
    if (iter == options.max_iterations)
    {
      break;
    }

    Eigen::LLT<MatrixXcd> s_llt(s);
    if (s_llt.info() != Eigen::Success)
    {
      throw ConvergenceError("sdp: dual slack lost definiteness at iteration " + std::to_string(iter));
    }
    const MatrixXcd s_inv = herm(s_llt.solve(MatrixXcd::Identity(n, n)));

    // Schur complement M_kl = Re tr(A_k X A_l S^-1).
    std::vector<MatrixXcd> xas(static_cast<std::size_t>(m));
    for (Index l = 0; l < m; ++l)
    {
      xas[static_cast<std::size_t>(l)] = x * a[static_cast<std::size_t>(l)] * s_inv;
    }
    MatrixXd schur(m, m);
    for (Index k = 0; k < m; ++k)
    {
      for (Index l = 0; l <= k; ++l)
      {
        const double v = inner(a[static_cast<std::size_t>(k)], xas[static_cast<std::size_t>(l)]);
        schur(k, l) = v;
        schur(l, k) = v;
      }
    }
    Eigen::LDLT<MatrixXd> schur_ldlt(schur);
    if (schur_ldlt.info() != Eigen::Success)
    {
      throw ConvergenceError("sdp: Schur complement factorization failed at iteration " + std::to_string(iter));
    }
    const MatrixXcd x_rd_sinv = x * rd * s_inv;

    auto direction = [&](const MatrixXcd &rc, MatrixXcd &dx, VectorXd &dy, MatrixXcd &ds) {
      VectorXd rhs(m);
      for (Index k = 0; k < m; ++k)
      {
        rhs[k] = rp[k] - inner(a[static_cast<std::size_t>(k)], rc) + inner(a[static_cast<std::size_t>(k)], x_rd_sinv);
      }
      dy = schur_ldlt.solve(rhs);
      ds = rd - adjoint_map(a, dy, n);
      dx = rc - herm(x * ds * s_inv);
    };

    // Predictor.
    MatrixXcd dx_aff, ds_aff;
    VectorXd dy_aff;
    direction(-x, dx_aff, dy_aff, ds_aff);
    const double ap_aff = std::min(1.0, max_step(x, dx_aff));
    const double ad_aff = std::min(1.0, max_step(s, ds_aff));
    const double mu_aff = inner(x + ap_aff * dx_aff, s + ad_aff * ds_aff) / static_cast<double>(n);
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // Corrector.
    MatrixXcd dx, ds;
    VectorXd dy;
    direction(sigma * mu * s_inv - x - herm(dx_aff * ds_aff * s_inv), dx, dy, ds);

    const double ap = std::min(1.0, options.step_fraction * max_step(x, dx));
    const double ad = std::min(1.0, options.step_fraction * max_step(s, ds));
    x = herm(x + ap * dx);
    y += ad * dy;
    s = herm(s + ad * ds);
  }

  std::ostringstream msg;
  msg << "sdp: no convergence in " << options.max_iterations << " iterations (|X| = " << x.norm()
      << ", |y| = " << y.norm() << ", |S| = " << s.norm() << ", primal residual " << result.primal_residual
      << ", dual residual " << result.dual_residual << ", gap " << result.relative_gap << ")";
  throw ConvergenceError(msg.str());
}

}  // namespace risopt::sdp
