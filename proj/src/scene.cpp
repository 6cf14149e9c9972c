// SPDX-License-Identifier: Apache-2.0

#include "risopt/scene.hpp"

#include <cmath>
#include <string>

#include "risopt/errors.hpp"

namespace risopt
{

void SceneConfig::validate() const
{
  if (!(frequency > 0.0) || !std::isfinite(frequency))
  {
    throw ConfigError("scene: frequency must be > 0");
  }
  if (rows < 0 || cols < 0)
  {
    throw ConfigError("scene: rows and cols must be >= 0");
  }
  if (!(tx_distance > 0.0) || !(rx_distance > 0.0))
  {
    throw ConfigError("scene: distances must be > 0");
  }
  if (!(std::abs(tx_angle_beta) < 90.0) || !(std::abs(rx_angle_alpha) < 90.0))
  {
    throw ConfigError("scene: |angles| must be < 90 deg");
  }
  if (!(tx_gain > 0.0) || !(rx_gain > 0.0))
  {
    throw ConfigError("scene: gains must be > 0");
  }
  if (source_impedance.real() < 0.0 || receiver_impedance.real() < 0.0)
  {
    throw ConfigError("scene: terminations must be passive");
  }
  element.validate();
  tx_dipole().validate();
  rx_dipole().validate();
  if (cols > 1 && col_spacing < element.length)
  {
    throw ConfigError("scene: col_spacing " + std::to_string(col_spacing) + " m is below the element length " +
                      std::to_string(element.length) + " m (collinear elements overlap)");
  }
  if (rows > 1 && row_spacing <= element.strip_width)
  {
    throw ConfigError("scene: row_spacing must exceed the strip width");
  }
}

Vector3 tx_position(const SceneConfig &scene)
{
  const double b = deg2rad(scene.tx_angle_beta);
  return {scene.tx_distance * std::sin(b), 0.0, scene.tx_distance * std::cos(b)};
}

Vector3 rx_position(const SceneConfig &scene)
{
  const double a = deg2rad(scene.rx_angle_alpha);
  return {scene.rx_distance * std::sin(a), 0.0, scene.rx_distance * std::cos(a)};
}

std::vector<Vector3> element_positions(const SceneConfig &scene)
{
  std::vector<Vector3> out;
  out.reserve(static_cast<std::size_t>(scene.element_count()));
  for (int r = 0; r < scene.rows; ++r)
  {
    const double y = (r - 0.5 * (scene.rows - 1)) * scene.row_spacing;
    for (int c = 0; c < scene.cols; ++c)
    {
      const double x = (c - 0.5 * (scene.cols - 1)) * scene.col_spacing;
      out.push_back({x, y, 0.0});
    }
  }
  return out;
}

Separation decompose(const Vector3 &from, const Vector3 &to)
{
  const double dx = to[0] - from[0];
  const double dy = to[1] - from[1];
  const double dz = to[2] - from[2];
  return {std::hypot(dy, dz), dx};
}

double PortNetwork::relative_asymmetry() const
{
  const double scale = z.cwiseAbs().maxCoeff();
  if (scale == 0.0)
  {
    return 0.0;
  }
  return (z - z.transpose()).cwiseAbs().maxCoeff() / scale;
}

PortNetwork build_scene_matrix(const SceneConfig &scene)
{
  scene.validate();
  std::vector<Vector3> pos{tx_position(scene), rx_position(scene)};
  std::vector<const DipoleSpec *> dip{&scene.tx_dipole(), &scene.rx_dipole()};
  for (const auto &p : element_positions(scene))
  {
    pos.push_back(p);
    dip.push_back(&scene.element);
  }

  const auto n = static_cast<Eigen::Index>(pos.size());
  PortNetwork net;
  net.z.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    net.z(i, i) = self_impedance(*dip[i], scene.frequency).value;
    for (Eigen::Index j = i + 1; j < n; ++j)
    {
      const Separation s = decompose(pos[i], pos[j]);
      const cdouble zij = mutual_impedance(*dip[i], *dip[j], s.radial, s.axial, scene.frequency).value;
      net.z(i, j) = zij;
      net.z(j, i) = zij;
    }
  }
  return net;
}

PortNetwork zero_los(const PortNetwork &net)
{
  PortNetwork out = net;
  if (out.n_ports() >= 2)
  {
    out.z(0, 1) = 0.0;
    out.z(1, 0) = 0.0;
  }
  out.los_zeroed = true;
  return out;
}

}  // namespace risopt
