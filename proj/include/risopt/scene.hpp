// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_SCENE_HPP
#define RISOPT_SCENE_HPP

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "risopt/constants.hpp"
#include "risopt/dipole.hpp"

namespace risopt
{

using Vector3 = std::array<double, 3>;

/// Transmitter, receiver and RIS element grid. The array lies in the z = 0 plane, centered on the
/// origin, with its rows along x (the dipole axis). Tx and Rx sit in the x-z plane at signed
/// angles beta and alpha from the surface normal (+z).
struct SceneConfig
{
  double frequency = 3.55e9;  // Hz
  int rows = 2;
  int cols = 7;
  double col_spacing = 0.040;  // m, center to center along a row
  double row_spacing = 0.048;  // m
  DipoleSpec element;
  std::optional<DipoleSpec> tx_element;  // defaults to `element`
  std::optional<DipoleSpec> rx_element;
  double tx_angle_beta = -10.0;  // deg
  double rx_angle_alpha = 45.0;  // deg
  double tx_distance = 2.0;      // m
  double rx_distance = 2.0;      // m
  double tx_gain = 1.64;
  double rx_gain = 1.64;
  cdouble source_impedance{50.0, 0.0};
  cdouble receiver_impedance{50.0, 0.0};

  int element_count() const { return rows * cols; }
  const DipoleSpec &tx_dipole() const { return tx_element ? *tx_element : element; }
  const DipoleSpec &rx_dipole() const { return rx_element ? *rx_element : element; }

  /// Throws ConfigError on any violated invariant, including overlapping elements.
  void validate() const;
};

Vector3 tx_position(const SceneConfig &scene);
Vector3 rx_position(const SceneConfig &scene);

/// Element centers in port order: row-major, row 0 first (elements 1..cols), x increasing.
std::vector<Vector3> element_positions(const SceneConfig &scene);

/// Multiport impedance matrix. Port 0 is Tx, port 1 is Rx, ports 2.. are the RIS elements
/// (0-based here; files and user-facing indices are 1-based).
struct PortNetwork
{
  Eigen::MatrixXcd z;
  bool los_zeroed = false;

  int n_ports() const { return static_cast<int>(z.rows()); }
  int element_count() const { return n_ports() - 2; }

  /// max |z_ij - z_ji| / max |z|, zero for an exactly symmetric matrix.
  double relative_asymmetry() const;
};

/// Assemble the (N+2)-port matrix from induced-EMF self and mutual impedances.
PortNetwork build_scene_matrix(const SceneConfig &scene);

/// Copy with the direct Tx-Rx coupling removed.
PortNetwork zero_los(const PortNetwork &net);

/// Radial and axial components of the separation between two parallel dipoles along x.
struct Separation
{
  double radial;
  double axial;
};
Separation decompose(const Vector3 &from, const Vector3 &to);

}  // namespace risopt

#endif  // RISOPT_SCENE_HPP
