// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_NETWORK_IO_HPP
#define RISOPT_NETWORK_IO_HPP

#include <iosfwd>
#include <string>

#include "risopt/scene.hpp"

namespace risopt
{

// Impedance-matrix CSV: header `port_i,port_j,re_ohms,im_ohms`, one row per ordered pair,
// 1-based indices, LF line endings.
inline constexpr double kSymmetryTolerance = 1e-9;

void save_matrix(const PortNetwork &net, std::ostream &out);
void save_matrix(const PortNetwork &net, const std::string &path);

/// Rejects non-square, incomplete or duplicated entries (ParseError) and matrices whose
/// relative asymmetry exceeds kSymmetryTolerance (ParseError carrying the asymmetry).
/// los_zeroed is inferred from z(0,1) == z(1,0) == 0.
PortNetwork load_matrix(std::istream &in);
PortNetwork load_matrix(const std::string &path);

// Scene JSON: flat object with SceneConfig field names in snake_case, SI units, angles in
// degrees. Complex impedances are [re, im] pairs; dipole fields are flattened as
// element_length, element_strip_width, element_feed_gap (and tx_/rx_ prefixed overrides).
SceneConfig scene_from_json_text(const std::string &text);
SceneConfig load_scene(const std::string &path);
std::string scene_to_json_text(const SceneConfig &scene);

}  // namespace risopt

#endif  // RISOPT_NETWORK_IO_HPP
