// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_VERSION_HPP
#define RISOPT_VERSION_HPP

namespace risopt
{
inline constexpr const char *kVersion = "0.1.0";
}

#endif  // RISOPT_VERSION_HPP
