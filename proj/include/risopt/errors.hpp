// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_ERRORS_HPP
#define RISOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace risopt
{

// Root of every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (Si/Ci, coincident dipoles, ...).
class DomainError : public Error
{
public:
  using Error::Error;
};

// Invalid scene, model or command configuration.
class ConfigError : public Error
{
public:
  using Error::Error;
};

// Malformed or inconsistent input file.
class ParseError : public Error
{
public:
  using Error::Error;
};

// Value outside an allowed range (capacitance, gate position, element index).
class RangeError : public Error
{
public:
  using Error::Error;
};

// Loaded network matrix (Z + Z_L) is numerically singular.
class SingularError : public Error
{
public:
  SingularError(const std::string &what, double rcond) : Error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

private:
  double rcond_;
};

// Physically meaningless evaluation (non-positive transmit power, ...).
class PhysicsError : public Error
{
public:
  using Error::Error;
};

// The semidefinite program has no feasible point, or is unbounded.
class InfeasibleError : public Error
{
public:
  using Error::Error;
};

// Interior-point iteration did not reach the requested tolerance.
class ConvergenceError : public Error
{
public:
  using Error::Error;
};

// Relaxed solution is not (numerically) rank one.
class NotTightError : public Error
{
public:
  NotTightError(const std::string &what, double ratio) : Error(what), ratio_(ratio) {}
  double ratio() const { return ratio_; }

private:
  double ratio_;
};

// Request refused because its cost grows exponentially (brute-force oracle).
class ComplexityError : public Error
{
public:
  using Error::Error;
};

}  // namespace risopt

#endif  // RISOPT_ERRORS_HPP
