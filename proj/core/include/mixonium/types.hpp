#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mixonium {

using Complex = std::complex<double>;
using DensityMatrix = Eigen::Matrix3cd;
using ComplexSeries = std::vector<Complex>;
using RealSeries = std::vector<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised when a numerical integration leaves its validity envelope
/// (trace drift, non-finite values). Maps to CLI exit status 2.
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed or inconsistent run configuration. Maps to CLI exit
/// status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mixonium
