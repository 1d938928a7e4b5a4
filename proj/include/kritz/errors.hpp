#pragma once

#include <stdexcept>
#include <string>

namespace kritz {

/// Thrown when a kernel gradient (or an exact-solution gradient) is requested
/// at a point where it does not exist, e.g. the exponential kernel at its
/// center or the corner singularity of the sector solution.
class SingularEvaluationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a center set contains (near-)duplicate points.
class DegenerateCentersError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Configuration / input-file problems. The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failures (non-finite gradients, failed factorizations in modes
/// that require them). The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kritz
