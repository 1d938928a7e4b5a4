#pragma once

#include "kritz/kernels.hpp"
#include "kritz/types.hpp"

namespace kritz {

/// Kernel expansion  psi(x) = sum_j coefficients[j] * k(x, centers[j]).
struct Expansion {
  KernelSpec kernel;
  PointList centers;
  Vector coefficients;

  int size() const { return static_cast<int>(coefficients.size()); }
};

}  // namespace kritz
