#pragma once

#include <span>

#include "kritz/expansion.hpp"
#include "kritz/kernels.hpp"
#include "kritz/types.hpp"

namespace kritz {

struct InterpolationResult {
  Expansion expansion;
  bool fallback = false;  ///< true when the Gram solve needed the SVD fallback
};

/// Kernel interpolant of the given values at the centers: solves
/// K beta = values. `ridge` adds a diagonal regularization for near-singular
/// Gram matrices; the default 0 is plain interpolation.
InterpolationResult interpolate(const KernelSpec& kernel,
                                std::span<const Point2> centers,
                                const Vector& values, double ridge = 0.0);

/// Pointwise values of the expansion at the given points.
Vector evaluate_expansion(const Expansion& expansion,
                          std::span<const Point2> points);

double evaluate_expansion_at(const Expansion& expansion, const Point2& point);

/// Pointwise gradients of the expansion. Propagates the Matern12
/// singular-evaluation error when a point coincides with a center.
PointList evaluate_expansion_grad(const Expansion& expansion,
                                  std::span<const Point2> points);

/// Cardinal-function table L(p, j) = l_j(points[p]) where l_j is the unique
/// expansion-space function with l_j(centers[i]) = delta_ij.
Matrix lagrange_basis_values(const KernelSpec& kernel,
                             std::span<const Point2> centers,
                             std::span<const Point2> points);

}  // namespace kritz
