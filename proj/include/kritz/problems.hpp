#pragma once

#include <functional>
#include <optional>
#include <string>

#include "kritz/geometry.hpp"
#include "kritz/types.hpp"

namespace kritz {

using ScalarField = std::function<double(const Point2&)>;
using GradientField = std::function<Point2(const Point2&)>;

/// Known strong solution of a benchmark problem, used for error reporting.
struct ExactSolution {
  ScalarField value;
  GradientField gradient;
  /// Sobolev regularity of the solution; infinity for smooth solutions.
  double sobolev_regularity = 0.0;
};

/// Data for  -div(kappa grad u) + rho u = f  with Dirichlet values g_D
/// imposed weakly (consistency + symmetry + penalty terms) and an optional
/// Neumann flux g_N.
struct ProblemSpec {
  std::string name;
  Domain domain;
  ScalarField kappa;
  ScalarField rho;
  ScalarField f;
  ScalarField g_dirichlet;
  ScalarField g_neumann;  ///< empty unless the problem has a Neumann part
  double penalty = 100.0;
  std::optional<ExactSolution> exact;
};

/// Poisson problem on the unit square with f = 4 and boundary values
/// g(x) = 1 - x1^2 - x2^2; the strong solution is g itself, so the solution
/// is smooth and convergence is limited only by the kernel.
ProblemSpec smooth_poisson();

/// Laplace problem on a circular sector of radius 1.5 and opening angle
/// `angle` (default 3*pi/2) with boundary values
/// g = r^(1/angle) * sin(theta/angle) + 1, theta the polar angle in
/// [0, angle]. The solution equals g; its gradient blows up at the re-entrant
/// corner, capping the Sobolev regularity at 1/angle + 1.
ProblemSpec singular_sector(double angle = 1.5 * std::numbers::pi);

}  // namespace kritz
