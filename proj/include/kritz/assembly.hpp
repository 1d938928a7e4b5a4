#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kritz/densela.hpp"
#include "kritz/geometry.hpp"
#include "kritz/kernels.hpp"
#include "kritz/problems.hpp"
#include "kritz/rng.hpp"
#include "kritz/types.hpp"

namespace kritz {

/// Quadrature nodes used to discretize the energy: interior nodes for the
/// volume terms and boundary nodes for the weak Dirichlet terms. `neumann`
/// stays empty unless the problem prescribes a flux on part of the boundary.
struct QuadratureSet {
  std::vector<WeightedPoint> interior;
  std::vector<BoundarySample> boundary;
  std::vector<BoundarySample> neumann;
};

enum class BasisKind { Direct, Lagrange };

/// Discretized energy  I(beta) = 1/2 beta' A beta - beta' ell  over a kernel
/// expansion. A is symmetric; its stationary point solves A beta = ell.
struct QuadraticForm {
  Matrix A;
  Vector ell;
  BasisKind basis = BasisKind::Direct;

  int size() const { return static_cast<int>(ell.size()); }
};

/// Discretize the bilinear form and load functional over the given centers
/// and quadrature:
///   A_ij  = sum_q w_q [kappa grad k_j . grad k_i + rho k_j k_i]
///         + sum_b w_b [-(grad k_j . n) k_i - (grad k_i . n) k_j
///                      + penalty k_j k_i]
///   ell_i = sum_q w_q f k_i
///         + sum_b w_b [-(grad k_i . n) g_D + penalty g_D k_i]
///         + sum_{b in neumann} w_b g_N k_i
/// Accumulation runs over fixed-size point chunks in a fixed order, so the
/// result is deterministic; A is symmetrized with its transpose at the end.
QuadraticForm assemble(const ProblemSpec& problem, const KernelSpec& kernel,
                       std::span<const Point2> centers,
                       const QuadratureSet& quad);

/// 1/2 beta' A beta - beta' ell.
double energy_value(const QuadraticForm& form, const Vector& beta);

/// A beta - ell.
Vector energy_gradient(const QuadraticForm& form, const Vector& beta);

struct BatchSizes {
  int interior = 0;
  int boundary = 0;
};

/// Default per-epoch batch sizes; chosen to keep well more quadrature points
/// than centers.
BatchSizes default_batch_sizes(int n_centers);

/// Draw a fresh interior + boundary quadrature set from `rng`.
QuadratureSet sample_quadrature(const Domain& domain, BatchSizes sizes,
                                Rng& rng);

/// Assemble over a freshly sampled quadrature set (one optimizer mini-batch).
/// Complains on stderr when the batch carries fewer interior points than
/// centers, which starves the volume terms; set warn_undersampled = false to
/// silence repeated calls.
QuadraticForm mc_batch(const ProblemSpec& problem, const KernelSpec& kernel,
                       std::span<const Point2> centers, BatchSizes sizes,
                       Rng& rng, bool warn_undersampled = true);

/// The frozen quadrature used for the linear-system route and for final
/// energy reporting; derived deterministically from the run seed.
QuadratureSet fixed_quadrature(const Domain& domain, int interior_count,
                               int boundary_count, std::uint64_t seed);

/// Change of coordinates to the Lagrange (cardinal) basis of the expansion
/// space: with K the kernel Gram matrix, returns (K^-1 A K^-1, K^-1 ell).
/// Both maps go through the factorization; K^-1 is never formed.
QuadraticForm to_lagrange(const QuadraticForm& form,
                          const SpdFactor& kernel_factor);

}  // namespace kritz
