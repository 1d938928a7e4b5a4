#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kritz/assembly.hpp"
#include "kritz/expansion.hpp"
#include "kritz/problems.hpp"

namespace kritz {

/// Adam optimizer state (first/second moment estimates and step counter).
struct AdamState {
  Vector first_moment;
  Vector second_moment;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState zero(Eigen::Index n, double beta1 = 0.9,
                        double beta2 = 0.999, double epsilon = 1e-8);
};

/// One bias-corrected Adam update of `coefficients` in place. Throws
/// NumericalError on non-finite gradient entries.
void adam_step(AdamState& state, Vector& coefficients, const Vector& grad,
               double learning_rate);

enum class TrainMode { Resample, FullBatch };

struct TrainConfig {
  int epochs = 5000;
  double lr_initial = 1e-2;
  double lr_factor = 0.5;
  int max_reductions = 15;
  /// Epoch indices at which the learning rate is multiplied by lr_factor.
  /// Empty means max_reductions milestones equally spaced over the budget.
  std::vector<int> milestones;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  BasisKind basis = BasisKind::Lagrange;
  /// Per-epoch batch sizes; zero entries resolve via default_batch_sizes.
  BatchSizes batch;
  /// Resample draws a fresh quadrature batch every epoch; FullBatch freezes
  /// one set for the whole run, which makes the optimization deterministic
  /// against a fixed quadratic form.
  TrainMode mode = TrainMode::Resample;
  std::uint64_t seed = 0;
};

struct EpochLog {
  int epoch = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double learning_rate = 0.0;
};

struct TrainHistory {
  std::vector<EpochLog> epochs;
};

/// Resolve the milestone schedule for a config (validates user milestones,
/// or spaces max_reductions drops equally over the epoch budget).
std::vector<int> resolve_milestones(const TrainConfig& config);

/// Energy-minimization training loop: per epoch, assemble the batch
/// quadratic form, take one Adam step on its gradient, and apply the
/// milestone learning-rate schedule. In Lagrange mode the optimization runs
/// in cardinal coordinates c and the kernel-basis coefficients K^-1 c are
/// recovered at the end. Coefficients start at zero. Deterministic per seed.
///
/// `fixed` supplies the quadrature for FullBatch mode (so callers can compare
/// against a direct solve on the identical set); when null, a set is drawn
/// from the config seed.
std::pair<Expansion, TrainHistory> train(const ProblemSpec& problem,
                                         const KernelSpec& kernel,
                                         std::span<const Point2> centers,
                                         const TrainConfig& config,
                                         const QuadratureSet* fixed = nullptr);

struct GalerkinResult {
  Expansion expansion;
  double condition = 0.0;
  bool fallback = false;
  double energy = 0.0;  ///< energy of the solution on the assembly quadrature
};

/// Direct route: assemble the quadratic form on the frozen quadrature and
/// solve the stationarity system A beta = ell.
GalerkinResult solve_galerkin(const ProblemSpec& problem,
                              const KernelSpec& kernel,
                              std::span<const Point2> centers,
                              int fixed_interior, int fixed_boundary,
                              std::uint64_t seed);

}  // namespace kritz
