#include "kritz/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kritz/densela.hpp"
#include "kritz/errors.hpp"

namespace kritz {

AdamState AdamState::zero(Eigen::Index n, double beta1, double beta2,
                          double epsilon) {
  AdamState s;
  s.first_moment = Vector::Zero(n);
  s.second_moment = Vector::Zero(n);
  s.beta1 = beta1;
  s.beta2 = beta2;
  s.epsilon = epsilon;
  return s;
}

void adam_step(AdamState& state, Vector& coefficients, const Vector& grad,
               double learning_rate) {
  if (grad.size() != coefficients.size() ||
      grad.size() != state.first_moment.size()) {
    throw std::invalid_argument("adam_step: dimension mismatch");
  }
  if (!grad.allFinite()) {
    Eigen::Index bad = 0;
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
      if (!std::isfinite(grad(i))) {
        bad = i;
        break;
      }
    }
    std::ostringstream msg;
    msg << "adam_step: non-finite gradient entry " << bad << " = " << grad(bad)
        << " at step " << state.step + 1;
    throw NumericalError(msg.str());
  }
  state.step += 1;
  state.first_moment = state.beta1 * state.first_moment + (1.0 - state.beta1) * grad;
  state.second_moment =
      state.beta2 * state.second_moment +
      (1.0 - state.beta2) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  coefficients.array() -=
      learning_rate * (state.first_moment.array() / c1) /
      ((state.second_moment.array() / c2).sqrt() + state.epsilon);
}

std::vector<int> resolve_milestones(const TrainConfig& config) {
  if (!config.milestones.empty()) {
    if (static_cast<int>(config.milestones.size()) > config.max_reductions) {
      throw std::invalid_argument("more milestones than allowed reductions");
    }
    std::vector<int> ms = config.milestones;
    std::sort(ms.begin(), ms.end());
    if (ms.front() < 1 || std::adjacent_find(ms.begin(), ms.end()) != ms.end()) {
      throw std::invalid_argument("milestones must be distinct positive epochs");
    }
    return ms;
  }
  std::vector<int> ms;
  const int k = config.max_reductions;
  for (int i = 1; i <= k; ++i) {
    const int epoch = static_cast<int>(
        (static_cast<long long>(config.epochs) * i) / (k + 1));
    if (epoch >= 1 && (ms.empty() || ms.back() != epoch)) ms.push_back(epoch);
  }
  return ms;
}

std::pair<Expansion, TrainHistory> train(const ProblemSpec& problem,
                                         const KernelSpec& kernel,
                                         std::span<const Point2> centers,
                                         const TrainConfig& config,
                                         const QuadratureSet* fixed) {
  if (config.epochs < 0) throw std::invalid_argument("train: negative epoch count");
  if (!(config.lr_factor > 0.0 && config.lr_factor < 1.0)) {
    throw std::invalid_argument("train: lr_factor must lie in (0, 1)");
  }
  const auto n = static_cast<Eigen::Index>(centers.size());
  const int n_centers = static_cast<int>(n);
  BatchSizes sizes = config.batch;
  if (sizes.interior <= 0) sizes.interior = default_batch_sizes(n_centers).interior;
  if (sizes.boundary <= 0) sizes.boundary = default_batch_sizes(n_centers).boundary;
  const std::vector<int> milestones = resolve_milestones(config);

  std::unique_ptr<SpdFactor> gram_factor;
  if (config.basis == BasisKind::Lagrange) {
    gram_factor = std::make_unique<SpdFactor>(kernel_matrix(kernel, centers));
    if (gram_factor->fallback()) {
      throw NumericalError(
          "train: kernel matrix factorization failed in Lagrange mode "
          "(near-duplicate centers?)");
    }
  }

  QuadraticForm full_form;
  QuadratureSet owned_quadrature;
  if (config.mode == TrainMode::FullBatch && config.epochs > 0) {
    if (fixed == nullptr) {
      Rng rng(derive_seed(config.seed, 0xFB));
      owned_quadrature = sample_quadrature(problem.domain, sizes, rng);
      fixed = &owned_quadrature;
    }
    full_form = assemble(problem, kernel, centers, *fixed);
    if (gram_factor) full_form = to_lagrange(full_form, *gram_factor);
  }

  Vector coeffs = Vector::Zero(n);
  AdamState adam = AdamState::zero(n, config.adam_beta1, config.adam_beta2,
                                   config.adam_epsilon);
  TrainHistory history;
  history.epochs.reserve(config.epochs);
  double lr = config.lr_initial;
  std::size_t next_milestone = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (next_milestone < milestones.size() &&
        epoch == milestones[next_milestone]) {
      lr *= config.lr_factor;
      ++next_milestone;
    }
    const QuadraticForm* form = &full_form;
    QuadraticForm batch_form;
    if (config.mode == TrainMode::Resample) {
      Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(epoch)));
      batch_form = mc_batch(problem, kernel, centers, sizes, rng,
                            /*warn_undersampled=*/epoch == 0);
      if (gram_factor) batch_form = to_lagrange(batch_form, *gram_factor);
      form = &batch_form;
    }
    const Vector grad = energy_gradient(*form, coeffs);
    history.epochs.push_back(
        {epoch, energy_value(*form, coeffs), grad.norm(), lr});
    adam_step(adam, coeffs, grad, lr);
  }

  Expansion expansion;
  expansion.kernel = kernel;
  expansion.centers.assign(centers.begin(), centers.end());
  expansion.coefficients = gram_factor ? gram_factor->solve(coeffs) : coeffs;
  return {std::move(expansion), std::move(history)};
}

GalerkinResult solve_galerkin(const ProblemSpec& problem,
                              const KernelSpec& kernel,
                              std::span<const Point2> centers,
                              int fixed_interior, int fixed_boundary,
                              std::uint64_t seed) {
  const QuadratureSet quad =
      fixed_quadrature(problem.domain, fixed_interior, fixed_boundary, seed);
  const QuadraticForm form = assemble(problem, kernel, centers, quad);
  SolveResult solved = solve_spd(form.A, form.ell);
  GalerkinResult result;
  result.condition = condition_number(form.A);
  result.fallback = solved.fallback;
  result.energy = energy_value(form, solved.x);
  result.expansion.kernel = kernel;
  result.expansion.centers.assign(centers.begin(), centers.end());
  result.expansion.coefficients = std::move(solved.x);
  return result;
}

}  // namespace kritz
