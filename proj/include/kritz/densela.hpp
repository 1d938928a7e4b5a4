#pragma once

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <memory>
#include <span>

#include "kritz/types.hpp"

namespace kritz {

/// Factorization of a symmetric matrix intended to be positive definite.
/// Uses a Cholesky factorization and, when that fails numerically (the
/// matrix is indefinite or too ill-conditioned), falls back to a
/// rank-revealing SVD solve with relative truncation threshold 1e-14.
class SpdFactor {
 public:
  explicit SpdFactor(const Matrix& A);

  bool fallback() const { return fallback_; }

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& B) const;

 private:
  Eigen::LLT<Matrix> llt_;
  std::unique_ptr<Eigen::BDCSVD<Matrix>> svd_;
  bool fallback_ = false;
};

struct SolveResult {
  Vector x;
  bool fallback = false;
};

/// Solve A x = b for symmetric A, falling back to a truncated least-squares
/// solve when the positive-definite factorization fails.
SolveResult solve_spd(const Matrix& A, const Vector& b);

/// Spectral condition number sigma_max / sigma_min via a full singular value
/// decomposition; +infinity when sigma_min underflows.
double condition_number(const Matrix& A);

struct RegressionLine {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares on (log h, log err); the slope estimates the
/// algebraic convergence rate err ~ C * h^slope.
RegressionLine loglog_rate(std::span<const double> hs,
                           std::span<const double> errors);

}  // namespace kritz
