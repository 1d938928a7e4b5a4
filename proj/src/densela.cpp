#include "kritz/densela.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kritz {

SpdFactor::SpdFactor(const Matrix& A) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("SpdFactor: matrix must be square");
  }
  llt_.compute(A);
  if (llt_.info() != Eigen::Success) {
    svd_ = std::make_unique<Eigen::BDCSVD<Matrix>>(
        A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd_->setThreshold(1e-14);
    fallback_ = true;
  }
}

Vector SpdFactor::solve(const Vector& b) const {
  if (fallback_) return svd_->solve(b);
  return llt_.solve(b);
}

Matrix SpdFactor::solve(const Matrix& B) const {
  if (fallback_) return svd_->solve(B);
  return llt_.solve(B);
}

SolveResult solve_spd(const Matrix& A, const Vector& b) {
  if (A.rows() != b.size()) {
    throw std::invalid_argument("solve_spd: dimension mismatch");
  }
  SpdFactor factor(A);
  return {factor.solve(b), factor.fallback()};
}

double condition_number(const Matrix& A) {
  if (A.size() == 0 || A.norm() == 0.0) {
    throw std::invalid_argument("condition_number: matrix must be non-zero");
  }
  Eigen::BDCSVD<Matrix> svd(A);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  const double cond = smax / smin;
  if (!std::isfinite(cond)) return std::numeric_limits<double>::infinity();
  return cond;
}

RegressionLine loglog_rate(std::span<const double> hs,
                           std::span<const double> errors) {
  if (hs.size() != errors.size()) {
    throw std::invalid_argument("loglog_rate: length mismatch");
  }
  if (hs.size() < 2) {
    throw std::invalid_argument("loglog_rate: need at least two points");
  }
  const auto n = static_cast<double>(hs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(hs[i] > 0.0) || !(errors[i] > 0.0)) {
      throw std::invalid_argument("loglog_rate: inputs must be positive");
    }
    mx += std::log(hs[i]);
    my += std::log(errors[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double dx = std::log(hs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("loglog_rate: mesh norms are all equal");
  }
  RegressionLine line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  return line;
}

}  // namespace kritz
