#include "kritz/interpolation.hpp"

#include <algorithm>
#include <stdexcept>

#include "kritz/densela.hpp"

namespace kritz {

namespace {

constexpr std::size_t kChunk = 4096;

}  // namespace

InterpolationResult interpolate(const KernelSpec& kernel,
                                std::span<const Point2> centers,
                                const Vector& values, double ridge) {
  if (static_cast<Eigen::Index>(centers.size()) != values.size()) {
    throw std::invalid_argument("interpolate: one value per center required");
  }
  if (ridge < 0.0) {
    throw std::invalid_argument("interpolate: ridge must be non-negative");
  }
  Matrix K = kernel_matrix(kernel, centers);
  if (ridge > 0.0) K.diagonal().array() += ridge;
  SpdFactor factor(K);
  InterpolationResult result;
  result.expansion.kernel = kernel;
  result.expansion.centers.assign(centers.begin(), centers.end());
  result.expansion.coefficients = factor.solve(values);
  result.fallback = factor.fallback();
  return result;
}

Vector evaluate_expansion(const Expansion& expansion,
                          std::span<const Point2> points) {
  Vector out(static_cast<Eigen::Index>(points.size()));
  Matrix phi;
  for (std::size_t start = 0; start < points.size(); start += kChunk) {
    const std::size_t m = std::min(kChunk, points.size() - start);
    kernel_tableau(expansion.kernel, points.subspan(start, m),
                   expansion.centers, &phi, nullptr, nullptr);
    out.segment(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(m))
        .noalias() = phi * expansion.coefficients;
  }
  return out;
}

double evaluate_expansion_at(const Expansion& expansion, const Point2& point) {
  return evaluate_expansion(expansion, std::span<const Point2>(&point, 1))(0);
}

PointList evaluate_expansion_grad(const Expansion& expansion,
                                  std::span<const Point2> points) {
  PointList out(points.size());
  Matrix gx, gy;
  for (std::size_t start = 0; start < points.size(); start += kChunk) {
    const std::size_t m = std::min(kChunk, points.size() - start);
    kernel_tableau(expansion.kernel, points.subspan(start, m),
                   expansion.centers, nullptr, &gx, &gy);
    const Vector vx = gx * expansion.coefficients;
    const Vector vy = gy * expansion.coefficients;
    for (std::size_t i = 0; i < m; ++i) {
      out[start + i] = Point2(vx(static_cast<Eigen::Index>(i)),
                              vy(static_cast<Eigen::Index>(i)));
    }
  }
  return out;
}

Matrix lagrange_basis_values(const KernelSpec& kernel,
                             std::span<const Point2> centers,
                             std::span<const Point2> points) {
  const Matrix K = kernel_matrix(kernel, centers);
  SpdFactor factor(K);
  Matrix phi;
  kernel_tableau(kernel, points, centers, &phi, nullptr, nullptr);
  // L = Phi K^-1, computed as (K^-1 Phi')' to reuse the factorization
  return factor.solve(Matrix(phi.transpose())).transpose();
}

}  // namespace kritz
