#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

#include "kritz/errors.hpp"
#include "kritz/kernels.hpp"
#include "kritz/rng.hpp"

using namespace kritz;

namespace {

KernelSpec spec(KernelFamily family, double shape = 1.0) {
  return KernelSpec{family, shape};
}

Point2 fd_gradient(const KernelSpec& k, const Point2& x, const Point2& y,
                   double step = 1e-5) {
  Point2 g;
  for (int d = 0; d < 2; ++d) {
    Point2 hi = x, lo = x;
    hi(d) += step;
    lo(d) -= step;
    g(d) = (kernel_eval(k, hi, y) - kernel_eval(k, lo, y)) / (2.0 * step);
  }
  return g;
}

}  // namespace

TEST_CASE("kernel value at zero distance is one for every family") {
  const Point2 p(0.3, -0.2);
  for (const auto family : {KernelFamily::Matern12, KernelFamily::Matern32,
                            KernelFamily::Matern52, KernelFamily::WendlandC2}) {
    CHECK(kernel_eval(spec(family, 2.5), p, p) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("matern12 at unit distance equals exp(-1)") {
  const double v = kernel_eval(spec(KernelFamily::Matern12), Point2(1, 0), Point2(0, 0));
  CHECK(v == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(v == doctest::Approx(0.3678794).epsilon(1e-6));
}

TEST_CASE("matern52 at unit distance matches its closed form") {
  const double s5 = std::sqrt(5.0);
  const double expected = (1.0 + s5 + 5.0 / 3.0) * std::exp(-s5);
  const double v = kernel_eval(spec(KernelFamily::Matern52), Point2(0, 1), Point2(0, 0));
  CHECK(v == doctest::Approx(expected).epsilon(1e-14));
  CHECK(v == doctest::Approx(0.5240).epsilon(2e-4));
}

TEST_CASE("kernel is symmetric in its arguments") {
  Rng rng(41);
  for (const auto family : {KernelFamily::Matern12, KernelFamily::Matern32,
                            KernelFamily::Matern52, KernelFamily::WendlandC2}) {
    const KernelSpec k = spec(family, 1.3);
    for (int i = 0; i < 50; ++i) {
      const Point2 x(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const Point2 y(rng.uniform(-1, 1), rng.uniform(-1, 1));
      CHECK(kernel_eval(k, x, y) == kernel_eval(k, y, x));
    }
  }
}

TEST_CASE("smooth families have zero gradient at the center") {
  const Point2 p(0.4, 0.7);
  for (const auto family : {KernelFamily::Matern32, KernelFamily::Matern52,
                            KernelFamily::WendlandC2}) {
    const Point2 g = kernel_grad_x(spec(family, 3.0), p, p);
    CHECK(g.x() == 0.0);
    CHECK(g.y() == 0.0);
  }
}

TEST_CASE("matern12 gradient along the axis") {
  const Point2 g =
      kernel_grad_x(spec(KernelFamily::Matern12), Point2(1, 0), Point2(0, 0));
  CHECK(g.x() == doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));
  CHECK(g.y() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("matern12 gradient at the center is an error") {
  const KernelSpec k = spec(KernelFamily::Matern12);
  CHECK_THROWS_AS(kernel_grad_x(k, Point2(0.5, 0.5), Point2(0.5, 0.5)),
                  SingularEvaluationError);
  CHECK_THROWS_AS(
      kernel_grad_x(k, Point2(0.5, 0.5), Point2(0.5 + 1e-13, 0.5)),
      SingularEvaluationError);
}

TEST_CASE("matern52 gradient matches finite differences at a fixed point") {
  const KernelSpec k = spec(KernelFamily::Matern52);
  const Point2 x(0.3, 0.4), y(0, 0);
  const Point2 g = kernel_grad_x(k, x, y);
  const Point2 fd = fd_gradient(k, x, y);
  CHECK((g - fd).norm() / g.norm() < 1e-6);
}

TEST_CASE("gradients match finite differences on random pairs") {
  Rng rng(7);
  for (const auto family : {KernelFamily::Matern12, KernelFamily::Matern32,
                            KernelFamily::Matern52, KernelFamily::WendlandC2}) {
    const KernelSpec k = spec(family);
    int accepted = 0;
    while (accepted < 100) {
      const Point2 x(rng.uniform(0, 1), rng.uniform(0, 1));
      const Point2 y(rng.uniform(0, 1), rng.uniform(0, 1));
      const double r = (x - y).norm();
      if (r < 1e-3) continue;
      // keep away from the compact-support edge, where third derivatives
      // jump and the finite-difference error is no longer O(step^2)
      if (family == KernelFamily::WendlandC2 && std::abs(r - 1.0) < 0.1) continue;
      ++accepted;
      const Point2 g = kernel_grad_x(k, x, y);
      const Point2 fd = fd_gradient(k, x, y);
      CHECK((g - fd).norm() <= 1e-5 * std::max(g.norm(), 1e-8));
    }
  }
}

TEST_CASE("gradient is odd under swapping the arguments") {
  Rng rng(11);
  const KernelSpec k = spec(KernelFamily::Matern32, 2.0);
  for (int i = 0; i < 20; ++i) {
    const Point2 x(rng.uniform(0, 1), rng.uniform(0, 1));
    const Point2 y(rng.uniform(0, 1), rng.uniform(0, 1));
    const Point2 a = kernel_grad_x(k, x, y);
    const Point2 b = kernel_grad_x(k, y, x);
    CHECK((a + b).norm() < 1e-15);
  }
}

TEST_CASE("wendland kernel vanishes outside its support") {
  const KernelSpec k = spec(KernelFamily::WendlandC2, 2.0);
  CHECK(kernel_eval(k, Point2(0.5, 0), Point2(0, 0)) == 0.0);  // s = 1 exactly
  CHECK(kernel_eval(k, Point2(2, 0), Point2(0, 0)) == 0.0);
  CHECK(kernel_grad_x(k, Point2(2, 0), Point2(0, 0)).norm() == 0.0);
  CHECK(kernel_eval(k, Point2(0.49, 0), Point2(0, 0)) > 0.0);
}

TEST_CASE("kernel matrix of a single center") {
  const PointList centers = {Point2(0.2, 0.8)};
  const Matrix K = kernel_matrix(spec(KernelFamily::Matern32), centers);
  REQUIRE(K.rows() == 1);
  CHECK(K(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kernel matrix of two centers at unit distance, matern12") {
  const PointList centers = {Point2(0, 0), Point2(1, 0)};
  const Matrix K = kernel_matrix(spec(KernelFamily::Matern12), centers);
  const double e1 = std::exp(-1.0);
  CHECK(K(0, 0) == 1.0);
  CHECK(K(1, 1) == 1.0);
  CHECK(K(0, 1) == doctest::Approx(e1).epsilon(1e-15));
  CHECK(K(1, 0) == K(0, 1));
}

TEST_CASE("kernel matrix is bit-symmetric and positive definite") {
  Rng rng(23);
  for (const auto family : {KernelFamily::Matern12, KernelFamily::Matern32,
                            KernelFamily::Matern52, KernelFamily::WendlandC2}) {
    PointList centers;
    for (int i = 0; i < 50; ++i) {
      centers.emplace_back(rng.uniform(0, 1), rng.uniform(0, 1));
    }
    const Matrix K = kernel_matrix(spec(family), centers);
    CHECK(K == K.transpose().eval());
    Eigen::LLT<Matrix> llt(K);
    CHECK(llt.info() == Eigen::Success);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(K);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("duplicate centers are rejected") {
  const PointList centers = {Point2(0.5, 0.5), Point2(0.5, 0.5 + 1e-13)};
  CHECK_THROWS_AS(kernel_matrix(spec(KernelFamily::Matern32), centers),
                  DegenerateCentersError);
}

TEST_CASE("non-positive shape parameters are rejected") {
  CHECK_THROWS_AS(kernel_eval(spec(KernelFamily::Matern32, 0.0), Point2(0, 0),
                              Point2(1, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(kernel_eval(spec(KernelFamily::Matern32, -1.0), Point2(0, 0),
                              Point2(1, 0)),
                  std::invalid_argument);
}

TEST_CASE("tableau agrees with pointwise evaluation") {
  Rng rng(3);
  PointList centers, points;
  for (int i = 0; i < 7; ++i) centers.emplace_back(rng.uniform(0, 1), rng.uniform(0, 1));
  for (int i = 0; i < 11; ++i) points.emplace_back(rng.uniform(0, 1), rng.uniform(0, 1));
  const KernelSpec k = spec(KernelFamily::Matern52, 1.7);
  Matrix phi, gx, gy;
  kernel_tableau(k, points, centers, &phi, &gx, &gy);
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 7; ++j) {
      CHECK(phi(i, j) == kernel_eval(k, points[i], centers[j]));
      const Point2 g = kernel_grad_x(k, points[i], centers[j]);
      CHECK(gx(i, j) == g.x());
      CHECK(gy(i, j) == g.y());
    }
  }
}

TEST_CASE("fourier decay orders") {
  CHECK(spec(KernelFamily::Matern12).fourier_decay_order() == 1.5);
  CHECK(spec(KernelFamily::Matern32).fourier_decay_order() == 2.5);
  CHECK(spec(KernelFamily::Matern52).fourier_decay_order() == 3.5);
  CHECK(spec(KernelFamily::WendlandC2).fourier_decay_order() == 2.5);
}

TEST_CASE("family names round-trip") {
  for (const auto family : {KernelFamily::Matern12, KernelFamily::Matern32,
                            KernelFamily::Matern52, KernelFamily::WendlandC2}) {
    CHECK(kernel_family_from_string(to_string(family)) == family);
  }
  CHECK_THROWS_AS(kernel_family_from_string("gaussian"), std::invalid_argument);
}
