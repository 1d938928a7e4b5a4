#include "kritz/problems.hpp"

#include <cmath>
#include <limits>

#include "kritz/errors.hpp"
#include "kritz/kernels.hpp"

namespace kritz {

ProblemSpec smooth_poisson() {
  ProblemSpec p;
  p.name = "smooth_poisson";
  p.domain = Domain::unit_square();
  p.kappa = [](const Point2&) { return 1.0; };
  p.rho = [](const Point2&) { return 0.0; };
  p.f = [](const Point2&) { return 4.0; };
  auto g = [](const Point2& x) { return 1.0 - x.x() * x.x() - x.y() * x.y(); };
  p.g_dirichlet = g;
  p.penalty = 100.0;
  ExactSolution exact;
  exact.value = g;
  exact.gradient = [](const Point2& x) { return Point2(-2.0 * x.x(), -2.0 * x.y()); };
  exact.sobolev_regularity = std::numeric_limits<double>::infinity();
  p.exact = std::move(exact);
  return p;
}

ProblemSpec singular_sector(double angle) {
  ProblemSpec p;
  p.name = "singular_sector";
  p.domain = Domain::sector(angle);
  p.kappa = [](const Point2&) { return 1.0; };
  p.rho = [](const Point2&) { return 0.0; };
  p.f = [](const Point2&) { return 0.0; };
  const double exponent = 1.0 / angle;
  auto g = [angle, exponent](const Point2& x) {
    const double r = x.norm();
    if (r < 1e-300) return 1.0;  // continuous limit at the corner
    const double theta = polar_angle(x);
    return std::pow(r, exponent) * std::sin(theta / angle) + 1.0;
  };
  p.g_dirichlet = g;
  p.penalty = 100.0;
  ExactSolution exact;
  exact.value = g;
  exact.gradient = [angle, exponent](const Point2& x) {
    const double r = x.norm();
    if (r < kSingularRadius) {
      throw SingularEvaluationError(
          "singular_sector gradient requested at the re-entrant corner");
    }
    const double theta = polar_angle(x);
    const double scale = exponent * std::pow(r, exponent - 1.0);
    const double sr = std::sin(theta / angle);
    const double ct = std::cos(theta / angle);
    const Point2 e_r(std::cos(theta), std::sin(theta));
    const Point2 e_theta(-std::sin(theta), std::cos(theta));
    return Point2(scale * (sr * e_r + ct * e_theta));
  };
  // The corner caps the Sobolev regularity at 1/angle + 1 (about 1.2122 for
  // the default three-quarter circle).
  exact.sobolev_regularity = exponent + 1.0;
  p.exact = std::move(exact);
  return p;
}

}  // namespace kritz
