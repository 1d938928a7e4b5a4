#include "kritz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kritz/errors.hpp"
#include "kritz/kernels.hpp"

namespace kritz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

Domain Domain::unit_square() {
  Domain d;
  d.kind = DomainKind::UnitSquare;
  return d;
}

Domain Domain::sector(double angle, double radius) {
  if (!(angle > 0.0) || !(angle < kTwoPi)) {
    throw std::invalid_argument("sector angle must lie in (0, 2*pi)");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("sector radius must be positive");
  }
  Domain d;
  d.kind = DomainKind::CircularSector;
  d.radius = radius;
  d.angle = angle;
  return d;
}

double Domain::area() const {
  if (kind == DomainKind::UnitSquare) return 1.0;
  return 0.5 * radius * radius * angle;
}

double Domain::boundary_length() const {
  if (kind == DomainKind::UnitSquare) return 4.0;
  return 2.0 * radius + radius * angle;
}

void Domain::bounding_box(Point2& lo, Point2& hi) const {
  if (kind == DomainKind::UnitSquare) {
    lo = Point2(0.0, 0.0);
    hi = Point2(1.0, 1.0);
    return;
  }
  const double half_pi = 0.5 * std::numbers::pi;
  hi.x() = radius;  // the arc starts at angle 0
  hi.y() = angle >= half_pi ? radius : std::max(0.0, radius * std::sin(angle));
  lo.x() = angle >= std::numbers::pi ? -radius : std::min(0.0, radius * std::cos(angle));
  lo.y() = angle >= 1.5 * std::numbers::pi ? -radius : std::min(0.0, radius * std::sin(angle));
}

double polar_angle(const Point2& p) {
  double a = std::atan2(p.y(), p.x());
  if (a < 0.0) a += kTwoPi;
  return a;
}

bool is_interior(const Domain& domain, const Point2& p) {
  if (domain.kind == DomainKind::UnitSquare) {
    return p.x() > 0.0 && p.x() < 1.0 && p.y() > 0.0 && p.y() < 1.0;
  }
  const double r = p.norm();
  if (!(r > 0.0 && r < domain.radius)) return false;
  const double theta = polar_angle(p);
  return theta > 0.0 && theta < domain.angle;
}

BoundarySample boundary_at_arclength(const Domain& domain, double t) {
  BoundarySample s;
  if (domain.kind == DomainKind::UnitSquare) {
    if (t < 1.0) {
      s.point = Point2(t, 0.0);
      s.normal = Point2(0.0, -1.0);
    } else if (t < 2.0) {
      s.point = Point2(1.0, t - 1.0);
      s.normal = Point2(1.0, 0.0);
    } else if (t < 3.0) {
      s.point = Point2(3.0 - t, 1.0);
      s.normal = Point2(0.0, 1.0);
    } else {
      s.point = Point2(0.0, 4.0 - t);
      s.normal = Point2(-1.0, 0.0);
    }
    return s;
  }
  const double R = domain.radius;
  const double alpha = domain.angle;
  const double arc = R * alpha;
  if (t < R) {
    // radial edge at angle 0; the interior lies on the positive-angle side
    s.point = Point2(t, 0.0);
    s.normal = Point2(0.0, -1.0);
  } else if (t < R + arc) {
    const double phi = (t - R) / R;
    s.point = R * Point2(std::cos(phi), std::sin(phi));
    s.normal = Point2(std::cos(phi), std::sin(phi));
  } else {
    // radial edge at angle alpha, walked back toward the origin; rotating the
    // edge direction by +90 degrees points away from the interior
    const double back = t - R - arc;
    const Point2 dir(std::cos(alpha), std::sin(alpha));
    s.point = (R - back) * dir;
    s.normal = Point2(-dir.y(), dir.x());
  }
  return s;
}

PointList boundary_corners(const Domain& domain) {
  if (domain.kind == DomainKind::UnitSquare) {
    return {Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)};
  }
  const double R = domain.radius;
  const double alpha = domain.angle;
  return {Point2(0, 0), Point2(R, 0.0),
          Point2(R * std::cos(alpha), R * std::sin(alpha))};
}

PointList place_centers(const Domain& domain, int n_per_dim) {
  if (n_per_dim < 1) {
    throw std::invalid_argument("place_centers: n_per_dim must be >= 1");
  }
  PointList centers;
  const int n = n_per_dim;
  if (domain.kind == DomainKind::UnitSquare) {
    centers.reserve(static_cast<std::size_t>(n) * n + 4 * n + 4);
    const double h = 1.0 / (n + 1);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        centers.emplace_back(i * h, j * h);
      }
    }
  } else {
    // lattice on the bounding square [-R, R]^2, keeping interior points
    const double R = domain.radius;
    const double h = 2.0 * R / (n + 1);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const Point2 p(-R + i * h, -R + j * h);
        if (is_interior(domain, p)) centers.push_back(p);
      }
    }
  }
  const int n_boundary = 4 * n + 4;
  const double spacing = domain.boundary_length() / n_boundary;
  for (int k = 0; k < n_boundary; ++k) {
    centers.push_back(boundary_at_arclength(domain, k * spacing).point);
  }
  return centers;
}

std::vector<WeightedPoint> sample_interior(const Domain& domain, int count,
                                           Rng& rng) {
  if (count < 1) throw std::invalid_argument("sample_interior: count must be >= 1");
  Point2 lo, hi;
  domain.bounding_box(lo, hi);
  const double weight = domain.area() / count;
  std::vector<WeightedPoint> points;
  points.reserve(count);
  while (static_cast<int>(points.size()) < count) {
    const Point2 p(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
    if (is_interior(domain, p)) points.emplace_back(p, weight);
  }
  return points;
}

std::vector<BoundarySample> sample_boundary(const Domain& domain, int count,
                                            Rng& rng) {
  if (count < 1) throw std::invalid_argument("sample_boundary: count must be >= 1");
  const double length = domain.boundary_length();
  const double weight = length / count;
  const PointList corners = boundary_corners(domain);
  std::vector<BoundarySample> samples;
  samples.reserve(count);
  while (static_cast<int>(samples.size()) < count) {
    BoundarySample s = boundary_at_arclength(domain, rng.uniform(0.0, length));
    const bool near_corner =
        std::any_of(corners.begin(), corners.end(), [&](const Point2& c) {
          return (s.point - c).norm() < kSingularRadius;
        });
    if (near_corner) continue;
    s.weight = weight;
    samples.push_back(s);
  }
  return samples;
}

double mesh_norm(const Domain& domain, std::span<const Point2> centers,
                 int resolution) {
  if (centers.empty()) {
    throw std::invalid_argument("mesh_norm: empty center set");
  }
  if (resolution < 2) {
    throw std::invalid_argument("mesh_norm: resolution must be >= 2");
  }
  Point2 lo, hi;
  domain.bounding_box(lo, hi);
  const double sx = (hi.x() - lo.x()) / (resolution - 1);
  const double sy = (hi.y() - lo.y()) / (resolution - 1);
  double worst = 0.0;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const Point2 p(lo.x() + i * sx, lo.y() + j * sy);
      if (!is_interior(domain, p)) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const Point2& c : centers) {
        best = std::min(best, (p - c).squaredNorm());
      }
      worst = std::max(worst, best);
    }
  }
  return std::sqrt(worst);
}

}  // namespace kritz
