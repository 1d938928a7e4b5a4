#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "kritz/rng.hpp"
#include "kritz/types.hpp"

namespace kritz {

enum class DomainKind { UnitSquare, CircularSector };

/// Computational domain: the open unit square (0,1)^2 or an open circular
/// sector of radius `radius` spanning polar angles (0, angle).
struct Domain {
  DomainKind kind = DomainKind::UnitSquare;
  double radius = 1.5;                        // sector only
  double angle = 1.5 * std::numbers::pi;      // sector only, radians

  static Domain unit_square();
  static Domain sector(double angle, double radius = 1.5);

  double area() const;
  double boundary_length() const;
  void bounding_box(Point2& lo, Point2& hi) const;
};

/// A quadrature node on the boundary with its outward unit normal and its
/// share of the boundary measure.
struct BoundarySample {
  Point2 point;
  Point2 normal;
  double weight = 0.0;
};

/// Polar angle of p in [0, 2*pi).
double polar_angle(const Point2& p);

/// Strict interior test. For the sector the angular coordinate is taken in
/// [0, 2*pi) and must lie strictly in (0, angle); the origin is excluded.
bool is_interior(const Domain& domain, const Point2& p);

/// Boundary point and outward normal at arc length t in [0, boundary_length),
/// walking counterclockwise from (0,0) (square) or from the origin corner
/// along the first straight edge (sector).
BoundarySample boundary_at_arclength(const Domain& domain, double t);

/// Corner points of the boundary walk (4 for the square; origin and the two
/// radial edge endpoints for the sector).
PointList boundary_corners(const Domain& domain);

/// Deterministic center layout: an n x n interior lattice (filtered to the
/// domain for the sector, whose lattice lives on the bounding square) plus
/// 4n+4 boundary points equispaced by arc length. Points are pairwise
/// distinct.
PointList place_centers(const Domain& domain, int n_per_dim);

/// `count` i.i.d. uniform points in the domain via rejection sampling from
/// the bounding box; each point carries weight area/count. Deterministic for
/// a given generator state.
std::vector<WeightedPoint> sample_interior(const Domain& domain, int count,
                                           Rng& rng);

/// `count` points uniform by arc length on the boundary with outward unit
/// normals; each carries weight boundary_length/count. Draws landing within
/// kSingularRadius of a corner are rejected and resampled.
std::vector<BoundarySample> sample_boundary(const Domain& domain, int count,
                                            Rng& rng);

/// Largest distance from any domain point to its nearest center, estimated
/// by brute force over a resolution x resolution grid on the bounding box
/// restricted to the domain interior.
double mesh_norm(const Domain& domain, std::span<const Point2> centers,
                 int resolution = 400);

}  // namespace kritz
