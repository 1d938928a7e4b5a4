#include "kritz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kritz/interpolation.hpp"

namespace kritz {

namespace {

constexpr double kSkipRadius = 1e-9;

struct ErrorGrid {
  PointList points;
  double weight = 0.0;
  int accepted = 0;
};

bool in_closure(const Domain& domain, const Point2& p) {
  if (domain.kind == DomainKind::UnitSquare) {
    return p.x() >= 0.0 && p.x() <= 1.0 && p.y() >= 0.0 && p.y() <= 1.0;
  }
  const double r = p.norm();
  if (r > domain.radius) return false;
  return polar_angle(p) <= domain.angle;
}

ErrorGrid build_error_grid(const Domain& domain, int per_dim,
                           std::span<const Point2> skip_points) {
  if (per_dim < 2) {
    throw std::invalid_argument("error grid needs at least 2 points per dim");
  }
  Point2 lo, hi;
  domain.bounding_box(lo, hi);
  const double sx = (hi.x() - lo.x()) / (per_dim - 1);
  const double sy = (hi.y() - lo.y()) / (per_dim - 1);
  const bool sector = domain.kind == DomainKind::CircularSector;
  ErrorGrid grid;
  grid.points.reserve(static_cast<std::size_t>(per_dim) * per_dim);
  for (int i = 0; i < per_dim; ++i) {
    for (int j = 0; j < per_dim; ++j) {
      const Point2 p(lo.x() + i * sx, lo.y() + j * sy);
      if (!in_closure(domain, p)) continue;
      if (sector && p.norm() < kSkipRadius) continue;
      const bool skipped =
          std::any_of(skip_points.begin(), skip_points.end(),
                      [&](const Point2& s) { return (p - s).norm() < kSkipRadius; });
      if (skipped) continue;
      grid.points.push_back(p);
    }
  }
  grid.accepted = static_cast<int>(grid.points.size());
  if (grid.accepted == 0) {
    throw std::invalid_argument("error grid contains no domain points");
  }
  grid.weight = domain.area() / grid.accepted;
  return grid;
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

Method method_from_string(std::string_view name) {
  if (name == "deep_ritz") return Method::DeepRitz;
  if (name == "galerkin") return Method::Galerkin;
  if (name == "interpolation") return Method::Interpolation;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::DeepRitz:
      return "deep_ritz";
    case Method::Galerkin:
      return "galerkin";
    case Method::Interpolation:
      return "interpolation";
  }
  return "?";
}

ErrorNorms error_norms_of(const ProblemSpec& problem,
                          const std::function<double(const Point2&)>& value,
                          const std::function<Point2(const Point2&)>& gradient,
                          int grid_per_dim,
                          std::span<const Point2> skip_points) {
  if (!problem.exact) {
    throw std::invalid_argument("error_norms: problem has no exact solution");
  }
  const ErrorGrid grid = build_error_grid(problem.domain, grid_per_dim, skip_points);
  const double w = grid.weight;
  double num_l2 = 0.0, den_l2 = 0.0, num_grad = 0.0, den_grad = 0.0;
  for (const Point2& p : grid.points) {
    const double u = problem.exact->value(p);
    const double uh = value(p);
    num_l2 += w * (u - uh) * (u - uh);
    den_l2 += w * u * u;
    const Point2 gu = problem.exact->gradient(p);
    const Point2 guh = gradient(p);
    num_grad += w * (gu - guh).squaredNorm();
    den_grad += w * gu.squaredNorm();
  }
  ErrorNorms norms;
  norms.rel_l2 = std::sqrt(num_l2 / den_l2);
  norms.rel_h1 = std::sqrt((num_l2 + num_grad) / (den_l2 + den_grad));
  norms.grid_points = grid.accepted;
  return norms;
}

ErrorNorms error_norms(const ProblemSpec& problem, const Expansion& expansion,
                       int grid_per_dim) {
  // The exponential kernel's gradient does not exist at its centers; drop
  // grid nodes that land on one (uniform grids and uniform center lattices
  // do collide).
  std::span<const Point2> skip;
  if (expansion.kernel.family == KernelFamily::Matern12) {
    skip = expansion.centers;
  }
  return error_norms_of(
      problem,
      [&](const Point2& p) { return evaluate_expansion_at(expansion, p); },
      [&](const Point2& p) {
        return evaluate_expansion_grad(expansion,
                                       std::span<const Point2>(&p, 1))[0];
      },
      grid_per_dim, skip);
}

std::vector<ConvergenceRecord> convergence_study(const ProblemSpec& problem,
                                                 const KernelSpec& kernel,
                                                 std::span<const int> n_list,
                                                 Method method,
                                                 const StudyConfig& config) {
  if (n_list.empty()) {
    throw std::invalid_argument("convergence_study: empty n list");
  }
  if (!std::is_sorted(n_list.begin(), n_list.end()) || n_list.front() < 1) {
    throw std::invalid_argument(
        "convergence_study: n list must be ascending and positive");
  }
  std::vector<ConvergenceRecord> records;
  records.reserve(n_list.size());
  for (const int n : n_list) {
    const std::uint64_t seed =
        derive_seed(config.master_seed, static_cast<std::uint64_t>(n));
    const PointList centers = place_centers(problem.domain, n);
    ConvergenceRecord rec;
    rec.method = method;
    rec.kernel = kernel;
    rec.n_per_dim = n;
    rec.n_centers = static_cast<int>(centers.size());
    rec.mesh_norm = mesh_norm(problem.domain, centers, config.mesh_norm_resolution);
    rec.seed = seed;
    Expansion expansion;
    switch (method) {
      case Method::Interpolation: {
        if (!problem.exact) {
          throw std::invalid_argument(
              "interpolation study needs the exact solution");
        }
        Vector values(static_cast<Eigen::Index>(centers.size()));
        for (std::size_t i = 0; i < centers.size(); ++i) {
          values(static_cast<Eigen::Index>(i)) = problem.exact->value(centers[i]);
        }
        expansion = interpolate(kernel, centers, values).expansion;
        break;
      }
      case Method::Galerkin: {
        GalerkinResult gr =
            solve_galerkin(problem, kernel, centers, config.fixed_interior,
                           config.fixed_boundary, seed);
        rec.condition = gr.condition;
        rec.final_energy = gr.energy;
        expansion = std::move(gr.expansion);
        break;
      }
      case Method::DeepRitz: {
        TrainConfig tc = config.train;
        tc.seed = seed;
        expansion = train(problem, kernel, centers, tc).first;
        const QuadratureSet fq =
            fixed_quadrature(problem.domain, config.fixed_interior,
                             config.fixed_boundary, seed);
        const QuadraticForm form = assemble(problem, kernel, centers, fq);
        rec.final_energy = energy_value(form, expansion.coefficients);
        break;
      }
    }
    const ErrorNorms norms =
        error_norms(problem, expansion, config.error_grid_per_dim);
    rec.rel_l2 = norms.rel_l2;
    rec.rel_h1 = norms.rel_h1;
    records.push_back(std::move(rec));
  }
  return records;
}

std::string_view csv_header() {
  return "method,kernel,shape,n_per_dim,n_centers,mesh_norm,rel_l2,rel_h1,"
         "final_energy,cond,seed";
}

void write_csv(std::ostream& out, std::span<const ConvergenceRecord> records) {
  out << csv_header() << "\n";
  for (const ConvergenceRecord& r : records) {
    out << to_string(r.method) << ',' << to_string(r.kernel.family) << ','
        << format_double(r.kernel.shape) << ',' << r.n_per_dim << ','
        << r.n_centers << ',' << format_double(r.mesh_norm) << ','
        << format_double(r.rel_l2) << ',' << format_double(r.rel_h1) << ','
        << (r.final_energy ? format_double(*r.final_energy) : std::string())
        << ',' << (r.condition ? format_double(*r.condition) : std::string())
        << ',' << r.seed << "\n";
  }
}

std::vector<ConvergenceRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) {
    throw std::invalid_argument("unrecognized records CSV header");
  }
  std::vector<ConvergenceRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    while (fields.size() < 11) fields.emplace_back();
    ConvergenceRecord r;
    r.method = method_from_string(fields[0]);
    r.kernel.family = kernel_family_from_string(fields[1]);
    r.kernel.shape = std::stod(fields[2]);
    r.n_per_dim = std::stoi(fields[3]);
    r.n_centers = std::stoi(fields[4]);
    r.mesh_norm = std::stod(fields[5]);
    r.rel_l2 = std::stod(fields[6]);
    r.rel_h1 = std::stod(fields[7]);
    if (!fields[8].empty()) r.final_energy = std::stod(fields[8]);
    if (!fields[9].empty()) r.condition = std::stod(fields[9]);
    r.seed = std::stoull(fields[10]);
    records.push_back(std::move(r));
  }
  return records;
}

RateEstimate estimate_rates(std::span<const ConvergenceRecord> records,
                            double h_cutoff) {
  std::vector<double> hs, l2, h1;
  for (const ConvergenceRecord& r : records) {
    if (r.mesh_norm > h_cutoff) continue;
    hs.push_back(r.mesh_norm);
    l2.push_back(r.rel_l2);
    h1.push_back(r.rel_h1);
  }
  if (hs.size() < 2) {
    throw std::invalid_argument(
        "estimate_rates: fewer than two records below the mesh-norm cutoff");
  }
  RateEstimate est;
  est.l2_slope = loglog_rate(hs, l2).slope;
  est.h1_slope = loglog_rate(hs, h1).slope;
  est.points_used = static_cast<int>(hs.size());
  return est;
}

std::pair<double, double> expected_rates(const KernelSpec& kernel,
                                         double solution_regularity) {
  if (!(solution_regularity > 1.0)) {
    throw std::invalid_argument("expected_rates: regularity must exceed 1");
  }
  const double tau = kernel.fourier_decay_order();
  const double m = std::min(solution_regularity, tau);
  return {m - 1.0, m};
}

}  // namespace kritz
