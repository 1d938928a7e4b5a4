#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kritz/densela.hpp"
#include "kritz/expansion.hpp"
#include "kritz/problems.hpp"
#include "kritz/solver.hpp"

namespace kritz {

enum class Method { DeepRitz, Galerkin, Interpolation };

Method method_from_string(std::string_view name);
std::string_view to_string(Method method);

struct ErrorNorms {
  double rel_l2 = 0.0;
  double rel_h1 = 0.0;
  int grid_points = 0;  ///< accepted error-quadrature nodes for this run
};

/// Relative L2 and H1 errors of a candidate (value, gradient) pair against
/// the problem's exact solution, measured on a uniform bounding-box grid of
/// grid_per_dim points per dimension restricted to the domain closure
/// (10201 nodes on the unit square at the default 101). Grid nodes within
/// 1e-9 of the sector origin or of any point in `skip_points` are dropped;
/// node weights are area / accepted-count.
ErrorNorms error_norms_of(const ProblemSpec& problem,
                          const std::function<double(const Point2&)>& value,
                          const std::function<Point2(const Point2&)>& gradient,
                          int grid_per_dim = 101,
                          std::span<const Point2> skip_points = {});

/// Error norms of a kernel expansion. For Matern12 expansions the grid skips
/// nodes that coincide with centers, where the expansion gradient has a kink
/// and does not exist.
ErrorNorms error_norms(const ProblemSpec& problem, const Expansion& expansion,
                       int grid_per_dim = 101);

/// One row of a convergence study.
struct ConvergenceRecord {
  Method method = Method::Interpolation;
  KernelSpec kernel;
  int n_per_dim = 0;
  int n_centers = 0;
  double mesh_norm = 0.0;
  double rel_l2 = 0.0;
  double rel_h1 = 0.0;
  std::optional<double> final_energy;  ///< solver routes only
  std::optional<double> condition;     ///< linear-system route only
  std::uint64_t seed = 0;
};

struct StudyConfig {
  TrainConfig train;
  int fixed_interior = 200000;
  int fixed_boundary = 20000;
  int error_grid_per_dim = 101;
  int mesh_norm_resolution = 400;
  std::uint64_t master_seed = 0;
};

/// Sweep center counts for one solution method: for each n place centers,
/// run the method with a seed derived from (master_seed, n), and record mesh
/// norm, errors, final energy, and (for the linear-system route) the
/// condition number. Records come back sorted by n.
std::vector<ConvergenceRecord> convergence_study(const ProblemSpec& problem,
                                                 const KernelSpec& kernel,
                                                 std::span<const int> n_list,
                                                 Method method,
                                                 const StudyConfig& config);

/// Exact CSV header for record emission.
std::string_view csv_header();

void write_csv(std::ostream& out, std::span<const ConvergenceRecord> records);

std::vector<ConvergenceRecord> read_csv(std::istream& in);

struct RateEstimate {
  double l2_slope = 0.0;
  double h1_slope = 0.0;
  int points_used = 0;
};

/// Log-log regression of relative errors against mesh norm, dropping the
/// preasymptotic head h > h_cutoff (pass infinity to keep all points).
RateEstimate estimate_rates(std::span<const ConvergenceRecord> records,
                            double h_cutoff);

/// Rates predicted for a kernel of decay order tau and a solution of Sobolev
/// regularity m > 1: (H1, L2) = (tau - 1, tau) when m >= tau, else
/// (m - 1, m). Pass infinity for smooth solutions.
std::pair<double, double> expected_rates(const KernelSpec& kernel,
                                         double solution_regularity);

}  // namespace kritz
