#include "kritz/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>

#include "kritz/analysis.hpp"
#include "kritz/errors.hpp"
#include "kritz/interpolation.hpp"
#include "kritz/problems.hpp"
#include "kritz/solver.hpp"

namespace kritz {

namespace {

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ProblemSpec build_problem(const FlatConfig& cfg) {
  const std::string name = cfg_string(cfg, "problem");
  ProblemSpec problem;
  if (name == "smooth_poisson") {
    if (!cfg_empty(cfg, "domain.angle")) {
      throw ConfigError("domain.angle only applies to sector domains");
    }
    problem = smooth_poisson();
  } else if (name == "singular_sector") {
    double angle = 1.5 * std::numbers::pi;
    if (!cfg_empty(cfg, "domain.angle")) angle = cfg_double(cfg, "domain.angle");
    try {
      problem = singular_sector(angle);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("domain.angle: ") + e.what());
    }
  } else {
    throw ConfigError("problem: expected smooth_poisson or singular_sector, got '" +
                      name + "'");
  }
  if (!cfg_empty(cfg, "domain.kind")) {
    const std::string kind = cfg_string(cfg, "domain.kind");
    const std::string actual =
        problem.domain.kind == DomainKind::UnitSquare ? "unit_square" : "sector";
    if (kind != actual) {
      throw ConfigError("domain.kind '" + kind + "' conflicts with problem '" +
                        name + "' (" + actual + ")");
    }
  }
  const double c_pen = cfg_double(cfg, "problem.c_pen");
  if (!(c_pen > 0.0)) throw ConfigError("problem.c_pen must be positive");
  problem.penalty = c_pen;
  return problem;
}

KernelSpec build_kernel(const FlatConfig& cfg) {
  KernelSpec spec;
  try {
    spec.family = kernel_family_from_string(cfg_string(cfg, "kernel.family"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("kernel.family: ") + e.what());
  }
  spec.shape = cfg_double(cfg, "kernel.shape");
  if (!(spec.shape > 0.0)) throw ConfigError("kernel.shape must be positive");
  return spec;
}

std::uint64_t effective_seed(const FlatConfig& cfg) {
  if (!cfg_empty(cfg, "train.seed")) return cfg_seed(cfg, "train.seed");
  return cfg_seed(cfg, "seed");
}

TrainConfig build_train(const FlatConfig& cfg) {
  TrainConfig tc;
  tc.epochs = cfg_int(cfg, "train.epochs");
  if (tc.epochs < 0) throw ConfigError("train.epochs must be >= 0");
  tc.lr_initial = cfg_double(cfg, "train.lr");
  if (!(tc.lr_initial > 0.0)) throw ConfigError("train.lr must be positive");
  if (!cfg_empty(cfg, "train.milestones")) {
    tc.milestones = cfg_int_list(cfg, "train.milestones");
  }
  const std::string basis = cfg_string(cfg, "train.basis");
  if (basis == "direct") {
    tc.basis = BasisKind::Direct;
  } else if (basis == "lagrange") {
    tc.basis = BasisKind::Lagrange;
  } else {
    throw ConfigError("train.basis: expected direct or lagrange, got '" + basis + "'");
  }
  const std::string mode = cfg_string(cfg, "train.mode");
  if (mode == "resample") {
    tc.mode = TrainMode::Resample;
  } else if (mode == "full_batch") {
    tc.mode = TrainMode::FullBatch;
  } else {
    throw ConfigError("train.mode: expected resample or full_batch, got '" + mode + "'");
  }
  tc.batch.interior = cfg_int(cfg, "quadrature.interior_batch");
  tc.batch.boundary = cfg_int(cfg, "quadrature.boundary_batch");
  tc.seed = effective_seed(cfg);
  return tc;
}

StudyConfig build_study(const FlatConfig& cfg) {
  StudyConfig sc;
  sc.train = build_train(cfg);
  sc.fixed_interior = cfg_int(cfg, "quadrature.fixed_interior");
  sc.fixed_boundary = cfg_int(cfg, "quadrature.fixed_boundary");
  if (sc.fixed_interior < 1 || sc.fixed_boundary < 1) {
    throw ConfigError("quadrature.fixed_* sizes must be >= 1");
  }
  sc.error_grid_per_dim = cfg_int(cfg, "error.grid_per_dim");
  sc.mesh_norm_resolution = cfg_int(cfg, "mesh_norm.resolution");
  sc.master_seed = cfg_seed(cfg, "seed");
  return sc;
}

double rate_cutoff(const FlatConfig& cfg, const Domain& domain) {
  if (!cfg_empty(cfg, "rates.h_cutoff")) return cfg_double(cfg, "rates.h_cutoff");
  // the coarse sector layouts under-cover the domain; drop that head
  if (domain.kind == DomainKind::CircularSector) return 0.3;
  return std::numeric_limits<double>::infinity();
}

std::filesystem::path prepare_out_dir(const FlatConfig& cfg) {
  const std::filesystem::path dir = cfg_string(cfg, "out_dir");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create out_dir '" + dir.string() + "': " + ec.message());
  write_sidecar(cfg, (dir / "effective_config.txt").string());
  return dir;
}

void write_records(const std::filesystem::path& dir,
                   std::span<const ConvergenceRecord> records) {
  std::ofstream out(dir / "records.csv");
  if (!out) throw ConfigError("cannot write records.csv");
  write_csv(out, records);
}

void write_coefficients(const std::filesystem::path& dir,
                        const Expansion& expansion) {
  std::ofstream out(dir / "coefficients.txt");
  if (!out) throw ConfigError("cannot write coefficients.txt");
  out << "# x1 x2 coefficient\n";
  char buf[128];
  for (int i = 0; i < expansion.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n",
                  expansion.centers[i].x(), expansion.centers[i].y(),
                  expansion.coefficients(i));
    out << buf;
  }
}

void write_training_log(const std::filesystem::path& dir,
                        const TrainHistory& history) {
  std::ofstream out(dir / "training_log.csv");
  if (!out) throw ConfigError("cannot write training_log.csv");
  out << "epoch,energy,grad_norm,lr\n";
  for (const EpochLog& e : history.epochs) {
    out << e.epoch << ',' << format_double(e.energy) << ','
        << format_double(e.grad_norm) << ',' << format_double(e.learning_rate)
        << "\n";
  }
}

int centers_per_dim(const FlatConfig& cfg) {
  const int n = cfg_int(cfg, "centers.n_per_dim");
  if (n < 1) throw ConfigError("centers.n_per_dim must be >= 1");
  return n;
}

ConvergenceRecord make_record(Method method, const KernelSpec& kernel, int n,
                              const ProblemSpec& problem,
                              const PointList& centers,
                              const Expansion& expansion,
                              const StudyConfig& study, std::uint64_t seed) {
  ConvergenceRecord rec;
  rec.method = method;
  rec.kernel = kernel;
  rec.n_per_dim = n;
  rec.n_centers = static_cast<int>(centers.size());
  rec.mesh_norm = mesh_norm(problem.domain, centers, study.mesh_norm_resolution);
  const ErrorNorms norms = error_norms(problem, expansion, study.error_grid_per_dim);
  rec.rel_l2 = norms.rel_l2;
  rec.rel_h1 = norms.rel_h1;
  rec.seed = seed;
  return rec;
}

}  // namespace

int run_solve(const FlatConfig& cfg) {
  const ProblemSpec problem = build_problem(cfg);
  const KernelSpec kernel = build_kernel(cfg);
  const TrainConfig tc = build_train(cfg);
  const StudyConfig study = build_study(cfg);
  const int n = centers_per_dim(cfg);
  const auto dir = prepare_out_dir(cfg);

  const PointList centers = place_centers(problem.domain, n);
  auto [expansion, history] = train(problem, kernel, centers, tc);

  ConvergenceRecord rec = make_record(Method::DeepRitz, kernel, n, problem,
                                      centers, expansion, study, tc.seed);
  const QuadratureSet fq = fixed_quadrature(
      problem.domain, study.fixed_interior, study.fixed_boundary, tc.seed);
  rec.final_energy =
      energy_value(assemble(problem, kernel, centers, fq), expansion.coefficients);

  write_records(dir, {&rec, 1});
  write_coefficients(dir, expansion);
  write_training_log(dir, history);
  std::cout << "deep_ritz " << to_string(kernel.family) << " n=" << n
            << " rel_l2=" << format_double(rec.rel_l2)
            << " rel_h1=" << format_double(rec.rel_h1)
            << " energy=" << format_double(*rec.final_energy) << "\n";
  return 0;
}

int run_galerkin(const FlatConfig& cfg) {
  const ProblemSpec problem = build_problem(cfg);
  const KernelSpec kernel = build_kernel(cfg);
  const StudyConfig study = build_study(cfg);
  const std::uint64_t seed = effective_seed(cfg);
  const int n = centers_per_dim(cfg);
  const auto dir = prepare_out_dir(cfg);

  const PointList centers = place_centers(problem.domain, n);
  GalerkinResult gr = solve_galerkin(problem, kernel, centers,
                                     study.fixed_interior,
                                     study.fixed_boundary, seed);
  if (gr.fallback) {
    std::cerr << "warning: positive-definite factorization failed; "
                 "used the truncated least-squares fallback\n";
  }
  ConvergenceRecord rec = make_record(Method::Galerkin, kernel, n, problem,
                                      centers, gr.expansion, study, seed);
  rec.final_energy = gr.energy;
  rec.condition = gr.condition;

  write_records(dir, {&rec, 1});
  write_coefficients(dir, gr.expansion);
  std::cout << "galerkin " << to_string(kernel.family) << " n=" << n
            << " rel_l2=" << format_double(rec.rel_l2)
            << " rel_h1=" << format_double(rec.rel_h1)
            << " cond=" << format_double(gr.condition) << "\n";
  return 0;
}

int run_interpolate(const FlatConfig& cfg) {
  const ProblemSpec problem = build_problem(cfg);
  const KernelSpec kernel = build_kernel(cfg);
  const StudyConfig study = build_study(cfg);
  const std::uint64_t seed = effective_seed(cfg);
  const int n = centers_per_dim(cfg);
  const auto dir = prepare_out_dir(cfg);

  const PointList centers = place_centers(problem.domain, n);
  Vector values(static_cast<Eigen::Index>(centers.size()));
  for (std::size_t i = 0; i < centers.size(); ++i) {
    values(static_cast<Eigen::Index>(i)) = problem.exact->value(centers[i]);
  }
  InterpolationResult ir = interpolate(kernel, centers, values);
  if (ir.fallback) {
    std::cerr << "warning: Gram matrix factorization fell back to "
                 "truncated least squares\n";
  }
  const ConvergenceRecord rec = make_record(Method::Interpolation, kernel, n,
                                            problem, centers, ir.expansion,
                                            study, seed);
  write_records(dir, {&rec, 1});
  write_coefficients(dir, ir.expansion);
  std::cout << "interpolation " << to_string(kernel.family) << " n=" << n
            << " rel_l2=" << format_double(rec.rel_l2)
            << " rel_h1=" << format_double(rec.rel_h1) << "\n";
  return 0;
}

int run_converge(const FlatConfig& cfg) {
  const ProblemSpec problem = build_problem(cfg);
  const KernelSpec kernel = build_kernel(cfg);
  const StudyConfig study = build_study(cfg);
  const std::vector<int> n_list = cfg_int_list(cfg, "centers.n_list");
  if (n_list.empty()) throw ConfigError("centers.n_list is empty");
  const std::vector<std::string> method_names = cfg_string_list(cfg, "methods");
  if (method_names.empty()) throw ConfigError("methods is empty");
  const double cutoff = rate_cutoff(cfg, problem.domain);
  const auto dir = prepare_out_dir(cfg);

  std::vector<ConvergenceRecord> all;
  std::ofstream rates(dir / "rates.txt");
  if (!rates) throw ConfigError("cannot write rates.txt");
  for (const std::string& name : method_names) {
    Method method;
    try {
      method = method_from_string(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("methods: ") + e.what());
    }
    std::vector<ConvergenceRecord> records;
    try {
      records = convergence_study(problem, kernel, n_list, method, study);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    std::string line = "method=" + std::string(name) +
                       " kernel=" + std::string(to_string(kernel.family)) +
                       " shape=" + format_double(kernel.shape);
    try {
      const RateEstimate rate = estimate_rates(records, cutoff);
      line += " points=" + std::to_string(rate.points_used) +
              " l2_rate=" + format_double(rate.l2_slope) +
              " h1_rate=" + format_double(rate.h1_slope);
    } catch (const std::invalid_argument&) {
      line += " (too few records below the mesh-norm cutoff for a rate fit)";
    }
    rates << line << "\n";
    std::cout << line << "\n";
    all.insert(all.end(), records.begin(), records.end());
  }
  write_records(dir, all);
  return 0;
}

int run_rates(const FlatConfig& cfg) {
  const std::string input = cfg_string(cfg, "rates.input");
  if (input.empty()) throw ConfigError("rates.input: path to a records CSV required");
  std::ifstream in(input);
  if (!in) throw ConfigError("cannot read records CSV: " + input);
  std::vector<ConvergenceRecord> records;
  try {
    records = read_csv(in);
  } catch (const std::exception& e) {
    throw ConfigError(input + ": " + e.what());
  }
  double cutoff = std::numeric_limits<double>::infinity();
  if (!cfg_empty(cfg, "rates.h_cutoff")) cutoff = cfg_double(cfg, "rates.h_cutoff");

  std::map<std::string, std::vector<ConvergenceRecord>> groups;
  for (const ConvergenceRecord& r : records) {
    const std::string key = std::string(to_string(r.method)) + "," +
                            std::string(to_string(r.kernel.family)) + "," +
                            format_double(r.kernel.shape);
    groups[key].push_back(r);
  }
  for (const auto& [key, group] : groups) {
    try {
      const RateEstimate rate = estimate_rates(group, cutoff);
      std::cout << key << " points=" << rate.points_used
                << " l2_rate=" << format_double(rate.l2_slope)
                << " h1_rate=" << format_double(rate.h1_slope) << "\n";
    } catch (const std::invalid_argument&) {
      std::cout << key << " (too few usable records)\n";
    }
  }
  return 0;
}

}  // namespace kritz
