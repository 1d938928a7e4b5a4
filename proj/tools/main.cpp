#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "kritz/cli.hpp"
#include "kritz/config.hpp"
#include "kritz/errors.hpp"

namespace {

struct OptionBinding {
  CLI::Option* option = nullptr;
  std::string key;
  std::string* value = nullptr;
};

class Flags {
 public:
  void bind(CLI::App* cmd, const std::string& flag, const std::string& key,
            const std::string& help) {
    values_.push_back(std::make_unique<std::string>());
    std::string* slot = values_.back().get();
    bindings_.push_back({cmd->add_option(flag, *slot, help), key, slot});
  }

  kritz::FlatConfig overrides() const {
    kritz::FlatConfig out;
    for (const OptionBinding& b : bindings_) {
      if (b.option->count() > 0) out[b.key] = *b.value;
    }
    return out;
  }

 private:
  std::vector<OptionBinding> bindings_;
  std::vector<std::unique_ptr<std::string>> values_;
};

void add_common(Flags& flags, CLI::App* cmd) {
  flags.bind(cmd, "--problem", "problem", "smooth_poisson or singular_sector");
  flags.bind(cmd, "--kernel", "kernel.family",
             "matern12, matern32, matern52 or wendland_c2");
  flags.bind(cmd, "--shape", "kernel.shape", "kernel shape parameter");
  flags.bind(cmd, "--c-pen", "problem.c_pen", "boundary penalty parameter");
  flags.bind(cmd, "--angle", "domain.angle", "sector opening angle (radians)");
  flags.bind(cmd, "--error-grid", "error.grid_per_dim",
             "error quadrature points per dimension");
  flags.bind(cmd, "--mesh-resolution", "mesh_norm.resolution",
             "mesh-norm estimation grid resolution");
  flags.bind(cmd, "--fixed-interior", "quadrature.fixed_interior",
             "frozen assembly quadrature: interior points");
  flags.bind(cmd, "--fixed-boundary", "quadrature.fixed_boundary",
             "frozen assembly quadrature: boundary points");
}

void add_train(Flags& flags, CLI::App* cmd) {
  flags.bind(cmd, "--epochs", "train.epochs", "training epochs");
  flags.bind(cmd, "--lr", "train.lr", "initial learning rate");
  flags.bind(cmd, "--milestones", "train.milestones",
             "comma-separated learning-rate drop epochs");
  flags.bind(cmd, "--basis", "train.basis", "direct or lagrange");
  flags.bind(cmd, "--mode", "train.mode", "resample or full_batch");
  flags.bind(cmd, "--batch-interior", "quadrature.interior_batch",
             "per-epoch interior batch size (0 = auto)");
  flags.bind(cmd, "--batch-boundary", "quadrature.boundary_batch",
             "per-epoch boundary batch size (0 = auto)");
  flags.bind(cmd, "--train-seed", "train.seed", "training seed override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meshless kernel solver for elliptic boundary-value problems"};
  app.require_subcommand(1);

  std::string config_path;
  Flags flags;
  auto* config_opt = app.add_option("--config", config_path,
                                    "flat key = value configuration file");
  // global flags are accepted both before and after the subcommand
  flags.bind(&app, "--seed", "seed", "master seed");
  flags.bind(&app, "--out-dir", "out_dir", "output directory");

  auto bind_global = [&flags](CLI::App* cmd) {
    flags.bind(cmd, "--seed", "seed", "master seed");
    flags.bind(cmd, "--out-dir", "out_dir", "output directory");
  };

  CLI::App* solve = app.add_subcommand(
      "solve", "train the energy-minimizing expansion (Adam)");
  add_common(flags, solve);
  add_train(flags, solve);
  flags.bind(solve, "--n", "centers.n_per_dim", "interior centers per dimension");

  CLI::App* galerkin = app.add_subcommand(
      "galerkin", "assemble the stiffness system and solve it directly");
  add_common(flags, galerkin);
  flags.bind(galerkin, "--n", "centers.n_per_dim", "interior centers per dimension");

  CLI::App* interpolate = app.add_subcommand(
      "interpolate", "interpolate the exact solution at the centers");
  add_common(flags, interpolate);
  flags.bind(interpolate, "--n", "centers.n_per_dim",
             "interior centers per dimension");

  CLI::App* converge = app.add_subcommand(
      "converge", "sweep center counts and report convergence rates");
  add_common(flags, converge);
  add_train(flags, converge);
  flags.bind(converge, "--n-list", "centers.n_list",
             "comma-separated centers-per-dimension sweep");
  flags.bind(converge, "--methods", "methods",
             "comma-separated subset of deep_ritz,galerkin,interpolation");
  flags.bind(converge, "--rate-cutoff", "rates.h_cutoff",
             "drop records with mesh norm above this value");

  CLI::App* rates = app.add_subcommand(
      "rates", "re-read a records CSV and print regression slopes");
  flags.bind(rates, "--csv", "rates.input", "records CSV to analyze");
  flags.bind(rates, "--rate-cutoff", "rates.h_cutoff",
             "drop records with mesh norm above this value");

  for (CLI::App* cmd : {solve, galerkin, interpolate, converge, rates}) {
    bind_global(cmd);
    cmd->fallthrough();  // lets --config appear after the subcommand too
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  (void)config_opt;

  try {
    const kritz::FlatConfig cfg =
        kritz::resolve_config(config_path, flags.overrides());
    if (solve->parsed()) return kritz::run_solve(cfg);
    if (galerkin->parsed()) return kritz::run_galerkin(cfg);
    if (interpolate->parsed()) return kritz::run_interpolate(cfg);
    if (converge->parsed()) return kritz::run_converge(cfg);
    if (rates->parsed()) return kritz::run_rates(cfg);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const kritz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
