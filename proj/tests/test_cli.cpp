#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "kritz/analysis.hpp"
#include "kritz/cli.hpp"
#include "kritz/config.hpp"
#include "kritz/errors.hpp"

using namespace kritz;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("kritz_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FlatConfig fast_run_overrides(const std::string& out_dir) {
  // desk-scale sizes so the suite stays quick
  return {
      {"out_dir", out_dir},
      {"centers.n_per_dim", "2"},
      {"train.epochs", "60"},
      {"quadrature.interior_batch", "256"},
      {"quadrature.boundary_batch", "64"},
      {"quadrature.fixed_interior", "5000"},
      {"quadrature.fixed_boundary", "500"},
      {"mesh_norm.resolution", "100"},
  };
}

}  // namespace

TEST_CASE("defaults cover every documented key") {
  const FlatConfig cfg = default_config();
  CHECK(cfg.at("problem") == "smooth_poisson");
  CHECK(cfg.at("kernel.family") == "matern32");
  CHECK(cfg.at("kernel.shape") == "1");
  CHECK(cfg.at("problem.c_pen") == "100");
  CHECK(cfg.at("mesh_norm.resolution") == "400");
  CHECK(cfg.at("quadrature.fixed_interior") == "200000");
  CHECK(cfg.at("train.epochs") == "5000");
  CHECK(cfg.at("seed") == "0");
}

TEST_CASE("config files parse, comments and blanks are skipped") {
  const fs::path dir = fresh_dir("cfgparse");
  const fs::path file = dir / "run.cfg";
  {
    std::ofstream out(file);
    out << "# experiment setup\n"
        << "\n"
        << "problem = singular_sector\n"
        << "kernel.family=matern52   # inline comment\n"
        << "  kernel.shape =  2.5\n";
  }
  const FlatConfig parsed = parse_config_file(file.string());
  CHECK(parsed.at("problem") == "singular_sector");
  CHECK(parsed.at("kernel.family") == "matern52");
  CHECK(parsed.at("kernel.shape") == "2.5");

  const FlatConfig resolved = resolve_config(file.string(), {});
  CHECK(resolved.at("problem") == "singular_sector");
  CHECK(resolved.at("train.epochs") == "5000");  // untouched default
}

TEST_CASE("missing config files name the path") {
  const std::string path = "/no/such/dir/missing.cfg";
  try {
    resolve_config(path, {});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
  }
}

TEST_CASE("malformed lines and unknown keys are rejected") {
  const fs::path dir = fresh_dir("cfgbad");
  const fs::path bad_line = dir / "bad.cfg";
  {
    std::ofstream out(bad_line);
    out << "problem smooth_poisson\n";
  }
  CHECK_THROWS_AS(parse_config_file(bad_line.string()), ConfigError);

  const fs::path unknown = dir / "unknown.cfg";
  {
    std::ofstream out(unknown);
    out << "kernel.bandwidth = 2\n";
  }
  CHECK_THROWS_AS(resolve_config(unknown.string(), {}), ConfigError);
  CHECK_THROWS_AS(resolve_config("", {{"not.a.key", "1"}}), ConfigError);
}

TEST_CASE("typed accessors validate their values") {
  FlatConfig cfg = default_config();
  cfg["train.epochs"] = "soon";
  CHECK_THROWS_AS(cfg_int(cfg, "train.epochs"), ConfigError);
  cfg["kernel.shape"] = "wide";
  CHECK_THROWS_AS(cfg_double(cfg, "kernel.shape"), ConfigError);
  cfg["centers.n_list"] = "2,x,8";
  CHECK_THROWS_AS(cfg_int_list(cfg, "centers.n_list"), ConfigError);
  cfg["centers.n_list"] = "2, 4 , 8";
  CHECK(cfg_int_list(cfg, "centers.n_list") == std::vector<int>{2, 4, 8});
}

TEST_CASE("command-line overrides beat the config file") {
  const fs::path dir = fresh_dir("cfgprec");
  const fs::path file = dir / "run.cfg";
  {
    std::ofstream out(file);
    out << "kernel.family = matern12\nseed = 3\n";
  }
  const FlatConfig resolved =
      resolve_config(file.string(), {{"kernel.family", "matern52"}});
  CHECK(resolved.at("kernel.family") == "matern52");
  CHECK(resolved.at("seed") == "3");
}

TEST_CASE("interpolate run writes a record and coefficients") {
  const fs::path dir = fresh_dir("interp");
  FlatConfig ov = fast_run_overrides(dir.string());
  ov["centers.n_per_dim"] = "4";
  const int code = run_interpolate(resolve_config("", ov));
  CHECK(code == 0);
  const std::string csv = slurp(dir / "records.csv");
  CHECK(csv.find("method,kernel,") == 0);
  CHECK(csv.find("interpolation,matern32,1,4,36,") != std::string::npos);
  CHECK(fs::exists(dir / "coefficients.txt"));
  CHECK(fs::exists(dir / "effective_config.txt"));
  const std::string sidecar = slurp(dir / "effective_config.txt");
  CHECK(sidecar.find("centers.n_per_dim = 4") != std::string::npos);
  CHECK(sidecar.find("problem = smooth_poisson") != std::string::npos);
}

TEST_CASE("solve run writes records, coefficients, and the training log") {
  const fs::path dir = fresh_dir("solve");
  const int code = run_solve(resolve_config("", fast_run_overrides(dir.string())));
  CHECK(code == 0);
  const std::string csv = slurp(dir / "records.csv");
  CHECK(csv.find("deep_ritz,matern32,") != std::string::npos);
  const std::string log = slurp(dir / "training_log.csv");
  CHECK(log.rfind("epoch,energy,grad_norm,lr\n", 0) == 0);
  // header plus one line per epoch
  CHECK(std::count(log.begin(), log.end(), '\n') == 61);
}

TEST_CASE("identical configurations give byte-identical outputs") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  FlatConfig ova = fast_run_overrides(a.string());
  FlatConfig ovb = fast_run_overrides(b.string());
  ova["seed"] = "7";
  ovb["seed"] = "7";
  REQUIRE(run_solve(resolve_config("", ova)) == 0);
  REQUIRE(run_solve(resolve_config("", ovb)) == 0);
  CHECK(slurp(a / "records.csv") == slurp(b / "records.csv"));
  CHECK(slurp(a / "training_log.csv") == slurp(b / "training_log.csv"));
  CHECK(slurp(a / "coefficients.txt") == slurp(b / "coefficients.txt"));

  FlatConfig ovc = fast_run_overrides(a.string() + "_c");
  ovc["seed"] = "8";
  REQUIRE(run_solve(resolve_config("", ovc)) == 0);
  CHECK(slurp(a / "records.csv") != slurp(fs::path(a.string() + "_c") / "records.csv"));
}

TEST_CASE("galerkin run records the condition number") {
  const fs::path dir = fresh_dir("galerkin");
  const int code = run_galerkin(resolve_config("", fast_run_overrides(dir.string())));
  CHECK(code == 0);
  const std::string csv = slurp(dir / "records.csv");
  CHECK(csv.find("galerkin,matern32,") != std::string::npos);
  // the condition column is non-empty for the direct route
  std::stringstream in(csv);
  const auto records = read_csv(in);
  REQUIRE(records.size() == 1);
  CHECK(records[0].condition.has_value());
  CHECK(*records[0].condition > 1.0);
}

TEST_CASE("converge run validates its lists and writes rates") {
  const fs::path dir = fresh_dir("converge");
  FlatConfig ov = fast_run_overrides(dir.string());
  ov["centers.n_list"] = "";
  CHECK_THROWS_AS(run_converge(resolve_config("", ov)), ConfigError);

  ov["centers.n_list"] = "2,4";
  ov["methods"] = "interpolation";
  const int code = run_converge(resolve_config("", ov));
  CHECK(code == 0);
  const std::string rates = slurp(dir / "rates.txt");
  CHECK(rates.find("method=interpolation") != std::string::npos);
  CHECK(rates.find("l2_rate=") != std::string::npos);
  std::stringstream in(slurp(dir / "records.csv"));
  CHECK(read_csv(in).size() == 2);

  ov["methods"] = "quadrature_collocation";
  CHECK_THROWS_AS(run_converge(resolve_config("", ov)), ConfigError);
}

TEST_CASE("converge sweeps the trained route as well") {
  const fs::path dir = fresh_dir("converge_dr");
  FlatConfig ov = fast_run_overrides(dir.string());
  ov["centers.n_list"] = "1,2";
  ov["methods"] = "deep_ritz,galerkin";
  ov["train.epochs"] = "40";
  REQUIRE(run_converge(resolve_config("", ov)) == 0);
  std::stringstream in(slurp(dir / "records.csv"));
  const auto records = read_csv(in);
  REQUIRE(records.size() == 4);
  int trained = 0, direct = 0;
  for (const auto& r : records) {
    if (r.method == Method::DeepRitz) {
      ++trained;
      CHECK(r.final_energy.has_value());
      CHECK_FALSE(r.condition.has_value());
    }
    if (r.method == Method::Galerkin) {
      ++direct;
      CHECK(r.condition.has_value());
    }
  }
  CHECK(trained == 2);
  CHECK(direct == 2);
}

TEST_CASE("rates subcommand re-reads a records CSV") {
  const fs::path dir = fresh_dir("rates");
  FlatConfig ov = fast_run_overrides(dir.string());
  ov["centers.n_list"] = "2,4,8";
  ov["methods"] = "interpolation";
  REQUIRE(run_converge(resolve_config("", ov)) == 0);

  FlatConfig rates_ov = {{"rates.input", (dir / "records.csv").string()}};
  CHECK(run_rates(resolve_config("", rates_ov)) == 0);
  CHECK_THROWS_AS(run_rates(resolve_config("", FlatConfig{})), ConfigError);
}

TEST_CASE("invalid domain and kernel settings are config errors") {
  FlatConfig ov = fast_run_overrides(fresh_dir("badcfg").string());
  ov["problem"] = "poisson_cubed";
  CHECK_THROWS_AS(run_interpolate(resolve_config("", ov)), ConfigError);

  ov = fast_run_overrides(fresh_dir("badcfg2").string());
  ov["kernel.family"] = "gaussian";
  CHECK_THROWS_AS(run_interpolate(resolve_config("", ov)), ConfigError);

  ov = fast_run_overrides(fresh_dir("badcfg3").string());
  ov["domain.kind"] = "sector";  // conflicts with smooth_poisson
  CHECK_THROWS_AS(run_interpolate(resolve_config("", ov)), ConfigError);

  ov = fast_run_overrides(fresh_dir("badcfg4").string());
  ov["kernel.shape"] = "-2";
  CHECK_THROWS_AS(run_interpolate(resolve_config("", ov)), ConfigError);
}
