#include "kritz/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "kritz/errors.hpp"

namespace kritz {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

FlatConfig default_config() {
  return {
      {"problem", "smooth_poisson"},
      {"problem.c_pen", "100"},
      {"kernel.family", "matern32"},
      {"kernel.shape", "1"},
      {"domain.kind", ""},   // derived from the problem unless pinned
      {"domain.angle", ""},  // sector opening angle override, radians
      {"centers.n_per_dim", "4"},
      {"centers.n_list", "2,4,8,16"},
      {"methods", "interpolation,galerkin"},
      {"mesh_norm.resolution", "400"},
      {"quadrature.interior_batch", "0"},  // 0 = scale with the center count
      {"quadrature.boundary_batch", "0"},
      {"quadrature.fixed_interior", "200000"},
      {"quadrature.fixed_boundary", "20000"},
      {"train.epochs", "5000"},
      {"train.lr", "0.01"},
      {"train.milestones", ""},  // empty = equally spaced
      {"train.basis", "lagrange"},
      {"train.mode", "resample"},
      {"train.seed", ""},  // empty = use the global seed
      {"error.grid_per_dim", "101"},
      {"rates.h_cutoff", ""},  // empty = 0.3 on the sector, none otherwise
      {"rates.input", ""},
      {"seed", "0"},
      {"out_dir", "out"},
  };
}

FlatConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config file not found: " + path);
  }
  FlatConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    }
    cfg[key] = trim(stripped.substr(eq + 1));
  }
  return cfg;
}

FlatConfig resolve_config(const std::string& config_path,
                          const FlatConfig& overrides) {
  FlatConfig cfg = default_config();
  auto merge = [&cfg](const FlatConfig& layer, const std::string& origin) {
    for (const auto& [key, value] : layer) {
      if (!cfg.contains(key)) {
        throw ConfigError("unknown configuration key '" + key + "' (" + origin + ")");
      }
      cfg[key] = value;
    }
  };
  if (!config_path.empty()) merge(parse_config_file(config_path), config_path);
  merge(overrides, "command line");
  return cfg;
}

std::string cfg_string(const FlatConfig& cfg, const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) throw ConfigError("missing configuration key: " + key);
  return it->second;
}

bool cfg_empty(const FlatConfig& cfg, const std::string& key) {
  return cfg_string(cfg, key).empty();
}

int cfg_int(const FlatConfig& cfg, const std::string& key) {
  const std::string value = cfg_string(cfg, key);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return out;
}

double cfg_double(const FlatConfig& cfg, const std::string& key) {
  const std::string value = cfg_string(cfg, key);
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

std::uint64_t cfg_seed(const FlatConfig& cfg, const std::string& key) {
  const std::string value = cfg_string(cfg, key);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
  }
  return out;
}

std::vector<int> cfg_int_list(const FlatConfig& cfg, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(cfg_string(cfg, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
      throw ConfigError(key + ": expected integers, got '" + t + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> cfg_string_list(const FlatConfig& cfg,
                                         const std::string& key) {
  std::vector<std::string> out;
  std::stringstream ss(cfg_string(cfg, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

void write_sidecar(const FlatConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write sidecar file: " + path);
  for (const auto& [key, value] : cfg) {
    out << key << " = " << value << "\n";
  }
}

}  // namespace kritz
