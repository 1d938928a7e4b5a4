#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kritz {

/// Flat configuration: dotted keys to string values.
using FlatConfig = std::map<std::string, std::string>;

/// The defaults for every recognized key, fully materialized so the sidecar
/// echo pins the whole run.
FlatConfig default_config();

/// Parse a flat `key = value` file (# starts a comment, blank lines are
/// skipped). Throws ConfigError naming the path when the file is missing or
/// malformed.
FlatConfig parse_config_file(const std::string& path);

/// defaults <- file (optional) <- overrides, rejecting unknown keys.
FlatConfig resolve_config(const std::string& config_path,
                          const FlatConfig& overrides);

/// Typed accessors; all throw ConfigError with the offending key on parse
/// failure.
std::string cfg_string(const FlatConfig& cfg, const std::string& key);
int cfg_int(const FlatConfig& cfg, const std::string& key);
double cfg_double(const FlatConfig& cfg, const std::string& key);
std::uint64_t cfg_seed(const FlatConfig& cfg, const std::string& key);
bool cfg_empty(const FlatConfig& cfg, const std::string& key);
std::vector<int> cfg_int_list(const FlatConfig& cfg, const std::string& key);
std::vector<std::string> cfg_string_list(const FlatConfig& cfg,
                                         const std::string& key);

/// Write `key = value` lines sorted by key.
void write_sidecar(const FlatConfig& cfg, const std::string& path);

}  // namespace kritz
