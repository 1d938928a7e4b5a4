#pragma once

#include "kritz/config.hpp"

namespace kritz {

/// Subcommand entry points. Each takes a fully resolved configuration,
/// writes its outputs under the configured out_dir (records.csv,
/// coefficients, training log, effective-config sidecar), and returns 0.
/// Configuration problems raise ConfigError, numerical failures
/// NumericalError; the binary maps those to exit codes 2 and 3.
int run_solve(const FlatConfig& cfg);
int run_galerkin(const FlatConfig& cfg);
int run_interpolate(const FlatConfig& cfg);
int run_converge(const FlatConfig& cfg);
int run_rates(const FlatConfig& cfg);

}  // namespace kritz
