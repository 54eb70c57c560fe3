#pragma once

// Run configuration: an INI file with the sections below. Lines starting with
// ';' or '#' are comments; lists are comma-separated.
//
//   [system]  omega0 (must be 1), vx, vy, vz
//   [bath]    spectral_density = ohmic | discrete, coupling, cutoff,
//             frequencies, couplings_sq, beta
//   [solver]  abs_tol, rel_tol, max_steps, t_final, report_step
//   [sweep]   radial, angular, r_max, t_bar, horizon, threads
//   [oracle]  frequencies, couplings, n_max, dimension_limit, truncation_budget,
//             times, scaling_frequencies, scaling_couplings, scaling_n_max,
//             scales, scaling_times
//   [output]  directory, svg

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatbound/bath.hpp"
#include "heatbound/dynamics.hpp"
#include "heatbound/oracle.hpp"
#include "heatbound/sweep.hpp"

namespace heatbound {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, std::optional<std::size_t> line, const std::string& what);
  const std::string& field() const noexcept { return field_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::string field_;
  std::optional<std::size_t> line_;
};

struct OracleConfig {
  std::vector<OracleMode> modes{{1.0, 0.05}};
  std::size_t n_max = 12;
  std::size_t dimension_limit = 4096;
  double truncation_budget = 1e-5;
  std::vector<double> times{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
  std::vector<OracleMode> scaling_modes{{1.0, 1.0}};
  std::size_t scaling_n_max = 16;
  std::vector<double> scales{0.02, 0.04, 0.08};
  std::vector<double> scaling_times{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};

  TruncatedEnvironment environment() const;
  TruncatedEnvironment scaling_environment() const;
};

struct RunConfig {
  double omega0 = 1.0;
  BlochVector initial{0.0, 0.0, 0.28};
  SpectralDensity spectral_density = OhmicExpCutoff{0.1, 0.4};
  BathParams bath{1.0};
  SolverOptions solver;
  double t_final = 50.0;
  double report_step = 0.1;
  GridSpec grid;
  double t_bar = 50.0;
  double horizon = 50.0;
  std::size_t threads = 1;
  OracleConfig oracle;
  std::string output_directory = ".";
  bool svg = false;
};

// Checks every field; throws ConfigError naming the offending field.
void validate(const RunConfig& config);

RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

// The configuration as INI text (defaults included); parse_config round-trips it.
std::string to_ini(const RunConfig& config);

}  // namespace heatbound
