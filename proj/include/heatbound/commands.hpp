#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "heatbound/config.hpp"
#include "heatbound/csv.hpp"
#include "heatbound/observables.hpp"
#include "heatbound/oracle.hpp"
#include "heatbound/sweep.hpp"

namespace heatbound {

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_config = 2,
  exit_solver = 3,
  exit_invariant = 4,
};

struct CommandOptions {
  std::optional<std::filesystem::path> out;  // overrides output.directory
  bool svg = false;                          // or-ed with output.svg
  std::optional<std::size_t> threads;        // overrides sweep.threads
  std::optional<std::uint64_t> seed;         // accepted; every run is deterministic
};

// CSV tables with the stable column names.
csv::Table trajectory_table(const std::vector<BoundsSample>& samples);
csv::Table sweep_table(const std::vector<SweepRecord>& records);
csv::Table crossover_table(const std::vector<CrossoverRecord>& records);

struct OracleCheckRow {
  double t = 0.0;
  LandauerTerms terms;
  double thermodynamic = 0.0;  // -ln <e^{-beta dQ}>
  StateCheck state;
};

struct OracleCheck {
  std::vector<OracleCheckRow> rows;
  double truncation_mass = 0.0;
  ScalingReport scaling;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

OracleCheck run_oracle_check(const RunConfig& config);
csv::Table oracle_equality_table(const OracleCheck& check);
csv::Table oracle_scaling_table(const OracleCheck& check);

// Each command writes its files under the output directory and a short report
// to `log`, returning an ExitCode.
int cmd_evolve(const RunConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_sweep(const RunConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_crossover_map(const RunConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_oracle_check(const RunConfig& config, const CommandOptions& options, std::ostream& log);
// Regenerates the SVG for an existing CSV file next to it.
int cmd_plot(const std::filesystem::path& csv_path, std::ostream& log);

// Loads the configuration (defaults when `config_path` is empty), runs the
// named command and maps failures to exit codes, reporting them on `err`.
int run_command(const std::string& name, const std::optional<std::filesystem::path>& config_path,
                const CommandOptions& options, std::ostream& log, std::ostream& err);

}  // namespace heatbound
