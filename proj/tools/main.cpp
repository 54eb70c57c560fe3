#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "heatbound/commands.hpp"
#include "heatbound/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Heat dissipation and Landauer bounds for the spin-boson model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool svg = false;
  std::size_t threads = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "output directory (overrides output.directory)");
    cmd->add_flag("--svg", svg, "also write SVG figures");
    cmd->add_option("--threads", threads, "worker threads for sweeps")->check(CLI::Range(1, 1024));
    cmd->add_option("--seed", seed, "accepted for compatibility; runs are deterministic");
  };

  auto* evolve = app.add_subcommand("evolve", "trajectory of the heat and both bounds");
  auto* sweep = app.add_subcommand("sweep", "tighter bound over the Bloch disk");
  auto* cross = app.add_subcommand("crossover-map", "first crossover time over the Bloch disk");
  auto* oracle = app.add_subcommand("oracle-check", "exact finite-environment validation");
  for (auto* cmd : {evolve, sweep, cross, oracle}) add_common(cmd);

  std::string csv_path;
  auto* plot = app.add_subcommand("plot", "regenerate the SVG for a CSV written by this tool");
  plot->add_option("csv", csv_path, "CSV file")->required()->check(CLI::ExistingFile);

  auto* defaults = app.add_subcommand("print-config", "print the default configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : heatbound::exit_config;
  }

  if (plot->parsed()) {
    try {
      return heatbound::cmd_plot(csv_path, std::cout);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return heatbound::exit_failure;
    }
  }
  if (defaults->parsed()) {
    std::cout << heatbound::to_ini(heatbound::RunConfig{});
    return heatbound::exit_ok;
  }

  heatbound::CommandOptions options;
  options.svg = svg;
  if (!out_dir.empty()) options.out = out_dir;
  if (threads > 0) options.threads = threads;
  if (seed != 0) options.seed = seed;
  std::optional<std::filesystem::path> config;
  if (!config_path.empty()) config = config_path;

  const auto* cmd = app.get_subcommands().front();
  return heatbound::run_command(cmd->get_name(), config, options, std::cout, std::cerr);
}
