#include "heatbound/commands.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "heatbound/errors.hpp"
#include "heatbound/svg.hpp"

namespace heatbound {

namespace fs = std::filesystem;

namespace {

using csv::format_number;

fs::path output_dir(const RunConfig& config, const CommandOptions& options) {
  fs::path dir = options.out ? *options.out : fs::path(config.output_directory);
  fs::create_directories(dir);
  return dir;
}

bool want_svg(const RunConfig& config, const CommandOptions& options) {
  return options.svg || config.svg;
}

std::size_t thread_count(const RunConfig& config, const CommandOptions& options) {
  return options.threads.value_or(config.threads);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void emit(const fs::path& dir, const std::string& stem, const csv::Table& table, bool svg,
          std::ostream& log) {
  const fs::path csv_path = dir / (stem + ".csv");
  csv::write_file(csv_path, table);
  log << "wrote " << csv_path.string() << '\n';
  if (svg) {
    const fs::path svg_path = dir / (stem + ".svg");
    // Plot from the file just written, so figures never see more than the CSV.
    write_text(svg_path, svg::plot_for(csv::read_file(csv_path)));
    log << "wrote " << svg_path.string() << '\n';
  }
}

// Appends rows to `<stem>.csv.partial` as they finish; removed once the
// ordered file is written.
class PartialWriter {
 public:
  PartialWriter(const fs::path& path, std::vector<std::string> header) : path_(path) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    header.insert(header.begin(), "index");
    csv::write_row(out_, header);
    out_.flush();
  }
  void row(std::size_t index, std::vector<std::string> cells) {
    cells.insert(cells.begin(), std::to_string(index));
    csv::write_row(out_, cells);
    out_.flush();
  }
  void finish() {
    out_.close();
    std::error_code ec;
    fs::remove(path_, ec);
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::vector<std::string> sweep_cells(const SweepRecord& r) {
  if (r.failed) {
    return {format_number(r.initial.x), format_number(r.initial.z), "", "", "", "failed"};
  }
  return {format_number(r.initial.x), format_number(r.initial.z), format_number(r.beta_heat),
          format_number(r.entropic), format_number(r.thermodynamic), to_string(r.tighter)};
}

std::vector<std::string> crossover_cells(const CrossoverRecord& r) {
  return {format_number(r.initial.x), format_number(r.initial.z),
          csv::format_optional(r.crossover)};
}

const std::vector<std::string> kSweepHeader{"vx0", "vz0", "beta_Q", "B_en", "B_th", "tighter"};
const std::vector<std::string> kCrossoverHeader{"vx0", "vz0", "crossover_t"};

}  // namespace

csv::Table trajectory_table(const std::vector<BoundsSample>& samples) {
  csv::Table t;
  t.header = {"t", "v_x", "v_y", "v_z", "v0_beta", "beta_Q", "B_en", "B_th"};
  for (const auto& s : samples) {
    t.rows.push_back({format_number(s.t), format_number(s.bloch.x), format_number(s.bloch.y),
                      format_number(s.bloch.z), format_number(s.v0_beta),
                      format_number(s.beta_heat), format_number(s.entropic),
                      format_number(s.thermodynamic)});
  }
  return t;
}

csv::Table sweep_table(const std::vector<SweepRecord>& records) {
  csv::Table t;
  t.header = kSweepHeader;
  for (const auto& r : records) t.rows.push_back(sweep_cells(r));
  return t;
}

csv::Table crossover_table(const std::vector<CrossoverRecord>& records) {
  csv::Table t;
  t.header = kCrossoverHeader;
  for (const auto& r : records) t.rows.push_back(crossover_cells(r));
  return t;
}

OracleCheck run_oracle_check(const RunConfig& config) {
  constexpr double kEquality = 1e-8;
  constexpr double kNoise = 1e-10;
  OracleCheck check;
  auto fail = [&](const std::string& what) { check.failures.push_back(what); };

  const ExactOracle oracle(config.oracle.environment(), config.bath, config.omega0);
  check.truncation_mass = oracle.truncation_mass();
  for (double t : config.oracle.times) {
    OracleCheckRow row;
    row.t = t;
    row.terms = oracle.landauer_terms(config.initial, t);
    row.thermodynamic = thermodynamic_bound(oracle.modified_trace(config.initial, config.bath.beta, t));
    row.state = oracle.check_state(config.initial, t);
    const std::string at = " at t=" + format_number(t);
    if (!(std::abs(row.terms.residual()) < kEquality)) fail("Landauer equality residual" + at);
    if (row.terms.mutual_information < -kNoise) fail("negative mutual information" + at);
    if (row.terms.relative_entropy < -kNoise) fail("negative relative entropy" + at);
    if (row.terms.entropy_decrease > row.terms.beta_heat + kEquality) fail("entropic bound violated" + at);
    if (row.thermodynamic > row.terms.beta_heat + kEquality) fail("thermodynamic bound violated" + at);
    if (row.state.hermiticity > kNoise || row.state.trace_error > kNoise ||
        row.state.min_eigenvalue < -kNoise) {
      fail("total state not a density matrix" + at);
    }
    check.rows.push_back(row);
  }

  check.scaling = tcl2_vs_exact_report(config.initial, config.oracle.scaling_environment(),
                                       config.bath, config.omega0, config.oracle.scaling_times,
                                       config.oracle.scales, config.solver);
  for (const auto& r : check.scaling.ratios()) {
    const std::string step = " from s=" + format_number(r.from_scale) + " to s=" + format_number(r.to_scale);
    // Deviations grow with s, so the ratio is error(s_to) / error(s_from); for
    // a doubling it should sit near 2^4.
    const double expected = std::pow(r.to_scale / r.from_scale, 4.0);
    for (const auto& [name, value] : {std::pair{"v_z", r.vz}, std::pair{"v0_beta", r.v0_beta},
                                      std::pair{"heat", r.heat}}) {
      if (value && !(*value >= expected / 2.0 && *value <= expected * 2.0)) {
        fail(std::string("scaling ratio of ") + name + step + " is " + format_number(*value));
      }
    }
  }
  return check;
}

csv::Table oracle_equality_table(const OracleCheck& check) {
  csv::Table t;
  t.header = {"t", "beta_Q", "delta_S", "mutual_information", "relative_entropy", "residual",
              "B_th", "min_eigenvalue"};
  for (const auto& r : check.rows) {
    t.rows.push_back({format_number(r.t), format_number(r.terms.beta_heat),
                      format_number(r.terms.entropy_decrease),
                      format_number(r.terms.mutual_information),
                      format_number(r.terms.relative_entropy), format_number(r.terms.residual()),
                      format_number(r.thermodynamic), format_number(r.state.min_eigenvalue)});
  }
  return t;
}

csv::Table oracle_scaling_table(const OracleCheck& check) {
  csv::Table t;
  t.header = {"scale", "dev_vz", "dev_v0_beta", "dev_heat", "ratio_vz", "ratio_v0_beta",
              "ratio_heat"};
  const auto ratios = check.scaling.ratios();
  for (std::size_t i = 0; i < check.scaling.rows.size(); ++i) {
    const auto& r = check.scaling.rows[i];
    std::vector<std::string> row{format_number(r.scale), format_number(r.dev_vz),
                                 format_number(r.dev_v0_beta), format_number(r.dev_heat), "", "",
                                 ""};
    if (i > 0) {
      const auto& q = ratios[i - 1];
      row[4] = csv::format_optional(q.vz);
      row[5] = csv::format_optional(q.v0_beta);
      row[6] = csv::format_optional(q.heat);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

int cmd_evolve(const RunConfig& config, const CommandOptions& options, std::ostream& log) {
  const Bath bath(config.spectral_density, config.bath);
  for (const auto& w : bath.warnings()) log << "warning: " << w << '\n';
  const BoundsEngine engine(bath, config.omega0, config.t_final, config.solver);
  const auto grid = uniform_grid(config.t_final, config.report_step);
  const auto samples = engine.series(config.initial, grid);
  emit(output_dir(config, options), "trajectory", trajectory_table(samples),
       want_svg(config, options), log);

  const auto cross = engine.crossover(config.initial, grid);
  const auto& last = samples.back();
  log << "t=" << format_number(last.t) << " beta_Q=" << format_number(last.beta_heat)
      << " B_en=" << format_number(last.entropic) << " B_th=" << format_number(last.thermodynamic)
      << '\n';
  log << "first crossover: " << (cross.first ? format_number(*cross.first) : "none") << '\n';
  for (double t : cross.later) log << "later crossover: " << format_number(t) << '\n';
  return exit_ok;
}

int cmd_sweep(const RunConfig& config, const CommandOptions& options, std::ostream& log) {
  const fs::path dir = output_dir(config, options);
  std::vector<SweepRecord> records;
  if (config.grid.size() > 0) {
    PartialWriter partial(dir / "sweep.csv.partial", kSweepHeader);
    SweepOptions so;
    so.solver = config.solver;
    so.threads = thread_count(config, options);
    so.on_record = [&](const SweepRecord& r) { partial.row(r.index, sweep_cells(r)); };
    records = sweep_bounds(config.grid, config.spectral_density, config.bath, config.omega0,
                           config.t_bar, so);
    partial.finish();
  }
  emit(dir, "sweep", sweep_table(records), want_svg(config, options), log);

  std::size_t failed = 0;
  std::size_t entropic = 0;
  std::size_t thermodynamic = 0;
  for (const auto& r : records) {
    if (r.failed) {
      ++failed;
    } else if (r.tighter == Tighter::entropic) {
      ++entropic;
    } else if (r.tighter == Tighter::thermodynamic) {
      ++thermodynamic;
    }
  }
  log << records.size() << " points: " << entropic << " entropic, " << thermodynamic
      << " thermodynamic, " << failed << " failed\n";
  return failed ? exit_solver : exit_ok;
}

int cmd_crossover_map(const RunConfig& config, const CommandOptions& options, std::ostream& log) {
  const fs::path dir = output_dir(config, options);
  std::vector<CrossoverRecord> records;
  if (config.grid.size() > 0) {
    PartialWriter partial(dir / "crossover_map.csv.partial", kCrossoverHeader);
    SweepOptions so;
    so.solver = config.solver;
    so.threads = thread_count(config, options);
    so.report_step = config.report_step;
    so.on_crossover = [&](const CrossoverRecord& r) { partial.row(r.index, crossover_cells(r)); };
    records = crossover_map(config.grid, config.spectral_density, config.bath, config.omega0,
                            config.horizon, so);
    partial.finish();
  }
  emit(dir, "crossover_map", crossover_table(records), want_svg(config, options), log);

  std::size_t with = 0;
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (r.failed) ++failed;
    if (r.crossover) ++with;
  }
  log << records.size() << " points, " << with << " with a crossover before t="
      << format_number(config.horizon) << ", " << failed << " failed\n";
  return failed ? exit_solver : exit_ok;
}

int cmd_oracle_check(const RunConfig& config, const CommandOptions& options, std::ostream& log) {
  const OracleCheck check = run_oracle_check(config);
  const fs::path dir = output_dir(config, options);
  csv::write_file(dir / "oracle_equality.csv", oracle_equality_table(check));
  csv::write_file(dir / "oracle_scaling.csv", oracle_scaling_table(check));

  std::ostringstream report;
  report << "truncation mass " << format_number(check.truncation_mass) << '\n';
  double worst = 0.0;
  for (const auto& r : check.rows) worst = std::max(worst, std::abs(r.terms.residual()));
  report << "Landauer equality: " << check.rows.size() << " times, max |residual| "
         << format_number(worst) << '\n';
  report << "recurrence time " << format_number(check.scaling.recurrence_time) << '\n';
  for (const auto& r : check.scaling.rows) {
    report << "s=" << format_number(r.scale) << " dev v_z " << format_number(r.dev_vz)
           << " dev v0_beta " << format_number(r.dev_v0_beta) << " dev heat "
           << format_number(r.dev_heat) << '\n';
  }
  for (const auto& q : check.scaling.ratios()) {
    report << "ratio " << format_number(q.from_scale) << " -> " << format_number(q.to_scale)
           << ": v_z " << csv::format_optional(q.vz) << ", v0_beta "
           << csv::format_optional(q.v0_beta) << ", heat " << csv::format_optional(q.heat) << '\n';
  }
  for (const auto& f : check.failures) report << "FAIL " << f << '\n';
  report << (check.ok() ? "all checks passed" : "invariant violations found") << '\n';
  write_text(dir / "oracle_report.txt", report.str());
  log << report.str();
  return check.ok() ? exit_ok : exit_invariant;
}

int cmd_plot(const fs::path& csv_path, std::ostream& log) {
  fs::path svg_path = csv_path;
  svg_path.replace_extension(".svg");
  write_text(svg_path, svg::plot_for(csv::read_file(csv_path)));
  log << "wrote " << svg_path.string() << '\n';
  return exit_ok;
}

int run_command(const std::string& name, const std::optional<fs::path>& config_path,
                const CommandOptions& options, std::ostream& log, std::ostream& err) {
  try {
    const RunConfig config = config_path ? load_config(*config_path) : RunConfig{};
    if (options.threads && (*options.threads < 1 || *options.threads > 1024)) {
      throw ConfigError("--threads", std::nullopt, "must lie in [1, 1024]");
    }
    if (name == "evolve") return cmd_evolve(config, options, log);
    if (name == "sweep") return cmd_sweep(config, options, log);
    if (name == "crossover-map") return cmd_crossover_map(config, options, log);
    if (name == "oracle-check") return cmd_oracle_check(config, options, log);
    err << "unknown command '" << name << "'\n";
    return exit_config;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const DimensionError& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const TruncationError& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return exit_solver;
  } catch (const QuadratureError& e) {
    err << "solver failure: " << e.what() << '\n';
    return exit_solver;
  } catch (const IntegrityError& e) {
    err << "solver failure: " << e.what() << '\n';
    return exit_solver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

}  // namespace heatbound
