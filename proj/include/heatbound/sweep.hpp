#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "heatbound/bath.hpp"
#include "heatbound/dynamics.hpp"
#include "heatbound/observables.hpp"

namespace heatbound {

// Polar grid in the v_y = 0 plane. Ring i has radius r_max * i / (radial - 1)
// and every ring carries `angular` points at angles 2 pi j / angular measured
// from +z towards +x, so ring 0 repeats the centre once per ray. A zero count
// gives an empty grid.
struct GridSpec {
  std::size_t radial = 30;
  std::size_t angular = 24;
  double r_max = 0.95;

  std::size_t size() const noexcept { return radial * angular; }
};

void validate(const GridSpec& spec);

// Radial-major ordering: index = i * angular + j. Points at angles j and
// angular - j are exact mirror images (v_x -> -v_x).
std::vector<BlochVector> bloch_disk_grid(const GridSpec& spec);

enum class Tighter { entropic, thermodynamic, tie };

const char* to_string(Tighter t);
std::optional<Tighter> parse_tighter(const std::string& s);

// The larger bound is the tighter one; equal to within `tie_band` is a tie.
Tighter tighter_bound(double entropic, double thermodynamic, double tie_band = 1e-12);

struct SweepRecord {
  std::size_t index = 0;
  BlochVector initial;
  double beta_heat = 0.0;
  double entropic = 0.0;
  double thermodynamic = 0.0;
  Tighter tighter = Tighter::tie;
  std::optional<double> crossover;
  bool failed = false;
  std::string failure;
};

struct CrossoverRecord {
  std::size_t index = 0;
  BlochVector initial;
  std::optional<double> crossover;
  std::vector<double> later;
  bool failed = false;
  std::string failure;
};

struct SweepOptions {
  SolverOptions solver;
  std::size_t threads = 1;
  double report_step = 0.1;  // time grid used for crossover detection
  // Called once per finished point, in completion order, from worker threads
  // (serialised by the sweep).
  std::function<void(const SweepRecord&)> on_record;
  std::function<void(const CrossoverRecord&)> on_crossover;
};

// Heat and both bounds at t_bar for every grid point. Records come back in
// grid order regardless of thread count.
std::vector<SweepRecord> sweep_bounds(const GridSpec& spec, const SpectralDensity& sd,
                                      const BathParams& bp, double omega0, double t_bar,
                                      const SweepOptions& options = {});

// Same, reusing an engine whose horizon covers t_bar.
std::vector<SweepRecord> sweep_bounds(const GridSpec& spec, const BoundsEngine& engine,
                                      double t_bar, const SweepOptions& options = {});

// First crossover time per grid point within [0, horizon].
std::vector<CrossoverRecord> crossover_map(const GridSpec& spec, const SpectralDensity& sd,
                                           const BathParams& bp, double omega0, double horizon,
                                           const SweepOptions& options = {});

std::vector<CrossoverRecord> crossover_map(const GridSpec& spec, const BoundsEngine& engine,
                                           double horizon, const SweepOptions& options = {});

}  // namespace heatbound
