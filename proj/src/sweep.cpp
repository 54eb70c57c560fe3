#include "heatbound/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "heatbound/errors.hpp"

namespace heatbound {

namespace {

// Runs job(i) for i in [0, n) on up to `threads` workers.
template <class Job>
void parallel_for(std::size_t n, std::size_t threads, Job job) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) job(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

void validate(const GridSpec& spec) {
  if (!(spec.r_max >= 0.0) || !(spec.r_max < 1.0)) throw DomainError("r_max must lie in [0, 1)");
}

std::vector<BlochVector> bloch_disk_grid(const GridSpec& spec) {
  validate(spec);
  if (spec.size() == 0) return {};
  const std::size_t na = spec.angular;
  std::vector<double> cx(na);
  std::vector<double> cz(na);
  for (std::size_t j = 0; j <= na / 2; ++j) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(na);
    cx[j] = std::sin(th);
    cz[j] = std::cos(th);
  }
  cx[0] = 0.0;
  if (na % 2 == 0) cx[na / 2] = 0.0;
  for (std::size_t j = na / 2 + 1; j < na; ++j) {
    cx[j] = -cx[na - j];
    cz[j] = cz[na - j];
  }

  std::vector<BlochVector> out;
  out.reserve(spec.size());
  for (std::size_t i = 0; i < spec.radial; ++i) {
    const double r = spec.radial == 1
                         ? 0.0
                         : spec.r_max * static_cast<double>(i) / static_cast<double>(spec.radial - 1);
    for (std::size_t j = 0; j < na; ++j) out.push_back({r * cx[j], 0.0, r * cz[j]});
  }
  return out;
}

const char* to_string(Tighter t) {
  switch (t) {
    case Tighter::entropic:
      return "entropic";
    case Tighter::thermodynamic:
      return "thermodynamic";
    case Tighter::tie:
      return "tie";
  }
  return "tie";
}

std::optional<Tighter> parse_tighter(const std::string& s) {
  if (s == "entropic") return Tighter::entropic;
  if (s == "thermodynamic") return Tighter::thermodynamic;
  if (s == "tie") return Tighter::tie;
  return std::nullopt;
}

Tighter tighter_bound(double entropic, double thermodynamic, double tie_band) {
  if (std::abs(entropic - thermodynamic) <= tie_band) return Tighter::tie;
  return entropic > thermodynamic ? Tighter::entropic : Tighter::thermodynamic;
}

std::vector<SweepRecord> sweep_bounds(const GridSpec& spec, const BoundsEngine& engine,
                                      double t_bar, const SweepOptions& options) {
  if (!(t_bar > 0.0) || t_bar > engine.horizon()) {
    throw DomainError("t_bar must lie in (0, horizon]");
  }
  const auto grid = bloch_disk_grid(spec);
  std::vector<SweepRecord> records(grid.size());
  std::mutex emit;
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    SweepRecord& rec = records[i];
    rec.index = i;
    rec.initial = grid[i];
    try {
      const auto s = engine.sample(grid[i], t_bar);
      rec.beta_heat = s.beta_heat;
      rec.entropic = s.entropic;
      rec.thermodynamic = s.thermodynamic;
      rec.tighter = tighter_bound(s.entropic, s.thermodynamic);
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.failure = e.what();
    }
    if (options.on_record) {
      std::lock_guard lock(emit);
      options.on_record(rec);
    }
  });
  return records;
}

std::vector<SweepRecord> sweep_bounds(const GridSpec& spec, const SpectralDensity& sd,
                                      const BathParams& bp, double omega0, double t_bar,
                                      const SweepOptions& options) {
  validate(spec);
  if (spec.size() == 0) return {};
  const Bath bath(sd, bp);
  const BoundsEngine engine(bath, omega0, t_bar, options.solver);
  return sweep_bounds(spec, engine, t_bar, options);
}

std::vector<CrossoverRecord> crossover_map(const GridSpec& spec, const BoundsEngine& engine,
                                           double horizon, const SweepOptions& options) {
  if (!(horizon > 0.0) || horizon > engine.horizon()) {
    throw DomainError("horizon must lie in (0, engine horizon]");
  }
  const auto grid = bloch_disk_grid(spec);
  const auto times = uniform_grid(horizon, options.report_step);
  std::vector<CrossoverRecord> records(grid.size());
  std::mutex emit;
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    CrossoverRecord& rec = records[i];
    rec.index = i;
    rec.initial = grid[i];
    try {
      auto c = engine.crossover(grid[i], times);
      rec.crossover = c.first;
      rec.later = std::move(c.later);
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.failure = e.what();
    }
    if (options.on_crossover) {
      std::lock_guard lock(emit);
      options.on_crossover(rec);
    }
  });
  return records;
}

std::vector<CrossoverRecord> crossover_map(const GridSpec& spec, const SpectralDensity& sd,
                                           const BathParams& bp, double omega0, double horizon,
                                           const SweepOptions& options) {
  validate(spec);
  if (spec.size() == 0) return {};
  const Bath bath(sd, bp);
  const BoundsEngine engine(bath, omega0, horizon, options.solver);
  return crossover_map(spec, engine, horizon, options);
}

}  // namespace heatbound
