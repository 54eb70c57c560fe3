#include "heatbound/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "heatbound/errors.hpp"

namespace heatbound {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

int sign_of(double d, double band) {
  if (d > band) return 1;
  if (d < -band) return -1;
  return 0;
}

}  // namespace

double von_neumann_entropy_of_radius(double r) {
  if (!std::isfinite(r) || r < 0.0 || r > 1.0 + 1e-12) {
    throw DomainError("Bloch radius outside [0, 1]");
  }
  r = std::min(r, 1.0);
  return -xlogx(0.5 * (1.0 + r)) - xlogx(0.5 * (1.0 - r));
}

double von_neumann_entropy(const BlochVector& v) { return von_neumann_entropy_of_radius(v.norm()); }

double entropic_bound(const BlochVector& v_initial, const BlochVector& v_t) {
  return von_neumann_entropy(v_initial) - von_neumann_entropy(v_t);
}

double thermodynamic_bound(double v0_at_beta) {
  if (!(v0_at_beta > 0.0)) {
    throw IntegrityError("nonpositive modified trace " + std::to_string(v0_at_beta));
  }
  return -std::log(v0_at_beta);
}

double mean_heat(complex dv0_deta) { return -dv0_deta.real(); }

double cgf(double v0) {
  if (!(v0 > 0.0)) throw IntegrityError("nonpositive modified trace " + std::to_string(v0));
  return std::log(v0);
}

CrossoverResult crossover_time(std::span<const double> times, std::span<const double> entropic,
                               std::span<const double> thermodynamic,
                               const std::function<double(double)>& difference, double tol,
                               double zero_band) {
  if (times.size() != entropic.size() || times.size() != thermodynamic.size()) {
    throw std::invalid_argument("crossover_time: series lengths differ");
  }
  CrossoverResult out;
  int last_sign = 0;
  std::size_t last_index = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double d = thermodynamic[i] - entropic[i];
    const int s = sign_of(d, zero_band);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      double lo = times[last_index];
      double hi = times[i];
      double t_cross;
      if (difference) {
        while (hi - lo > tol) {
          const double mid = 0.5 * (lo + hi);
          if (sign_of(difference(mid), 0.0) == last_sign) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        t_cross = 0.5 * (lo + hi);
      } else {
        const double d0 = thermodynamic[last_index] - entropic[last_index];
        t_cross = lo + (hi - lo) * d0 / (d0 - d);
      }
      if (out.first) {
        out.later.push_back(t_cross);
      } else {
        out.first = t_cross;
      }
    }
    last_sign = s;
    last_index = i;
  }
  return out;
}

BoundsEngine::BoundsEngine(const Bath& bath, double omega0, double horizon,
                           const SolverOptions& options)
    : beta_(bath.params().beta),
      zero_(Propagator::solve(bath, 0.0, true, omega0, horizon, options)),
      at_beta_(Propagator::solve(bath, bath.params().beta, false, omega0, horizon, options)) {}

BoundsSample BoundsEngine::sample(const BlochVector& initial, double t) const {
  require_in_ball(initial);
  const Eigen::Vector4cd v0 = initial.counting();
  const Eigen::Vector4cd v = zero_.matrix(t) * v0;
  const Eigen::Vector4cd dv = zero_.sensitivity(t) * v0;
  const Eigen::Vector4cd vb = at_beta_.matrix(t) * v0;

  BoundsSample s;
  s.t = t;
  s.bloch = {v[0].real(), v[1].real(), v[2].real()};
  s.v0_beta = vb[3].real();
  s.beta_heat = beta_ * mean_heat(dv[3]);
  s.entropic = entropic_bound(initial, s.bloch);
  s.thermodynamic = thermodynamic_bound(s.v0_beta);
  return s;
}

std::vector<BoundsSample> BoundsEngine::series(const BlochVector& initial,
                                               std::span<const double> grid) const {
  std::vector<BoundsSample> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(sample(initial, t));
  return out;
}

CrossoverResult BoundsEngine::crossover(const BlochVector& initial, std::span<const double> grid,
                                        double tol) const {
  std::vector<double> en;
  std::vector<double> th;
  en.reserve(grid.size());
  th.reserve(grid.size());
  for (double t : grid) {
    const auto s = sample(initial, t);
    en.push_back(s.entropic);
    th.push_back(s.thermodynamic);
  }
  auto difference = [&](double t) {
    const auto s = sample(initial, t);
    return s.thermodynamic - s.entropic;
  };
  return crossover_time(grid, en, th, difference, tol);
}

}  // namespace heatbound
