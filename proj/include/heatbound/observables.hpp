#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "heatbound/bath.hpp"
#include "heatbound/dynamics.hpp"

namespace heatbound {

// S = -p+ ln p+ - p- ln p-, p+- = (1 +- |v|)/2, in nats.
double von_neumann_entropy(const BlochVector& v);
double von_neumann_entropy_of_radius(double r);

// S(v_initial) - S(v_t)
double entropic_bound(const BlochVector& v_initial, const BlochVector& v_t);

// -ln v0^(beta); IntegrityError for a nonpositive trace.
double thermodynamic_bound(double v0_at_beta);

// <dQ> = -d v0 / d eta at eta = 0.
double mean_heat(complex dv0_deta);

// Theta(eta, t) = ln v0^(eta)(t); IntegrityError for a nonpositive trace.
double cgf(double v0);

struct CrossoverResult {
  std::optional<double> first;
  std::vector<double> later;  // further sign changes, diagnostic only
};

// Sign changes of B_th - B_en on a common grid. Differences within
// `zero_band` of zero carry no sign. When `difference` is given, each
// crossing is refined by bisection on it to `tol`; otherwise by linear
// interpolation between grid points.
CrossoverResult crossover_time(std::span<const double> times, std::span<const double> entropic,
                               std::span<const double> thermodynamic,
                               const std::function<double(double)>& difference = {},
                               double tol = 1e-3, double zero_band = 1e-10);

struct BoundsSample {
  double t = 0.0;
  BlochVector bloch;        // ordinary reduced state
  double v0_beta = 1.0;     // Tr rho^(beta)
  double beta_heat = 0.0;   // beta <dQ>
  double entropic = 0.0;
  double thermodynamic = 0.0;
};

// Both bounds and the heat for any initial state, from two fundamental
// matrices: eta = 0 with sensitivity and eta = beta.
class BoundsEngine {
 public:
  BoundsEngine(const Bath& bath, double omega0, double horizon, const SolverOptions& options = {});

  BoundsSample sample(const BlochVector& initial, double t) const;
  std::vector<BoundsSample> series(const BlochVector& initial, std::span<const double> grid) const;
  CrossoverResult crossover(const BlochVector& initial, std::span<const double> grid,
                            double tol = 1e-3) const;

  double beta() const noexcept { return beta_; }
  double horizon() const noexcept { return zero_.t_final(); }
  const Propagator& zero() const noexcept { return zero_; }
  const Propagator& at_beta() const noexcept { return at_beta_; }

 private:
  double beta_;
  Propagator zero_;
  Propagator at_beta_;
};

}  // namespace heatbound
