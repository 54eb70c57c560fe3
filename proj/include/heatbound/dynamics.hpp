#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "heatbound/bath.hpp"
#include "heatbound/generator.hpp"
#include "heatbound/ode.hpp"

namespace heatbound {

// Bloch vector of the ordinary (eta = 0) reduced state; the trace is 1.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  // (v_x, v_y, v_z, v_0) with v_0 = 1.
  Eigen::Vector4cd counting() const;
};

// Throws DomainError unless |v| <= 1 (up to 1e-12).
void require_in_ball(const BlochVector& v);

struct CountingBlochState {
  double t = 0.0;
  double eta = 0.0;
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();  // (v_x, v_y, v_z, v_0)
  GeneratorCoefficients coefficients;
  std::optional<Eigen::Vector4cd> dv_deta;
  std::optional<GeneratorCoefficients> dcoefficients_deta;
};

class Trajectory {
 public:
  double eta = 0.0;
  bool has_sensitivity = false;
  std::vector<CountingBlochState> samples;
  SolverStats stats;
  // Notes raised while sampling (e.g. the Bloch vector leaving the ball).
  std::vector<std::string> diagnostics;

  // State at an arbitrary time inside the integration interval.
  CountingBlochState at(double t) const;
  double t_final() const;

  std::vector<double> times() const;

 private:
  friend Trajectory evolve_counting(const Eigen::Vector4cd&, double, const Bath&, double, double,
                                    std::span<const double>, const SolverOptions&, bool);
  std::shared_ptr<const ode::DenseOutput> dense_;
};

// Uniform grid 0, step, 2 step, ..., t_final (t_final is always the last point).
std::vector<double> uniform_grid(double t_final, double step);

// Integrates d/dt v = G(t) v together with the six coefficients (and, when
// `sensitivity` is set, d/deta of both) from t = 0 to t_final. The initial
// 4-vector is arbitrary; the report grid must be increasing within [0, t_final].
Trajectory evolve_counting(const Eigen::Vector4cd& initial, double eta, const Bath& bath,
                           double omega0, double t_final, std::span<const double> report_grid,
                           const SolverOptions& options, bool sensitivity);

Trajectory evolve(const BlochVector& initial, double eta, const Bath& bath, double omega0,
                  double t_final, std::span<const double> report_grid,
                  const SolverOptions& options = {});

// eta = 0 run carrying d v / d eta via d/dt dv = G dv + (dG/deta) v.
Trajectory evolve_with_sensitivity(const BlochVector& initial, const Bath& bath, double omega0,
                                   double t_final, std::span<const double> report_grid,
                                   const SolverOptions& options = {});

struct SteadyStateResult {
  bool steady = false;
  double residual = 0.0;  // largest component range over the window
};

// Whether all four components vary by less than `tol` over [t_final - window, t_final].
SteadyStateResult steady_state_check(const Trajectory& traj, double window, double tol);

// Fundamental matrix Phi(t) of the counting Bloch equation, v(t) = Phi(t) v(0),
// with optional d Phi / d eta. Solving it once serves every initial state.
class Propagator {
 public:
  static Propagator solve(const Bath& bath, double eta, bool sensitivity, double omega0,
                          double t_final, const SolverOptions& options = {});

  Eigen::Matrix4cd matrix(double t) const;
  Eigen::Matrix4cd sensitivity(double t) const;
  GeneratorCoefficients coefficients(double t) const;

  double eta() const noexcept { return eta_; }
  bool has_sensitivity() const noexcept { return sensitivity_; }
  double t_final() const noexcept { return dense_->t_end(); }
  const SolverStats& stats() const noexcept { return stats_; }

 private:
  double eta_ = 0.0;
  bool sensitivity_ = false;
  SolverStats stats_;
  std::shared_ptr<const ode::DenseOutput> dense_;
};

}  // namespace heatbound
