#pragma once

// Dormand-Prince 5(4) with step-size control and a continuous extension that
// is kept for every accepted step, so the solution can be evaluated at any
// time inside the integration interval after the fact.

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Core>

namespace heatbound {

struct SolverOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double initial_step = 0.0;  // 0: automatic
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 1000000;
};

struct SolverStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double max_error_estimate = 0.0;  // largest scaled error norm of an accepted step
};

namespace ode {

using State = Eigen::VectorXcd;
using Rhs = std::function<void(double t, const State& y, State& dydt)>;

class DenseOutput {
 public:
  State operator()(double t) const;
  void evaluate(double t, State& out) const;

  double t_begin() const noexcept { return t_begin_; }
  double t_end() const noexcept { return t_end_; }
  std::size_t segments() const noexcept { return segments_.size(); }
  Eigen::Index dimension() const noexcept { return dim_; }

 private:
  friend DenseOutput integrate(const Rhs&, double, const State&, double, const SolverOptions&,
                               SolverStats&);

  struct Segment {
    double t0;
    double h;
    State r1, r2, r3, r4, r5;
  };
  const Segment& find(double t) const;

  double t_begin_ = 0.0;
  double t_end_ = 0.0;
  Eigen::Index dim_ = 0;
  std::vector<Segment> segments_;
};

// Integrates y' = f(t, y) from t0 to t_end. Throws SolverError on step-size
// underflow, exhausted step budget or non-finite states.
DenseOutput integrate(const Rhs& f, double t0, const State& y0, double t_end,
                      const SolverOptions& options, SolverStats& stats);

}  // namespace ode
}  // namespace heatbound
