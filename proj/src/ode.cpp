#include "heatbound/ode.hpp"

#include <algorithm>
#include <cmath>

#include "heatbound/errors.hpp"

namespace heatbound::ode {

namespace {

// Dormand-Prince tableau (Hairer, Norsett & Wanner, "Solving ODEs I").
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double scaled_norm(const State& v, const State& y0, const State& y1, const SolverOptions& opt) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double sk = opt.abs_tol + opt.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = std::abs(v[i]) / sk;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(v.size(), 1)));
}

double initial_step(const Rhs& f, double t0, const State& y0, const State& f0, double direction,
                    const SolverOptions& opt, SolverStats& stats) {
  const double d0 = scaled_norm(y0, y0, y0, opt);
  const double dd1 = scaled_norm(f0, y0, y0, opt);
  double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
  h0 = std::min(h0, opt.max_step);
  State y1 = y0 + direction * h0 * f0;
  State f1(y0.size());
  f(t0 + direction * h0, y1, f1);
  ++stats.rhs_evaluations;
  const double dd2 = scaled_norm(f1 - f0, y0, y0, opt) / h0;
  const double dmax = std::max(dd1, dd2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, opt.max_step});
}

bool all_finite(const State& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  }
  return true;
}

}  // namespace

const DenseOutput::Segment& DenseOutput::find(double t) const {
  if (segments_.empty()) throw DomainError("dense output is empty");
  if (t < t_begin_ || t > t_end_) {
    throw DomainError("dense output queried at t=" + std::to_string(t) + " outside [" +
                      std::to_string(t_begin_) + ", " + std::to_string(t_end_) + "]");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double value, const Segment& s) { return value < s.t0; });
  if (it != segments_.begin()) --it;
  return *it;
}

void DenseOutput::evaluate(double t, State& out) const {
  const Segment& s = find(t);
  const double theta = (t - s.t0) / s.h;
  const double theta1 = 1.0 - theta;
  out = s.r1 + theta * (s.r2 + theta1 * (s.r3 + theta * (s.r4 + theta1 * s.r5)));
}

State DenseOutput::operator()(double t) const {
  State out;
  evaluate(t, out);
  return out;
}

DenseOutput integrate(const Rhs& f, double t0, const State& y0, double t_end,
                      const SolverOptions& opt, SolverStats& stats) {
  if (!(t_end > t0)) throw DomainError("integration requires t_end > t0");
  const Eigen::Index n = y0.size();

  DenseOutput dense;
  dense.t_begin_ = t0;
  dense.t_end_ = t_end;
  dense.dim_ = n;

  State y = y0;
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ynew(n), ystage(n), err(n);
  f(t0, y, k1);
  ++stats.rhs_evaluations;

  double h = opt.initial_step > 0.0 ? opt.initial_step : initial_step(f, t0, y, k1, 1.0, opt, stats);
  double t = t0;
  bool last_rejected = false;

  while (t < t_end) {
    if (stats.steps + stats.rejected >= opt.max_steps) {
      throw SolverError(SolverError::Kind::too_many_steps, t,
                        "step budget exhausted before reaching tolerance");
    }
    h = std::min(h, opt.max_step);
    bool final_step = false;
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      final_step = true;
    }
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      throw SolverError(SolverError::Kind::step_underflow, t, "step size underflow");
    }

    ystage = y + h * a21 * k1;
    f(t + c2 * h, ystage, k2);
    ystage = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, ystage, k3);
    ystage = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, ystage, k4);
    ystage = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, ystage, k5);
    ystage = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, ystage, k6);
    ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double t_new = final_step ? t_end : t + h;
    f(t_new, ynew, k7);
    stats.rhs_evaluations += 6;

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double enorm = scaled_norm(err, y, ynew, opt);
    if (!std::isfinite(enorm) || !all_finite(ynew)) {
      if (!all_finite(y)) {
        throw SolverError(SolverError::Kind::non_finite, t, "state became non-finite");
      }
      enorm = 1e10;
    }

    if (enorm <= 1.0) {
      DenseOutput::Segment seg;
      seg.t0 = t;
      seg.h = h;
      const State ydiff = ynew - y;
      const State bspl = h * k1 - ydiff;
      seg.r1 = y;
      seg.r2 = ydiff;
      seg.r3 = bspl;
      seg.r4 = ydiff - h * k7 - bspl;
      seg.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      dense.segments_.push_back(std::move(seg));

      ++stats.steps;
      stats.max_error_estimate = std::max(stats.max_error_estimate, enorm);
      y = ynew;
      k1 = k7;
      t = t_new;
      double fac = enorm > 0.0 ? 0.9 * std::pow(enorm, -0.2) : 10.0;
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
      h *= fac;
      last_rejected = false;
    } else {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(enorm, -0.2));
      last_rejected = true;
    }
  }
  return dense;
}

}  // namespace heatbound::ode
