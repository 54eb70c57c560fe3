#include "heatbound/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heatbound/errors.hpp"

namespace heatbound {

namespace {

constexpr Eigen::Index kCoeffs = static_cast<Eigen::Index>(GeneratorCoefficients::size);

// State layout: [coefficients | d coefficients/deta | column 0: v, dv | column 1 ...]
struct Layout {
  Eigen::Index columns = 1;
  bool sensitivity = false;

  Eigen::Index dcoeff_offset() const { return kCoeffs; }
  Eigen::Index column_base() const { return sensitivity ? 2 * kCoeffs : kCoeffs; }
  Eigen::Index stride() const { return sensitivity ? 8 : 4; }
  Eigen::Index v_offset(Eigen::Index j) const { return column_base() + j * stride(); }
  Eigen::Index dv_offset(Eigen::Index j) const { return v_offset(j) + 4; }
  Eigen::Index size() const { return column_base() + columns * stride(); }
};

GeneratorCoefficients read_coefficients(const ode::State& y, Eigen::Index offset, double t) {
  std::array<complex, GeneratorCoefficients::size> a;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = y[offset + static_cast<Eigen::Index>(i)];
  return GeneratorCoefficients::from_array(a, t);
}

void write_coefficients(const GeneratorCoefficients& k, Eigen::Index offset, ode::State& y) {
  const auto a = k.to_array();
  for (std::size_t i = 0; i < a.size(); ++i) y[offset + static_cast<Eigen::Index>(i)] = a[i];
}

struct SolvedSystem {
  Layout layout;
  SolverStats stats;
  std::shared_ptr<const ode::DenseOutput> dense;
};

SolvedSystem solve_system(const Eigen::Matrix<complex, 4, Eigen::Dynamic>& initial_columns,
                          double eta, const Bath& bath, double omega0, double t_final,
                          const SolverOptions& options, bool sensitivity) {
  if (!(t_final > 0.0)) throw DomainError("t_final must be positive");
  Layout layout{initial_columns.cols(), sensitivity};

  ode::State y0 = ode::State::Zero(layout.size());
  for (Eigen::Index j = 0; j < layout.columns; ++j) {
    y0.segment<4>(layout.v_offset(j)) = initial_columns.col(j);
  }

  auto rhs = [&bath, eta, omega0, layout](double t, const ode::State& y, ode::State& dy) {
    dy.resize(y.size());
    const GeneratorMatrix g = assemble_G(read_coefficients(y, 0, t), omega0);
    if (layout.sensitivity) {
      const auto r = coefficient_rates_with_sensitivity(bath, eta, t, omega0);
      write_coefficients(r.rates, 0, dy);
      write_coefficients(r.sensitivity_rates, layout.dcoeff_offset(), dy);
      const GeneratorMatrix dg = assemble_dG_deta(read_coefficients(y, layout.dcoeff_offset(), t));
      for (Eigen::Index j = 0; j < layout.columns; ++j) {
        const Eigen::Vector4cd v = y.segment<4>(layout.v_offset(j));
        const Eigen::Vector4cd dv = y.segment<4>(layout.dv_offset(j));
        dy.segment<4>(layout.v_offset(j)) = g * v;
        dy.segment<4>(layout.dv_offset(j)) = g * dv + dg * v;
      }
    } else {
      write_coefficients(coefficient_rates(bath, eta, t, omega0), 0, dy);
      for (Eigen::Index j = 0; j < layout.columns; ++j) {
        dy.segment<4>(layout.v_offset(j)) = g * y.segment<4>(layout.v_offset(j));
      }
    }
  };

  SolvedSystem out;
  out.layout = layout;
  out.dense = std::make_shared<const ode::DenseOutput>(
      ode::integrate(rhs, 0.0, y0, t_final, options, out.stats));
  return out;
}

CountingBlochState state_from(const ode::State& y, const Layout& layout, double t, double eta) {
  CountingBlochState s;
  s.t = t;
  s.eta = eta;
  s.v = y.segment<4>(layout.v_offset(0));
  s.coefficients = read_coefficients(y, 0, t);
  if (layout.sensitivity) {
    s.dv_deta = y.segment<4>(layout.dv_offset(0));
    s.dcoefficients_deta = read_coefficients(y, layout.dcoeff_offset(), t);
  }
  return s;
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

Eigen::Vector4cd BlochVector::counting() const { return {x, y, z, 1.0}; }

void require_in_ball(const BlochVector& v) {
  if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z) || v.norm() > 1.0 + 1e-12) {
    throw DomainError("Bloch vector outside the unit ball");
  }
}

std::vector<double> uniform_grid(double t_final, double step) {
  if (!(t_final > 0.0) || !(step > 0.0)) throw DomainError("grid needs positive t_final and step");
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor(t_final / step + 1e-9));
  grid.reserve(n + 2);
  for (std::size_t i = 0; i <= n; ++i) grid.push_back(static_cast<double>(i) * step);
  if (t_final - grid.back() > 1e-9 * step) {
    grid.push_back(t_final);
  } else {
    grid.back() = t_final;
  }
  return grid;
}

Trajectory evolve_counting(const Eigen::Vector4cd& initial, double eta, const Bath& bath,
                           double omega0, double t_final, std::span<const double> report_grid,
                           const SolverOptions& options, bool sensitivity) {
  for (std::size_t i = 0; i < report_grid.size(); ++i) {
    if (report_grid[i] < 0.0 || report_grid[i] > t_final ||
        (i > 0 && !(report_grid[i] > report_grid[i - 1]))) {
      throw DomainError("report grid must be strictly increasing within [0, t_final]");
    }
  }
  const auto solved = solve_system(initial, eta, bath, omega0, t_final, options, sensitivity);

  Trajectory traj;
  traj.eta = eta;
  traj.has_sensitivity = sensitivity;
  traj.stats = solved.stats;
  traj.dense_ = solved.dense;
  traj.samples.reserve(report_grid.size());
  ode::State y;
  for (double t : report_grid) {
    solved.dense->evaluate(t, y);
    traj.samples.push_back(state_from(y, solved.layout, t, eta));
    if (eta == 0.0) {
      const auto& v = traj.samples.back().v;
      const double r = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
      if (r > 1.0 + 1e-8) {
        std::ostringstream msg;
        msg << "Bloch vector left the unit ball at t=" << t << " (|v|=" << r << ")";
        traj.diagnostics.push_back(msg.str());
      }
    }
  }
  return traj;
}

Trajectory evolve(const BlochVector& initial, double eta, const Bath& bath, double omega0,
                  double t_final, std::span<const double> report_grid, const SolverOptions& options) {
  require_in_ball(initial);
  return evolve_counting(initial.counting(), eta, bath, omega0, t_final, report_grid, options, false);
}

Trajectory evolve_with_sensitivity(const BlochVector& initial, const Bath& bath, double omega0,
                                   double t_final, std::span<const double> report_grid,
                                   const SolverOptions& options) {
  require_in_ball(initial);
  return evolve_counting(initial.counting(), 0.0, bath, omega0, t_final, report_grid, options, true);
}

CountingBlochState Trajectory::at(double t) const {
  if (!dense_) throw DomainError("trajectory has no dense output");
  const Layout layout{1, has_sensitivity};
  return state_from((*dense_)(t), layout, t, eta);
}

double Trajectory::t_final() const { return dense_ ? dense_->t_end() : 0.0; }

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.t);
  return out;
}

SteadyStateResult steady_state_check(const Trajectory& traj, double window, double tol) {
  if (traj.samples.empty()) throw DomainError("empty trajectory");
  const double t_end = traj.samples.back().t;
  const double t_start = t_end - window;
  if (window < 0.0 || t_start < traj.samples.front().t) {
    throw DomainError("steady-state window longer than the trajectory");
  }
  Eigen::Vector4d lo_re = Eigen::Vector4d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector4d hi_re = -lo_re;
  Eigen::Vector4d lo_im = lo_re;
  Eigen::Vector4d hi_im = hi_re;
  for (const auto& s : traj.samples) {
    if (s.t < t_start) continue;
    lo_re = lo_re.cwiseMin(s.v.real());
    hi_re = hi_re.cwiseMax(s.v.real());
    lo_im = lo_im.cwiseMin(s.v.imag());
    hi_im = hi_im.cwiseMax(s.v.imag());
  }
  const double residual = std::max((hi_re - lo_re).maxCoeff(), (hi_im - lo_im).maxCoeff());
  return {residual < tol, residual};
}

Propagator Propagator::solve(const Bath& bath, double eta, bool sensitivity, double omega0,
                             double t_final, const SolverOptions& options) {
  const Eigen::Matrix4cd identity = Eigen::Matrix4cd::Identity();
  auto solved = solve_system(identity, eta, bath, omega0, t_final, options, sensitivity);
  Propagator p;
  p.eta_ = eta;
  p.sensitivity_ = sensitivity;
  p.stats_ = solved.stats;
  p.dense_ = std::move(solved.dense);
  return p;
}

Eigen::Matrix4cd Propagator::matrix(double t) const {
  const Layout layout{4, sensitivity_};
  const ode::State y = (*dense_)(t);
  Eigen::Matrix4cd m;
  for (Eigen::Index j = 0; j < 4; ++j) m.col(j) = y.segment<4>(layout.v_offset(j));
  return m;
}

Eigen::Matrix4cd Propagator::sensitivity(double t) const {
  if (!sensitivity_) throw DomainError("propagator was solved without sensitivity");
  const Layout layout{4, true};
  const ode::State y = (*dense_)(t);
  Eigen::Matrix4cd m;
  for (Eigen::Index j = 0; j < 4; ++j) m.col(j) = y.segment<4>(layout.dv_offset(j));
  return m;
}

GeneratorCoefficients Propagator::coefficients(double t) const {
  return read_coefficients((*dense_)(t), 0, t);
}

}  // namespace heatbound
