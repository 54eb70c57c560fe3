#include "heatbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "heatbound/errors.hpp"

namespace heatbound {

namespace {

constexpr complex kI{0.0, 1.0};

Eigen::Vector4cd bloch_components(const Eigen::Matrix2cd& m) {
  return {m(0, 1) + m(1, 0), kI * (m(0, 1) - m(1, 0)), m(0, 0) - m(1, 1), m(0, 0) + m(1, 1)};
}

}  // namespace

std::size_t TruncatedEnvironment::environment_dimension() const {
  std::size_t dim = 1;
  const std::size_t levels = n_max + 1;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (dim > std::numeric_limits<std::size_t>::max() / levels) {
      return std::numeric_limits<std::size_t>::max();
    }
    dim *= levels;
  }
  return dim;
}

std::size_t TruncatedEnvironment::total_dimension() const {
  const std::size_t de = environment_dimension();
  return de > std::numeric_limits<std::size_t>::max() / 2 ? de : 2 * de;
}

TruncatedEnvironment TruncatedEnvironment::scaled(double s) const {
  TruncatedEnvironment out = *this;
  for (auto& m : out.modes) m.coupling *= s;
  return out;
}

DiscreteModes TruncatedEnvironment::spectral_density() const {
  DiscreteModes sd;
  for (const auto& m : modes) sd.modes.push_back({m.frequency, m.coupling * m.coupling});
  return sd;
}

double TruncatedEnvironment::recurrence_time() const {
  if (modes.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> w;
  for (const auto& m : modes) w.push_back(m.frequency);
  std::sort(w.begin(), w.end());
  double gap = w.front();
  for (std::size_t i = 1; i < w.size(); ++i) {
    const double d = w[i] - w[i - 1];
    if (d > 1e-12) gap = std::min(gap, d);
  }
  return 2.0 * std::numbers::pi / gap;
}

Hamiltonians build_hamiltonians(const TruncatedEnvironment& env, double omega0) {
  const std::size_t de = env.environment_dimension();
  const std::size_t dim = env.total_dimension();
  if (de == std::numeric_limits<std::size_t>::max() || dim > env.dimension_limit) {
    throw DimensionError("oracle Hilbert space dimension exceeds the configured limit of " +
                         std::to_string(env.dimension_limit));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  const auto ne = static_cast<Eigen::Index>(de);
  const std::size_t levels = env.n_max + 1;

  Eigen::MatrixXcd he = Eigen::MatrixXcd::Zero(ne, ne);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(ne, ne);
  std::size_t stride = 1;
  for (std::size_t k = 0; k < env.modes.size(); ++k) {
    const auto& mode = env.modes[k];
    for (std::size_t e = 0; e < de; ++e) {
      const std::size_t nk = (e / stride) % levels;
      he(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(e)) +=
          mode.frequency * static_cast<double>(nk);
      if (nk + 1 < levels) {
        const auto lo = static_cast<Eigen::Index>(e);
        const auto hi = static_cast<Eigen::Index>(e + stride);
        const double amp = mode.coupling * std::sqrt(static_cast<double>(nk + 1));
        b(hi, lo) += amp;  // g b^+
        b(lo, hi) += amp;  // g^* b
      }
    }
    stride *= levels;
  }

  Hamiltonians h;
  h.system = Eigen::MatrixXcd::Zero(n, n);
  h.environment = Eigen::MatrixXcd::Zero(n, n);
  h.interaction = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index e = 0; e < ne; ++e) {
    h.system(e, e) = 0.5 * omega0;
    h.system(ne + e, ne + e) = -0.5 * omega0;
  }
  h.environment.topLeftCorner(ne, ne) = he;
  h.environment.bottomRightCorner(ne, ne) = he;
  h.interaction.topRightCorner(ne, ne) = b;
  h.interaction.bottomLeftCorner(ne, ne) = b;
  h.total = h.system + h.environment + h.interaction;
  return h;
}

Eigen::Matrix2cd density_matrix(const BlochVector& v) {
  Eigen::Matrix2cd rho;
  rho << 1.0 + v.z, complex(v.x, -v.y), complex(v.x, v.y), 1.0 - v.z;
  return 0.5 * rho;
}

BlochVector bloch_vector(const Eigen::Matrix2cd& rho) {
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

double entropy(const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

ExactOracle::ExactOracle(TruncatedEnvironment env, BathParams bp, double omega0)
    : env_(std::move(env)), bp_(bp), omega0_(omega0) {
  validate(bp_);
  for (const auto& m : env_.modes) {
    if (!(m.frequency > 0.0)) throw DomainError("oracle mode frequencies must be positive");
    if (!std::isfinite(m.coupling)) throw DomainError("oracle couplings must be finite");
  }
  const Hamiltonians h = build_hamiltonians(env_, omega0_);
  dim_env_ = env_.environment_dimension();
  dim_ = env_.total_dimension();

  double kept = 1.0;
  for (const auto& m : env_.modes) {
    kept *= -std::expm1(-bp_.beta * m.frequency * static_cast<double>(env_.n_max + 1));
  }
  truncation_mass_ = 1.0 - kept;
  if (truncation_mass_ > env_.truncation_budget) {
    throw TruncationError("Gibbs weight beyond n_max is " + std::to_string(truncation_mass_) +
                          ", above the budget " + std::to_string(env_.truncation_budget));
  }

  const auto ne = static_cast<Eigen::Index>(dim_env_);
  env_energies_ = h.environment.topLeftCorner(ne, ne).diagonal().real();
  gibbs_ = (-bp_.beta * env_energies_.array()).exp().matrix();
  gibbs_ /= gibbs_.sum();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.total);
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

Eigen::MatrixXcd ExactOracle::evolution(double t) const {
  const Eigen::VectorXcd phases = (-kI * t * eigenvalues_.cast<complex>()).array().exp().matrix();
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Eigen::MatrixXcd ExactOracle::trace_environment(const Eigen::MatrixXcd& m) const {
  const auto ne = static_cast<Eigen::Index>(dim_env_);
  Eigen::MatrixXcd out(2, 2);
  for (Eigen::Index s = 0; s < 2; ++s) {
    for (Eigen::Index sp = 0; sp < 2; ++sp) {
      out(s, sp) = m.block(s * ne, sp * ne, ne, ne).trace();
    }
  }
  return out;
}

Eigen::MatrixXcd ExactOracle::trace_system(const Eigen::MatrixXcd& m) const {
  const auto ne = static_cast<Eigen::Index>(dim_env_);
  return m.topLeftCorner(ne, ne) + m.bottomRightCorner(ne, ne);
}

Eigen::MatrixXcd ExactOracle::initial_state(const BlochVector& rho_s0) const {
  require_in_ball(rho_s0);
  const Eigen::Matrix2cd rs = density_matrix(rho_s0);
  const auto ne = static_cast<Eigen::Index>(dim_env_);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * ne, 2 * ne);
  for (Eigen::Index s = 0; s < 2; ++s) {
    for (Eigen::Index sp = 0; sp < 2; ++sp) {
      out.block(s * ne, sp * ne, ne, ne).diagonal() = rs(s, sp) * gibbs_.cast<complex>();
    }
  }
  return out;
}

Eigen::MatrixXcd ExactOracle::total_state(const BlochVector& rho_s0, double t) const {
  const Eigen::MatrixXcd u = evolution(t);
  return u * initial_state(rho_s0) * u.adjoint();
}

StateCheck ExactOracle::check_state(const BlochVector& rho_s0, double t) const {
  const Eigen::MatrixXcd rho = total_state(rho_s0, t);
  StateCheck c;
  c.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_error = std::abs(rho.trace() - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

Eigen::Vector4cd ExactOracle::modified_bloch(const BlochVector& rho_s0, double eta,
                                             double t) const {
  require_in_ball(rho_s0);
  const Eigen::Matrix2cd rs = density_matrix(rho_s0);
  const auto ne = static_cast<Eigen::Index>(dim_env_);
  // e^{eta H_E/2} rho_tot(0) e^{eta H_E/2} = rho_S (x) e^{eta H_E} rho_E^eq
  const Eigen::VectorXcd weights =
      (gibbs_.array() * (eta * env_energies_.array()).exp()).matrix().cast<complex>();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * ne, 2 * ne);
  for (Eigen::Index s = 0; s < 2; ++s) {
    for (Eigen::Index sp = 0; sp < 2; ++sp) a.block(s * ne, sp * ne, ne, ne).diagonal() = rs(s, sp) * weights;
  }
  const Eigen::MatrixXcd u = evolution(t);
  Eigen::MatrixXcd x = u * a * u.adjoint();
  // left-multiply by 1 (x) e^{-eta H_E}
  const Eigen::VectorXd left = (-eta * env_energies_.array()).exp().matrix();
  for (Eigen::Index s = 0; s < 2; ++s) {
    for (Eigen::Index e = 0; e < ne; ++e) x.row(s * ne + e) *= left[e];
  }
  const Eigen::Matrix2cd reduced = trace_environment(x);
  return bloch_components(reduced);
}

double ExactOracle::modified_trace(const BlochVector& rho_s0, double eta, double t) const {
  return modified_bloch(rho_s0, eta, t)[3].real();
}

double ExactOracle::heat(const BlochVector& rho_s0, double t) const {
  const Eigen::MatrixXcd rho_e_t = trace_system(total_state(rho_s0, t));
  double q = 0.0;
  for (Eigen::Index e = 0; e < static_cast<Eigen::Index>(dim_env_); ++e) {
    q += env_energies_[e] * (rho_e_t(e, e).real() - gibbs_[e]);
  }
  return q;
}

LandauerTerms ExactOracle::landauer_terms(const BlochVector& rho_s0, double t) const {
  const Eigen::MatrixXcd rho_t = total_state(rho_s0, t);
  const Eigen::MatrixXcd rho_s_t = trace_environment(rho_t);
  const Eigen::MatrixXcd rho_e_t = trace_system(rho_t);
  const double s_s0 = entropy(density_matrix(rho_s0));
  const double s_st = entropy(rho_s_t);
  const double s_et = entropy(rho_e_t);
  const double s_tot = entropy(rho_t);

  double q = 0.0;
  double cross = 0.0;  // Tr[rho_E(t) ln rho_E(0)]
  for (Eigen::Index e = 0; e < static_cast<Eigen::Index>(dim_env_); ++e) {
    const double p = rho_e_t(e, e).real();
    q += env_energies_[e] * (p - gibbs_[e]);
    cross += p * std::log(gibbs_[e]);
  }

  LandauerTerms terms;
  terms.beta_heat = bp_.beta * q;
  terms.entropy_decrease = s_s0 - s_st;
  terms.mutual_information = s_st + s_et - s_tot;
  terms.relative_entropy = -s_et - cross;
  return terms;
}

double exact_modified_trace(const BlochVector& rho_s0, const TruncatedEnvironment& env,
                            const BathParams& bp, double eta, double t, double omega0) {
  return ExactOracle(env, bp, omega0).modified_trace(rho_s0, eta, t);
}

double exact_heat(const BlochVector& rho_s0, const TruncatedEnvironment& env, const BathParams& bp,
                  double t, double omega0) {
  return ExactOracle(env, bp, omega0).heat(rho_s0, t);
}

LandauerTerms landauer_equality_terms(const BlochVector& rho_s0, const TruncatedEnvironment& env,
                                      const BathParams& bp, double t, double omega0) {
  return ExactOracle(env, bp, omega0).landauer_terms(rho_s0, t);
}

std::vector<ScalingReport::Ratio> ScalingReport::ratios() const {
  std::vector<Ratio> out;
  auto ratio = [&](double lo, double hi) -> std::optional<double> {
    if (lo <= noise_floor || hi <= noise_floor) return std::nullopt;
    return hi / lo;
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    out.push_back({a.scale, b.scale, ratio(a.dev_vz, b.dev_vz),
                   ratio(a.dev_v0_beta, b.dev_v0_beta), ratio(a.dev_heat, b.dev_heat)});
  }
  return out;
}

ScalingReport tcl2_vs_exact_report(const BlochVector& rho_s0, const TruncatedEnvironment& env,
                                   const BathParams& bp, double omega0,
                                   std::span<const double> t_grid, std::span<const double> scales,
                                   const SolverOptions& options) {
  if (t_grid.empty()) throw DomainError("empty time grid");
  ScalingReport report;
  report.recurrence_time = env.recurrence_time();
  report.noise_floor = 100.0 * (options.abs_tol + options.rel_tol);
  for (double t : t_grid) {
    if (!(t >= 0.0) || t >= report.recurrence_time) {
      throw DomainError("comparison times must lie in [0, recurrence time)");
    }
  }
  const double t_final = *std::max_element(t_grid.begin(), t_grid.end());

  for (double s : scales) {
    const TruncatedEnvironment env_s = env.scaled(s);
    const ExactOracle oracle(env_s, bp, omega0);
    const Bath bath(env_s.spectral_density(), bp);
    const auto zero = evolve_with_sensitivity(rho_s0, bath, omega0, t_final, t_grid, options);
    const auto at_beta = evolve(rho_s0, bp.beta, bath, omega0, t_final, t_grid, options);

    ScalingRow row;
    row.scale = s;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      const double t = t_grid[i];
      const Eigen::Vector4cd exact0 = oracle.modified_bloch(rho_s0, 0.0, t);
      const Eigen::Vector4cd exact_beta = oracle.modified_bloch(rho_s0, bp.beta, t);
      const double exact_q = oracle.heat(rho_s0, t);
      const double tcl_q = -zero.samples[i].dv_deta->coeff(3).real();
      row.dev_vz = std::max(row.dev_vz, std::abs(zero.samples[i].v[2] - exact0[2]));
      row.dev_v0_beta = std::max(row.dev_v0_beta, std::abs(at_beta.samples[i].v[3] - exact_beta[3]));
      row.dev_heat = std::max(row.dev_heat, std::abs(tcl_q - exact_q));
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace heatbound
