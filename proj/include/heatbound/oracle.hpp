#pragma once

// Exact reference for a qubit coupled to a few truncated bosonic modes.
//
// The total Hamiltonian H = (w0/2) sigma_z + sum_k w_k b_k^+ b_k
// + sigma_x (x) sum_k g_k (b_k^+ + b_k) is diagonalised once; every query is
// then a pair of dense matrix products. The environment starts in the Gibbs
// state of the truncated H_E (renormalised on the truncated space), so the
// finite model is an exact instance of the erasure protocol. Basis ordering is
// system-major: index = s * dim_E + e, with s = 0 the excited state.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "heatbound/bath.hpp"
#include "heatbound/dynamics.hpp"

namespace heatbound {

struct OracleMode {
  double frequency = 1.0;
  double coupling = 0.0;  // real amplitude g_k
};

struct TruncatedEnvironment {
  std::vector<OracleMode> modes;
  std::size_t n_max = 12;            // highest occupation kept per mode
  std::size_t dimension_limit = 4096;
  double truncation_budget = 1e-5;   // allowed Gibbs weight beyond n_max

  std::size_t environment_dimension() const;
  std::size_t total_dimension() const;
  // Same modes with all couplings multiplied by `s`.
  TruncatedEnvironment scaled(double s) const;
  // Matching spectral density for the perturbative engine (|g_k|^2 weights).
  DiscreteModes spectral_density() const;
  // 2 pi / (smallest positive gap among the frequencies and their differences).
  double recurrence_time() const;
};

struct Hamiltonians {
  Eigen::MatrixXcd system;       // H_S (x) 1
  Eigen::MatrixXcd environment;  // 1 (x) H_E
  Eigen::MatrixXcd interaction;  // sigma_x (x) B_E
  Eigen::MatrixXcd total;
};

Hamiltonians build_hamiltonians(const TruncatedEnvironment& env, double omega0 = 1.0);

Eigen::Matrix2cd density_matrix(const BlochVector& v);
BlochVector bloch_vector(const Eigen::Matrix2cd& rho);

// von Neumann entropy of a Hermitian density matrix, in nats.
double entropy(const Eigen::MatrixXcd& rho);

struct LandauerTerms {
  double beta_heat = 0.0;          // beta <dQ>
  double entropy_decrease = 0.0;   // S(rho_S(0)) - S(rho_S(t))
  double mutual_information = 0.0;
  double relative_entropy = 0.0;   // D(rho_E(t) || rho_E(0))

  double residual() const {
    return beta_heat - entropy_decrease - mutual_information - relative_entropy;
  }
};

struct StateCheck {
  double hermiticity = 0.0;     // max |rho - rho^+|
  double trace_error = 0.0;     // |Tr rho - 1|
  double min_eigenvalue = 0.0;
};

class ExactOracle {
 public:
  // Throws DimensionError above the dimension limit and TruncationError when
  // the untruncated Gibbs weight beyond n_max exceeds the budget.
  ExactOracle(TruncatedEnvironment env, BathParams bp, double omega0 = 1.0);

  const TruncatedEnvironment& environment() const noexcept { return env_; }
  double truncation_mass() const noexcept { return truncation_mass_; }
  std::size_t dimension() const noexcept { return dim_; }

  Eigen::MatrixXcd initial_state(const BlochVector& rho_s0) const;
  Eigen::MatrixXcd total_state(const BlochVector& rho_s0, double t) const;
  StateCheck check_state(const BlochVector& rho_s0, double t) const;

  // Tr_E[U_{eta/2} rho_tot(0) U_{eta/2}^+] in the (v_x, v_y, v_z, v_0) representation.
  Eigen::Vector4cd modified_bloch(const BlochVector& rho_s0, double eta, double t) const;
  // Tr rho_S^(eta)(t) = <e^{-eta dQ}>.
  double modified_trace(const BlochVector& rho_s0, double eta, double t) const;
  // Tr_E[H_E (rho_E(t) - rho_E(0))]
  double heat(const BlochVector& rho_s0, double t) const;
  LandauerTerms landauer_terms(const BlochVector& rho_s0, double t) const;

 private:
  Eigen::MatrixXcd evolution(double t) const;
  Eigen::MatrixXcd trace_environment(const Eigen::MatrixXcd& m) const;
  Eigen::MatrixXcd trace_system(const Eigen::MatrixXcd& m) const;

  TruncatedEnvironment env_;
  BathParams bp_;
  double omega0_;
  std::size_t dim_env_ = 1;
  std::size_t dim_ = 2;
  double truncation_mass_ = 0.0;
  Eigen::VectorXd env_energies_;     // diagonal of H_E on the environment factor
  Eigen::VectorXd gibbs_;            // truncated, renormalised Gibbs weights
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

// Convenience wrappers matching the oracle's single-shot use.
double exact_modified_trace(const BlochVector& rho_s0, const TruncatedEnvironment& env,
                            const BathParams& bp, double eta, double t, double omega0 = 1.0);
double exact_heat(const BlochVector& rho_s0, const TruncatedEnvironment& env,
                  const BathParams& bp, double t, double omega0 = 1.0);
LandauerTerms landauer_equality_terms(const BlochVector& rho_s0, const TruncatedEnvironment& env,
                                      const BathParams& bp, double t, double omega0 = 1.0);

struct ScalingRow {
  double scale = 0.0;
  double dev_vz = 0.0;
  double dev_v0_beta = 0.0;
  double dev_heat = 0.0;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double recurrence_time = 0.0;
  double noise_floor = 0.0;

  // error(scale_{i+1}) / error(scale_i) for consecutive rows, per quantity;
  // nullopt where either error is below the noise floor.
  struct Ratio {
    double from_scale = 0.0;
    double to_scale = 0.0;
    std::optional<double> vz, v0_beta, heat;
  };
  std::vector<Ratio> ratios() const;
};

// Maximum deviation between the perturbative engine and the exact oracle over
// `t_grid` for each coupling scale. All times must lie below the recurrence time.
ScalingReport tcl2_vs_exact_report(const BlochVector& rho_s0, const TruncatedEnvironment& env,
                                   const BathParams& bp, double omega0,
                                   std::span<const double> t_grid, std::span<const double> scales,
                                   const SolverOptions& options = {});

}  // namespace heatbound
