#pragma once

// Environment correlation functions with a counting field.
//
// For H_E = sum_k w_k b_k^+ b_k and B_E = sum_k (g_k b_k^+ + g_k^* b_k) in the
// Gibbs state at inverse temperature beta, with n(w) = 1/(e^{beta w} - 1):
//
//   <B^(eta) B^(eta)(-tau)>  = int dw J(w) [ n e^{i w tau} + (n+1) e^{-i w tau} ]
//   <B^(-eta) B^(eta)(-tau)> = int dw J(w) [ n e^{eta w} e^{i w tau}
//                                            + (n+1) e^{-eta w} e^{-i w tau} ]
//
// where X^(eta) = e^{-eta H_E/2} X e^{eta H_E/2} and X(-tau) is the free
// evolution. In the first (same-sign) correlator the e^{+-eta w/2} factors of
// b^+ and b cancel pairwise, so it does not depend on eta. At eta = beta the
// detailed-balance identity n e^{beta w} = n + 1 turns the opposite-sign
// correlator into the complex conjugate of the same-sign one.

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heatbound/quadrature.hpp"

namespace heatbound {

using complex = std::complex<double>;

// J(w) = coupling * w * exp(-w / cutoff)
struct OhmicExpCutoff {
  double coupling = 0.1;
  double cutoff = 0.4;
};

struct BosonMode {
  double frequency = 1.0;
  double coupling_sq = 0.0;  // |g_k|^2
};

struct DiscreteModes {
  std::vector<BosonMode> modes;
};

using SpectralDensity = std::variant<OhmicExpCutoff, DiscreteModes>;

struct BathParams {
  double beta = 1.0;
};

// Throws DomainError when the parameters violate their invariants.
void validate(const SpectralDensity& sd);
void validate(const BathParams& bp);

// 1 / (e^{beta w} - 1). Requires beta > 0 and w > 0; returns 0 for w = +inf.
double bose_occupation(double beta, double omega);

double spectral_density(const OhmicExpCutoff& sd, double omega);

// Midpoint discretisation of an Ohmic density on (0, omega_max] into `count` modes.
DiscreteModes discretize(const OhmicExpCutoff& sd, double omega_max, std::size_t count);

struct CorrelatorSample {
  complex same_sign;           // <B^(eta) B^(eta)(-tau)>
  complex opposite_sign;       // <B^(-eta) B^(eta)(-tau)>
  complex opposite_sign_deta;  // d/deta of opposite_sign
};

// A spectral density together with the bath temperature. Evaluations are
// pure; results are memoized per (eta, tau) in a mutex-guarded cache shared by
// copies of the same Bath.
class Bath {
 public:
  Bath(SpectralDensity sd, BathParams bp, quad::Options quadrature = {});

  const SpectralDensity& spectral_density() const noexcept { return sd_; }
  const BathParams& params() const noexcept { return bp_; }
  double beta() const noexcept { return bp_.beta; }
  bool is_ohmic() const noexcept { return std::holds_alternative<OhmicExpCutoff>(sd_); }

  // All three correlators from a single quadrature pass.
  CorrelatorSample sample(double eta, double tau) const;

  complex correlation_same_sign(double tau) const;
  complex correlation_opposite_sign(double eta, double tau) const;
  // (h_+, h_-) = same_sign +- opposite_sign
  std::pair<complex, complex> h_pm(double eta, double tau) const;
  complex correlation_eta_derivative(double eta, double tau) const;

  // Upper integration limit for the Ohmic variant at this counting field.
  double upper_frequency(double eta) const;

  // Largest error estimate returned by the quadrature so far.
  double max_quadrature_error() const;
  std::size_t cache_size() const;
  void clear_cache() const;

  // Human-readable notes about parameter regimes (e.g. high temperature).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  void check_eta(double eta) const;
  CorrelatorSample compute(double eta, double tau) const;
  CorrelatorSample compute_ohmic(const OhmicExpCutoff& sd, double eta, double tau) const;
  CorrelatorSample compute_discrete(const DiscreteModes& sd, double eta, double tau) const;

  struct Cache;

  SpectralDensity sd_;
  BathParams bp_;
  quad::Options quad_;
  std::vector<std::string> warnings_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace heatbound
