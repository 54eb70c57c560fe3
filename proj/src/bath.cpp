#include "heatbound/bath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "heatbound/errors.hpp"

namespace heatbound {

namespace {

constexpr std::size_t kMaxCacheEntries = 400000;

struct Key {
  std::uint64_t eta;
  std::uint64_t tau;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = k.eta * 0x9E3779B97F4A7C15ull;
    h ^= k.tau + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// The six real parts of CorrelatorSample, in order:
// Re same, Im same, Re opposite, Im opposite, Re d/deta, Im d/deta.
using Components = std::array<double, 6>;

// Per-mode (or per-frequency) contribution. `weight_n` is J n and
// `weight_n1` is J (n+1), possibly replaced by their w -> 0 limits.
Components contribution(double omega, double eta, double tau, double weight_n, double weight_n1) {
  const double up = eta == 0.0 ? 1.0 : std::exp(eta * omega);
  const double down = eta == 0.0 ? 1.0 : std::exp(-eta * omega);
  const double p = weight_n * up;     // J n e^{eta w}
  const double m = weight_n1 * down;  // J (n+1) e^{-eta w}
  const double c = std::cos(omega * tau);
  const double s = std::sin(omega * tau);
  return {(weight_n + weight_n1) * c, (weight_n - weight_n1) * s,
          (p + m) * c,                (p - m) * s,
          omega * (p - m) * c,        omega * (p + m) * s};
}

CorrelatorSample to_sample(const Components& v) {
  return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}};
}

}  // namespace

struct Bath::Cache {
  mutable std::mutex mutex;
  std::unordered_map<Key, CorrelatorSample, KeyHash> values;
  double max_error = 0.0;
};

void validate(const SpectralDensity& sd) {
  if (const auto* ohm = std::get_if<OhmicExpCutoff>(&sd)) {
    if (!(ohm->coupling >= 0.0) || !std::isfinite(ohm->coupling)) {
      throw DomainError("Ohmic coupling must be non-negative");
    }
    if (!(ohm->cutoff > 0.0) || !std::isfinite(ohm->cutoff)) {
      throw DomainError("Ohmic cutoff must be positive");
    }
    return;
  }
  const auto& disc = std::get<DiscreteModes>(sd);
  for (const auto& mode : disc.modes) {
    if (!(mode.frequency > 0.0) || !std::isfinite(mode.frequency)) {
      throw DomainError("mode frequencies must be positive");
    }
    if (!(mode.coupling_sq >= 0.0) || !std::isfinite(mode.coupling_sq)) {
      throw DomainError("squared mode couplings must be non-negative");
    }
  }
}

void validate(const BathParams& bp) {
  if (!(bp.beta > 0.0) || !std::isfinite(bp.beta)) {
    throw DomainError("inverse temperature must be positive");
  }
}

double bose_occupation(double beta, double omega) {
  if (!(beta > 0.0)) throw DomainError("bose_occupation: beta must be positive");
  if (!(omega > 0.0)) throw DomainError("bose_occupation: omega must be positive");
  if (std::isinf(omega)) return 0.0;
  return 1.0 / std::expm1(beta * omega);
}

double spectral_density(const OhmicExpCutoff& sd, double omega) {
  return sd.coupling * omega * std::exp(-omega / sd.cutoff);
}

DiscreteModes discretize(const OhmicExpCutoff& sd, double omega_max, std::size_t count) {
  DiscreteModes out;
  out.modes.reserve(count);
  const double dw = omega_max / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double w = (static_cast<double>(k) + 0.5) * dw;
    out.modes.push_back({w, spectral_density(sd, w) * dw});
  }
  return out;
}

Bath::Bath(SpectralDensity sd, BathParams bp, quad::Options quadrature)
    : sd_(std::move(sd)), bp_(bp), quad_(quadrature), cache_(std::make_shared<Cache>()) {
  validate(sd_);
  validate(bp_);
  // The frequency unit is the qubit splitting, so beta * w0 = beta.
  if (bp_.beta < 0.2) {
    std::ostringstream msg;
    msg << "beta*omega0 = " << bp_.beta
        << " < 0.2: high temperature, second-order TCL may be inaccurate";
    warnings_.push_back(msg.str());
  }
}

void Bath::check_eta(double eta) const {
  if (!std::isfinite(eta)) throw DomainError("counting field must be finite");
  if (eta > bp_.beta) {
    throw DivergentIntegrandError("counting field eta=" + std::to_string(eta) +
                                  " exceeds beta=" + std::to_string(bp_.beta));
  }
  if (const auto* ohm = std::get_if<OhmicExpCutoff>(&sd_)) {
    // (n+1) e^{-eta w} J(w) decays like e^{-w (1/cutoff + eta)}.
    if (eta <= -0.5 / ohm->cutoff) {
      throw DivergentIntegrandError("counting field eta=" + std::to_string(eta) +
                                    " too negative for the cutoff");
    }
  }
}

double Bath::upper_frequency(double eta) const {
  const auto* ohm = std::get_if<OhmicExpCutoff>(&sd_);
  if (ohm == nullptr) return 0.0;
  const double cut = ohm->cutoff;
  double w_max = cut * std::max(40.0, 10.0 + std::abs(eta - bp_.beta) * cut * 40.0);
  if (eta < 0.0) w_max = std::max(w_max, 40.0 / (1.0 / cut + eta));
  return w_max;
}

CorrelatorSample Bath::compute_ohmic(const OhmicExpCutoff& sd, double eta, double tau) const {
  const double beta = bp_.beta;
  const double w_small = 1e-12 * sd.cutoff;
  const double limit = sd.coupling / beta;  // J n and J (n+1) as w -> 0
  auto integrand = [&](double w) {
    double wn = limit;
    double wn1 = limit;
    if (w >= w_small) {
      const double j = heatbound::spectral_density(sd, w);
      const double n = 1.0 / std::expm1(beta * w);
      wn = j * n;
      wn1 = j * (n + 1.0);
    }
    return contribution(w, eta, tau, wn, wn1);
  };

  const double w_max = upper_frequency(eta);
  // Cut into half-periods of e^{i w tau} before adapting.
  const auto panels = static_cast<std::size_t>(
      std::max(4.0, std::ceil(w_max * std::abs(tau) / 3.141592653589793)));
  const auto res = quad::integrate<6>(integrand, 0.0, w_max, panels, quad_);
  {
    std::lock_guard lock(cache_->mutex);
    cache_->max_error = std::max(cache_->max_error, res.error);
  }
  return to_sample(res.value);
}

CorrelatorSample Bath::compute_discrete(const DiscreteModes& sd, double eta, double tau) const {
  Components acc{};
  for (const auto& mode : sd.modes) {
    const double n = bose_occupation(bp_.beta, mode.frequency);
    const auto c = contribution(mode.frequency, eta, tau, mode.coupling_sq * n,
                                mode.coupling_sq * (n + 1.0));
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c[i];
  }
  return to_sample(acc);
}

CorrelatorSample Bath::compute(double eta, double tau) const {
  if (const auto* ohm = std::get_if<OhmicExpCutoff>(&sd_)) return compute_ohmic(*ohm, eta, tau);
  return compute_discrete(std::get<DiscreteModes>(sd_), eta, tau);
}

CorrelatorSample Bath::sample(double eta, double tau) const {
  check_eta(eta);
  if (!std::isfinite(tau)) throw DomainError("correlation time must be finite");
  // -0.0 and 0.0 are the same point.
  if (eta == 0.0) eta = 0.0;
  if (tau == 0.0) tau = 0.0;
  const Key key{std::bit_cast<std::uint64_t>(eta), std::bit_cast<std::uint64_t>(tau)};
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
  }
  const CorrelatorSample value = compute(eta, tau);
  {
    std::lock_guard lock(cache_->mutex);
    if (cache_->values.size() >= kMaxCacheEntries) cache_->values.clear();
    cache_->values.emplace(key, value);
  }
  return value;
}

complex Bath::correlation_same_sign(double tau) const { return sample(0.0, tau).same_sign; }

complex Bath::correlation_opposite_sign(double eta, double tau) const {
  return sample(eta, tau).opposite_sign;
}

std::pair<complex, complex> Bath::h_pm(double eta, double tau) const {
  const auto s = sample(eta, tau);
  return {s.same_sign + s.opposite_sign, s.same_sign - s.opposite_sign};
}

complex Bath::correlation_eta_derivative(double eta, double tau) const {
  return sample(eta, tau).opposite_sign_deta;
}

double Bath::max_quadrature_error() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->max_error;
}

std::size_t Bath::cache_size() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->values.size();
}

void Bath::clear_cache() const {
  std::lock_guard lock(cache_->mutex);
  cache_->values.clear();
}

}  // namespace heatbound
