#include "heatbound/generator.hpp"

#include <cmath>

namespace heatbound {

namespace {

constexpr complex kI{0.0, 1.0};

GeneratorCoefficients rates_from_h(complex h_plus, complex h_minus, double t, double omega0) {
  const double c = std::cos(omega0 * t);
  const double s = std::sin(omega0 * t);
  GeneratorCoefficients r;
  r.a_plus = -(h_plus + std::conj(h_plus)) * c;
  r.a_minus = -(h_minus + std::conj(h_minus)) * c;
  r.b_plus = -(h_plus + std::conj(h_plus)) * s;
  r.b_minus = -(h_minus + std::conj(h_minus)) * s;
  r.c_plus = -kI * (h_plus - std::conj(h_plus)) * s;
  r.c_minus = -kI * (h_minus - std::conj(h_minus)) * s;
  r.t = t;
  return r;
}

}  // namespace

GeneratorCoefficients coefficient_rates(const Bath& bath, double eta, double t, double omega0) {
  const auto [h_plus, h_minus] = bath.h_pm(eta, t);
  return rates_from_h(h_plus, h_minus, t, omega0);
}

CoefficientRates coefficient_rates_with_sensitivity(const Bath& bath, double eta, double t,
                                                    double omega0) {
  const CorrelatorSample s = bath.sample(eta, t);
  const complex h_plus = s.same_sign + s.opposite_sign;
  const complex h_minus = s.same_sign - s.opposite_sign;
  // Only the opposite-sign correlator depends on eta.
  const complex dh_plus = s.opposite_sign_deta;
  const complex dh_minus = -s.opposite_sign_deta;
  return {rates_from_h(h_plus, h_minus, t, omega0), rates_from_h(dh_plus, dh_minus, t, omega0)};
}

GeneratorMatrix assemble_G(const GeneratorCoefficients& k, double omega0) {
  GeneratorMatrix g = GeneratorMatrix::Zero();
  g(0, 0) = k.a_minus;
  g(0, 1) = -omega0 + k.b_minus;
  g(1, 0) = omega0 - k.b_plus;
  g(1, 1) = k.a_plus;
  g(2, 2) = k.a_plus;
  g(2, 3) = k.c_plus;
  g(3, 2) = k.c_minus;
  g(3, 3) = k.a_minus;
  return g;
}

GeneratorMatrix assemble_dG_deta(const GeneratorCoefficients& dk) {
  return assemble_G(dk, 0.0);
}

}  // namespace heatbound
