#pragma once

// Counting-field Bloch generator of the second-order TCL master equation for
// H_S = (w0/2) sigma_z and H_SE = sigma_x (x) B_E, acting on
// (v_x, v_y, v_z, v_0):
//
//        | a_-       -w0 + b_-   0     0   |
//   G =  | w0 - b_+   a_+        0     0   |
//        | 0          0          a_+   c_+ |
//        | 0          0          c_-   a_- |
//
// with h_+- = <B^(eta) B^(eta)(-tau)> +- <B^(-eta) B^(eta)(-tau)> and
//
//   a_+-(t) = -int_0^t [h_+- + conj(h_+-)] cos(w0 tau) dtau
//   b_+-(t) = -int_0^t [h_+- + conj(h_+-)] sin(w0 tau) dtau
//   c_+-(t) = -i int_0^t [h_+- - conj(h_+-)] sin(w0 tau) dtau
//
// The conjugated term is the conjugate of h at the same eta. The assembly
// only depends on the coefficients, never on the system state, and the
// coherence block (x, y) never couples to the population block (z, 0).

#include <array>
#include <complex>

#include <Eigen/Core>

#include "heatbound/bath.hpp"

namespace heatbound {

struct GeneratorCoefficients {
  complex a_plus{};
  complex a_minus{};
  complex b_plus{};
  complex b_minus{};
  complex c_plus{};
  complex c_minus{};
  double t = 0.0;

  static constexpr std::size_t size = 6;

  std::array<complex, size> to_array() const {
    return {a_plus, a_minus, b_plus, b_minus, c_plus, c_minus};
  }
  static GeneratorCoefficients from_array(const std::array<complex, size>& v, double t = 0.0) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], t};
  }
};

using GeneratorMatrix = Eigen::Matrix4cd;

// Time derivatives of the six coefficients, i.e. the integrands above at tau = t.
GeneratorCoefficients coefficient_rates(const Bath& bath, double eta, double t,
                                        double omega0 = 1.0);

struct CoefficientRates {
  GeneratorCoefficients rates;
  GeneratorCoefficients sensitivity_rates;  // d/deta of `rates`
};

// Rates and their eta-derivatives from a single bath evaluation.
CoefficientRates coefficient_rates_with_sensitivity(const Bath& bath, double eta, double t,
                                                    double omega0 = 1.0);

GeneratorMatrix assemble_G(const GeneratorCoefficients& coeffs, double omega0 = 1.0);

// d G / d eta, built from the eta-derivatives of the coefficients. The
// precession entries +-w0 carry no eta dependence.
GeneratorMatrix assemble_dG_deta(const GeneratorCoefficients& coeff_sensitivity);

}  // namespace heatbound
