#pragma once

// Globally adaptive Gauss-Kronrod (G7/K15) for vector-valued integrands.
//
// All components share one partition of the interval; the error of a panel is
// the largest |K15 - G7| over components. Nodes and weights come from
// Boost.Math so only the subdivision logic lives here.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "heatbound/errors.hpp"

namespace heatbound::quad {

struct Options {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  std::size_t max_panels = 50000;
};

template <std::size_t N>
struct Result {
  std::array<double, N> value{};
  double error = 0.0;
  double l1 = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

template <std::size_t N>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::array<double, N> value{};
  double error = 0.0;
  double l1 = 0.0;

  bool operator<(const Panel& other) const { return error < other.error; }
};

template <std::size_t N, class F>
Panel<N> kronrod15(F& f, double a, double b) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& xk = gauss_kronrod<double, 15>::abscissa();
  const auto& wk = gauss_kronrod<double, 15>::weights();
  const auto& wg = gauss<double, 7>::weights();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  Panel<N> p;
  p.a = a;
  p.b = b;
  std::array<double, N> kron{};
  std::array<double, N> gss{};
  std::array<double, N> absk{};

  auto accumulate = [&](const std::array<double, N>& fx, double w_k, double w_g) {
    for (std::size_t i = 0; i < N; ++i) {
      kron[i] += w_k * fx[i];
      gss[i] += w_g * fx[i];
      absk[i] += w_k * std::abs(fx[i]);
    }
  };

  // Gauss nodes are the even-indexed Kronrod nodes, x = 0 first.
  accumulate(f(center), wk[0], wg[0]);
  for (std::size_t j = 1; j < xk.size(); ++j) {
    const double dx = half * xk[j];
    const double w_g = (j % 2 == 0) ? wg[j / 2] : 0.0;
    accumulate(f(center - dx), wk[j], w_g);
    accumulate(f(center + dx), wk[j], w_g);
  }

  for (std::size_t i = 0; i < N; ++i) {
    p.value[i] = half * kron[i];
    p.error = std::max(p.error, std::abs(half * (kron[i] - gss[i])));
    p.l1 += std::abs(half) * absk[i];
  }
  return p;
}

}  // namespace detail

// Integrates f over [a, b]. `f(x)` returns std::array<double, N>. The interval
// is first cut into `initial_panels` equal pieces (useful for oscillatory
// integrands whose period is known), then the worst panel is bisected until
// the summed error falls below max(abs_tol, rel_tol * L1).
template <std::size_t N, class F>
Result<N> integrate(F&& f, double a, double b, std::size_t initial_panels, const Options& opt) {
  using Panel = detail::Panel<N>;
  initial_panels = std::max<std::size_t>(initial_panels, 1);

  std::priority_queue<Panel> heap;
  Result<N> out;
  double total_error = 0.0;
  double total_l1 = 0.0;
  const double width = (b - a) / static_cast<double>(initial_panels);
  for (std::size_t k = 0; k < initial_panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    const double hi = (k + 1 == initial_panels) ? b : lo + width;
    Panel p = detail::kronrod15<N>(f, lo, hi);
    total_error += p.error;
    total_l1 += p.l1;
    heap.push(p);
  }
  out.evaluations = 15 * initial_panels;

  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * total_l1); };

  while (total_error > tolerance()) {
    if (heap.size() >= opt.max_panels) {
      throw QuadratureError("adaptive Gauss-Kronrod did not converge", total_error, tolerance());
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("adaptive Gauss-Kronrod hit interval resolution limit", total_error,
                            tolerance());
    }
    Panel left = detail::kronrod15<N>(f, worst.a, mid);
    Panel right = detail::kronrod15<N>(f, mid, worst.b);
    out.evaluations += 30;
    total_error += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the panels to avoid drift in the running totals.
  out.error = 0.0;
  out.l1 = 0.0;
  while (!heap.empty()) {
    const Panel& p = heap.top();
    for (std::size_t i = 0; i < N; ++i) out.value[i] += p.value[i];
    out.error += p.error;
    out.l1 += p.l1;
    heap.pop();
  }
  return out;
}

}  // namespace heatbound::quad
