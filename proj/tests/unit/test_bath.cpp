#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/special_functions/trigamma.hpp>

#include "heatbound/bath.hpp"
#include "heatbound/errors.hpp"
#include "heatbound/quadrature.hpp"

using namespace heatbound;

namespace {

constexpr double kLambda = 0.1;
constexpr double kCutoff = 0.4;

// Re C(tau) for the Ohmic bath at beta = 1 from coth(w/2) = 1 + 2 sum_k e^{-k w}
// and int w e^{-a w} cos(w tau) dw = (a^2 - tau^2) / (a^2 + tau^2)^2.
double ohmic_re_same_sign(double tau, double beta) {
  auto term = [tau](double a) { return (a * a - tau * tau) / std::pow(a * a + tau * tau, 2); };
  const double a0 = 1.0 / kCutoff;
  double sum = term(a0);
  const int k_max = 200000;
  for (int k = 1; k <= k_max; ++k) sum += 2.0 * term(a0 + k * beta);
  // Remaining terms by the midpoint integral of the same function.
  const double a_tail = a0 + (k_max + 0.5) * beta;
  sum += 2.0 * a_tail / (a_tail * a_tail + tau * tau) / beta;
  return kLambda * sum;
}

// Im C(tau) = -int J sin(w tau) dw in closed form.
double ohmic_im_same_sign(double tau) {
  const double a = 1.0 / kCutoff;
  return -kLambda * 2.0 * a * tau / std::pow(a * a + tau * tau, 2);
}

}  // namespace

TEST_SUITE("bath") {
  TEST_CASE("bose occupation matches the direct formula and rejects bad input") {
    for (double w : {1e-6, 0.1, 1.0, 5.0, 30.0}) {
      CHECK(bose_occupation(1.0, w) == doctest::Approx(1.0 / (std::exp(w) - 1.0)).epsilon(1e-9));
    }
    CHECK(bose_occupation(2.0, INFINITY) == 0.0);
    CHECK_THROWS_AS(bose_occupation(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(bose_occupation(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(bose_occupation(0.0, 1.0), DomainError);
  }

  TEST_CASE("spectral density validation") {
    CHECK_THROWS_AS(Bath(OhmicExpCutoff{0.1, 0.0}, BathParams{1.0}), DomainError);
    CHECK_THROWS_AS(Bath(OhmicExpCutoff{-0.1, 0.4}, BathParams{1.0}), DomainError);
    CHECK_THROWS_AS(Bath(OhmicExpCutoff{0.1, 0.4}, BathParams{0.0}), DomainError);
    CHECK_THROWS_AS(Bath(DiscreteModes{{{-1.0, 0.1}}}, BathParams{1.0}), DomainError);
    CHECK_NOTHROW(Bath(OhmicExpCutoff{0.0, 0.4}, BathParams{1.0}));
  }

  TEST_CASE("high temperature raises a warning") {
    CHECK(Bath(OhmicExpCutoff{}, BathParams{0.1}).warnings().size() == 1);
    CHECK(Bath(OhmicExpCutoff{}, BathParams{1.0}).warnings().empty());
  }

  TEST_CASE("same-sign correlator at tau = 0 equals the trigamma series") {
    const Bath bath(OhmicExpCutoff{kLambda, kCutoff}, BathParams{1.0});
    // int J (2n + 1) = lambda Omega^2 + 2 lambda sum_k 1/(1/Omega + k)^2
    const double expected =
        kLambda * kCutoff * kCutoff + 2.0 * kLambda * boost::math::trigamma(1.0 + 1.0 / kCutoff);
    const complex c = bath.correlation_same_sign(0.0);
    CHECK(c.real() == doctest::Approx(expected).epsilon(1e-11));
    CHECK(std::abs(c.imag()) < 1e-15);
  }

  TEST_CASE("same-sign correlator against the series representation") {
    const Bath bath(OhmicExpCutoff{kLambda, kCutoff}, BathParams{1.0});
    for (double tau : {0.3, 1.0, 2.7, 7.5, 20.0, 45.0}) {
      const complex c = bath.correlation_same_sign(tau);
      CHECK(std::abs(c.real() - ohmic_re_same_sign(tau, 1.0)) < 1e-10);
      CHECK(std::abs(c.imag() - ohmic_im_same_sign(tau)) < 1e-12);
    }
  }

  TEST_CASE("eta = 0: opposite-sign equals same-sign and h- vanishes exactly") {
    const Bath bath(OhmicExpCutoff{kLambda, kCutoff}, BathParams{1.0});
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tau(0.0, 50.0);
    for (int i = 0; i < 20; ++i) {
      const double t = tau(rng);
      const auto [hp, hm] = bath.h_pm(0.0, t);
      CHECK(hm == complex(0.0, 0.0));
      CHECK(hp == 2.0 * bath.correlation_same_sign(t));
    }
  }

  TEST_CASE("eta = beta: opposite-sign is the conjugate of same-sign") {
    const Bath bath(OhmicExpCutoff{kLambda, kCutoff}, BathParams{1.0});
    for (double t : {0.0, 0.5, 3.3, 12.0, 49.0}) {
      const complex d = bath.correlation_opposite_sign(1.0, t);
      CHECK(std::abs(d - std::conj(bath.correlation_same_sign(t))) < 1e-11);
    }
  }

  TEST_CASE("eta derivative matches a central difference") {
    const Bath bath(OhmicExpCutoff{kLambda, kCutoff}, BathParams{1.0});
    const double h = 1e-4;
    for (double eta : {0.0, 0.4, 0.9}) {
      for (double t : {0.0, 1.5, 6.0}) {
        const complex fd = (bath.correlation_opposite_sign(eta + h, t) -
                            bath.correlation_opposite_sign(eta - h, t)) /
                           (2.0 * h);
        CHECK(std::abs(bath.correlation_eta_derivative(eta, t) - fd) < 1e-8);
      }
    }
  }

  TEST_CASE("discrete modes follow the direct sum") {
    const DiscreteModes modes{{{0.7, 0.02}, {1.3, 0.05}}};
    const Bath bath(modes, BathParams{1.5});
    const double eta = 0.6;
    const double tau = 2.2;
    complex c{};
    complex d{};
    for (const auto& m : modes.modes) {
      const double n = 1.0 / (std::exp(1.5 * m.frequency) - 1.0);
      const complex e = std::exp(complex(0.0, m.frequency * tau));
      c += m.coupling_sq * (n * e + (n + 1.0) / e);
      d += m.coupling_sq * (n * std::exp(eta * m.frequency) * e +
                            (n + 1.0) * std::exp(-eta * m.frequency) / e);
    }
    CHECK(std::abs(bath.correlation_same_sign(tau) - c) < 1e-14);
    CHECK(std::abs(bath.correlation_opposite_sign(eta, tau) - d) < 1e-14);
  }

  TEST_CASE("fine discretisation approaches the continuum at short times") {
    const OhmicExpCutoff ohm{kLambda, kCutoff};
    const Bath cont(ohm, BathParams{1.0});
    const Bath disc(discretize(ohm, 20.0, 40000), BathParams{1.0});
    for (double t : {0.0, 1.0, 3.0}) {
      CHECK(std::abs(cont.correlation_same_sign(t) - disc.correlation_same_sign(t)) < 1e-6);
    }
  }

  TEST_CASE("counting field outside the convergent range is rejected") {
    const Bath bath(OhmicExpCutoff{kLambda, kCutoff}, BathParams{1.0});
    CHECK_THROWS_AS(bath.sample(1.01, 0.0), DivergentIntegrandError);
    CHECK_THROWS_AS(bath.sample(-0.5 / kCutoff, 0.0), DivergentIntegrandError);
    CHECK_THROWS_AS(bath.sample(0.0, NAN), DomainError);
    CHECK_NOTHROW(bath.sample(-0.5, 1.0));
  }

  TEST_CASE("memoisation returns identical values") {
    const Bath bath(OhmicExpCutoff{kLambda, kCutoff}, BathParams{1.0});
    const auto a = bath.sample(0.3, 1.25);
    CHECK(bath.cache_size() >= 1);
    const auto b = bath.sample(0.3, 1.25);
    CHECK(a.same_sign == b.same_sign);
    CHECK(a.opposite_sign == b.opposite_sign);
    bath.clear_cache();
    CHECK(bath.cache_size() == 0);
    CHECK(bath.max_quadrature_error() < 1e-12);
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("vector integrals of smooth functions") {
    auto f = [](double x) { return std::array<double, 2>{std::sin(x), std::exp(-x) * x}; };
    const auto r = quad::integrate<2>(f, 0.0, M_PI, 1, quad::Options{});
    CHECK(r.value[0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.value[1] == doctest::Approx(1.0 - (1.0 + M_PI) * std::exp(-M_PI)).epsilon(1e-13));
  }

  TEST_CASE("oscillatory integrand with many half periods") {
    auto f = [](double x) { return std::array<double, 1>{std::cos(40.0 * x) * std::exp(-x)}; };
    const auto r = quad::integrate<1>(f, 0.0, 30.0, 400, quad::Options{});
    const double exact = (1.0 - std::exp(-30.0) * (std::cos(1200.0) - 40.0 * std::sin(1200.0))) / 1601.0;
    CHECK(std::abs(r.value[0] - exact) < 1e-13);
  }

  TEST_CASE("panel budget exhaustion throws") {
    auto f = [](double x) { return std::array<double, 1>{1.0 / std::sqrt(x + 1e-14)}; };
    quad::Options opt;
    opt.max_panels = 5;
    CHECK_THROWS_AS(quad::integrate<1>(f, 0.0, 1.0, 1, opt), QuadratureError);
  }
}
