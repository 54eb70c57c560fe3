#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "heatbound/errors.hpp"
#include "heatbound/observables.hpp"
#include "shared.hpp"

using namespace heatbound;

namespace {

double artanh_entropy(double r) {
  return -std::log(std::sqrt(1.0 - r * r)) - r * std::atanh(r) + std::log(2.0);
}

}  // namespace

TEST_SUITE("observables") {
  TEST_CASE("entropy special values") {
    CHECK(von_neumann_entropy({0, 0, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(von_neumann_entropy({0, 0, 1}) == 0.0);
    CHECK(von_neumann_entropy({0.6, 0, 0.8}) == doctest::Approx(0.0).epsilon(1e-14));
    const double s = von_neumann_entropy({0, 0, 0.28});
    CHECK(s == doctest::Approx(-0.64 * std::log(0.64) - 0.36 * std::log(0.36)).epsilon(1e-14));
    CHECK(s == doctest::Approx(0.6534).epsilon(1e-4));
    CHECK_THROWS_AS(von_neumann_entropy({0, 0, 1.0 + 1e-9}), DomainError);
  }

  TEST_CASE("eigenvalue form agrees with the artanh form") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0 - 1e-6);
    for (int i = 0; i < 2000; ++i) {
      const double r = u(rng);
      CHECK(std::abs(von_neumann_entropy_of_radius(r) - artanh_entropy(r)) < 1e-10);
    }
    CHECK(std::abs(von_neumann_entropy_of_radius(1.0 - 1e-6) - artanh_entropy(1.0 - 1e-6)) < 1e-10);
  }

  TEST_CASE("entropic bound") {
    const BlochVector v{0.3, 0.1, -0.2};
    CHECK(entropic_bound(v, v) == 0.0);
    for (double r : {0.0, 0.4, 0.99}) {
      CHECK(entropic_bound({0, 0, 0}, {r, 0, 0}) >= 0.0);
      CHECK(entropic_bound({0, 0, 0}, {r, 0, 0}) ==
            doctest::Approx(std::log(2.0) - von_neumann_entropy_of_radius(r)));
    }
  }

  TEST_CASE("thermodynamic bound, heat and cumulant generating function") {
    CHECK(thermodynamic_bound(1.0) == 0.0);
    CHECK(thermodynamic_bound(std::exp(-0.3)) == doctest::Approx(0.3));
    CHECK_THROWS_AS(thermodynamic_bound(0.0), IntegrityError);
    CHECK_THROWS_AS(thermodynamic_bound(-1.0), IntegrityError);
    CHECK(mean_heat(complex(-0.2, 1e-17)) == 0.2);
    CHECK(cgf(1.0) == 0.0);
    CHECK(cgf(0.5) == doctest::Approx(-thermodynamic_bound(0.5)));
    CHECK_THROWS_AS(cgf(0.0), IntegrityError);
  }

  TEST_CASE("crossover detection on synthetic series") {
    std::vector<double> t;
    std::vector<double> en;
    std::vector<double> th;
    for (int i = 0; i <= 100; ++i) {
      t.push_back(0.1 * i);
      en.push_back(0.0);
      th.push_back(std::sin(t.back()) * (t.back() - 4.3));
    }
    const auto linear = crossover_time(t, en, th);
    REQUIRE(linear.first);
    // sin changes sign at pi first.
    CHECK(*linear.first == doctest::Approx(M_PI).epsilon(1e-2));
    const auto refined =
        crossover_time(t, en, th, [](double x) { return std::sin(x) * (x - 4.3); }, 1e-6);
    REQUIRE(refined.first);
    CHECK(std::abs(*refined.first - M_PI) < 1e-6);
    REQUIRE(refined.later.size() == 3);
    CHECK(std::abs(refined.later[0] - 4.3) < 1e-6);
    CHECK(std::abs(refined.later[1] - 2 * M_PI) < 1e-6);
    CHECK(std::abs(refined.later[2] - 3 * M_PI) < 1e-6);

    const std::vector<double> flat(t.size(), 0.25);
    CHECK_FALSE(crossover_time(t, flat, flat).first);
    const std::vector<double> short_series(3, 0.0);
    CHECK_THROWS_AS(crossover_time(t, short_series, flat), std::invalid_argument);
  }

  TEST_CASE("bounds engine invariants at the reference parameters") {
    const auto& engine = testing::reference_engine();
    const auto grid = uniform_grid(50.0, 0.5);

    // Zero population difference: B_th vanishes and the heat is non-negative.
    for (const auto& s : engine.series({0.3, 0.0, 0.0}, grid)) {
      CHECK(std::abs(s.thermodynamic) < 1e-8);
      CHECK(s.beta_heat >= -1e-8);
    }
    // Jensen: beta <dQ> >= -ln <e^{-beta dQ}>, and the same for the entropy.
    for (double vz : {-0.9, -0.5, 0.0, 0.28, 0.9}) {
      for (const auto& s : engine.series({0.0, 0.0, vz}, grid)) {
        CHECK(s.thermodynamic <= s.beta_heat + 1e-8);
        CHECK(s.entropic <= s.beta_heat + 1e-8);
      }
    }
  }

  TEST_CASE("steady-time dependence on the initial state") {
    const auto& engine = testing::reference_engine();
    // At long times B_en depends on |v(0)| only; the anisotropy decays with t.
    const BoundsEngine long_engine(testing::reference_bath(), 1.0, 100.0);
    const double r = 0.6;
    double previous = INFINITY;
    for (double t : {25.0, 50.0, 75.0, 100.0}) {
      const double en0 = long_engine.sample({0.0, 0.0, r}, t).entropic;
      double spread = 0.0;
      for (double angle : {0.7, 1.9, 2.8}) {
        const double en = long_engine.sample({r * std::sin(angle), 0.0, r * std::cos(angle)}, t).entropic;
        spread = std::max(spread, std::abs(en - en0));
      }
      CHECK(spread < previous);
      previous = spread;
    }
    CHECK(previous < 1e-4);
    // Heat affine and B_th decreasing in v_z(0).
    std::vector<double> vz;
    std::vector<double> q;
    std::vector<double> th;
    for (int i = -9; i <= 9; ++i) {
      vz.push_back(0.1 * i);
      const auto s = engine.sample({0.0, 0.0, vz.back()}, 50.0);
      q.push_back(s.beta_heat);
      th.push_back(s.thermodynamic);
    }
    const double slope = (q.back() - q.front()) / (vz.back() - vz.front());
    for (std::size_t i = 0; i < vz.size(); ++i) {
      CHECK(std::abs(q[i] - (q.front() + slope * (vz[i] - vz.front()))) < 1e-6);
      if (i > 0) CHECK(th[i] > th[i - 1]);
    }
  }

  TEST_CASE("figure-level ordering") {
    const auto& engine = testing::reference_engine();
    const auto s = engine.sample({0.0, 0.0, 0.28}, 50.0);
    CHECK(s.entropic < s.thermodynamic);
    CHECK(s.thermodynamic < s.beta_heat);
    const auto grid = uniform_grid(50.0, 0.1);
    CHECK_FALSE(engine.crossover({0.0, 0.0, 0.28}, grid).first);
    const auto c = engine.crossover({0.0, 0.0, -0.5}, grid);
    REQUIRE(c.first);
    CHECK(*c.first > 3.0);
    CHECK(*c.first < 5.0);
  }
}
