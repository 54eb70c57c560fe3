#include <doctest.h>

#include <chrono>
#include <cmath>

#include "heatbound/errors.hpp"
#include "heatbound/observables.hpp"
#include "heatbound/oracle.hpp"

using namespace heatbound;

namespace {

TruncatedEnvironment single_mode(double g, std::size_t n_max = 12, double w = 1.0) {
  TruncatedEnvironment env;
  env.modes = {{w, g}};
  env.n_max = n_max;
  return env;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("hamiltonians: no modes and one two-level mode") {
    const auto h0 = build_hamiltonians(TruncatedEnvironment{}, 1.0);
    REQUIRE(h0.total.rows() == 2);
    CHECK(h0.total(0, 0) == complex(0.5, 0));
    CHECK(h0.total(1, 1) == complex(-0.5, 0));

    const double g = 0.3;
    const auto h = build_hamiltonians(single_mode(g, 1), 1.0);
    Eigen::Matrix4cd expected;
    expected << 0.5, 0, 0, g,
                0, 1.5, g, 0,
                0, g, -0.5, 0,
                g, 0, 0, 0.5;
    CHECK((h.total - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK((h.total - h.total.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((h.environment.diagonal().real() - Eigen::Vector4d(0, 1, 0, 1)).norm() == 0.0);
  }

  TEST_CASE("dimension and truncation limits") {
    TruncatedEnvironment big;
    big.modes = {{1.0, 0.1}, {2.0, 0.1}, {3.0, 0.1}, {4.0, 0.1}};
    big.n_max = 12;
    CHECK_THROWS_AS(ExactOracle(big, BathParams{1.0}), DimensionError);
    CHECK_THROWS_AS(ExactOracle(single_mode(0.05, 3), BathParams{1.0}), TruncationError);
    const ExactOracle ok(single_mode(0.05), BathParams{1.0});
    CHECK(ok.truncation_mass() == doctest::Approx(std::exp(-13.0)).epsilon(1e-6));
    CHECK(ok.dimension() == 26);
  }

  TEST_CASE("density matrix conversions") {
    const BlochVector v{0.2, -0.3, 0.4};
    const auto rho = density_matrix(v);
    CHECK(rho.trace() == complex(1.0, 0.0));
    const auto back = bloch_vector(rho);
    CHECK(std::abs(back.x - v.x) < 1e-15);
    CHECK(std::abs(back.y - v.y) < 1e-15);
    CHECK(std::abs(back.z - v.z) < 1e-15);
    CHECK(entropy(density_matrix({0, 0, 0})) == doctest::Approx(std::log(2.0)));
    CHECK(entropy(density_matrix({0, 0.28, 0})) == doctest::Approx(von_neumann_entropy({0, 0, 0.28})));
  }

  TEST_CASE("modified trace trivial limits") {
    const ExactOracle o(single_mode(0.05), BathParams{1.0});
    const ExactOracle free(single_mode(0.0), BathParams{1.0});
    const BlochVector v{0.1, 0.2, 0.28};
    for (double t : {0.0, 1.0, 3.0}) {
      CHECK(o.modified_trace(v, 0.0, t) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(free.modified_trace(v, 1.0, t) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(std::abs(free.heat(v, t)) < 1e-14);
    }
    CHECK(o.modified_trace(v, 0.7, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(o.heat(v, 0.0)) < 1e-14);
  }

  TEST_CASE("frozen regression value") {
    const double v = exact_modified_trace({0, 0, 0.28}, single_mode(0.05), BathParams{1.0}, 1.0, 3.0);
    CHECK(std::abs(v - 0.993849713088857) < 1e-12);
  }

  TEST_CASE("heat equals minus the derivative of the cumulant generating function") {
    const ExactOracle o(single_mode(0.05), BathParams{1.0});
    const BlochVector v{0.0, 0.0, 0.28};
    const double h = 1e-4;
    for (double t : {0.5, 3.0, 7.0}) {
      const double q = o.heat(v, t);
      const double fd = -(std::log(o.modified_trace(v, h, t)) - std::log(o.modified_trace(v, -h, t))) / (2 * h);
      CHECK(std::abs(q - fd) < 1e-5 * std::abs(q));
    }
  }

  TEST_CASE("Landauer equality on a grid of initial states and times") {
    const ExactOracle o(single_mode(0.05), BathParams{1.0});
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const BlochVector v{-0.6 + 0.3 * i, 0.0, -0.6 + 0.3 * j};
        for (int k = 1; k <= 10; ++k) {
          const double t = 0.9 * k;
          const auto terms = o.landauer_terms(v, t);
          CHECK(std::abs(terms.residual()) < 1e-8);
          CHECK(terms.mutual_information >= -1e-10);
          CHECK(terms.relative_entropy >= -1e-10);
          CHECK(terms.entropy_decrease <= terms.beta_heat + 1e-8);
          CHECK(thermodynamic_bound(o.modified_trace(v, 1.0, t)) <= terms.beta_heat + 1e-8);
        }
      }
    }
    const auto zero = o.landauer_terms({0, 0, -0.5}, 0.0);
    CHECK(std::abs(zero.beta_heat) < 1e-14);
    CHECK(std::abs(zero.mutual_information) < 1e-12);
    CHECK(std::abs(zero.relative_entropy) < 1e-12);
    const auto uncoupled = landauer_equality_terms({0, 0, -0.5}, single_mode(0.0), BathParams{1.0}, 4.0);
    CHECK(std::abs(uncoupled.beta_heat) < 1e-14);
    CHECK(std::abs(uncoupled.entropy_decrease) < 1e-12);
  }

  TEST_CASE("total state stays a density matrix") {
    const ExactOracle o(single_mode(0.05), BathParams{1.0});
    for (double t : {0.0, 2.0, 11.0, 40.0}) {
      const auto c = o.check_state({0.3, 0.3, -0.6}, t);
      CHECK(c.hermiticity < 1e-10);
      CHECK(c.trace_error < 1e-10);
      CHECK(c.min_eigenvalue > -1e-10);
    }
  }

  TEST_CASE("doubling the truncation leaves results unchanged") {
    const ExactOracle a(single_mode(0.1, 12, 2.0), BathParams{1.0});
    const ExactOracle b(single_mode(0.1, 24, 2.0), BathParams{1.0});
    const BlochVector v{0.0, 0.0, 0.28};
    for (double t : {1.0, 3.0, 6.0}) {
      CHECK(std::abs(a.modified_trace(v, 1.0, t) - b.modified_trace(v, 1.0, t)) < 1e-8);
      CHECK(std::abs(a.heat(v, t) - b.heat(v, t)) < 1e-8);
    }
  }

  TEST_CASE("modified trace at beta is smooth in time") {
    const ExactOracle o(single_mode(0.05), BathParams{1.0});
    const BlochVector v{0.0, 0.0, 0.28};
    double previous = o.modified_trace(v, 1.0, 0.0);
    for (int i = 1; i <= 100; ++i) {
      const double value = o.modified_trace(v, 1.0, 0.05 * i);
      CHECK(std::abs(value - previous) < 1e-3);
      previous = value;
    }
  }

  TEST_CASE("second-order engine against the exact oracle") {
    const BlochVector v{0.3, 0.0, 0.28};
    std::vector<double> times;
    for (int i = 1; i <= 20; ++i) times.push_back(0.1 * i);
    const std::vector<double> scales{0.0, 0.02, 0.04, 0.08, 0.1};
    const auto report = tcl2_vs_exact_report(v, single_mode(1.0, 16), BathParams{1.0}, 1.0, times, scales);
    CHECK(report.recurrence_time == doctest::Approx(2 * M_PI));
    REQUIRE(report.rows.size() == 5);
    CHECK(report.rows[0].dev_vz < 1e-12);
    CHECK(report.rows[0].dev_heat < 1e-12);
    const auto ratios = report.ratios();
    CHECK_FALSE(ratios[0].vz);
    for (std::size_t i = 1; i < 3; ++i) {
      for (const auto& r : {ratios[i].vz, ratios[i].v0_beta, ratios[i].heat}) {
        REQUIRE(r);
        CHECK(*r >= 8.0);
        CHECK(*r <= 32.0);
      }
    }
    // g^2 = 0.01 at s = 0.1
    CHECK(report.rows[4].dev_vz < 1e-3);
    CHECK(report.rows[4].dev_v0_beta < 1e-3);
    CHECK_THROWS_AS(tcl2_vs_exact_report(v, single_mode(1.0, 16), BathParams{1.0}, 1.0,
                                         std::vector<double>{7.0}, scales),
                    DomainError);
  }
}
