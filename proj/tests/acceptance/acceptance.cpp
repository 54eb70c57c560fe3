// One PASS/FAIL line per acceptance criterion at lambda=0.1, Omega=0.4, beta=1, w0=1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "heatbound/bath.hpp"
#include "heatbound/dynamics.hpp"
#include "heatbound/observables.hpp"
#include "heatbound/oracle.hpp"
#include "heatbound/sweep.hpp"

using namespace heatbound;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d: %s -- %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const Bath& reference_bath() {
  static const Bath bath(OhmicExpCutoff{0.1, 0.4}, BathParams{1.0});
  return bath;
}

const BoundsEngine& reference_engine() {
  static const BoundsEngine engine(reference_bath(), 1.0, 50.0);
  return engine;
}

}  // namespace

int main() {
  const double beta = 1.0;
  const auto grid50 = uniform_grid(50.0, 0.1);

  report(1, "both bounds below beta<dQ> for 720 states at all reported times", [&] {
    const auto t0 = Clock::now();
    const auto& engine = reference_engine();
    SweepOptions opt;
    opt.threads = 4;
    const auto records = sweep_bounds(GridSpec{}, engine, 50.0, opt);
    double worst = -INFINITY;
    std::size_t failed = 0;
    for (const auto& r : records) {
      if (r.failed) ++failed;
      for (const auto& s : engine.series(r.initial, grid50)) {
        worst = std::max({worst, s.entropic - s.beta_heat, s.thermodynamic - s.beta_heat});
      }
    }
    const double elapsed = seconds_since(t0);
    return Outcome{records.size() == 720 && failed == 0 && worst <= 1e-6 && elapsed < 600.0,
                   fmt("max(bound - beta<dQ>) = %.3e", worst) + fmt(", %.1f s", elapsed)};
  });

  report(2, "coherence independence of B_th and beta<dQ>", [&] {
    const auto& bath = reference_bath();
    // Independent trajectories, not the shared propagator.
    const auto a0 = evolve_with_sensitivity({0.0, 0.0, 0.28}, bath, 1.0, 50.0, grid50);
    const auto b0 = evolve_with_sensitivity({0.48, 0.0, 0.28}, bath, 1.0, 50.0, grid50);
    const auto ab = evolve({0.0, 0.0, 0.28}, beta, bath, 1.0, 50.0, grid50);
    const auto bb = evolve({0.48, 0.0, 0.28}, beta, bath, 1.0, 50.0, grid50);
    double dth = 0.0;
    double dq = 0.0;
    for (std::size_t i = 0; i < grid50.size(); ++i) {
      dth = std::max(dth, std::abs(thermodynamic_bound(ab.samples[i].v[3].real()) -
                                   thermodynamic_bound(bb.samples[i].v[3].real())));
      dq = std::max(dq, beta * std::abs(mean_heat((*a0.samples[i].dv_deta)[3]) -
                                        mean_heat((*b0.samples[i].dv_deta)[3])));
    }
    const auto& ea = a0.samples.back().v;
    const auto& eb = b0.samples.back().v;
    const double en_a = entropic_bound({0.0, 0.0, 0.28}, {ea[0].real(), ea[1].real(), ea[2].real()});
    const double en_b = entropic_bound({0.48, 0.0, 0.28}, {eb[0].real(), eb[1].real(), eb[2].real()});
    const double den = std::abs(en_a - en_b);
    return Outcome{dth < 1e-10 && dq < 1e-10 && den > 1e-3,
                   fmt("max dB_th = %.2e", dth) + fmt(", max d(beta<dQ>) = %.2e", dq) +
                       fmt(", |dB_en(50)| = %.3e", den)};
  });

  report(3, "crossover near t=4 for (0,0,-0.5), none for (0,0,0.28)", [&] {
    const auto& engine = reference_engine();
    const auto a = engine.crossover({0.0, 0.0, -0.5}, grid50);
    const auto b = engine.crossover({0.0, 0.0, 0.28}, grid50);
    const bool ok = a.first && std::abs(*a.first - 4.0) <= 1.0 && !b.first;
    return Outcome{ok, (a.first ? fmt("t_cross(-0.5) = %.3f", *a.first) : std::string("t_cross(-0.5) = none")) +
                           (b.first ? fmt(", t_cross(0.28) = %.3f", *b.first) : std::string(", t_cross(0.28) = none"))};
  });

  report(4, "B_th = 0 and beta<dQ> >= 0 on the v_z(0)=0 line", [&] {
    const auto& bath = reference_bath();
    const BlochVector v{0.3, 0.0, 0.0};
    const auto b = evolve(v, beta, bath, 1.0, 50.0, grid50);
    const auto z = evolve_with_sensitivity(v, bath, 1.0, 50.0, grid50);
    double max_th = 0.0;
    double min_q = INFINITY;
    for (std::size_t i = 0; i < grid50.size(); ++i) {
      max_th = std::max(max_th, std::abs(thermodynamic_bound(b.samples[i].v[3].real())));
      min_q = std::min(min_q, beta * mean_heat((*z.samples[i].dv_deta)[3]));
    }
    return Outcome{max_th < 1e-8 && min_q >= -1e-8,
                   fmt("max|B_th| = %.2e", max_th) + fmt(", min beta<dQ> = %.2e", min_q)};
  });

  report(5, "tightness boundary along v_x=0 at t=50", [&] {
    const auto& engine = reference_engine();
    auto label = [&](double vz) {
      const auto s = engine.sample({0.0, 0.0, vz}, 50.0);
      return tighter_bound(s.entropic, s.thermodynamic);
    };
    int switches = 0;
    double where = NAN;
    Tighter previous = label(0.0);
    const int n = 190;
    for (int i = 1; i <= n; ++i) {
      const double vz = 0.95 * i / n;
      const Tighter cur = label(vz);
      if (cur != previous) {
        ++switches;
        where = vz;
      }
      previous = cur;
    }
    const bool ok = label(0.0) == Tighter::entropic && label(0.9) == Tighter::thermodynamic && switches == 1;
    return Outcome{ok, std::string("centre ") + to_string(label(0.0)) + ", (0,0,0.9) " + to_string(label(0.9)) +
                           ", switches = " + std::to_string(switches) + fmt(" near v_z = %.3f", where)};
  });

  report(6, "sensitivity heat vs central difference in eta", [&] {
    const auto& bath = reference_bath();
    const BlochVector v{0.0, 0.0, 0.28};
    std::vector<double> times;
    for (int i = 1; i <= 20; ++i) times.push_back(2.5 * i);
    const double h = 1e-4;
    const auto s = evolve_with_sensitivity(v, bath, 1.0, 50.0, times);
    const auto up = evolve(v, h, bath, 1.0, 50.0, times);
    const auto dn = evolve(v, -h, bath, 1.0, 50.0, times);
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double q = mean_heat((*s.samples[i].dv_deta)[3]);
      const double fd = -(up.samples[i].v[3].real() - dn.samples[i].v[3].real()) / (2.0 * h);
      worst = std::max(worst, std::abs(q - fd) / std::abs(q));
    }
    return Outcome{worst < 1e-5, fmt("max relative error = %.2e over 20 times", worst)};
  });

  report(7, "Landauer equality in the exact single-mode model", [&] {
    const auto t0 = Clock::now();
    TruncatedEnvironment env;
    env.modes = {{1.0, 0.05}};
    env.n_max = 12;
    const ExactOracle oracle(env, BathParams{beta});
    double worst = 0.0;
    double min_i = INFINITY;
    double min_d = INFINITY;
    for (int k = 1; k <= 10; ++k) {
      const auto terms = oracle.landauer_terms({0.0, 0.0, -0.5}, 1.0 * k);
      worst = std::max(worst, std::abs(terms.residual()));
      min_i = std::min(min_i, terms.mutual_information);
      min_d = std::min(min_d, terms.relative_entropy);
    }
    const double elapsed = seconds_since(t0);
    return Outcome{worst < 1e-8 && min_i >= 0.0 && min_d >= 0.0 && elapsed < 10.0,
                   fmt("max residual = %.2e", worst) + fmt(", min I = %.2e", min_i) +
                       fmt(", min D = %.2e", min_d) + fmt(", %.2f s", elapsed)};
  });

  report(8, "second-order accuracy against the exact oracle", [&] {
    TruncatedEnvironment env;
    env.modes = {{1.0, 1.0}};
    env.n_max = 16;
    std::vector<double> times;
    for (int i = 1; i <= 20; ++i) times.push_back(0.1 * i);
    const std::vector<double> scales{0.02, 0.04, 0.08};
    const auto report = tcl2_vs_exact_report({0.3, 0.0, 0.28}, env, BathParams{beta}, 1.0, times, scales);
    bool ok = true;
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& r : report.ratios()) {
      for (const auto& q : {r.vz, r.v0_beta, r.heat}) {
        if (!q) {
          ok = false;
          continue;
        }
        lo = std::min(lo, *q);
        hi = std::max(hi, *q);
        ok = ok && *q >= 8.0 && *q <= 32.0;
      }
    }
    return Outcome{ok, fmt("deviation ratios per coupling doubling in [%.2f, ", lo) + fmt("%.2f]", hi)};
  });

  report(9, "trace preservation and real components up to t=100", [&] {
    const auto& bath = reference_bath();
    const auto grid = uniform_grid(100.0, 0.1);
    double trace = 0.0;
    double imag = 0.0;
    for (const BlochVector v : {BlochVector{0.0, 0.0, 0.28}, BlochVector{0.48, 0.0, 0.28},
                                BlochVector{0.3, 0.4, -0.5}}) {
      const auto z = evolve(v, 0.0, bath, 1.0, 100.0, grid);
      const auto b = evolve(v, beta, bath, 1.0, 100.0, grid);
      for (const auto& s : z.samples) {
        trace = std::max(trace, std::abs(s.v[3].real() - 1.0));
        imag = std::max(imag, s.v.imag().cwiseAbs().maxCoeff());
      }
      for (const auto& s : b.samples) imag = std::max(imag, s.v.imag().cwiseAbs().maxCoeff());
    }
    return Outcome{trace < 1e-9 && imag < 1e-8,
                   fmt("max|v0 - 1| = %.2e", trace) + fmt(", max|Im| = %.2e", imag)};
  });

  report(10, "bath identities at eta=0 and eta=beta", [&] {
    const auto& bath = reference_bath();
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    double hm = 0.0;
    double conj = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double tau = u(rng);
      hm = std::max(hm, std::abs(bath.h_pm(0.0, tau).second));
      conj = std::max(conj, std::abs(bath.correlation_opposite_sign(beta, tau) -
                                     std::conj(bath.correlation_same_sign(tau))));
    }
    return Outcome{hm == 0.0 && conj < 1e-10,
                   fmt("max|h-(eta=0)| = %.1e", hm) + fmt(", max|D(beta) - conj C| = %.2e", conj)};
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
