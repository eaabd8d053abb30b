// Integration gate: twelve numbered criteria, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "qent/codes.hpp"
#include "qent/core.hpp"
#include "qent/entanglement.hpp"
#include "qent/graphs.hpp"
#include "qent/moments.hpp"
#include "qent/optimizer.hpp"
#include "qent/statmech.hpp"

using namespace qent;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ordinary least squares slope
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void criterion1() {
  const auto state = ghz_state(3);  // construction excluded from the timing
  const auto t0 = Clock::now();
  double max_err = 0.0;
  for (const auto& b : balanced_bipartitions(3))
    max_err = std::max(max_err, std::abs(purity(state, b) - 0.5));
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "GHZ3 balanced purities = 1/2 (max err %.2e, %.3f ms)", max_err,
                secs * 1e3);
  report(1, max_err <= 1e-12 && secs < 1e-3, buf);
}

void criterion2() {
  const auto t0 = Clock::now();
  double max_diff = 0.0;
  for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {4, 2}, {2, 3}}) {
    const std::int64_t N = pow_ll(d, n);
    for (std::int64_t ik = 0; ik < N; ++ik)
      for (std::int64_t ikp = 0; ikp < N; ++ikp)
        for (std::int64_t il = 0; il < N; ++il)
          for (std::int64_t ilp = 0; ilp < N; ++ilp) {
            CouplingQuery q(string_of(ik, n, d), string_of(ikp, n, d),
                            string_of(il, n, d), string_of(ilp, n, d));
            max_diff = std::max(
                max_diff, std::abs(coupling_delta(q) - coupling_delta_bruteforce(q)));
          }
  }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "closed-form Delta = brute force on full grids (max diff %.2e, %.1f s)",
                max_diff, secs);
  report(2, max_diff == 0.0 && secs < 60.0, buf);
}

void criterion3() {
  const auto t0 = Clock::now();
  double max_err = 0.0, worst_sigmas = 0.0;
  for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {4, 2}, {2, 3}, {2, 5}}) {
    const double N = static_cast<double>(pow_ll(d, n));
    const double want = (pow_ll(d, n / 2) + pow_ll(d, n - n / 2)) / (N + 1.0);
    max_err = std::max(max_err, std::abs(exact_moment(n, d, 1) - want));
    EnsembleConfig cfg;
    cfg.n = n;
    cfg.d = d;
    cfg.samples = 100000;
    cfg.seed = 1300 + 10 * n + d;
    auto est = estimate_moment(cfg, 1);
    worst_sigmas = std::max(worst_sigmas, std::abs(est.value - want) / est.stderr_);
  }
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "first moment closed form (max err %.2e) and 1e5-sample MC (worst %.2f "
                "sigma, %.1f s)",
                max_err, worst_sigmas, secs);
  report(3, max_err <= 1e-12 && worst_sigmas < 4.0 && secs < 60.0, buf);
}

void criterion4() {
  const auto t0 = Clock::now();
  const double exact = exact_moment(2, 2, 2);
  EnsembleConfig cfg;
  cfg.n = 2;
  cfg.d = 2;
  cfg.samples = 1000000;
  cfg.seed = 4040;
  auto est = estimate_moment(cfg, 2);
  const double sigmas = std::abs(est.value - exact) / est.stderr_;
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "second moment %.6f vs 1e6-sample MC %.6f (%.2f sigma, %.1f s)", exact,
                est.value, sigmas, secs);
  report(4, sigmas < 4.0 && secs < 120.0, buf);
}

void criterion5() {
  const auto t0 = Clock::now();
  auto c2 = census(2);
  std::multiset<std::int64_t> degs2;
  for (const auto& cl : c2.classes) degs2.insert(cl.degeneracy);
  bool ok = degs2 == std::multiset<std::int64_t>{4, 4, 16} && c2.total_degeneracy() == 24;

  auto c3 = census(3);
  std::multiset<std::int64_t> degs3;
  for (const auto& cl : c3.classes) degs3.insert(cl.degeneracy);
  ok = ok && c3.total_degeneracy() == 720;
  for (std::int64_t want : {192, 64, 16}) ok = ok && degs3.count(want) >= 1;
  for (int m = 1; m <= 3; ++m) ok = ok && degeneracy_bound_check(census(m));
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "census degeneracies {16,4,4}, total 720 at m=3, D <= 4^v v! (%.1f s)",
                secs);
  report(5, ok && secs < 60.0, buf);
}

void criterion6() {
  bool ok = true;
  double max_err = 0.0;
  for (int m = 1; m <= 3; ++m) {
    auto c = census(m);
    for (auto [n, d] : {std::pair{2, 2}, {2, 3}}) {
      const double N = static_cast<double>(pow_ll(d, n));
      const double NA = static_cast<double>(pow_ll(d, n / 2));
      const double NAbar = static_cast<double>(pow_ll(d, n - n / 2));
      for (const auto& cl : c.classes) {
        if (!cl.cactus) continue;
        FeynmanGraph g = graph_of_permutation(cl.representative);
        const double err = std::abs(square_bracket(cl.representative, n, d) -
                                    cactus_value(g, N, NA, NAbar));
        max_err = std::max(max_err, err);
        ok = ok && err <= 1e-9;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "cactus closed form = bracket on all cactus classes, m <= 3 (max err %.2e)",
                max_err);
  report(6, ok, buf);
}

void criterion7() {
  bool ok = true;
  double prev = 1e9, max_ratio_d = 0.0;
  for (int d : {2, 3, 5, 7}) {
    auto sp = moment_split(2, d, 2);
    ok = ok && sp.ratio > 0.0 && sp.ratio < prev;
    prev = sp.ratio;
    max_ratio_d = std::max(max_ratio_d, sp.ratio * d);
  }
  ok = ok && max_ratio_d < 0.5;  // ratio * d stays bounded across the sweep
  const double want =
      qubit_f2(2) / ((4.0 + 4.0) * (2.0 + 2.0) * (2.0 + 2.0));
  const double got = moment_split(2, 2, 2).ratio;
  ok = ok && std::abs(got - want) <= 1e-9;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "non-cactus/cactus ratio decays in d (ratio*d <= %.4f), d=2 ratio %.9f "
                "matches f2 identity",
                max_ratio_d, got);
  report(7, ok, buf);
}

void criterion8() {
  const auto t0 = Clock::now();
  auto s = mmes_from_code(reed_solomon(4, 5, 2));
  double max_err = 0.0;
  for (const auto& b : balanced_bipartitions(4))
    max_err = std::max(max_err, std::abs(purity(s, b) - 1.0 / 25.0));

  LinearCode rep;
  rep.d = 2;
  rep.n = 3;
  rep.codewords = {QuditString(2, {0, 0, 0}), QuditString(2, {1, 1, 1})};
  const double ghz_err = std::abs(potential_me(mmes_from_code(rep)) - 0.5);
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "RS(4,5,2) purities = 1/25 (max err %.2e), repetition code gives GHZ "
                "(err %.2e, %.2f s)",
                max_err, ghz_err, secs);
  report(8, max_err <= 1e-12 && ghz_err <= 1e-12 && secs < 1.0, buf);
}

void criterion9() {
  const auto t0 = Clock::now();
  struct Target {
    int n;
    double upper;
    double lower;
  };
  const std::vector<Target> targets = {
      {3, 0.5 + 1e-6, 0.0},
      {4, 1.0 / 3.0 + 1e-4, 1.0 / 3.0 - 1e-6},
      {5, 0.25 + 1e-4, 0.0},
      {6, 0.125 + 1e-4, 0.0},
  };
  bool ok = true;
  std::string detail = "best of 20 restarts:";
  for (const auto& t : targets) {
    OptimizerConfig cfg;
    cfg.n = t.n;
    cfg.d = 2;
    cfg.restarts = 20;
    cfg.seed = 900 + t.n;
    auto res = minimize_pime(cfg);
    ok = ok && res.best_value <= t.upper && res.best_value >= t.lower;
    char piece[64];
    std::snprintf(piece, sizeof(piece), " n=%d -> %.6f", t.n, res.best_value);
    detail += piece;
  }
  const double secs = seconds_since(t0);
  char tail[48];
  std::snprintf(tail, sizeof(tail), " (%.0f s)", secs);
  detail += tail;
  report(9, ok && secs < 600.0, detail);
}

void criterion10() {
  const auto t0 = Clock::now();
  auto s = sigma7_state();
  const double pime = potential_me(s);
  double min_purity = 1.0;
  for (double p : bipartition_purities(s)) min_purity = std::min(min_purity, p);
  const bool bimodal = histogram_bimodal(purity_histogram(s, 20));
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "7-qubit state: pi_ME %.6f, min purity %.6f >= 1/8, bimodal=%d (%.2f s)",
                pime, min_purity, bimodal ? 1 : 0, secs);
  report(10, std::abs(pime - 0.131952) <= 1e-4 && min_purity >= 0.125 && bimodal &&
                 secs < 1.0,
         buf);
}

void criterion11() {
  const double h = 1e-5;
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    auto s = sample_haar(4, 2, 11000, rep);
    auto g = grad_pime(s);
    auto quartic = [&](std::vector<cplx> amps) {
      double norm2 = 0.0;
      for (const auto& z : amps) norm2 += std::norm(z);
      PureState t(4, 2, std::move(amps));
      return potential_me(t) * norm2 * norm2;
    };
    for (std::int64_t l = 0; l < s.dim(); ++l) {
      for (bool imag : {false, true}) {
        auto plus = s.amplitudes, minus = s.amplitudes;
        const cplx dz = imag ? cplx(0.0, h) : cplx(h, 0.0);
        plus[l] += dz;
        minus[l] -= dz;
        const double fd = (quartic(plus) - quartic(minus)) / (2.0 * h);
        const double an = imag ? 2.0 * g[l].imag() : 2.0 * g[l].real();
        worst = std::max(worst, std::abs(an - fd) / std::max(1.0, std::abs(fd)));
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "analytic gradient vs central differences on 10 random states (worst "
                "rel err %.2e)",
                worst);
  report(11, worst <= 1e-6, buf);
}

void criterion12() {
  const auto t0 = Clock::now();
  std::vector<double> moments;
  for (int m = 1; m <= 3; ++m) moments.push_back(exact_moment(2, 2, m));
  auto table = cumulants_from_moments(moments);
  const double beta = 0.1;
  const double series = series_average_energy(beta, table);
  EnsembleConfig cfg;
  cfg.n = 2;
  cfg.d = 2;
  cfg.beta = beta;
  cfg.samples = 200000;
  cfg.seed = 1212;
  auto mc = estimate_average_energy(cfg);
  const double gap = std::abs(series - mc.value);
  const double allowance = mc.stderr_ + 2e-3;
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "order-3 series %.6f vs MC %.6f +- %.6f at beta=0.1 (gap %.2e <= %.2e, "
                "%.1f s)",
                series, mc.value, mc.stderr_, gap, allowance, secs);
  report(12, gap <= allowance && secs < 120.0, buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
