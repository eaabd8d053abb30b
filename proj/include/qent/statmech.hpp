#pragma once

// Haar sampling of pure states and Monte Carlo estimation of moments and
// the average energy, plus the moment->cumulant recursion and the truncated
// high-temperature series.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qent/core.hpp"
#include "qent/entanglement.hpp"

namespace qent {

// splitmix64 stream; used both directly and as a per-sample key derivation,
// so worker partitioning cannot change the draw for a given sample index.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1)
  double uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // standard normal via Box-Muller
  std::pair<double, double> normal_pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }
};

inline std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x517cc1b727220a95ULL * (index + 1)));
  g.next();
  return g.next();
}

// One Haar draw: 2N iid standard normals, normalized. The isotropic Gaussian
// is unitarily invariant, so the result is uniform on the unit sphere.
inline PureState sample_haar(int n, int d, std::uint64_t seed, std::uint64_t index = 0) {
  SplitMix64 g(derive_key(seed, index));
  const std::int64_t N = pow_ll(d, n);
  std::vector<cplx> amps(N);
  for (std::int64_t k = 0; k < N; ++k) {
    auto [re, im] = g.normal_pair();
    amps[k] = cplx(re, im);
  }
  return PureState(n, d, std::move(amps));
}

struct EnsembleConfig {
  int n = 2;
  int d = 2;
  double beta = 0.0;
  std::int64_t samples = 1000;
  std::uint64_t seed = 0;
};

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::int64_t samples = 0;
};

// Sample mean of pi_ME^m over Haar draws at infinite temperature.
inline Estimate estimate_moment(const EnsembleConfig& cfg, int m) {
  if (cfg.samples < 1) throw std::invalid_argument("estimate_moment: samples >= 1");
  if (m < 1) throw std::invalid_argument("estimate_moment: m >= 1");
  double sum = 0.0, sumsq = 0.0;
  for (std::int64_t i = 0; i < cfg.samples; ++i) {
    const double h = potential_me(sample_haar(cfg.n, cfg.d, cfg.seed, i));
    const double x = std::pow(h, m);
    sum += x;
    sumsq += x * x;
  }
  const double s = static_cast<double>(cfg.samples);
  Estimate e;
  e.samples = cfg.samples;
  e.value = sum / s;
  const double var = std::max(0.0, sumsq / s - e.value * e.value);
  e.stderr_ = std::sqrt(var / s);
  return e;
}

// Ratio estimator for <H>_beta = E[H e^-bH] / E[e^-bH], with a delta-method
// standard error. Weights are shifted by the sample minimum so large beta
// does not underflow the exponentials.
inline Estimate estimate_average_energy(const EnsembleConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("estimate_average_energy: samples >= 1");
  std::vector<double> h(cfg.samples);
  double hmin = 1.0;
  for (std::int64_t i = 0; i < cfg.samples; ++i) {
    h[i] = potential_me(sample_haar(cfg.n, cfg.d, cfg.seed, i));
    hmin = std::min(hmin, h[i]);
  }
  double sa = 0.0, sb = 0.0;
  for (double x : h) {
    const double w = std::exp(-cfg.beta * (x - hmin));
    sa += x * w;
    sb += w;
  }
  const double s = static_cast<double>(cfg.samples);
  const double abar = sa / s, bbar = sb / s;
  const double r = abar / bbar;
  double va = 0.0, vb = 0.0, cab = 0.0;
  for (double x : h) {
    const double w = std::exp(-cfg.beta * (x - hmin));
    va += (x * w - abar) * (x * w - abar);
    vb += (w - bbar) * (w - bbar);
    cab += (x * w - abar) * (w - bbar);
  }
  va /= s;
  vb /= s;
  cab /= s;
  Estimate e;
  e.samples = cfg.samples;
  e.value = r;
  e.stderr_ = std::sqrt(std::max(0.0, va - 2.0 * r * cab + r * r * vb) / s) / bbar;
  return e;
}

// MC estimate of the partition function up to the benign e^(beta*hmin) shift
// used above; exposed for the Z(beta) positivity property.
inline double estimate_partition_function(const EnsembleConfig& cfg) {
  double sb = 0.0;
  for (std::int64_t i = 0; i < cfg.samples; ++i) {
    const double x = potential_me(sample_haar(cfg.n, cfg.d, cfg.seed, i));
    sb += std::exp(-cfg.beta * x);
  }
  return sb / static_cast<double>(cfg.samples);
}

struct CumulantTable {
  std::vector<double> moments;    // <H^m>, m = 1..M
  std::vector<double> cumulants;  // kappa^(m), m = 1..M

  int order() const { return static_cast<int>(cumulants.size()); }
};

// kappa^(m) = <H^m> - sum_{j=1}^{m-1} C(m-1, j-1) kappa^(j) <H^(m-j)>.
inline CumulantTable cumulants_from_moments(const std::vector<double>& moments) {
  if (moments.empty()) throw std::invalid_argument("cumulants_from_moments: empty input");
  CumulantTable t;
  t.moments = moments;
  const int M = static_cast<int>(moments.size());
  t.cumulants.resize(M);
  for (int m = 1; m <= M; ++m) {
    double k = moments[m - 1];
    for (int j = 1; j <= m - 1; ++j)
      k -= static_cast<double>(binomial(m - 1, j - 1)) * t.cumulants[j - 1] *
           moments[m - j - 1];
    t.cumulants[m - 1] = k;
  }
  return t;
}

// Truncated high-temperature series sum_m (-beta)^(m-1)/(m-1)! kappa^(m).
inline double series_average_energy(double beta, const CumulantTable& table,
                                    double trust_radius = 1.0) {
  if (std::abs(beta) > trust_radius)
    throw std::invalid_argument("series_average_energy: |beta| beyond trust radius");
  double sum = 0.0, term = 1.0;  // term = (-beta)^(m-1)/(m-1)!
  for (int m = 1; m <= table.order(); ++m) {
    sum += term * table.cumulants[m - 1];
    term *= -beta / static_cast<double>(m);
  }
  return sum;
}

}  // namespace qent
