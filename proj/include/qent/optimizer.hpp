#pragma once

// Minimization of pi_ME over the unit sphere: analytic gradient, projected
// gradient descent with restarts, Metropolis annealing, and the embedded
// 7-qubit sigma_7 state with its purity histogram.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qent/core.hpp"
#include "qent/entanglement.hpp"
#include "qent/statmech.hpp"

namespace qent {

// Conjugate-coordinate gradient of pi_ME: component l is
// 2 C(n,[n/2])^-1 sum_A [(rho_A (x) I) z]_l.
inline std::vector<cplx> grad_pime(const PureState& state) {
  const auto parts = balanced_bipartitions(state.n);
  const std::int64_t N = state.dim();
  std::vector<cplx> grad(N, cplx(0.0, 0.0));
  for (const auto& b : parts) {
    IndexSplitter sp(state.n, state.d, b);
    const std::int64_t na = sp.dim_a(), nb = sp.dim_abar();
    std::vector<cplx> z(na * nb);
    for (std::int64_t k = 0; k < N; ++k) {
      auto [a, bb] = sp.split(k);
      z[a * nb + bb] = state.amplitudes[k];
    }
    std::vector<cplx> rho(na * na, cplx(0.0, 0.0));
    for (std::int64_t a = 0; a < na; ++a)
      for (std::int64_t a2 = 0; a2 < na; ++a2) {
        cplx acc(0.0, 0.0);
        for (std::int64_t bb = 0; bb < nb; ++bb)
          acc += z[a * nb + bb] * std::conj(z[a2 * nb + bb]);
        rho[a * na + a2] = acc;
      }
    for (std::int64_t a = 0; a < na; ++a)
      for (std::int64_t bb = 0; bb < nb; ++bb) {
        cplx acc(0.0, 0.0);
        for (std::int64_t a2 = 0; a2 < na; ++a2)
          acc += rho[a * na + a2] * z[a2 * nb + bb];
        grad[sp.join(a, bb)] += acc;
      }
  }
  const double scale = 2.0 / static_cast<double>(parts.size());
  for (auto& g : grad) g *= scale;
  return grad;
}

namespace detail {

inline cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm2(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

inline std::vector<cplx> tangent_project(const std::vector<cplx>& g,
                                         const std::vector<cplx>& z) {
  const cplx c = inner(z, g);
  std::vector<cplx> t = g;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] -= c * z[i];
  return t;
}

}  // namespace detail

inline double tangent_gradient_norm(const PureState& state) {
  auto t = detail::tangent_project(grad_pime(state), state.amplitudes);
  return std::sqrt(detail::norm2(t));
}

struct OptimizerConfig {
  int n = 2;
  int d = 2;
  int restarts = 20;
  int max_iterations = 5000;
  double initial_step = 1.0;
  double gradient_tolerance = 1e-10;
  std::uint64_t seed = 0;
  // annealing schedule
  double beta0 = 1.0;
  double beta_max = 1e4;
  int sweeps_per_beta = 200;
  int beta_steps = 40;
};

struct MinimizationResult {
  PureState best_state;
  double best_value = 1.0;
  std::vector<double> restart_values;         // best pi_ME per restart
  std::vector<double> bipartition_purities;   // of the winner
  double acceptance_rate = 0.0;               // annealing only
};

namespace detail {

inline PureState step_state(const PureState& s, const std::vector<cplx>& dir, double eta) {
  std::vector<cplx> amps = s.amplitudes;
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] -= eta * dir[i];
  return PureState(s.n, s.d, std::move(amps));
}

// Projected gradient descent with backtracking; pi_ME never increases along
// the accepted steps.
inline std::pair<PureState, double> descend(PureState state, const OptimizerConfig& cfg) {
  double value = potential_me(state);
  double eta = cfg.initial_step;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    auto t = tangent_project(grad_pime(state), state.amplitudes);
    const double gnorm = std::sqrt(norm2(t));
    if (gnorm < cfg.gradient_tolerance) break;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      PureState trial = step_state(state, t, eta);
      const double tv = potential_me(trial);
      if (tv < value - 1e-15) {
        state = std::move(trial);
        value = tv;
        eta *= 1.3;
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }
  return {std::move(state), value};
}

}  // namespace detail

inline std::vector<double> bipartition_purities(const PureState& state) {
  std::vector<double> out;
  for (const auto& b : balanced_bipartitions(state.n)) out.push_back(purity(state, b));
  return out;
}

// Best-of-restarts projected gradient descent from Haar-random starts.
inline MinimizationResult minimize_pime(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("minimize_pime: restarts >= 1");
  MinimizationResult res;
  res.best_value = 2.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    PureState start = sample_haar(cfg.n, cfg.d, cfg.seed, static_cast<std::uint64_t>(r));
    auto [state, value] = detail::descend(std::move(start), cfg);
    res.restart_values.push_back(value);
    if (value < res.best_value) {
      res.best_value = value;
      res.best_state = std::move(state);
    }
  }
  res.bipartition_purities = bipartition_purities(res.best_state);
  return res;
}

// Warm-started local polish used by the sigma_7 bound check.
inline MinimizationResult minimize_from(const PureState& start, const OptimizerConfig& cfg) {
  MinimizationResult res;
  auto [state, value] = detail::descend(start, cfg);
  res.best_value = value;
  res.best_state = std::move(state);
  res.restart_values = {value};
  res.bipartition_purities = bipartition_purities(res.best_state);
  return res;
}

// Metropolis walk on the sphere targeting e^(-beta H) d(mu), with a
// geometric beta schedule and a gradient-descent polish at the end.
inline MinimizationResult anneal(const OptimizerConfig& cfg) {
  SplitMix64 rng(derive_key(cfg.seed, 0xA55AA55AULL));
  PureState state = sample_haar(cfg.n, cfg.d, cfg.seed, 0);
  double value = potential_me(state);
  double sigma = 0.3;  // proposal scale, adapted toward 30-50% acceptance
  std::int64_t accepted = 0, proposed = 0;

  double beta = cfg.beta0;
  const double growth =
      (cfg.beta_steps > 1 && cfg.beta0 > 0.0 && cfg.beta_max > cfg.beta0)
          ? std::pow(cfg.beta_max / cfg.beta0,
                     1.0 / static_cast<double>(cfg.beta_steps - 1))
          : 1.0;
  for (int bstep = 0; bstep < cfg.beta_steps; ++bstep) {
    std::int64_t acc_window = 0;
    for (int sweep = 0; sweep < cfg.sweeps_per_beta; ++sweep) {
      std::vector<cplx> amps = state.amplitudes;
      for (auto& z : amps) {
        auto [re, im] = rng.normal_pair();
        z += sigma * cplx(re, im);
      }
      PureState trial(cfg.n, cfg.d, std::move(amps));
      const double tv = potential_me(trial);
      ++proposed;
      const double dh = tv - value;
      if (dh <= 0.0 || rng.uniform() < std::exp(-beta * dh)) {
        state = std::move(trial);
        value = tv;
        ++accepted;
        ++acc_window;
      }
    }
    const double rate = static_cast<double>(acc_window) / cfg.sweeps_per_beta;
    if (rate < 0.3) sigma *= 0.7;
    else if (rate > 0.5) sigma *= 1.3;
    beta *= growth;
  }

  MinimizationResult res;
  auto [polished, pv] = detail::descend(state, cfg);
  res.best_state = std::move(polished);
  res.best_value = pv;
  res.restart_values = {pv};
  res.acceptance_rate = proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
  res.bipartition_purities = bipartition_purities(res.best_state);
  return res;
}

// ---------------------------------------------------------------------------
// The 7-qubit state sigma_7: MMES_4 factor on qubits 1-4, GHZ factor on 5-7.

namespace sigma7_data {

// 3-qubit GHZ basis, rows scaled by 1/sqrt(2)
inline constexpr std::array<std::array<int, 8>, 8> ghz_basis = {{
    {1, 0, 0, 0, 0, 0, 0, 1},
    {1, 0, 0, 0, 0, 0, 0, -1},
    {0, 1, 0, 0, 0, 0, 1, 0},
    {0, 1, 0, 0, 0, 0, -1, 0},
    {0, 0, 1, 0, 0, 1, 0, 0},
    {0, 0, 1, 0, 0, -1, 0, 0},
    {0, 0, 0, 1, 1, 0, 0, 0},
    {0, 0, 0, 1, -1, 0, 0, 0},
}};

// 4-qubit MMES basis, rows scaled by 1/4
inline constexpr std::array<std::array<int, 16>, 16> mmes4_basis = {{
    {-1, -1, -1, -1, -1, -1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1},
    {-1, -1, -1, -1, -1, -1, 1, 1, 1, -1, 1, -1, -1, 1, 1, -1},
    {-1, -1, -1, -1, 1, 1, -1, -1, -1, 1, -1, 1, -1, 1, 1, -1},
    {-1, -1, -1, -1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1},
    {-1, -1, 1, 1, -1, -1, -1, -1, -1, 1, 1, -1, 1, -1, 1, -1},
    {-1, -1, 1, 1, -1, -1, -1, -1, 1, -1, -1, 1, -1, 1, -1, 1},
    {-1, -1, 1, 1, 1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1},
    {-1, -1, 1, 1, 1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1},
    {-1, 1, -1, 1, -1, 1, 1, -1, -1, -1, -1, -1, 1, 1, -1, -1},
    {-1, 1, -1, 1, -1, 1, 1, -1, 1, 1, 1, 1, -1, -1, 1, 1},
    {-1, 1, -1, 1, 1, -1, -1, 1, -1, -1, -1, -1, -1, -1, 1, 1},
    {-1, 1, -1, 1, 1, -1, -1, 1, 1, 1, 1, 1, 1, 1, -1, -1},
    {-1, 1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1, 1, 1, 1, 1},
    {-1, 1, 1, -1, -1, 1, -1, 1, 1, 1, -1, -1, -1, -1, -1, -1},
    {-1, 1, 1, -1, 1, -1, 1, -1, -1, -1, 1, 1, -1, -1, -1, -1},
    {-1, 1, 1, -1, 1, -1, 1, -1, 1, 1, -1, -1, 1, 1, 1, 1},
}};

struct Coefficient {
  int i;  // 1-based MMES_4 index
  int j;  // 1-based GHZ index
  double re;
  double im;
};

// Non-vanishing c_{i,j}; the second column of the source table is the
// imaginary part.
inline constexpr std::array<Coefficient, 32> coefficients = {{
    {1, 1, 0.313685, -0.019416},
    {1, 4, -0.124963, 0.00751404},
    {2, 2, 6.16876805e-6, -0.000116371},
    {2, 3, -0.000103808, -0.0000691072},
    {3, 2, 0.000046695, -0.0000735369},
    {3, 3, -0.000243151, -0.000195018},
    {4, 1, 0.0193888, 0.313752},
    {4, 4, -0.00777771, -0.124766},
    {5, 5, 0.0719262, 0.15313},
    {5, 8, 0.152837, -0.0721254},
    {6, 6, -0.160604, -0.0526771},
    {6, 7, 0.0528744, -0.160803},
    {7, 6, 0.0527307, -0.160861},
    {7, 7, 0.161076, 0.0527179},
    {8, 5, 0.153033, -0.0719374},
    {8, 8, -0.0723194, -0.153041},
    {9, 5, 0.0529309, -0.160616},
    {9, 8, 0.160688, 0.0526321},
    {10, 6, -0.072288, -0.153269},
    {10, 7, -0.15302, 0.0720842},
    {11, 6, -0.152985, 0.0719888},
    {11, 7, 0.0719157, 0.153028},
    {12, 5, -0.161016, -0.0527083},
    {12, 8, 0.0526094, -0.160931},
    {13, 1, 0.0128427, -0.0812437},
    {13, 4, 0.032297, -0.204478},
    {14, 2, -0.087611, -0.17006},
    {14, 3, 0.264942, 0.00134756},
    {15, 2, -0.245851, -0.124495},
    {15, 3, -0.132874, 0.115682},
    {16, 1, -0.0128813, 0.0812742},
    {16, 4, -0.0323628, 0.204452},
}};

}  // namespace sigma7_data

// Assembles sigma_7 = sum c_{i,j} |MMES_4>_i (x) |GHZ>_j over 7 qubits and
// renormalizes; the tabulated coefficients are 6-digit truncations.
inline PureState sigma7_state() {
  using namespace sigma7_data;
  const double m4_scale = 0.25;
  const double ghz_scale = 1.0 / std::sqrt(2.0);
  std::vector<cplx> amps(128, cplx(0.0, 0.0));
  for (const auto& c : coefficients) {
    const auto& m4 = mmes4_basis[c.i - 1];
    const auto& gz = ghz_basis[c.j - 1];
    const cplx coeff(c.re, c.im);
    for (int a = 0; a < 16; ++a) {
      if (m4[a] == 0) continue;
      for (int b = 0; b < 8; ++b) {
        if (gz[b] == 0) continue;
        amps[a * 8 + b] += coeff * (m4_scale * m4[a]) * (ghz_scale * gz[b]);
      }
    }
  }
  return PureState(7, 2, std::move(amps));
}

struct PurityHistogram {
  std::vector<std::pair<std::vector<int>, double>> entries;  // 1-based positions, purity
  std::vector<std::int64_t> bin_counts;
  double bin_min = 0.0;
  double bin_max = 0.0;
};

// One entry per balanced bipartition; bins span [min, max] of the entries.
inline PurityHistogram purity_histogram(const PureState& state, int bins = 20) {
  if (bins < 1) throw std::invalid_argument("purity_histogram: bins >= 1");
  PurityHistogram h;
  for (const auto& b : balanced_bipartitions(state.n)) {
    std::vector<int> labels;
    for (int p : b.positions) labels.push_back(p + 1);
    h.entries.emplace_back(std::move(labels), purity(state, b));
  }
  h.bin_min = h.entries.front().second;
  h.bin_max = h.entries.front().second;
  for (const auto& [_, p] : h.entries) {
    h.bin_min = std::min(h.bin_min, p);
    h.bin_max = std::max(h.bin_max, p);
  }
  h.bin_counts.assign(bins, 0);
  const double span = h.bin_max - h.bin_min;
  for (const auto& [_, p] : h.entries) {
    int idx = span > 0.0 ? static_cast<int>((p - h.bin_min) / span * bins) : 0;
    idx = std::min(idx, bins - 1);
    ++h.bin_counts[idx];
  }
  return h;
}

// Two nonempty bins separated by at least one empty bin.
inline bool histogram_bimodal(const PurityHistogram& h) {
  bool seen_cluster = false, seen_gap_after_cluster = false;
  for (std::int64_t c : h.bin_counts) {
    if (c > 0) {
      if (seen_gap_after_cluster) return true;
      seen_cluster = true;
    } else if (seen_cluster) {
      seen_gap_after_cluster = true;
    }
  }
  return false;
}

}  // namespace qent
