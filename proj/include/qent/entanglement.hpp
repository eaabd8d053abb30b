#pragma once

// Purity over bipartitions, potential of multipartite entanglement, and the
// coupling function Delta in brute-force and closed form.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qent/core.hpp"

namespace qent {

// Splits a flat index into (index over A, index over Abar) without decoding
// the whole digit string each time.
class IndexSplitter {
 public:
  IndexSplitter(int n, int d, const Bipartition& b)
      : d_(d), n_(n), na_(b.n_a()), nbar_(b.n_abar()) {
    in_a_.assign(n, false);
    for (int p : b.positions) in_a_[p] = true;
    // digit j of the flat index carries weight d^(n-1-j)
    weight_a_.assign(n, 0);
    weight_b_.assign(n, 0);
    std::int64_t wa = pow_ll(d, na_ - 1), wb = pow_ll(d, nbar_ - 1);
    for (int j = 0; j < n; ++j) {
      if (in_a_[j]) {
        weight_a_[j] = wa;
        wa /= d;
      } else {
        weight_b_[j] = wb;
        wb /= d;
      }
    }
    full_weight_.assign(n, 0);
    std::int64_t w = pow_ll(d, n - 1);
    for (int j = 0; j < n; ++j) {
      full_weight_[j] = w;
      w /= d;
    }
  }

  std::int64_t dim_a() const { return pow_ll(d_, na_); }
  std::int64_t dim_abar() const { return pow_ll(d_, nbar_); }

  std::pair<std::int64_t, std::int64_t> split(std::int64_t k) const {
    std::int64_t a = 0, b = 0;
    for (int j = 0; j < n_; ++j) {
      int digit = static_cast<int>(k / full_weight_[j]) % d_;
      a += digit * weight_a_[j];
      b += digit * weight_b_[j];
    }
    return {a, b};
  }

  std::int64_t join(std::int64_t a, std::int64_t b) const {
    std::int64_t k = 0;
    for (int j = 0; j < n_; ++j) {
      int digit;
      if (in_a_[j]) {
        digit = static_cast<int>(a / weight_a_[j]) % d_;
      } else {
        digit = static_cast<int>(b / weight_b_[j]) % d_;
      }
      k += digit * full_weight_[j];
    }
    return k;
  }

 private:
  int d_, n_, na_, nbar_;
  std::vector<bool> in_a_;
  std::vector<std::int64_t> weight_a_, weight_b_, full_weight_;
};

// rho_A = tr_Abar |psi><psi|, stored row-major as N_A x N_A.
inline std::vector<cplx> reduced_density(const PureState& state, const Bipartition& b) {
  if (b.n != state.n) throw std::invalid_argument("reduced_density: dimension mismatch");
  IndexSplitter sp(state.n, state.d, b);
  const std::int64_t na = sp.dim_a(), nb = sp.dim_abar();
  // Regroup amplitudes as an N_A x N_Abar matrix, then rho_A = Z Z^dagger.
  std::vector<cplx> z(na * nb);
  for (std::int64_t k = 0; k < state.dim(); ++k) {
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
  return rho;
}

// tr(rho_A^2), computed from the amplitude matrix without forming rho_A when
// N_Abar < N_A would make that cheaper; here sizes are small enough that the
// Gram route through the smaller side is used.
inline double purity(const PureState& state, const Bipartition& b) {
  if (b.n != state.n) throw std::invalid_argument("purity: dimension mismatch");
  IndexSplitter sp(state.n, state.d, b);
  const std::int64_t na = sp.dim_a(), nb = sp.dim_abar();
  std::vector<cplx> z(na * nb);
  for (std::int64_t k = 0; k < state.dim(); ++k) {
    auto [a, bb] = sp.split(k);
    z[a * nb + bb] = state.amplitudes[k];
  }
  // tr((Z Z^dag)^2) = sum_{a,a'} |<row_a, row_a'>|^2; iterate over the
  // smaller Gram matrix.
  double p = 0.0;
  if (na <= nb) {
    for (std::int64_t a = 0; a < na; ++a)
      for (std::int64_t a2 = 0; a2 < na; ++a2) {
        cplx acc(0.0, 0.0);
        for (std::int64_t bb = 0; bb < nb; ++bb)
          acc += z[a * nb + bb] * std::conj(z[a2 * nb + bb]);
        p += std::norm(acc);
      }
  } else {
    for (std::int64_t bb = 0; bb < nb; ++bb)
      for (std::int64_t b2 = 0; b2 < nb; ++b2) {
        cplx acc(0.0, 0.0);
        for (std::int64_t a = 0; a < na; ++a)
          acc += z[a * nb + bb] * std::conj(z[a * nb + b2]);
        p += std::norm(acc);
      }
  }
  return p;
}

// Average purity over all balanced bipartitions: pi_ME.
inline double potential_me(const PureState& state) {
  if (state.n < 2) throw std::invalid_argument("potential_me: need n >= 2");
  auto parts = balanced_bipartitions(state.n);
  double sum = 0.0;
  for (const auto& b : parts) sum += purity(state, b);
  return sum / static_cast<double>(parts.size());
}

struct CouplingQuery {
  QuditString k, kp, l, lp;
  int n_a = -1;  // defaults to [n/2]

  CouplingQuery(QuditString k_, QuditString kp_, QuditString l_, QuditString lp_, int na = -1)
      : k(std::move(k_)), kp(std::move(kp_)), l(std::move(l_)), lp(std::move(lp_)), n_a(na) {
    const int n = k.n();
    if (kp.n() != n || l.n() != n || lp.n() != n || kp.d != k.d || l.d != k.d || lp.d != k.d)
      throw std::invalid_argument("CouplingQuery: strings must share n and d");
    if (n_a < 0) n_a = n / 2;
    if (n_a < 1 || n_a > n - 1) throw std::invalid_argument("CouplingQuery: n_a out of range");
  }
};

// Symmetrized sum of Kronecker-delta products over all C(n, n_a) subsets.
inline double coupling_delta_bruteforce(const CouplingQuery& q) {
  const int n = q.k.n();
  std::int64_t hits2 = 0;  // counts both symmetrized terms, each subset weight 1
  for (const auto& a : subsets_of_size(n, q.n_a)) {
    std::vector<bool> in_a(n, false);
    for (int p : a) in_a[p] = true;
    bool t1 = true, t2 = true;
    for (int j = 0; j < n; ++j) {
      if (in_a[j]) {
        t1 = t1 && q.kp.digits[j] == q.l.digits[j] && q.k.digits[j] == q.lp.digits[j];
        t2 = t2 && q.kp.digits[j] == q.lp.digits[j] && q.k.digits[j] == q.l.digits[j];
      } else {
        t1 = t1 && q.k.digits[j] == q.l.digits[j] && q.kp.digits[j] == q.lp.digits[j];
        t2 = t2 && q.kp.digits[j] == q.l.digits[j] && q.k.digits[j] == q.lp.digits[j];
      }
      if (!t1 && !t2) break;
    }
    hits2 += (t1 ? 1 : 0) + (t2 ? 1 : 0);
  }
  return 0.5 * static_cast<double>(hits2) / static_cast<double>(binomial(n, q.n_a));
}

// f(k, l, n_a) with exact integer binomials; binomials with a negative
// argument are zero. Weights are Hamming weights of the difference strings.
inline double coupling_f(int wk, int wl, int n, int n_a) {
  const double norm = static_cast<double>(binomial(n, n_a));
  const std::int64_t b1 = binomial(n - wk - wl, n_a - wk);
  const std::int64_t b2 = binomial(n - wk - wl, n_a - wl);
  return 0.5 * static_cast<double>(b1 + b2) / norm;
}

// Closed form of the coupling function: conservation delta, disjoint-support
// delta, then f of the two difference weights. Allocation-free core for the
// bracket and loop-bound hot loops.
inline double coupling_delta(const QuditString& k, const QuditString& kp,
                             const QuditString& l, const QuditString& lp, int n_a) {
  const int n = k.n();
  const int d = k.d;
  int wk = 0, wl = 0;
  for (int j = 0; j < n; ++j) {
    const int sum_k = (k.digits[j] + kp.digits[j]) % d;
    const int sum_l = (l.digits[j] + lp.digits[j]) % d;
    if (sum_k != sum_l) return 0.0;
    const int dk = (k.digits[j] - l.digits[j] + d) % d;
    const int dl = (kp.digits[j] - l.digits[j] + d) % d;
    if (dk != 0 && dl != 0) return 0.0;  // min of representatives must vanish
    if (dk != 0) ++wk;
    if (dl != 0) ++wl;
  }
  return coupling_f(wk, wl, n, n_a);
}

inline double coupling_delta(const CouplingQuery& q) {
  return coupling_delta(q.k, q.kp, q.l, q.lp, q.n_a);
}

// pi_ME as the quartic Delta form. The quadruple sum is constrained by the
// conservation law, so only tuples with k + k' = l + l' are visited.
inline double potential_me_via_delta(const PureState& state,
                                     std::int64_t product_limit = 100'000'000) {
  const int n = state.n, d = state.d;
  const std::int64_t N = state.dim();
  if (N * N * N > product_limit)
    throw std::runtime_error("potential_me_via_delta: size guard exceeded");
  const int n_a = n / 2;
  double total = 0.0;
  // enumerate k, k', l; l' = k + k' - l is fixed by conservation
  for (std::int64_t ik = 0; ik < N; ++ik) {
    QuditString k = string_of(ik, n, d);
    for (std::int64_t ikp = 0; ikp < N; ++ikp) {
      QuditString kp = string_of(ikp, n, d);
      const cplx zz = state.amplitudes[ik] * state.amplitudes[ikp];
      if (std::norm(zz) == 0.0) continue;
      for (std::int64_t il = 0; il < N; ++il) {
        QuditString l = string_of(il, n, d);
        QuditString lp = sub_mod(add_mod(k, kp), l);
        const std::int64_t ilp = index_of(lp);
        const cplx w = zz * std::conj(state.amplitudes[il] * state.amplitudes[ilp]);
        if (std::norm(w) == 0.0) continue;
        const double delta = coupling_delta(CouplingQuery(k, kp, l, lp, n_a));
        if (delta != 0.0) total += delta * w.real();
      }
    }
  }
  return total;
}

// Action of (p_1,...,p_n; q): digit j of the image string is p_j(k_{q(j)}).
// Permutations are 0-based here; the CLI translates from 1-based labels.
inline PureState apply_symmetry(const PureState& state,
                                const std::vector<std::vector<int>>& site_perms,
                                const std::vector<int>& qudit_perm) {
  const int n = state.n, d = state.d;
  if (static_cast<int>(site_perms.size()) != n || static_cast<int>(qudit_perm.size()) != n)
    throw std::invalid_argument("apply_symmetry: need n permutations");
  auto check_perm = [](const std::vector<int>& p, int size) {
    std::vector<bool> seen(size, false);
    if (static_cast<int>(p.size()) != size) return false;
    for (int v : p) {
      if (v < 0 || v >= size || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  };
  if (!check_perm(qudit_perm, n)) throw std::invalid_argument("apply_symmetry: invalid site permutation");
  for (const auto& p : site_perms)
    if (!check_perm(p, d)) throw std::invalid_argument("apply_symmetry: invalid symbol permutation");

  std::vector<cplx> out(state.dim());
  for (std::int64_t idx = 0; idx < state.dim(); ++idx) {
    QuditString s = string_of(idx, n, d);
    QuditString t = s;
    for (int j = 0; j < n; ++j) t.digits[j] = site_perms[j][s.digits[qudit_perm[j]]];
    out[index_of(t)] = state.amplitudes[idx];
  }
  return PureState(n, d, std::move(out));
}

}  // namespace qent
