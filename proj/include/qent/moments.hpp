#pragma once

// Exact moments <H^m>_0 of the potential of multipartite entanglement via
// the permutation-sum formula, square-bracket evaluation, and the
// cactus / non-cactus split.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qent/core.hpp"
#include "qent/entanglement.hpp"
#include "qent/graphs.hpp"

namespace qent {

struct MomentSplit {
  double total = 0.0;
  double cactus_part = 0.0;
  double noncactus_part = 0.0;
  double ratio = 0.0;  // noncactus_part / cactus_part
};

// Square bracket [p(1) p(1'), ..., p(m) p(m')]: the constrained sum of
// Delta-products over all 2m strings in Z_d^n.
//
// The conservation and disjoint-support constraints of Delta act digit by
// digit, and f only sees the Hamming weights of the two difference strings
// per factor. The sum therefore factorizes over the n positions: a transfer
// over per-factor weight accumulators visits d^(2m) local digit assignments
// per position instead of d^(2mn) global tuples.
inline double square_bracket(const SlotPermutation& p, int n, int d,
                             std::int64_t work_limit = 400'000'000) {
  const int m = p.m;
  const int slots = 2 * m;
  const int n_a = n / 2;
  const std::int64_t radix = n + 1;

  std::int64_t states = 1;
  for (int c = 0; c < slots; ++c) {
    states *= radix;
    if (states > work_limit) throw std::runtime_error("square_bracket: size guard exceeded");
  }
  std::int64_t transitions_bound = 1;
  for (int c = 0; c < slots; ++c) transitions_bound *= d;
  if (states * transitions_bound > work_limit || transitions_bound > work_limit)
    throw std::runtime_error("square_bracket: size guard exceeded");

  // strides of the weight coordinates (u_0..u_{m-1}, v_0..v_{m-1})
  std::vector<std::int64_t> stride(slots);
  std::int64_t s = 1;
  for (int c = 0; c < slots; ++c) {
    stride[c] = s;
    s *= radix;
  }

  // valid local digit assignments, stored as state-index offsets
  std::vector<std::int64_t> offsets;
  std::vector<int> digits(slots, 0);
  while (true) {
    std::int64_t off = 0;
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) {
      const int a = digits[j];
      const int b = digits[m + j];
      const int c = digits[p.map[j]];
      const int e = digits[p.map[m + j]];
      if (((a + b - c - e) % d + d) % d != 0) {
        ok = false;
        break;
      }
      const int dk = (a - c + d) % d;
      const int dl = (b - c + d) % d;
      if (dk != 0 && dl != 0) {
        ok = false;
        break;
      }
      if (dk != 0) off += stride[j];
      if (dl != 0) off += stride[m + j];
    }
    if (ok) offsets.push_back(off);
    int c = slots - 1;
    while (c >= 0 && digits[c] == d - 1) digits[c--] = 0;
    if (c < 0) break;
    ++digits[c];
  }

  std::vector<double> counts(states, 0.0), next(states, 0.0);
  counts[0] = 1.0;
  for (int pos = 0; pos < n; ++pos) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::int64_t st = 0; st < states; ++st) {
      const double c = counts[st];
      if (c == 0.0) continue;
      for (std::int64_t off : offsets) next[st + off] += c;
    }
    counts.swap(next);
    // grow the reachable window by at most one per coordinate each step;
    // offsets never push past radix-1 because there are only n positions
  }

  double bracket = 0.0;
  for (std::int64_t st = 0; st < states; ++st) {
    const double c = counts[st];
    if (c == 0.0) continue;
    double fprod = 1.0;
    std::int64_t rem = st;
    std::vector<int> w(slots);
    for (int cc = 0; cc < slots; ++cc) {
      w[cc] = static_cast<int>(rem % radix);
      rem /= radix;
    }
    for (int j = 0; j < m; ++j) fprod *= coupling_f(w[j], w[m + j], n, n_a);
    bracket += c * fprod;
  }
  return bracket;
}

namespace detail {

template <typename Fn>
void for_each_slot_permutation(int m, Fn&& fn) {
  std::vector<int> perm(2 * m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    fn(SlotPermutation(m, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

inline double moment_prefactor(double N, int m) {
  double denom = 1.0;
  for (int i = 0; i < 2 * m; ++i) denom *= (N + i);
  return 1.0 / denom;
}

}  // namespace detail

// <H^m>_0 = prefactor * sum over S_2m of square brackets. Brackets are
// memoized per isomorphism class since relabeling vertices does not change
// the constrained sum.
inline double exact_moment(int n, int d, int m, int perm_limit = 4) {
  if (m < 1 || m > perm_limit) throw std::runtime_error("exact_moment: enumeration guard exceeded");
  const double N = static_cast<double>(pow_ll(d, n));
  std::map<std::vector<int>, double> cache;
  double sum = 0.0;
  detail::for_each_slot_permutation(m, [&](const SlotPermutation& p) {
    auto key = canonical_form(graph_of_permutation(p));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(std::move(key), square_bracket(p, n, d)).first;
    sum += it->second;
  });
  return detail::moment_prefactor(N, m) * sum;
}

// Split of the moment into cactus and non-cactus permutation classes.
// All-cactus brackets use the closed form; the rest are summed exactly.
inline MomentSplit moment_split(int n, int d, int m, int perm_limit = 4) {
  if (m < 1 || m > perm_limit) throw std::runtime_error("moment_split: enumeration guard exceeded");
  const double N = static_cast<double>(pow_ll(d, n));
  const double NA = static_cast<double>(pow_ll(d, n / 2));
  const double NAbar = static_cast<double>(pow_ll(d, n - n / 2));
  std::map<std::vector<int>, std::pair<bool, double>> cache;  // cactus flag, bracket
  MomentSplit out;
  detail::for_each_slot_permutation(m, [&](const SlotPermutation& p) {
    FeynmanGraph g = graph_of_permutation(p);
    auto key = canonical_form(g);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const bool cactus = is_cactus(g);
      const double value =
          cactus ? cactus_value(g, N, NA, NAbar) : square_bracket(p, n, d);
      it = cache.emplace(std::move(key), std::make_pair(cactus, value)).first;
    }
    if (it->second.first) out.cactus_part += it->second.second;
    else out.noncactus_part += it->second.second;
  });
  const double pref = detail::moment_prefactor(N, m);
  out.cactus_part *= pref;
  out.noncactus_part *= pref;
  out.total = out.cactus_part + out.noncactus_part;
  out.ratio = out.noncactus_part / out.cactus_part;
  return out;
}

// Closed form of f2 for qubits: governs the m=2 non-cactus to cactus ratio
// <H^2>_NC / <H^2>_C = f2(N) / ((N+4)(N_A+N_Abar)^2).
inline double qubit_f2(int n) {
  const int n_a = n / 2;
  const int n_abar = n - n_a;
  double sum = 0.0;
  for (int k = 0; k <= n_a; ++k) {
    const double comb =
        static_cast<double>(binomial(n_a, k)) * static_cast<double>(binomial(n_abar, k));
    const double x = n / 4.0 - k;
    sum += comb * std::pow(2.0, n / 2.0) * (std::pow(4.0, x) + std::pow(4.0, -x));
  }
  return 2.0 * sum / static_cast<double>(binomial(n, n_a));
}

}  // namespace qent
