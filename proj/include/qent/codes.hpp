#pragma once

// Prime-field linear codes: Reed-Solomon construction, minimum distance,
// Singleton/MDS checks, and perfect-MMES state synthesis from codewords.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qent/core.hpp"
#include "qent/entanglement.hpp"

namespace qent {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

struct LinearCode {
  int d = 2;  // alphabet size, prime
  int n = 1;  // codeword length
  std::vector<QuditString> codewords;

  std::int64_t size() const { return static_cast<std::int64_t>(codewords.size()); }
};

// O(M^2 n) brute force over distinct codeword pairs.
inline int min_distance(const LinearCode& code) {
  if (code.size() < 2) throw std::invalid_argument("min_distance: need at least 2 codewords");
  int best = code.n + 1;
  for (std::size_t i = 0; i < code.codewords.size(); ++i)
    for (std::size_t j = i + 1; j < code.codewords.size(); ++j)
      best = std::min(best, hamming_distance(code.codewords[i], code.codewords[j]));
  return best;
}

// Evaluations of all d^k polynomials of degree < k over Z_d at the n
// nonzero points 1..n. Minimum distance is n - k + 1 (MDS).
inline LinearCode reed_solomon(int n, int d, int k) {
  if (!is_prime(d)) throw std::invalid_argument("reed_solomon: d must be prime");
  if (k < 1 || k > n) throw std::invalid_argument("reed_solomon: need 1 <= k <= n");
  if (n > d - 1) throw std::invalid_argument("reed_solomon: need n <= d-1");
  LinearCode code;
  code.d = d;
  code.n = n;
  const std::int64_t M = pow_ll(d, k);
  code.codewords.reserve(M);
  std::vector<int> coeff(k, 0);
  for (std::int64_t c = 0; c < M; ++c) {
    std::int64_t rem = c;
    for (int i = 0; i < k; ++i) {
      coeff[i] = static_cast<int>(rem % d);
      rem /= d;
    }
    std::vector<int> word(n);
    for (int x = 1; x <= n; ++x) {
      int val = 0;  // Horner over Z_d
      for (int i = k - 1; i >= 0; --i) val = (val * x + coeff[i]) % d;
      word[x - 1] = val;
    }
    code.codewords.emplace_back(d, std::move(word));
  }
  return code;
}

struct SingletonReport {
  std::int64_t bound = 0;  // q^(n - delta + 1)
  int delta = 0;
  bool is_mds = false;
  bool valid = false;  // M <= bound (the standard direction of the bound)
};

inline SingletonReport singleton_mds_check(const LinearCode& code) {
  SingletonReport r;
  r.delta = min_distance(code);
  r.bound = pow_ll(code.d, code.n - r.delta + 1);
  r.valid = code.size() <= r.bound;
  r.is_mds = code.size() == r.bound;
  return r;
}

// Uniform superposition of codeword basis states. Preconditions guarantee
// rho_A = I/N_A for every balanced bipartition, so the result is a perfect
// MMES with pi_ME = 1/d^[n/2].
inline PureState mmes_from_code(const LinearCode& code) {
  const int n = code.n, d = code.d;
  const int n_a = n / 2;
  const int n_abar = n - n_a;
  const std::int64_t want = pow_ll(d, n_a);
  if (code.size() != want)
    throw std::invalid_argument("mmes_from_code: need M = d^[n/2], got M = " +
                                std::to_string(code.size()));
  const int delta = min_distance(code);
  if (delta < n_abar + 1)
    throw std::invalid_argument("mmes_from_code: need min distance >= n_Abar + 1 = " +
                                std::to_string(n_abar + 1) + ", got " + std::to_string(delta));
  std::vector<cplx> amps(pow_ll(d, n), cplx(0.0, 0.0));
  const double a = 1.0 / std::sqrt(static_cast<double>(want));
  for (const auto& w : code.codewords) amps[index_of(w)] = cplx(a, 0.0);
  return PureState(n, d, std::move(amps));
}

}  // namespace qent
