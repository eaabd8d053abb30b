#pragma once

// Index arithmetic over strings in Z_d^n, bipartitions of the n parties,
// Hamming functionals and normalized pure states. Everything downstream
// builds on these types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qent {

using cplx = std::complex<double>;

// Digit string k in Z_d^n. Digit order is big-endian: qudit 1 is the most
// significant digit of the flat index.
struct QuditString {
  int d = 2;
  std::vector<int> digits;  // length n, each in {0,...,d-1}

  QuditString() = default;
  QuditString(int d_, std::vector<int> digits_) : d(d_), digits(std::move(digits_)) {
    if (d < 2) throw std::invalid_argument("QuditString: d must be >= 2");
    for (int v : digits)
      if (v < 0 || v >= d) throw std::invalid_argument("QuditString: digit out of range");
  }

  int n() const { return static_cast<int>(digits.size()); }

  bool operator==(const QuditString& o) const { return d == o.d && digits == o.digits; }
};

inline std::int64_t pow_ll(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Flat index of a string: index = sum_j s_j d^(n-1-j).
inline std::int64_t index_of(const QuditString& s) {
  std::int64_t idx = 0;
  for (int v : s.digits) idx = idx * s.d + v;
  return idx;
}

inline QuditString string_of(std::int64_t index, int n, int d) {
  std::vector<int> digits(n);
  for (int j = n - 1; j >= 0; --j) {
    digits[j] = static_cast<int>(index % d);
    index /= d;
  }
  return QuditString(d, std::move(digits));
}

inline int hamming_weight(const QuditString& s) {
  return static_cast<int>(std::count_if(s.digits.begin(), s.digits.end(),
                                        [](int v) { return v != 0; }));
}

inline int hamming_distance(const QuditString& a, const QuditString& b) {
  if (a.d != b.d || a.n() != b.n())
    throw std::invalid_argument("hamming_distance: dimension mismatch");
  int dist = 0;
  for (int j = 0; j < a.n(); ++j)
    if (a.digits[j] != b.digits[j]) ++dist;
  return dist;
}

// Digit-wise arithmetic in Z_d.
inline QuditString add_mod(const QuditString& a, const QuditString& b) {
  QuditString r = a;
  for (int j = 0; j < a.n(); ++j) r.digits[j] = (a.digits[j] + b.digits[j]) % a.d;
  return r;
}

inline QuditString sub_mod(const QuditString& a, const QuditString& b) {
  QuditString r = a;
  for (int j = 0; j < a.n(); ++j) r.digits[j] = (a.digits[j] - b.digits[j] + a.d) % a.d;
  return r;
}

// Exact binomial, zero when either argument is negative or k > n.
// Values needed here stay far below the int64 range (n <= 64 in practice).
inline std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

// Subset A of the n parties. Positions are 0-based internally; user-facing
// interfaces use 1-based labels.
struct Bipartition {
  int n = 0;
  std::vector<int> positions;  // strictly increasing, 0-based, proper nonempty subset

  Bipartition() = default;
  Bipartition(int n_, std::vector<int> pos) : n(n_), positions(std::move(pos)) {
    if (positions.empty() || static_cast<int>(positions.size()) >= n)
      throw std::invalid_argument("Bipartition: A must be a proper nonempty subset");
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (positions[i] < 0 || positions[i] >= n)
        throw std::invalid_argument("Bipartition: position out of range");
      if (i > 0 && positions[i] <= positions[i - 1])
        throw std::invalid_argument("Bipartition: positions must be strictly increasing");
    }
  }

  int n_a() const { return static_cast<int>(positions.size()); }
  int n_abar() const { return n - n_a(); }
  bool balanced() const { return n_a() == n / 2; }

  std::vector<int> complement() const {
    std::vector<int> comp;
    std::size_t i = 0;
    for (int j = 0; j < n; ++j) {
      if (i < positions.size() && positions[i] == j) {
        ++i;
      } else {
        comp.push_back(j);
      }
    }
    return comp;
  }
};

// All C(n, k) subsets of {0,...,n-1} of size k, lexicographic.
inline std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// All bipartitions with |A| = [n/2]. Complements are separate entries for
// even n; the normalization C(n,[n/2])^-1 counts them that way.
inline std::vector<Bipartition> balanced_bipartitions(int n) {
  if (n < 2) throw std::invalid_argument("balanced_bipartitions: n must be >= 2");
  std::vector<Bipartition> out;
  for (auto& s : subsets_of_size(n, n / 2)) out.emplace_back(n, std::move(s));
  return out;
}

// Normalized pure state of n qudits; amplitudes in flat-index order.
struct PureState {
  int n = 1;
  int d = 2;
  std::vector<cplx> amplitudes;
  double normalization_deviation = 0.0;  // | ||z||-1 | before renormalization

  PureState() : amplitudes{cplx(1.0, 0.0)} {}

  PureState(int n_, int d_, std::vector<cplx> amps) : n(n_), d(d_), amplitudes(std::move(amps)) {
    if (n < 1 || d < 2) throw std::invalid_argument("PureState: need n >= 1, d >= 2");
    if (static_cast<std::int64_t>(amplitudes.size()) != pow_ll(d, n))
      throw std::invalid_argument("PureState: amplitude count != d^n");
    double norm = 0.0;
    for (const auto& z : amplitudes) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm <= 0.0) throw std::invalid_argument("PureState: zero vector");
    normalization_deviation = std::abs(norm - 1.0);
    if (normalization_deviation > 0.0)
      for (auto& z : amplitudes) z /= norm;
  }

  std::int64_t dim() const { return static_cast<std::int64_t>(amplitudes.size()); }
};

// Basis state |k...k> style constructors used all over the tests.
inline PureState basis_state(int n, int d, std::int64_t index) {
  std::vector<cplx> amps(pow_ll(d, n), cplx(0.0, 0.0));
  amps[index] = cplx(1.0, 0.0);
  return PureState(n, d, std::move(amps));
}

inline PureState ghz_state(int n, int d = 2) {
  std::vector<cplx> amps(pow_ll(d, n), cplx(0.0, 0.0));
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int c = 0; c < d; ++c) {
    std::int64_t idx = 0;
    for (int j = 0; j < n; ++j) idx = idx * d + c;
    amps[idx] = cplx(a, 0.0);
  }
  return PureState(n, d, std::move(amps));
}

}  // namespace qent
