#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vopskit/scalar.hpp"

namespace vopskit {

/// Exponent pair of a bivariate monomial x1^i x2^j. Negative exponents are
/// legal only inside moment evaluation; polynomials store i, j >= 0.
struct MultiIndex {
  long i = 0;
  long j = 0;

  long degree() const { return i + j; }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  MultiIndex shifted(const MultiIndex& by) const { return {i + by.i, j + by.j}; }
};

/// Map key order: by total degree, then by position inside X_n
/// (x1^n first), so iteration walks the canonical basis.
struct MultiIndexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.j < b.j;
  }
};

inline long poly_dim(long n) { return (n + 1) * (n + 2) / 2; }  // t_n

/// X_n = (x1^n, x1^{n-1}x2, ..., x2^n), reverse lexicographical order.
/// This ordering is the single source of truth for every row/column index.
inline std::vector<MultiIndex> monomial_vector(int n) {
  if (n < 0) throw Error("monomial_vector: negative degree");
  std::vector<MultiIndex> v;
  v.reserve(n + 1);
  for (int k = 0; k <= n; ++k) v.push_back({n - k, k});
  return v;
}

/// X_{-n} = x1^{-n} x2^{-n} X_n = (x2^{-n}, x1^{-1}x2^{-n+1}, ..., x1^{-n}).
inline std::vector<MultiIndex> negative_monomial_vector(int n) {
  if (n < 1) throw Error("negative_monomial_vector: degree must be >= 1");
  std::vector<MultiIndex> v;
  v.reserve(n + 1);
  for (int k = 0; k <= n; ++k) v.push_back({-k, -n + k});
  return v;
}

}  // namespace vopskit
