#pragma once

#include <utility>
#include <vector>

#include "vopskit/bipoly.hpp"
#include "vopskit/matrix.hpp"
#include "vopskit/moments.hpp"

namespace vopskit {

/// Per-degree bundle of the monic VOPS: the vector P_n, its coefficient
/// matrices against the monomial basis, Lambda_n and Upsilon_n.
template <class T>
struct VopsLevel {
  int degree = -1;
  PolyVec<T> P;
  Matrix<T> leading;               // G_n; identity for the monic construction
  std::vector<Matrix<T>> lower;    // G_{n,j}, j = 0..n-1, each (n+1) x (j+1)
  Matrix<T> lambda;                // <X_n, P_n^T>_n
  Matrix<T> upsilon;               // <X_{-1}, P_n^T>_n, 2 x (n+1)
};

/// Upsilon_n[u][v] = <X_{-1}[u], P_v>_n with X_{-1} = (x2^{-1}, x1^{-1})^T.
template <class T>
Matrix<T> upsilon_matrix(const MomentFunctional<T>& F, const PolyVec<T>& P, int n) {
  const auto Xm1 = negative_monomial_vector(1);
  Matrix<T> U(2, P.size());
  for (std::size_t u = 0; u < 2; ++u)
    for (std::size_t v = 0; v < P.size(); ++v) U(u, v) = vip(F, Xm1[u], P[v], n);
  return U;
}

/// Lambda_n[u][v] = <X_n[u], P_v>_n, recomputed directly from the VIP (the
/// construction's block formula is cross-checked against this in tests).
template <class T>
Matrix<T> lambda_matrix(const MomentFunctional<T>& F, const PolyVec<T>& P, int n) {
  const auto Xn = monomial_vector(n);
  Matrix<T> L(n + 1, P.size());
  for (int u = 0; u <= n; ++u)
    for (std::size_t v = 0; v < P.size(); ++v) L(u, v) = vip(F, Xn[u], P[v], n);
  return L;
}

/// Build the monic VOPS level n: solve the truncated block system
///   Mhat_n [G_{n,0}^T; ...; G_{n,n-1}^T] = -[M_{0,n}; ...; M_{n-1,n}],
/// assemble P_n, and close Lambda_n = sum_j M_{n,j} G_{n,j}^T + M_{n,n}.
template <class T>
VopsLevel<T> build_level(const MomentFunctional<T>& F, int n) {
  VopsLevel<T> lv;
  lv.degree = n;
  lv.leading = Matrix<T>::identity(n + 1);
  if (n == 0) {
    lv.P = PolyVec<T>(0, {BiPoly<T>::constant(field_traits<T>::one())});
    lv.lambda = moment_block(F, 0, 0, 0);
    lv.upsilon = upsilon_matrix(F, lv.P, 0);
    return lv;
  }

  const std::size_t t = poly_dim(n - 1);
  Matrix<T> rhs(t, n + 1);
  {
    std::size_t r0 = 0;
    for (int r = 0; r < n; ++r) {
      rhs.set_block(r0, 0, -moment_block(F, r, n, n));
      r0 += r + 1;
    }
  }
  Matrix<T> U;
  try {
    U = dense_solve(truncated_moment_matrix(F, n), rhs);
  } catch (const SingularMatrix& e) {
    throw ConstructionFailure("degree " + std::to_string(n) +
                              ": truncated moment matrix is singular (invalid weight or "
                              "moment provider): " +
                              e.what());
  }

  lv.lower.reserve(n);
  {
    std::size_t r0 = 0;
    for (int j = 0; j < n; ++j) {
      lv.lower.push_back(U.block(r0, 0, j + 1, n + 1).transposed());
      r0 += j + 1;
    }
  }

  const auto Xn = monomial_vector(n);
  std::vector<BiPoly<T>> entries(n + 1);
  for (int k = 0; k <= n; ++k) {
    entries[k].add_term(Xn[k], field_traits<T>::one());
    for (int j = 0; j < n; ++j) {
      const auto Xj = monomial_vector(j);
      for (int u = 0; u <= j; ++u) entries[k].add_term(Xj[u], lv.lower[j](k, u));
    }
  }
  lv.P = PolyVec<T>(n, std::move(entries));

  lv.lambda = moment_block(F, n, n, n);
  for (int j = 0; j < n; ++j) lv.lambda += moment_block(F, n, j, n) * lv.lower[j].transposed();
  lv.upsilon = upsilon_matrix(F, lv.P, n);
  return lv;
}

/// Entry P_{n-k,k} by the bordered-determinant formula of the construction
/// theorem, evaluated as a linear solve against Mhat_n (Cramer route).
template <class T>
BiPoly<T> build_level_determinant(const MomentFunctional<T>& F, int n, int k) {
  if (k < 0 || k > n) throw Error("build_level_determinant: k out of range");
  if (n == 0) return BiPoly<T>::constant(field_traits<T>::one());
  const std::size_t t = poly_dim(n - 1);
  Matrix<T> b(t, 1);
  {
    std::size_t r0 = 0;
    for (int r = 0; r < n; ++r) {
      b.set_block(r0, 0, moment_column(F, r, n, k, n));
      r0 += r + 1;
    }
  }
  Matrix<T> y;
  try {
    y = dense_solve(truncated_moment_matrix(F, n), b);
  } catch (const SingularMatrix& e) {
    throw ConstructionFailure(std::string("determinant route: singular system: ") + e.what());
  }
  BiPoly<T> p = BiPoly<T>::monomial({n - k, k});
  std::size_t r0 = 0;
  for (int r = 0; r < n; ++r) {
    const auto Xr = monomial_vector(r);
    for (int u = 0; u <= r; ++u) p.add_term(Xr[u], -y(r0 + u, 0));
    r0 += r + 1;
  }
  return p;
}

/// Max |<monomial, entry>_n| over all monomials of degree < n and all
/// entries of P; exactly zero in exact arithmetic by construction.
template <class T>
T verify_orthogonality(const MomentFunctional<T>& F, const VopsLevel<T>& lv) {
  T worst = field_traits<T>::zero();
  BigFloat worst_mag(0);
  for (int m = 0; m < lv.degree; ++m) {
    for (const auto& mono : monomial_vector(m)) {
      for (std::size_t v = 0; v < lv.P.size(); ++v) {
        T r = vip(F, mono, lv.P[v], lv.degree);
        BigFloat mag;
        if constexpr (field_traits<T>::exact)
          mag = BigFloat(abs_value(r));
        else
          mag = abs(r);
        if (mag > worst_mag) {
          worst_mag = mag;
          worst = std::move(r);
        }
      }
    }
  }
  return worst;
}

/// Incrementally built levels 0..n over one moment functional.
template <class T>
class LevelCache {
 public:
  explicit LevelCache(const MomentFunctional<T>& F) : F_(F) {}

  const VopsLevel<T>& level(int n) {
    ensure(n);
    return levels_[n];
  }
  void ensure(int n) {
    while (static_cast<int>(levels_.size()) <= n)
      levels_.push_back(build_level(F_, static_cast<int>(levels_.size())));
  }
  const MomentFunctional<T>& functional() const { return F_; }
  int built_through() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<VopsLevel<T>>& all() const { return levels_; }

 private:
  const MomentFunctional<T>& F_;
  std::vector<VopsLevel<T>> levels_;
};

}  // namespace vopskit
