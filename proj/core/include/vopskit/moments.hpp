#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "vopskit/bipoly.hpp"
#include "vopskit/matrix.hpp"
#include "vopskit/scalar.hpp"

namespace vopskit {

/// Provider of bivariate moments mu_{k,m} = integral of x1^k x2^m W over the
/// domain, for integer (possibly negative) indices inside a declared window.
/// Values are memoized; concurrent mu() calls on one instance are safe.
template <class T>
class MomentFunctional {
 public:
  virtual ~MomentFunctional() = default;

  T mu(long k, long m) const {
    if (std::abs(k) > window_ || std::abs(m) > window_)
      throw MomentWindowExceeded(name_ + ": index (" + std::to_string(k) + "," +
                                 std::to_string(m) + ") outside window " +
                                 std::to_string(window_));
    {
      std::scoped_lock lock(mutex_);
      auto it = cache_.find({k, m});
      if (it != cache_.end()) return it->second;
    }
    T value = mu_impl(k, m);
    std::scoped_lock lock(mutex_);
    return cache_.emplace(std::make_pair(k, m), std::move(value)).first->second;
  }

  long window() const { return window_; }
  const std::string& name() const { return name_; }

 protected:
  MomentFunctional(long window, std::string name) : window_(window), name_(std::move(name)) {}
  virtual T mu_impl(long k, long m) const = 0;

 private:
  long window_;
  std::string name_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<long, long>, T> cache_;
};

/// mu^{(n)}_{k,m} = mu_{k-n, m-n}: the moments of the varying weight W_n.
template <class T>
T varying_moment(const MomentFunctional<T>& F, long k, long m, int n) {
  return F.mu(k - n, m - n);
}

/// VIP of two monomials with (possibly negative) exponent pairs.
template <class T>
T vip(const MomentFunctional<T>& F, const MultiIndex& a, const MultiIndex& b, int n) {
  return F.mu(a.i + b.i - n, a.j + b.j - n);
}

/// VIP of a (possibly negative-exponent) monomial against a polynomial.
template <class T>
T vip(const MomentFunctional<T>& F, const MultiIndex& a, const BiPoly<T>& g, int n) {
  T acc = field_traits<T>::zero();
  for (const auto& [m, c] : g.terms()) acc += c * vip(F, a, m, n);
  return acc;
}

/// <f, g>_n = sum over term pairs of f_ij g_kl mu_{i+k-n, j+l-n}.
template <class T>
T vip(const MomentFunctional<T>& F, const BiPoly<T>& f, const BiPoly<T>& g, int n) {
  T acc = field_traits<T>::zero();
  for (const auto& [mf, cf] : f.terms())
    for (const auto& [mg, cg] : g.terms()) acc += cf * cg * vip(F, mf, mg, n);
  return acc;
}

/// Moment block M^{(n)}_{r,s} = <X_r, X_s^T>_n of size (r+1) x (s+1).
template <class T>
Matrix<T> moment_block(const MomentFunctional<T>& F, int r, int s, int n) {
  const auto Xr = monomial_vector(r);
  const auto Xs = monomial_vector(s);
  Matrix<T> M(r + 1, s + 1);
  for (int u = 0; u <= r; ++u)
    for (int v = 0; v <= s; ++v) M(u, v) = vip(F, Xr[u], Xs[v], n);
  return M;
}

/// Column m^{(n)}_{r,s,k} = <X_r, x1^{s-k} x2^k>_n.
template <class T>
Matrix<T> moment_column(const MomentFunctional<T>& F, int r, int s, int k, int n) {
  const auto Xr = monomial_vector(r);
  Matrix<T> col(r + 1, 1);
  const MultiIndex mono{s - k, k};
  for (int u = 0; u <= r; ++u) col(u, 0) = vip(F, Xr[u], mono, n);
  return col;
}

/// Block moment matrix M_n of size t_n x t_n.
template <class T>
Matrix<T> moment_matrix(const MomentFunctional<T>& F, int n) {
  const std::size_t t = poly_dim(n);
  Matrix<T> M(t, t);
  std::size_t r0 = 0;
  for (int r = 0; r <= n; ++r) {
    std::size_t c0 = 0;
    for (int s = 0; s <= n; ++s) {
      M.set_block(r0, c0, moment_block(F, r, s, n));
      c0 += s + 1;
    }
    r0 += r + 1;
  }
  return M;
}

/// M_n with the last block row and column deleted (size t_{n-1} x t_{n-1}).
template <class T>
Matrix<T> truncated_moment_matrix(const MomentFunctional<T>& F, int n) {
  if (n < 1) throw Error("truncated_moment_matrix: requires n >= 1");
  const std::size_t t = poly_dim(n - 1);
  Matrix<T> M(t, t);
  std::size_t r0 = 0;
  for (int r = 0; r < n; ++r) {
    std::size_t c0 = 0;
    for (int s = 0; s < n; ++s) {
      M.set_block(r0, c0, moment_block(F, r, s, n));
      c0 += s + 1;
    }
    r0 += r + 1;
  }
  return M;
}

// ---------------------------------------------------------------------------
// Generic providers
// ---------------------------------------------------------------------------

/// Univariate moment provider nu(j) over a validity window, memoized.
template <class T>
class UniMoments {
 public:
  virtual ~UniMoments() = default;

  T nu(long j) const {
    if (std::abs(j) > window_)
      throw MomentWindowExceeded(name_ + ": index " + std::to_string(j) + " outside window");
    {
      std::scoped_lock lock(mutex_);
      auto it = cache_.find(j);
      if (it != cache_.end()) return it->second;
    }
    T value = nu_impl(j);
    std::scoped_lock lock(mutex_);
    return cache_.emplace(j, std::move(value)).first->second;
  }

  long window() const { return window_; }

 protected:
  UniMoments(long window, std::string name) : window_(window), name_(std::move(name)) {}
  virtual T nu_impl(long j) const = 0;

 private:
  long window_;
  std::string name_;
  mutable std::mutex mutex_;
  mutable std::map<long, T> cache_;
};

/// mu_{k,m} = nu1(k) * nu2(m) for a product weight W = w1(x1) w2(x2).
template <class T>
class ProductMoments final : public MomentFunctional<T> {
 public:
  ProductMoments(std::shared_ptr<const UniMoments<T>> nu1,
                 std::shared_ptr<const UniMoments<T>> nu2)
      : MomentFunctional<T>((std::min)(nu1->window(), nu2->window()), "product"),
        nu1_(std::move(nu1)),
        nu2_(std::move(nu2)) {}

 protected:
  T mu_impl(long k, long m) const override { return nu1_->nu(k) * nu2_->nu(m); }

 private:
  std::shared_ptr<const UniMoments<T>> nu1_, nu2_;
};

/// Wrapper dividing every moment by mu_{0,0} (the --normalize semantics).
template <class T>
class NormalizedMoments final : public MomentFunctional<T> {
 public:
  explicit NormalizedMoments(std::shared_ptr<const MomentFunctional<T>> base)
      : MomentFunctional<T>(base->window(), base->name() + "/normalized"),
        base_(std::move(base)),
        mu00_(base_->mu(0, 0)) {}

 protected:
  T mu_impl(long k, long m) const override { return base_->mu(k, m) / mu00_; }

 private:
  std::shared_ptr<const MomentFunctional<T>> base_;
  T mu00_;
};

/// Test-support wrapper: adds a fixed offset to one moment entry.
template <class T>
class PerturbedMoments final : public MomentFunctional<T> {
 public:
  PerturbedMoments(std::shared_ptr<const MomentFunctional<T>> base, long k, long m, T delta)
      : MomentFunctional<T>(base->window(), base->name() + "/perturbed"),
        base_(std::move(base)),
        k_(k),
        m_(m),
        delta_(std::move(delta)) {}

 protected:
  T mu_impl(long k, long m) const override {
    T v = base_->mu(k, m);
    if (k == k_ && m == m_) v += delta_;
    return v;
  }

 private:
  std::shared_ptr<const MomentFunctional<T>> base_;
  long k_, m_;
  T delta_;
};

}  // namespace vopskit
