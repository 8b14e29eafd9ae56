#pragma once

#include <map>
#include <utility>
#include <vector>

#include "vopskit/basis.hpp"
#include "vopskit/matrix.hpp"
#include "vopskit/scalar.hpp"

namespace vopskit {

/// Sparse bivariate polynomial; no zero coefficients are stored, and the zero
/// polynomial has degree -1.
template <class T>
class BiPoly {
 public:
  using TermMap = std::map<MultiIndex, T, MultiIndexLess>;

  BiPoly() = default;
  static BiPoly constant(T c) {
    BiPoly p;
    p.add_term({0, 0}, std::move(c));
    return p;
  }
  static BiPoly monomial(MultiIndex m, T c = field_traits<T>::one()) {
    if (m.i < 0 || m.j < 0) throw Error("BiPoly: negative exponent");
    BiPoly p;
    p.add_term(m, std::move(c));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  T coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_traits<T>::zero() : it->second;
  }

  void add_term(const MultiIndex& m, const T& c) {
    if (field_traits<T>::is_zero(c)) return;
    if (m.i < 0 || m.j < 0) throw Error("BiPoly: negative exponent");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (field_traits<T>::is_zero(it->second)) terms_.erase(it);
    }
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  BiPoly& operator*=(const T& s) {
    if (field_traits<T>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const T& s) { return a *= s; }
  friend BiPoly operator*(const T& s, BiPoly a) { return a *= s; }
  BiPoly operator-() const {
    BiPoly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly p;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) p.add_term(ma.shifted(mb), ca * cb);
    return p;
  }

  /// Multiply by x1^s.i * x2^s.j (s.i, s.j >= 0).
  BiPoly shifted(const MultiIndex& s) const {
    if (s.i < 0 || s.j < 0) throw Error("BiPoly::shifted: negative shift");
    BiPoly p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m.shifted(s), c);
    return p;
  }

  T eval(const T& x1, const T& x2) const {
    T acc = field_traits<T>::zero();
    for (const auto& [m, c] : terms_) {
      T t = c;
      for (long k = 0; k < m.i; ++k) t *= x1;
      for (long k = 0; k < m.j; ++k) t *= x2;
      acc += t;
    }
    return acc;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

/// Column vector of n+1 polynomials, rows matching the X_n monomial order.
template <class T>
class PolyVec {
 public:
  PolyVec() = default;
  explicit PolyVec(int degree) : degree_(degree), entries_(degree + 1) {}
  PolyVec(int degree, std::vector<BiPoly<T>> entries)
      : degree_(degree), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::size_t>(degree + 1))
      throw Error("PolyVec: entry count must be degree+1");
  }

  int degree() const { return degree_; }
  std::size_t size() const { return entries_.size(); }
  BiPoly<T>& operator[](std::size_t k) { return entries_[k]; }
  const BiPoly<T>& operator[](std::size_t k) const { return entries_[k]; }

  /// Leading coefficient matrix: row k = coefficients of entry k on X_n.
  Matrix<T> leading_matrix() const {
    const auto Xn = monomial_vector(degree_);
    Matrix<T> G(size(), size());
    for (std::size_t k = 0; k < size(); ++k)
      for (std::size_t u = 0; u < Xn.size(); ++u) G(k, u) = entries_[k].coeff(Xn[u]);
    return G;
  }

  friend bool operator==(const PolyVec& a, const PolyVec& b) {
    return a.degree_ == b.degree_ && a.entries_ == b.entries_;
  }

 private:
  int degree_ = -1;
  std::vector<BiPoly<T>> entries_;
};

/// M * v for a coefficient matrix M with v.size() columns; returns the list
/// of row combinations (not necessarily a degree-homogeneous PolyVec).
template <class T>
std::vector<BiPoly<T>> apply(const Matrix<T>& M, const std::vector<BiPoly<T>>& v) {
  if (M.cols() != v.size()) throw Error("apply: shape mismatch");
  std::vector<BiPoly<T>> out(M.rows());
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = 0; c < M.cols(); ++c) {
      if (field_traits<T>::is_zero(M(r, c))) continue;
      out[r] += v[c] * M(r, c);
    }
  return out;
}

template <class T>
std::vector<BiPoly<T>> apply(const Matrix<T>& M, const PolyVec<T>& v) {
  std::vector<BiPoly<T>> entries(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) entries[k] = v[k];
  return apply(M, entries);
}

}  // namespace vopskit
