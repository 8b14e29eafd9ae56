#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "vopskit/basis.hpp"
#include "vopskit/scalar.hpp"

namespace vopskit {

/// Dense rectangular matrix over a scalar field T. Row-major, value type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, field_traits<T>::zero()) {}
  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> vals)
      : rows_(rows), cols_(cols), data_(vals) {
    if (data_.size() != rows * cols) throw Error("Matrix: initializer size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = field_traits<T>::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transposed() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("Matrix product: shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (field_traits<T>::is_zero(a(r, k))) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) m(r, c) += a(r, k) * b(k, c);
      }
    return m;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& v : m.data_) v = -v;
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!field_traits<T>::is_zero(v)) return false;
    return true;
  }

  /// Vertical stack (this on top of other).
  Matrix stacked_on(const Matrix& below) const {
    if (cols_ != below.cols_) throw Error("stack: column mismatch");
    Matrix m(rows_ + below.rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < below.rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(rows_ + r, c) = below(r, c);
    return m;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
    Matrix m(nrows, ncols);
    for (std::size_t r = 0; r < nrows; ++r)
      for (std::size_t c = 0; c < ncols; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& blk) {
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c) (*this)(r0 + r, c0 + c) = blk(r, c);
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// Row-selection matrix L_{n,i} of size (n+1) x (n+2):
/// L_{n,1} = [I | 0], L_{n,2} = [0 | I]; realizes x_i X_n = L_{n,i} X_{n+1}.
template <class T>
Matrix<T> shift_matrix(int n, int axis) {
  if (n < 0) throw Error("shift_matrix: negative degree");
  if (axis != 1 && axis != 2) throw Error("shift_matrix: axis must be 1 or 2");
  Matrix<T> L(n + 1, n + 2);
  const std::size_t off = axis == 1 ? 0 : 1;
  for (std::size_t r = 0; r <= static_cast<std::size_t>(n); ++r)
    L(r, r + off) = field_traits<T>::one();
  return L;
}

namespace detail {

// Fraction-free (Bareiss) forward elimination, exact fields. Row swaps on the
// first nonzero pivot; divisions by the previous pivot are exact. Returns the
// sequence of pivots; aug is reduced in place to upper-triangular form.
template <class T>
std::vector<T> bareiss_forward(Matrix<T>& aug, std::size_t n) {
  std::vector<T> pivots;
  T prev = field_traits<T>::one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && field_traits<T>::is_zero(aug(p, k))) ++p;
    if (p == n) throw SingularMatrix("exact elimination: zero pivot column");
    if (p != k)
      for (std::size_t c = 0; c < aug.cols(); ++c) std::swap(aug(p, c), aug(k, c));
    const T pivot = aug(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const T factor = aug(r, k);
      for (std::size_t c = k; c < aug.cols(); ++c)
        aug(r, c) = (aug(r, c) * pivot - factor * aug(k, c)) / prev;
    }
    prev = pivot;
    pivots.push_back(pivot);
  }
  return pivots;
}

template <class T>
Matrix<T> back_substitute(const Matrix<T>& aug, std::size_t n, std::size_t nrhs) {
  Matrix<T> x(n, nrhs);
  for (std::size_t c = 0; c < nrhs; ++c) {
    for (std::size_t rr = n; rr-- > 0;) {
      T acc = aug(rr, n + c);
      for (std::size_t k = rr + 1; k < n; ++k) acc -= aug(rr, k) * x(k, c);
      x(rr, c) = acc / aug(rr, rr);
    }
  }
  return x;
}

inline BigFloat float_pivot_floor(const BigFloat& scale) {
  const long digits = static_cast<long>(float_precision());
  return scale * pow(BigFloat(10), -(digits - 10));
}

}  // namespace detail

/// Solve M X = RHS for square M.
/// Exact backend: fraction-free elimination, exact zero-pivot detection.
/// Float backend: partial pivoting; a pivot below 10^(-precision+10) relative
/// to the largest entry of M is reported as singular.
template <class T>
Matrix<T> dense_solve(const Matrix<T>& M, const Matrix<T>& RHS) {
  if (M.rows() != M.cols()) throw Error("dense_solve: matrix not square");
  if (M.rows() != RHS.rows()) throw Error("dense_solve: RHS row mismatch");
  const std::size_t n = M.rows();
  if (n == 0) return Matrix<T>(0, RHS.cols());

  Matrix<T> aug(n, n + RHS.cols());
  aug.set_block(0, 0, M);
  aug.set_block(0, n, RHS);

  if constexpr (field_traits<T>::exact) {
    detail::bareiss_forward(aug, n);
    return detail::back_substitute(aug, n, RHS.cols());
  } else {
    BigFloat scale(0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) scale = (std::max)(scale, abs(M(r, c)));
    const BigFloat floor = detail::float_pivot_floor(scale);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t r = k + 1; r < n; ++r)
        if (abs(aug(r, k)) > abs(aug(p, k))) p = r;
      if (abs(aug(p, k)) <= floor)
        throw SingularMatrix("float elimination: pivot below threshold");
      if (p != k)
        for (std::size_t c = 0; c < aug.cols(); ++c) std::swap(aug(p, c), aug(k, c));
      for (std::size_t r = k + 1; r < n; ++r) {
        const T factor = aug(r, k) / aug(k, k);
        if (factor.is_zero()) continue;
        for (std::size_t c = k; c < aug.cols(); ++c) aug(r, c) -= factor * aug(k, c);
      }
    }
    return detail::back_substitute(aug, n, RHS.cols());
  }
}

template <class T>
Matrix<T> inverse(const Matrix<T>& M) {
  return dense_solve(M, Matrix<T>::identity(M.rows()));
}

template <class T>
bool is_nonsingular(const Matrix<T>& M) {
  try {
    dense_solve(M, Matrix<T>::identity(M.rows()));
    return true;
  } catch (const SingularMatrix&) {
    return false;
  }
}

/// Values of the leading principal minors det(M[0..k][0..k]), k = 0..n-1,
/// via fraction-free elimination without row swaps (a zero pivot means some
/// leading minor vanishes, reported as SingularMatrix).
template <class T>
std::vector<T> leading_principal_minors(const Matrix<T>& M) {
  if (M.rows() != M.cols()) throw Error("leading_principal_minors: not square");
  const std::size_t n = M.rows();
  Matrix<T> a = M;
  std::vector<T> minors;
  minors.reserve(n);
  if constexpr (field_traits<T>::exact) {
    // Bareiss pivot k equals det of the leading (k+1)x(k+1) block.
    T prev = field_traits<T>::one();
    for (std::size_t k = 0; k < n; ++k) {
      if (field_traits<T>::is_zero(a(k, k)))
        throw SingularMatrix("leading principal minor is zero");
      minors.push_back(a(k, k));
      for (std::size_t r = k + 1; r < n; ++r)
        for (std::size_t c = k + 1; c < n; ++c)
          a(r, c) = (a(r, c) * a(k, k) - a(r, k) * a(k, c)) / prev;
      prev = a(k, k);
    }
  } else {
    T det = field_traits<T>::one();
    for (std::size_t k = 0; k < n; ++k) {
      det *= a(k, k);
      minors.push_back(det);
      for (std::size_t r = k + 1; r < n; ++r) {
        const T factor = a(r, k) / a(k, k);
        for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= factor * a(k, c);
      }
    }
  }
  return minors;
}

/// Max column absolute sum. For the exact backend this is only meaningful on
/// grade-homogeneous matrices; the pi-grade is dropped.
template <class T>
BigFloat one_norm(const Matrix<T>& M) {
  BigFloat best(0);
  for (std::size_t c = 0; c < M.cols(); ++c) {
    BigFloat s(0);
    for (std::size_t r = 0; r < M.rows(); ++r) {
      if constexpr (field_traits<T>::exact)
        s += BigFloat(abs_value(M(r, c)));
      else
        s += abs(M(r, c));
    }
    best = (std::max)(best, s);
  }
  return best;
}

template <class T>
BigFloat max_abs(const Matrix<T>& M) {
  BigFloat best(0);
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = 0; c < M.cols(); ++c) {
      if constexpr (field_traits<T>::exact)
        best = (std::max)(best, BigFloat(abs_value(M(r, c))));
      else
        best = (std::max)(best, BigFloat(abs(M(r, c))));
    }
  return best;
}

}  // namespace vopskit
