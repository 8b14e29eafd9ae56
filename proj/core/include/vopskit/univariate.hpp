#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vopskit/matrix.hpp"
#include "vopskit/moments.hpp"
#include "vopskit/quadrature.hpp"
#include "vopskit/scalar.hpp"

namespace vopskit {

namespace detail {

inline Rational binomial_q(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer num = 1, den = 1;
  for (long t = 0; t < k; ++t) {
    num *= n - t;
    den *= t + 1;
  }
  return Rational(num) / Rational(den);
}

inline Rational pow_q(const Rational& x, long e) {
  Rational r = 1;
  Rational base = e >= 0 ? x : Rational(1) / x;
  for (long t = 0; t < (e >= 0 ? e : -e); ++t) r *= base;
  return r;
}

/// Coefficient list (low to high) of (c0 + c1 x)^e, e >= 0.
inline std::vector<Rational> linear_power(const Rational& c0, const Rational& c1, long e) {
  std::vector<Rational> out(e + 1);
  for (long t = 0; t <= e; ++t) out[t] = binomial_q(e, t) * pow_q(c0, e - t) * pow_q(c1, t);
  return out;
}

inline std::vector<Rational> convolve(const std::vector<Rational>& a,
                                      const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// Exact integral over (a,b) of a polynomial given by coefficients.
inline Rational integrate_poly(const std::vector<Rational>& c, const Rational& a,
                               const Rational& b) {
  Rational acc = 0;
  for (std::size_t d = 0; d < c.size(); ++d)
    acc += c[d] * (pow_q(b, d + 1) - pow_q(a, d + 1)) / Rational(d + 1);
  return acc;
}

/// Exact rational square root, if one exists.
inline bool rational_sqrt(const Rational& x, Rational& out) {
  if (x < 0) return false;
  const Integer num = numerator(x), den = denominator(x);
  const Integer rn = sqrt(num), rd = sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  out = Rational(rn) / Rational(rd);
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------
template <class T>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : field_traits<T>::zero(); }
  bool is_monic() const { return !c_.empty() && c_.back() == field_traits<T>::one(); }

  T eval(const T& x) const {
    T acc = field_traits<T>::zero();
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  /// Embed as a bivariate polynomial in x1 (axis 1) or x2 (axis 2).
  BiPoly<T> to_bipoly(int axis) const {
    BiPoly<T> p;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      MultiIndex m = axis == 1 ? MultiIndex{static_cast<long>(k), 0}
                               : MultiIndex{0, static_cast<long>(k)};
      p.add_term(m, c_[k]);
    }
    return p;
  }

 private:
  void trim() {
    while (!c_.empty() && field_traits<T>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

/// Monic orthogonal polynomial of degree m from a moment sequence: solves the
/// shifted-Hankel system sum_i c_i nu(i+l) = -nu(m+l), l = 0..m-1.
template <class T>
UniPoly<T> monic_uops(const UniMoments<T>& nu, int m) {
  std::vector<T> c(m + 1, field_traits<T>::zero());
  c[m] = field_traits<T>::one();
  if (m > 0) {
    Matrix<T> H(m, m), rhs(m, 1);
    for (int l = 0; l < m; ++l) {
      for (int i = 0; i < m; ++i) H(l, i) = nu.nu(i + l);
      rhs(l, 0) = -nu.nu(m + l);
    }
    Matrix<T> sol = dense_solve(H, rhs);
    for (int i = 0; i < m; ++i) c[i] = sol(i, 0);
  }
  return UniPoly<T>(std::move(c));
}

// ---------------------------------------------------------------------------
// Arcsine-type weight w(t) = 1/sqrt((t-a)(b-t)) on (a,b), 0 < a < b.
//
// mu_j for j >= 0 has the closed form pi * E[((a+b)/2 + ((b-a)/2) X)^j] with
// E[X^{2i}] = C(2i,i)/4^i; negative indices come from the reflection identity
// mu_{-(k+1)} = mu_k / beta^{2k+1}, beta = sqrt(ab). The exact backend
// requires ab to be a perfect rational square.
// ---------------------------------------------------------------------------
template <class T>
class ArcsineMoments final : public UniMoments<T> {
 public:
  ArcsineMoments(Rational a, Rational b, long window)
      : UniMoments<T>(window, "arcsine"), a_(std::move(a)), b_(std::move(b)) {
    if (!(0 < a_ && a_ < b_)) throw Error("arcsine weight requires 0 < a < b");
    has_rational_beta_ = detail::rational_sqrt(a_ * b_, beta_);
    if constexpr (field_traits<T>::exact) {
      if (!has_rational_beta_)
        throw Error("arcsine: sqrt(ab) irrational, negative moments need the float backend");
    }
  }

  /// Rational part of mu_j / pi.
  Rational moment_over_pi(long j) const {
    if (j >= 0) {
      const Rational mid = (a_ + b_) / 2, rad = (b_ - a_) / 2;
      Rational acc = 0;
      for (long i = 0; 2 * i <= j; ++i)
        acc += detail::binomial_q(j, 2 * i) * detail::pow_q(mid, j - 2 * i) *
               detail::pow_q(rad, 2 * i) * detail::binomial_q(2 * i, i) /
               detail::pow_q(Rational(4), i);
      return acc;
    }
    if (!has_rational_beta_) throw Error("arcsine: irrational beta in exact path");
    const long k = -j - 1;  // mu_{-(k+1)} = mu_k / beta^{2k+1}
    return moment_over_pi(k) / detail::pow_q(beta_, 2 * k + 1);
  }

 protected:
  T nu_impl(long j) const override {
    if constexpr (field_traits<T>::exact) {
      return PiRational(moment_over_pi(j), 1);
    } else {
      if (has_rational_beta_ || j >= 0) return BigFloat(moment_over_pi(j)) * pi_value();
      const long k = -j - 1;
      const BigFloat beta = sqrt(BigFloat(a_ * b_));
      return BigFloat(moment_over_pi(k)) * pi_value() / pow(beta, 2 * k + 1);
    }
  }

 private:
  Rational a_, b_, beta_;
  bool has_rational_beta_ = false;
};

// ---------------------------------------------------------------------------
// Modified Jacobi-type weight (x-a)^A (b-x)^B rho(x)^P / x^n on (a,b) with
// integer exponents and rho of degree at most one. A rho vanishing at an
// endpoint is folded into that endpoint factor; the net endpoint exponents
// must come out nonnegative or the weight is not integrable.
// ---------------------------------------------------------------------------
template <class T>
class ModifiedJacobiMoments final : public UniMoments<T> {
 public:
  struct LinearFactor {
    Rational c0, c1;  // c0 + c1 x
  };

  ModifiedJacobiMoments(Rational a, Rational b, long A, long B, LinearFactor rho, long P,
                        long divisor_power, long window)
      : UniMoments<T>(window, "modified-jacobi"),
        a_(std::move(a)),
        b_(std::move(b)),
        expA_(A),
        expB_(B),
        rho_(std::move(rho)),
        rho_pow_(P),
        n_(divisor_power) {
    if (!(0 < a_ && a_ < b_)) throw Error("modified weight requires 0 < a < b interval");
    if (rho_pow_ != 0) {
      const Rational at_a = rho_.c0 + rho_.c1 * a_;
      const Rational at_b = rho_.c0 + rho_.c1 * b_;
      if (at_b == 0) {  // rho = -c1 (b - x)
        scale_ = detail::pow_q(-rho_.c1, rho_pow_);
        expB_ += rho_pow_;
        rho_pow_ = 0;
      } else if (at_a == 0) {  // rho = c1 (x - a)
        scale_ = detail::pow_q(rho_.c1, rho_pow_);
        expA_ += rho_pow_;
        rho_pow_ = 0;
      } else if (at_a <= 0 || at_b <= 0) {
        throw Error("rho must be positive on (a,b)");
      }
    }
    if (expA_ < 0 || expB_ < 0)
      throw NonIntegrableWeight("net endpoint exponent negative: (x-a)^" +
                                std::to_string(expA_) + " (b-x)^" + std::to_string(expB_));
  }

  bool exact_at(long j) const { return j - n_ >= 0 && rho_pow_ >= 0; }

  /// Exact rational value, defined when the integrand is a polynomial.
  Rational exact_moment(long j) const {
    if (!exact_at(j)) throw Error("modified weight: moment not exactly integrable");
    auto poly = detail::convolve(detail::linear_power(-a_, 1, expA_),
                                 detail::linear_power(b_, -1, expB_));
    if (rho_pow_ > 0)
      poly = detail::convolve(poly, detail::linear_power(rho_.c0, rho_.c1, rho_pow_));
    std::vector<Rational> xpow(j - n_ + 1, Rational(0));
    xpow.back() = 1;
    poly = detail::convolve(poly, xpow);
    return scale_ * detail::integrate_poly(poly, a_, b_);
  }

 protected:
  T nu_impl(long j) const override {
    if (exact_at(j)) return scalar_from_rational<T>(exact_moment(j));
    if constexpr (field_traits<T>::exact) {
      throw Error("modified weight: negative net powers need the float backend");
    } else {
      const BigFloat a(a_), b(b_), c0(rho_.c0), c1(rho_.c1), scale(scale_);
      const long A = expA_, B = expB_, P = rho_pow_, e = j - n_;
      return scale * integrate_adaptive(
                         [&](const BigFloat& x) {
                           BigFloat v = pow(x, e);
                           if (A != 0) v *= pow(x - a, A);
                           if (B != 0) v *= pow(b - x, B);
                           if (P != 0) v *= pow(c0 + c1 * x, P);
                           return v;
                         },
                         a, b, cfg_);
    }
  }

 private:
  Rational a_, b_;
  long expA_, expB_;
  LinearFactor rho_;
  long rho_pow_;
  long n_;
  Rational scale_ = 1;
  QuadratureConfig cfg_{};
};

/// Index-shifted view: nu'(j) = base(j + shift). Serves w/x^n providers.
template <class T>
class ShiftedUniMoments final : public UniMoments<T> {
 public:
  ShiftedUniMoments(std::shared_ptr<const UniMoments<T>> base, long shift)
      : UniMoments<T>(base->window() - std::abs(shift), "shifted"),
        base_(std::move(base)),
        shift_(shift) {}

 protected:
  T nu_impl(long j) const override { return base_->nu(j + shift_); }

 private:
  std::shared_ptr<const UniMoments<T>> base_;
  long shift_;
};

}  // namespace vopskit
