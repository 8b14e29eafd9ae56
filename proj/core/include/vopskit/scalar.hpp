#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace vopskit {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Arbitrary-precision binary float; precision is process-wide and set in
/// decimal digits via set_float_precision().
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PiExponentMismatch : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
struct MomentWindowExceeded : Error {
  using Error::Error;
};
struct QuadratureDidNotConverge : Error {
  using Error::Error;
};
struct NonIntegrableWeight : Error {
  using Error::Error;
};
struct ConstructionFailure : Error {
  using Error::Error;
};

inline unsigned set_float_precision(unsigned digits10) {
  if (digits10 < 30) throw Error("float precision must be at least 30 decimal digits");
  const unsigned old = BigFloat::default_precision();
  BigFloat::default_precision(digits10);
  return old;
}

inline unsigned float_precision() { return BigFloat::default_precision(); }

/// RAII precision guard for tests and the CLI.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10) : old_(set_float_precision(digits10)) {}
  ~PrecisionScope() { BigFloat::default_precision(old_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned old_;
};

// ---------------------------------------------------------------------------
// PiRational: exact rational scaled by an integer power of pi.
//
// Elements are q * pi^e. Products add exponents; sums are defined only inside
// one grade (adding values of different pi-grade has no exact representation
// here and throws instead of coercing). Zero is canonically grade 0.
// ---------------------------------------------------------------------------
class PiRational {
 public:
  PiRational() = default;
  PiRational(long v) : value_(v) {}  // NOLINT: implicit by design, mirrors int literals
  explicit PiRational(Rational v, int pi_exp = 0) : value_(std::move(v)), pi_exp_(pi_exp) {
    normalize();
  }
  static PiRational ratio(long num, long den) { return PiRational(Rational(num, den)); }
  static PiRational pi(int exp = 1) { return PiRational(Rational(1), exp); }

  const Rational& value() const { return value_; }
  int pi_exp() const { return pi_exp_; }
  bool is_zero() const { return value_ == 0; }
  int sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }

  PiRational operator-() const { return PiRational(-value_, pi_exp_); }

  PiRational& operator+=(const PiRational& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (pi_exp_ != o.pi_exp_)
      throw PiExponentMismatch("cannot add pi^" + std::to_string(pi_exp_) + " and pi^" +
                               std::to_string(o.pi_exp_) + " terms");
    value_ += o.value_;
    normalize();
    return *this;
  }
  PiRational& operator-=(const PiRational& o) { return *this += -o; }
  PiRational& operator*=(const PiRational& o) {
    value_ *= o.value_;
    pi_exp_ += o.pi_exp_;
    normalize();
    return *this;
  }
  PiRational& operator/=(const PiRational& o) {
    if (o.is_zero()) throw Error("division by zero");
    value_ /= o.value_;
    pi_exp_ -= o.pi_exp_;
    normalize();
    return *this;
  }

  friend PiRational operator+(PiRational a, const PiRational& b) { return a += b; }
  friend PiRational operator-(PiRational a, const PiRational& b) { return a -= b; }
  friend PiRational operator*(PiRational a, const PiRational& b) { return a *= b; }
  friend PiRational operator/(PiRational a, const PiRational& b) { return a /= b; }
  friend bool operator==(const PiRational& a, const PiRational& b) {
    return a.value_ == b.value_ && a.pi_exp_ == b.pi_exp_;
  }
  friend bool operator!=(const PiRational& a, const PiRational& b) { return !(a == b); }

 private:
  void normalize() {
    if (value_ == 0) pi_exp_ = 0;
  }

  Rational value_ = 0;
  int pi_exp_ = 0;
};

inline BigFloat pi_value() { return boost::math::constants::pi<BigFloat>(); }

inline BigFloat to_bigfloat(const PiRational& x) {
  BigFloat v(x.value());
  if (x.pi_exp() != 0) v *= pow(pi_value(), x.pi_exp());
  return v;
}

inline BigFloat to_bigfloat(const Rational& x) { return BigFloat(x); }

// ---------------------------------------------------------------------------
// Field traits used by the generic linear algebra and polynomial code.
// ---------------------------------------------------------------------------
template <class T>
struct field_traits;

template <>
struct field_traits<PiRational> {
  static constexpr bool exact = true;
  static PiRational zero() { return PiRational(); }
  static PiRational one() { return PiRational(1); }
  static PiRational from_rational(const Rational& q) { return PiRational(q); }
  static bool is_zero(const PiRational& x) { return x.is_zero(); }
};

template <>
struct field_traits<BigFloat> {
  static constexpr bool exact = false;
  static BigFloat zero() { return BigFloat(0); }
  static BigFloat one() { return BigFloat(1); }
  static BigFloat from_rational(const Rational& q) { return BigFloat(q); }
  static bool is_zero(const BigFloat& x) { return x.is_zero(); }
};

template <class T>
T scalar_from_rational(const Rational& q) {
  return field_traits<T>::from_rational(q);
}

/// |x| as a comparable magnitude; for PiRational the pi-grade is ignored
/// (pi > 0, so the sign and zeroness live entirely in the rational part).
inline BigFloat abs_value(const BigFloat& x) { return abs(x); }
inline Rational abs_value(const PiRational& x) {
  return x.value() < 0 ? Rational(-x.value()) : x.value();
}

}  // namespace vopskit
