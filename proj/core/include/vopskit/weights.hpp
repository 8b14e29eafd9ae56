#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vopskit/moments.hpp"
#include "vopskit/quadrature.hpp"
#include "vopskit/scalar.hpp"
#include "vopskit/univariate.hpp"

namespace vopskit {

// ---------------------------------------------------------------------------
// Weight specifications (the CLI parses JSON straight into these).
// ---------------------------------------------------------------------------

/// W = 1/sqrt((x1-a)(b-x1)) * 1/sqrt((x2-c)(d-x2)) on (a,b) x (c,d).
struct ProductChebyshevSpec {
  Rational a, b, c, d;
};

/// W = tau (x1-a)^alpha (x2 - c(b-x1))^beta (d(b-x1) - x2)^gamma on the
/// triangle {a < x1 < b, c(b-x1) < x2 < d(b-x1)}.
struct TriangleKoornwinderSpec {
  long alpha = 0, beta = 0, gamma = 0;
  Rational a, b, c, d;
  Rational tau = 1;
};

/// W = (x1-a)^alpha (x2-a)^beta (a+b-x1-x2)^gamma on the shifted simplex.
struct ShiftedSimplexSpec {
  long alpha = 0, beta = 0, gamma = 0;
  Rational a, b;
};

/// Pointwise weight with an x1-interval and x2 boundary functions.
struct GenericQuadratureSpec {
  NestedQuadrature::Weight2D weight;
  Rational a, b;
  NestedQuadrature::Boundary lower, upper;
};

using WeightSpec =
    std::variant<ProductChebyshevSpec, TriangleKoornwinderSpec, ShiftedSimplexSpec,
                 GenericQuadratureSpec>;

// ---------------------------------------------------------------------------
// Shifted simplex moments: exact Dirichlet integrals for nonnegative indices,
// iterated quadrature for negative ones (float backend only).
// ---------------------------------------------------------------------------

namespace detail {

inline Rational dirichlet_integral(long p, long q, long g, const Rational& S) {
  // int_{u,v>=0, u+v<=S} u^p v^q (S-u-v)^g du dv = S^{p+q+g+2} p! q! g! / (p+q+g+2)!
  Integer num = 1;
  for (long t = 2; t <= p; ++t) num *= t;
  for (long t = 2; t <= q; ++t) num *= t;
  for (long t = 2; t <= g; ++t) num *= t;
  Integer den = 1;
  for (long t = 2; t <= p + q + g + 2; ++t) den *= t;
  return pow_q(S, p + q + g + 2) * Rational(num) / Rational(den);
}

}  // namespace detail

/// Exact rational moment of the shifted simplex weight, k, m >= 0.
inline Rational simplex_moment_exact(long alpha, long beta, long gamma, const Rational& a,
                                     const Rational& b, long k, long m) {
  if (alpha < 0 || beta < 0 || gamma < 0) throw Error("simplex exponents must be >= 0");
  if (k < 0 || m < 0) throw Error("simplex_moment_exact: negative index needs quadrature");
  const Rational S = b - a;
  Rational acc = 0;
  for (long p = 0; p <= k; ++p)
    for (long q = 0; q <= m; ++q)
      acc += detail::binomial_q(k, p) * detail::pow_q(a, k - p) * detail::binomial_q(m, q) *
             detail::pow_q(a, m - q) * detail::dirichlet_integral(alpha + p, beta + q, gamma, S);
  return acc;
}

template <class T>
class ShiftedSimplexMoments final : public MomentFunctional<T> {
 public:
  ShiftedSimplexMoments(ShiftedSimplexSpec spec, long window, QuadratureConfig cfg = {})
      : MomentFunctional<T>(window, "shifted-simplex"), spec_(std::move(spec)) {
    if (!(0 < spec_.a && spec_.a < spec_.b)) throw Error("simplex requires 0 < a < b");
    if constexpr (!field_traits<T>::exact) {
      const BigFloat a(spec_.a), b(spec_.b), sum(spec_.a + spec_.b);
      const long al = spec_.alpha, be = spec_.beta, ga = spec_.gamma;
      quad_ = std::make_unique<NestedQuadrature>(
          [a, sum, al, be, ga](const BigFloat& x1, const BigFloat& x2) {
            return pow(x1 - a, al) * pow(x2 - a, be) * pow(sum - x1 - x2, ga);
          },
          a, b, [a](const BigFloat&) { return a; },
          [sum](const BigFloat& x1) { return sum - x1; }, window, cfg);
    }
  }

 protected:
  T mu_impl(long k, long m) const override {
    if (k >= 0 && m >= 0)
      return scalar_from_rational<T>(
          simplex_moment_exact(spec_.alpha, spec_.beta, spec_.gamma, spec_.a, spec_.b, k, m));
    if constexpr (field_traits<T>::exact) {
      throw MomentWindowExceeded(
          "shifted simplex: negative moment indices require the float backend");
    } else {
      return quad_->moment(k, m);
    }
  }

 private:
  ShiftedSimplexSpec spec_;
  std::unique_ptr<NestedQuadrature> quad_;
};

/// Generic nested-quadrature moments (float backend only).
class QuadratureMoments final : public MomentFunctional<BigFloat> {
 public:
  QuadratureMoments(GenericQuadratureSpec spec, long window, QuadratureConfig cfg = {},
                    std::string name = "quadrature")
      : MomentFunctional<BigFloat>(window, std::move(name)),
        quad_(std::move(spec.weight), BigFloat(spec.a), BigFloat(spec.b), std::move(spec.lower),
              std::move(spec.upper), window, cfg) {}

  const NestedQuadrature& engine() const { return quad_; }

 protected:
  BigFloat mu_impl(long k, long m) const override { return quad_.moment(k, m); }

 private:
  NestedQuadrature quad_;
};

/// The bivariate weight induced by a triangle spec, as a pointwise evaluator
/// plus boundaries. rho = b - x1 for this family, so the (b-x1) powers fold
/// exactly and nothing singular is ever evaluated.
inline GenericQuadratureSpec triangle_quadrature_spec(const TriangleKoornwinderSpec& s) {
  GenericQuadratureSpec g;
  g.a = s.a;
  g.b = s.b;
  const BigFloat a(s.a), b(s.b), c(s.c), d(s.d), tau(s.tau);
  const long al = s.alpha, be = s.beta, ga = s.gamma;
  g.weight = [a, b, c, d, tau, al, be, ga](const BigFloat& x1, const BigFloat& x2) {
    const BigFloat rho = b - x1;
    return tau * pow(x1 - a, al) * pow(x2 - c * rho, be) * pow(d * rho - x2, ga);
  };
  g.lower = [b, c](const BigFloat& x1) { return c * (b - x1); };
  g.upper = [b, d](const BigFloat& x1) { return d * (b - x1); };
  return g;
}

// ---------------------------------------------------------------------------
// Factory: moment functional for a weight spec at the requested window.
// ---------------------------------------------------------------------------
template <class T>
std::shared_ptr<const MomentFunctional<T>> make_moment_functional(const WeightSpec& spec,
                                                                  long window,
                                                                  QuadratureConfig cfg = {}) {
  if (const auto* p = std::get_if<ProductChebyshevSpec>(&spec)) {
    if (!(0 < p->a && p->a < p->b && 0 < p->c && p->c < p->d))
      throw Error("product-chebyshev requires 0 < a < b and 0 < c < d");
    auto nu1 = std::make_shared<ArcsineMoments<T>>(p->a, p->b, window);
    auto nu2 = std::make_shared<ArcsineMoments<T>>(p->c, p->d, window);
    return std::make_shared<ProductMoments<T>>(std::move(nu1), std::move(nu2));
  }
  if (const auto* s = std::get_if<ShiftedSimplexSpec>(&spec))
    return std::make_shared<ShiftedSimplexMoments<T>>(*s, window, cfg);
  if constexpr (field_traits<T>::exact) {
    throw Error("this weight family has no exact moment backend; use floats");
  } else {
    if (const auto* t = std::get_if<TriangleKoornwinderSpec>(&spec)) {
      if (!(0 < t->a && t->a < t->b && 0 < t->c && t->c < t->d))
        throw Error("triangle-koornwinder requires 0 < a < b and 0 < c < d");
      return std::make_shared<QuadratureMoments>(triangle_quadrature_spec(*t), window, cfg,
                                                 "triangle-koornwinder");
    }
    const auto& g = std::get<GenericQuadratureSpec>(spec);
    return std::make_shared<QuadratureMoments>(g, window, cfg);
  }
}

}  // namespace vopskit
