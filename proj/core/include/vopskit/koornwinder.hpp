#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "vopskit/bipoly.hpp"
#include "vopskit/quadrature.hpp"
#include "vopskit/univariate.hpp"
#include "vopskit/weights.hpp"

namespace vopskit {

/// Construction data for a VOPS built from two univariate weights
///   w1 = (x-a)^alpha (b-x)^(beta+gamma) on (a,b),
///   w2 = (t-c)^beta (d-t)^gamma on (c,d),
/// and a degree-one rho > 0 on the open interval (a,b). The induced bivariate
/// weight is tau * w1(x1) w2(x2/rho(x1)) on {a<x1<b, c rho < x2 < d rho}.
struct KoornwinderSpec {
  long alpha = 0, beta = 0, gamma = 0;
  Rational a, b, c, d;
  Rational rho0, rho1;  // rho(x) = rho0 + rho1 x
  Rational tau = 1;

  Rational rho_at(const Rational& x) const { return rho0 + rho1 * x; }

  void validate() const {
    if (!(0 < a && a < b && 0 < c && c < d))
      throw Error("koornwinder: intervals must satisfy 0 < a < b, 0 < c < d");
    if (rho1 == 0) throw Error("koornwinder: rho must have degree one");
    // positive on the open interval: both endpoint values nonnegative, not both zero
    if (rho_at(a) < 0 || rho_at(b) < 0 || (rho_at(a) == 0 && rho_at(b) == 0))
      throw Error("koornwinder: rho must be positive on (a,b)");
    if (alpha < 0 || beta < 0 || gamma < 0) throw Error("koornwinder: exponents must be >= 0");
  }
};

inline KoornwinderSpec koornwinder_from_triangle(const TriangleKoornwinderSpec& t) {
  KoornwinderSpec s;
  s.alpha = t.alpha;
  s.beta = t.beta;
  s.gamma = t.gamma;
  s.a = t.a;
  s.b = t.b;
  s.c = t.c;
  s.d = t.d;
  s.rho0 = t.b;
  s.rho1 = -1;  // rho = b - x
  s.tau = t.tau;
  s.validate();
  return s;
}

/// Moments of the x1-side modified weight rho^{2k+1} w1 / (rho^n x^n).
template <class T>
std::shared_ptr<const UniMoments<T>> koornwinder_p_moments(const KoornwinderSpec& s, int n,
                                                           int k, long window) {
  return std::make_shared<ModifiedJacobiMoments<T>>(
      s.a, s.b, s.alpha, s.beta + s.gamma,
      typename ModifiedJacobiMoments<T>::LinearFactor{s.rho0, s.rho1}, 2 * k + 1 - n, n,
      window);
}

/// Moments of the t-side modified weight w2 / t^n.
template <class T>
std::shared_ptr<const UniMoments<T>> koornwinder_q_moments(const KoornwinderSpec& s, int n,
                                                           long window) {
  return std::make_shared<ModifiedJacobiMoments<T>>(
      s.c, s.d, s.beta, s.gamma, typename ModifiedJacobiMoments<T>::LinearFactor{0, 1}, 0, n,
      window);
}

/// rho(x1)^k q(x2 / rho(x1)) expanded as a bivariate polynomial:
/// sum_j q_j x2^j rho(x1)^{k-j}. Monic q keeps coefficient 1 on x2^k.
template <class T>
BiPoly<T> homogenize_q(int k, const UniPoly<T>& q, const Rational& rho0, const Rational& rho1) {
  if (q.degree() != k) throw Error("homogenize_q: q must have degree exactly k");
  BiPoly<T> out;
  for (int j = 0; j <= k; ++j) {
    const T qj = q.coeff(j);
    if (field_traits<T>::is_zero(qj)) continue;
    const auto rp = detail::linear_power(rho0, rho1, k - j);
    for (std::size_t i = 0; i < rp.size(); ++i) {
      if (rp[i] == 0) continue;
      out.add_term({static_cast<long>(i), j}, qj * scalar_from_rational<T>(rp[i]));
    }
  }
  return out;
}

/// P_{n-k,k} = p^{(n,k)}_{n-k}(x1) rho(x1)^k q^{(n)}_k(x2/rho(x1)), k = 0..n.
template <class T>
PolyVec<T> build_koornwinder_level(const KoornwinderSpec& s, int n) {
  const long window = 2 * n + 2;
  std::vector<BiPoly<T>> entries(n + 1);
  const auto qmom = koornwinder_q_moments<T>(s, n, window);
  for (int k = 0; k <= n; ++k) {
    const auto pmom = koornwinder_p_moments<T>(s, n, k, window);
    const UniPoly<T> p = monic_uops(*pmom, n - k);
    const UniPoly<T> q = monic_uops(*qmom, k);
    entries[k] = p.to_bipoly(1) * homogenize_q(k, q, s.rho0, s.rho1);
  }
  return PolyVec<T>(n, std::move(entries));
}

/// The two univariate factors of the split orthogonality integral
///   <x1^{m-j} x2^j, P_{n-k,k}>_n
///     = [int x1^{m-j} p^{(n,k)}_{n-k} rho^{j+k+1} w1 / (rho^n x1^n) dx1]
///       * [int t^j q^{(n)}_k w2 / t^n dt].
/// Returned so tests can confirm which factor vanishes. Float backend.
inline std::pair<BigFloat, BigFloat> orthogonality_split_check(const KoornwinderSpec& s, int n,
                                                               int k, int m, int j,
                                                               QuadratureConfig cfg = {}) {
  if (!(m < n && 0 <= j && j <= m)) throw Error("split check: need m < n and 0 <= j <= m");
  const long window = 2 * n + 2;
  const auto pmom = koornwinder_p_moments<BigFloat>(s, n, k, window);
  const auto qmom = koornwinder_q_moments<BigFloat>(s, n, window);
  const UniPoly<BigFloat> p = monic_uops(*pmom, n - k);
  const UniPoly<BigFloat> q = monic_uops(*qmom, k);

  const BigFloat a(s.a), b(s.b), c(s.c), d(s.d);
  const BigFloat r0(s.rho0), r1(s.rho1);
  const long al = s.alpha, bg = s.beta + s.gamma;
  const long rho_pow = j + k + 1 - n;           // net rho power before w1's (b-x) part
  const long be = s.beta, ga = s.gamma;

  // Fold rho into the (b-x) factor when rho vanishes at b (the triangle case),
  // mirroring the exact-integrability analysis of the univariate module.
  const bool fold = (s.rho_at(s.b) == 0);
  const BigFloat fold_scale = fold ? pow(-r1, rho_pow) : BigFloat(1);
  const long bexp = fold ? bg + rho_pow : bg;
  if (bexp < 0) throw NonIntegrableWeight("split check: net endpoint exponent negative");

  const BigFloat first =
      fold_scale * integrate_adaptive(
                       [&](const BigFloat& x) {
                         BigFloat v = pow(x, m - j - n) * p.eval(x);
                         if (al != 0) v *= pow(x - a, al);
                         if (bexp != 0) v *= pow(b - x, bexp);
                         if (!fold && rho_pow != 0) v *= pow(r0 + r1 * x, rho_pow);
                         return v;
                       },
                       a, b, cfg);
  const BigFloat second = integrate_adaptive(
      [&](const BigFloat& t) {
        BigFloat v = pow(t, j - n) * q.eval(t);
        if (be != 0) v *= pow(t - c, be);
        if (ga != 0) v *= pow(d - t, ga);
        return v;
      },
      c, d, cfg);
  return {first, second};
}

/// Product construction for product weights (the rectangle family):
/// P_{n-k,k} = p^{(n)}_{n-k}(x1) q^{(n)}_k(x2) with p, q monic for w1/x1^n,
/// w2/x2^n. Kept separate from the rho-based builder, which requires
/// deg(rho) = 1.
template <class T>
PolyVec<T> build_product_level(std::shared_ptr<const UniMoments<T>> nu1,
                               std::shared_ptr<const UniMoments<T>> nu2, int n) {
  const ShiftedUniMoments<T> shift1(std::move(nu1), -n);
  const ShiftedUniMoments<T> shift2(std::move(nu2), -n);
  std::vector<BiPoly<T>> entries(n + 1);
  for (int k = 0; k <= n; ++k) {
    const UniPoly<T> p = monic_uops(shift1, n - k);
    const UniPoly<T> q = monic_uops(shift2, k);
    entries[k] = p.to_bipoly(1) * q.to_bipoly(2);
  }
  return PolyVec<T>(n, std::move(entries));
}

/// The induced bivariate weight of a Koornwinder spec as a quadrature
/// functional, so the moment route and the product-formula route can be
/// compared from one spec.
inline std::shared_ptr<const MomentFunctional<BigFloat>> koornwinder_moment_functional(
    const KoornwinderSpec& s, long window, QuadratureConfig cfg = {}) {
  s.validate();
  GenericQuadratureSpec g;
  g.a = s.a;
  g.b = s.b;
  const BigFloat a(s.a), b(s.b), c(s.c), d(s.d), r0(s.rho0), r1(s.rho1), tau(s.tau);
  const long al = s.alpha, be = s.beta, ga = s.gamma, bg = s.beta + s.gamma;
  const bool fold = (s.rho_at(s.b) == 0);
  // W = tau w1(x1) w2(x2/rho) = tau (x1-a)^al (b-x1)^bg rho^{-bg}
  //       (x2 - c rho)^be (d rho - x2)^ga
  if (fold) {
    const BigFloat scale = tau * pow(-r1, -bg);
    g.weight = [=](const BigFloat& x1, const BigFloat& x2) {
      const BigFloat rho = r0 + r1 * x1;
      return scale * pow(x1 - a, al) * pow(x2 - c * rho, be) * pow(d * rho - x2, ga);
    };
  } else {
    g.weight = [=](const BigFloat& x1, const BigFloat& x2) {
      const BigFloat rho = r0 + r1 * x1;
      return tau * pow(x1 - a, al) * pow(b - x1, bg) * pow(rho, -bg) *
             pow(x2 - c * rho, be) * pow(d * rho - x2, ga);
    };
  }
  g.lower = [c, r0, r1](const BigFloat& x1) { return c * (r0 + r1 * x1); };
  g.upper = [d, r0, r1](const BigFloat& x1) { return d * (r0 + r1 * x1); };
  return std::make_shared<QuadratureMoments>(std::move(g), window, cfg, "koornwinder-induced");
}

}  // namespace vopskit
