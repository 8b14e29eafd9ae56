#include <doctest.h>

#include <memory>
#include <random>

#include "vopskit/moments.hpp"
#include "vopskit/quadrature.hpp"
#include "vopskit/univariate.hpp"
#include "vopskit/weights.hpp"

using namespace vopskit;

namespace {
PrecisionScope precision_guard(50);

PiRational rq(long n, long d = 1) { return PiRational(Rational(n, d)); }

std::shared_ptr<const MomentFunctional<PiRational>> rectangle_exact(long window = 12) {
  return make_moment_functional<PiRational>(
      ProductChebyshevSpec{Rational(1, 4), Rational(4), Rational(4, 9), Rational(9)}, window);
}

BigFloat tol(int digits_off) {
  return pow(BigFloat(10), -static_cast<long>(float_precision()) + digits_off);
}
}  // namespace

TEST_CASE("arcsine moments: closed form against the sine-substitution quadrature oracle") {
  // oracle: int_a^b x^k / sqrt((x-a)(b-x)) dx = int_{-pi/2}^{pi/2} (m + r sin t)^k dt
  const Rational a(1, 4), b(4);
  ArcsineMoments<BigFloat> nu(a, b, 8);
  const BigFloat m = BigFloat(a + b) / 2, r = BigFloat(b - a) / 2;
  const BigFloat half_pi = pi_value() / 2;
  for (long k = -4; k <= 4; ++k) {
    const BigFloat oracle = integrate_adaptive(
        [&](const BigFloat& t) { return pow(m + r * sin(t), k); }, -half_pi, half_pi);
    CHECK(abs(nu.nu(k) - oracle) <= tol(10) * abs(oracle));
  }
  CHECK(abs(ArcsineMoments<BigFloat>(a, b, 2).nu(0) - pi_value()) <= tol(10));
}

TEST_CASE("arcsine moments: exact values and reflection") {
  ArcsineMoments<PiRational> nu1(Rational(1, 4), Rational(4), 10);
  CHECK(nu1.nu(0) == PiRational::pi());                         // mu_0 = pi
  CHECK(nu1.nu(1) == PiRational(Rational(17, 8), 1));           // mean (a+b)/2
  CHECK(nu1.nu(-1) == PiRational::pi());                        // beta = 1: mu_{-1} = mu_0
  ArcsineMoments<PiRational> nu2(Rational(4, 9), Rational(9), 10);
  CHECK(nu2.nu(1) == PiRational(Rational(85, 18), 1));
  CHECK(nu2.nu(-1) == PiRational(Rational(1, 2), 1));           // mu_0 / beta, beta = 2

  // irrational beta is rejected by the exact backend
  CHECK_THROWS_AS((ArcsineMoments<PiRational>(Rational(1), Rational(2), 4)), Error);
  // ... but served by the float backend
  ArcsineMoments<BigFloat> nuf(Rational(1), Rational(2), 4);
  const BigFloat beta = sqrt(BigFloat(2));
  CHECK(abs(nuf.nu(-1) - nuf.nu(0) / beta) <= tol(10));
}

TEST_CASE("rectangle product moments and the reflection identity") {
  auto F = rectangle_exact();
  CHECK(F->mu(0, 0) == PiRational(Rational(1), 2));             // pi^2
  CHECK(F->mu(1, 0) == PiRational(Rational(17, 8), 2));         // pi^2 * 17/8
  CHECK(F->mu(1, 1) == F->mu(1, 1));                            // memo determinism
  // mu_{r,s} = b1^{2r+1} b2^{2s+1} mu_{-(r+1),-(s+1)}, b1 = 1, b2 = 2
  for (long r = -4; r <= 3; ++r)
    for (long s = -4; s <= 3; ++s) {
      const PiRational rhs =
          PiRational(detail::pow_q(Rational(2), 2 * s + 1)) * F->mu(-(r + 1), -(s + 1));
      CHECK(F->mu(r, s) == rhs);
    }
  CHECK_THROWS_AS(F->mu(13, 0), MomentWindowExceeded);
}

TEST_CASE("product moments symmetry when both factors coincide") {
  auto nu = std::make_shared<ArcsineMoments<PiRational>>(Rational(1, 4), Rational(4), 6);
  ProductMoments<PiRational> F(nu, nu);
  for (long k = -2; k <= 2; ++k)
    for (long m = -2; m <= 2; ++m) CHECK(F.mu(k, m) == F.mu(m, k));
}

TEST_CASE("shifted simplex exact moments (Dirichlet route)") {
  CHECK(simplex_moment_exact(0, 0, 0, Rational(1), Rational(2), 0, 0) == Rational(1, 2));
  CHECK(simplex_moment_exact(3, 2, 1, Rational(1), Rational(2), 0, 0) == Rational(1, 3360));
  CHECK(simplex_moment_exact(3, 2, 1, Rational(1), Rational(2), 1, 0) == Rational(13, 30240));
  CHECK(simplex_moment_exact(3, 2, 1, Rational(1), Rational(2), 0, 1) == Rational(1, 2520));
  CHECK_THROWS_AS(simplex_moment_exact(3, 2, 1, Rational(1), Rational(2), -1, 0), Error);
}

TEST_CASE("simplex: exact backend serves only nonnegative indices") {
  ShiftedSimplexMoments<PiRational> F({3, 2, 1, Rational(1), Rational(2)}, 6);
  CHECK(F.mu(2, 3) ==
        PiRational(simplex_moment_exact(3, 2, 1, Rational(1), Rational(2), 2, 3)));
  CHECK_THROWS_AS(F.mu(-1, 0), MomentWindowExceeded);
}

TEST_CASE("simplex: quadrature agrees with the exact Dirichlet values") {
  ShiftedSimplexSpec spec{3, 2, 1, Rational(1), Rational(2)};
  ShiftedSimplexMoments<BigFloat> F(spec, 10);
  // drive the same weight through the generic quadrature functional
  GenericQuadratureSpec g;
  g.a = spec.a;
  g.b = spec.b;
  g.weight = [](const BigFloat& x1, const BigFloat& x2) {
    return pow(x1 - 1, 3) * pow(x2 - 1, 2) * (3 - x1 - x2);
  };
  g.lower = [](const BigFloat&) { return BigFloat(1); };
  g.upper = [](const BigFloat& x1) { return BigFloat(3) - x1; };
  QuadratureMoments Q(std::move(g), 10);
  for (long k : {0L, 1L, 4L})
    for (long m : {0L, 2L, 4L}) {
      const BigFloat exact(simplex_moment_exact(3, 2, 1, spec.a, spec.b, k, m));
      CHECK(abs(Q.mu(k, m) - exact) <= tol(10) * abs(exact));
    }
  // negative indices take the quadrature path inside the simplex functional itself
  CHECK(abs(F.mu(-1, -2) - Q.mu(-1, -2)) <= tol(10) * abs(Q.mu(-1, -2)));
}

TEST_CASE("simplex negative moment against a dyadically refined midpoint oracle") {
  // independent low-order oracle: composite midpoint in both directions with
  // two Richardson sweeps across three dyadic levels
  auto midpoint2d = [](int panels) {
    const BigFloat h1 = BigFloat(1) / panels;
    BigFloat acc(0);
    for (int i = 0; i < panels; ++i) {
      const BigFloat x1 = 1 + (BigFloat(i) + BigFloat(1) / 2) * h1;
      const BigFloat width = (BigFloat(3) - x1) - 1;
      const BigFloat h2 = width / panels;
      BigFloat inner(0);
      for (int j = 0; j < panels; ++j) {
        const BigFloat x2 = 1 + (BigFloat(j) + BigFloat(1) / 2) * h2;
        inner += pow(x1, -1) * pow(x2, -2) * pow(x1 - 1, 3) * pow(x2 - 1, 2) * (3 - x1 - x2);
      }
      acc += inner * h2 * h1;
    }
    return acc;
  };
  const BigFloat i1 = midpoint2d(128), i2 = midpoint2d(256), i3 = midpoint2d(512);
  const BigFloat r1 = (4 * i2 - i1) / 3, r2 = (4 * i3 - i2) / 3;
  const BigFloat oracle = (16 * r2 - r1) / 15;

  ShiftedSimplexMoments<BigFloat> F({3, 2, 1, Rational(1), Rational(2)}, 4);
  CHECK(abs(F.mu(-1, -2) - oracle) <= BigFloat("1e-10"));
}

TEST_CASE("vip basics") {
  auto F = rectangle_exact();
  using P = BiPoly<PiRational>;
  const P one = P::constant(rq(1));
  CHECK(vip(*F, one, one, 0) == F->mu(0, 0));
  CHECK(vip(*F, P::monomial({1, 0}), P::monomial({0, 1}), 1) == F->mu(0, 0));

  // rectangle Table 2 entry: <1, P_{1,1}>_2 = 0
  P p11 = P::monomial({1, 1});
  p11.add_term({1, 0}, rq(-72, 85));
  p11.add_term({0, 1}, rq(-8, 17));
  p11.add_term({0, 0}, rq(576, 1445));
  CHECK(vip(*F, one, p11, 2).is_zero());
}

TEST_CASE("vip symmetry and bilinearity on random polynomial pairs") {
  auto F = rectangle_exact();
  std::mt19937 rng(19);
  std::uniform_int_distribution<long> e(-6, 6);
  auto rand_poly = [&] {
    BiPoly<PiRational> p;
    for (int d = 0; d <= 3; ++d)
      for (const auto& m : monomial_vector(d))
        if (e(rng) > 0) p.add_term(m, rq(e(rng), 1 + (d % 2)));
    return p;
  };
  for (int t = 0; t < 20; ++t) {
    const auto f = rand_poly(), g = rand_poly(), h = rand_poly();
    const auto alpha = rq(e(rng), 5);
    for (int n = 0; n <= 3; ++n) {
      CHECK(vip(*F, f, g, n) == vip(*F, g, f, n));
      CHECK(vip(*F, f + h * alpha, g, n) == vip(*F, f, g, n) + alpha * vip(*F, h, g, n));
    }
  }
}

TEST_CASE("moment blocks and matrices") {
  auto F = rectangle_exact();
  const auto M01 = moment_block(*F, 0, 1, 1);
  CHECK(M01.rows() == 1);
  CHECK(M01.cols() == 2);
  CHECK(M01(0, 0) == varying_moment(*F, 1, 0, 1));
  CHECK(M01(0, 1) == varying_moment(*F, 0, 1, 1));

  const auto M00 = moment_block(*F, 0, 0, 0);
  CHECK(M00(0, 0) == F->mu(0, 0));

  for (int r = 0; r <= 4; ++r)
    for (int s = 0; s <= 4; ++s)
      CHECK(moment_block(*F, r, s, 2) == moment_block(*F, s, r, 2).transposed());

  for (int k = 0; k <= 3; ++k) {
    const auto col = moment_column(*F, 2, 3, k, 3);
    const auto blk = moment_block(*F, 2, 3, 3);
    for (int u = 0; u <= 2; ++u) CHECK(col(u, 0) == blk(u, k));
  }

  const auto M0 = moment_matrix(*F, 0);
  CHECK(M0.rows() == 1);
  CHECK(M0(0, 0) == F->mu(0, 0));

  const auto M2 = moment_matrix(*F, 2);
  CHECK(M2.rows() == 6);
  // block pattern: entry (0,3) is mu^{(2)}_{2,0}; entry (3,3) is mu^{(2)}_{4,0}
  CHECK(M2(0, 3) == varying_moment(*F, 2, 0, 2));
  CHECK(M2(3, 3) == varying_moment(*F, 4, 0, 2));
  CHECK(M2 == M2.transposed());

  const auto M2hat = truncated_moment_matrix(*F, 2);
  CHECK(M2hat.rows() == 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(M2hat(r, c) == M2(r, c));

  for (int n = 0; n <= 5; ++n) {
    const auto Mn = moment_matrix(*F, n);
    CHECK(Mn == Mn.transposed());
    for (const auto& minor : leading_principal_minors(Mn)) CHECK(minor.sign() > 0);
  }
}

TEST_CASE("normalized wrapper rescales mu_00 to one") {
  auto base = std::make_shared<ShiftedSimplexMoments<PiRational>>(
      ShiftedSimplexSpec{3, 2, 1, Rational(1), Rational(2)}, 6);
  NormalizedMoments<PiRational> N(base);
  CHECK(N.mu(0, 0) == rq(1));
  CHECK(N.mu(1, 0) == rq(13, 30240) / rq(1, 3360));
}
