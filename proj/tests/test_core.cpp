#include <doctest.h>

#include <random>

#include "vopskit/basis.hpp"
#include "vopskit/bipoly.hpp"
#include "vopskit/matrix.hpp"
#include "vopskit/scalar.hpp"

using namespace vopskit;

namespace {
PrecisionScope precision_guard(50);

PiRational rq(long n, long d = 1) { return PiRational(Rational(n, d)); }
}  // namespace

TEST_CASE("monomial vectors follow the reverse-lexicographic order") {
  CHECK(monomial_vector(0) == std::vector<MultiIndex>{{0, 0}});
  CHECK(monomial_vector(2) == std::vector<MultiIndex>{{2, 0}, {1, 1}, {0, 2}});
  CHECK(monomial_vector(3) == std::vector<MultiIndex>{{3, 0}, {2, 1}, {1, 2}, {0, 3}});
  CHECK(negative_monomial_vector(1) == std::vector<MultiIndex>{{0, -1}, {-1, 0}});
  CHECK(negative_monomial_vector(2) == std::vector<MultiIndex>{{0, -2}, {-1, -1}, {-2, 0}});
  CHECK_THROWS_AS(negative_monomial_vector(0), Error);

  // entrywise product with the (n,n) shift recovers the positive vector
  for (int n = 1; n <= 4; ++n) {
    const auto neg = negative_monomial_vector(n);
    const auto pos = monomial_vector(n);
    for (int r = 0; r <= n; ++r) {
      CHECK(neg[r].i + n == pos[r].i);
      CHECK(neg[r].j + n == pos[r].j);
    }
  }
}

TEST_CASE("poly_dim") {
  CHECK(poly_dim(0) == 1);
  CHECK(poly_dim(2) == 6);
  CHECK(poly_dim(3) == 10);
}

TEST_CASE("shift matrices select rows and satisfy L L^T = I") {
  const auto L01 = shift_matrix<PiRational>(0, 1);
  CHECK(L01.rows() == 1);
  CHECK(L01.cols() == 2);
  CHECK(L01(0, 0) == rq(1));
  CHECK(L01(0, 1) == rq(0));

  const auto L12 = shift_matrix<PiRational>(1, 2);
  CHECK(L12(0, 0) == rq(0));
  CHECK(L12(0, 1) == rq(1));
  CHECK(L12(1, 2) == rq(1));

  for (int n = 0; n <= 8; ++n)
    for (int axis : {1, 2}) {
      const auto L = shift_matrix<PiRational>(n, axis);
      CHECK(L * L.transposed() == Matrix<PiRational>::identity(n + 1));
    }
  CHECK_THROWS_AS(shift_matrix<PiRational>(1, 3), Error);
}

TEST_CASE("shift identities on index lists: x_i X_n = L_{n,i} X_{n+1} and the negative twin") {
  // verified symbolically on MultiIndex lists
  for (int n = 0; n <= 6; ++n) {
    for (int axis : {1, 2}) {
      const auto L = shift_matrix<PiRational>(n, axis);
      const auto Xn = monomial_vector(n);
      const auto Xn1 = monomial_vector(n + 1);
      const MultiIndex xi = axis == 1 ? MultiIndex{1, 0} : MultiIndex{0, 1};
      for (int r = 0; r <= n; ++r) {
        int hits = 0;
        for (int c = 0; c <= n + 1; ++c)
          if (L(r, c) == rq(1)) {
            ++hits;
            CHECK(Xn[r].shifted(xi) == Xn1[c]);
          }
        CHECK(hits == 1);
      }
    }
  }
  for (int n = 1; n <= 6; ++n) {
    for (int axis : {1, 2}) {
      const int other = axis == 1 ? 2 : 1;
      const auto L = shift_matrix<PiRational>(n, other);
      const auto Xm = negative_monomial_vector(n);
      const auto Xm1 = negative_monomial_vector(n + 1);
      const MultiIndex inv = axis == 1 ? MultiIndex{-1, 0} : MultiIndex{0, -1};
      for (int r = 0; r <= n; ++r)
        for (int c = 0; c <= n + 1; ++c)
          if (L(r, c) == rq(1)) CHECK(Xm[r].shifted(inv) == Xm1[c]);
    }
  }
}

TEST_CASE("pi-graded rational arithmetic") {
  const PiRational pi2 = PiRational::pi(2);
  CHECK((pi2 * pi2).pi_exp() == 4);
  CHECK((PiRational::pi(1) * PiRational::pi(-1)) == rq(1));
  CHECK_THROWS_AS(PiRational::pi(1) + rq(1), PiExponentMismatch);
  CHECK((PiRational(Rational(0)) + PiRational::pi(3)) == PiRational::pi(3));
  CHECK((PiRational::pi(2) - PiRational::pi(2)).pi_exp() == 0);  // canonical zero

  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 23);
  for (int t = 0; t < 200; ++t) {
    const PiRational a = rq(num(rng), den(rng)), b = rq(num(rng), den(rng)),
                     c = rq(num(rng), den(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    const int ea = 2, eb = 3;
    CHECK((PiRational(a.value(), ea) * PiRational(b.value(), eb)).pi_exp() ==
          (a.is_zero() || b.is_zero() ? 0 : ea + eb));
  }
}

TEST_CASE("exact dense_solve") {
  auto I3 = Matrix<PiRational>::identity(3);
  Matrix<PiRational> rhs(3, 1, {rq(5), rq(-7), rq(13, 3)});
  CHECK(dense_solve(I3, rhs) == rhs);

  Matrix<PiRational> d(2, 2, {rq(2), rq(0), rq(0), rq(4)});
  Matrix<PiRational> b(2, 1, {rq(1), rq(1)});
  const auto x = dense_solve(d, b);
  CHECK(x(0, 0) == rq(1, 2));
  CHECK(x(1, 0) == rq(1, 4));

  Matrix<PiRational> sing(2, 2, {rq(1), rq(2), rq(2), rq(4)});
  CHECK_THROWS_AS(dense_solve(sing, b), SingularMatrix);

  // random exact systems: M x - rhs must be exactly zero
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> e(-9, 9);
  for (int t = 0; t < 25; ++t) {
    Matrix<PiRational> M(4, 4), R(4, 2);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) M(r, c) = rq(e(rng), 1 + (t % 3));
      R(r, 0) = rq(e(rng));
      R(r, 1) = rq(e(rng), 7);
    }
    try {
      const auto X = dense_solve(M, R);
      CHECK((M * X - R).is_zero());
    } catch (const SingularMatrix&) {
      // fine: random matrix happened to be singular
    }
  }
}

TEST_CASE("float dense_solve residual stays inside the precision budget") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const BigFloat bound = pow(BigFloat(10), -static_cast<long>(float_precision()) + 12);
  for (int t = 0; t < 10; ++t) {
    Matrix<BigFloat> M(5, 5), R(5, 1);
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t c = 0; c < 5; ++c) M(r, c) = BigFloat(u(rng));
      R(r, 0) = BigFloat(u(rng));
    }
    const auto X = dense_solve(M, R);
    CHECK(max_abs(M * X - R) <= bound * (1 + max_abs(M) * max_abs(X)));
  }
  Matrix<BigFloat> sing(2, 2, {BigFloat(1), BigFloat(2), BigFloat(2), BigFloat(4)});
  Matrix<BigFloat> b(2, 1, {BigFloat(1), BigFloat(0)});
  CHECK_THROWS_AS(dense_solve(sing, b), SingularMatrix);
}

TEST_CASE("bipoly arithmetic") {
  using P = BiPoly<PiRational>;
  // (x1 - 1)(x2 - 2) = x1 x2 - 2 x1 - x2 + 2
  P f = P::monomial({1, 0}) - P::constant(rq(1));
  P g = P::monomial({0, 1}) - P::constant(rq(2));
  P prod = f * g;
  CHECK(prod.coeff({1, 1}) == rq(1));
  CHECK(prod.coeff({1, 0}) == rq(-2));
  CHECK(prod.coeff({0, 1}) == rq(-1));
  CHECK(prod.coeff({0, 0}) == rq(2));
  CHECK(prod.degree() == 2);

  CHECK(P().degree() == -1);  // degree of the zero polynomial
  CHECK((f - f).degree() == -1);

  CHECK(P::constant(rq(1)).eval(rq(7), rq(11)) == rq(1));
  CHECK(prod.eval(rq(3), rq(5)) == rq(2) * rq(3));

  CHECK_THROWS_AS(P::monomial({-1, 0}), Error);
}

TEST_CASE("leading principal minors via fraction-free elimination") {
  Matrix<PiRational> M(3, 3,
                       {rq(2), rq(1), rq(0), rq(1), rq(3), rq(1), rq(0), rq(1), rq(4)});
  const auto minors = leading_principal_minors(M);
  CHECK(minors[0] == rq(2));
  CHECK(minors[1] == rq(5));       // det [[2,1],[1,3]]
  CHECK(minors[2] == rq(18));      // det M
}
