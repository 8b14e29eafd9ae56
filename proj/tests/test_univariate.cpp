#include <doctest.h>

#include <memory>

#include "vopskit/quadrature.hpp"
#include "vopskit/univariate.hpp"

using namespace vopskit;

namespace {
PrecisionScope precision_guard(50);

PiRational rq(long n, long d = 1) { return PiRational(Rational(n, d)); }

BigFloat tol(int digits_off) {
  return pow(BigFloat(10), -static_cast<long>(float_precision()) + digits_off);
}

// w/x^n arcsine providers for the rectangle example
std::shared_ptr<const UniMoments<PiRational>> arcsine_over_xn(const Rational& a,
                                                              const Rational& b, int n) {
  auto base = std::make_shared<ArcsineMoments<PiRational>>(a, b, 16);
  return std::make_shared<ShiftedUniMoments<PiRational>>(std::move(base), -n);
}

UniPoly<PiRational> table1_p(int n, int m) {
  return monic_uops(*arcsine_over_xn(Rational(1, 4), Rational(4), n), m);
}
UniPoly<PiRational> table1_q(int n, int m) {
  return monic_uops(*arcsine_over_xn(Rational(4, 9), Rational(9), n), m);
}
}  // namespace

TEST_CASE("monic uops basics") {
  auto nu = arcsine_over_xn(Rational(1, 4), Rational(4), 1);
  CHECK(monic_uops(*nu, 0).coeffs() == std::vector<PiRational>{rq(1)});

  // degree-1 monic polynomial is x - nu(1)/nu(0) for every provider
  for (int n = 0; n <= 3; ++n) {
    auto prov = arcsine_over_xn(Rational(4, 9), Rational(9), n);
    const auto p = monic_uops(*prov, 1);
    CHECK(p.coeff(0) == -(prov->nu(1) / prov->nu(0)));
  }
}

TEST_CASE("Table 1 exact reproduction, all eight nonconstant polynomials") {
  // n = 1
  CHECK(table1_p(1, 1).coeffs() == std::vector<PiRational>{rq(-1), rq(1)});
  CHECK(table1_q(1, 1).coeffs() == std::vector<PiRational>{rq(-2), rq(1)});
  // n = 2
  CHECK(table1_p(2, 1).coeffs() == std::vector<PiRational>{rq(-8, 17), rq(1)});
  CHECK(table1_p(2, 2).coeffs() == std::vector<PiRational>{rq(1), rq(-25, 8), rq(1)});
  CHECK(table1_q(2, 1).coeffs() == std::vector<PiRational>{rq(-72, 85), rq(1)});
  CHECK(table1_q(2, 2).coeffs() == std::vector<PiRational>{rq(4), rq(-121, 18), rq(1)});
  // n = 3
  CHECK(table1_p(3, 1).coeffs() == std::vector<PiRational>{rq(-272, 803), rq(1)});
  CHECK(table1_p(3, 2).coeffs() ==
        std::vector<PiRational>{rq(16, 25), rq(-59, 25), rq(1)});
  CHECK(table1_p(3, 3).coeffs() ==
        std::vector<PiRational>{rq(-1), rq(75, 16), rq(-75, 16), rq(1)});
  CHECK(table1_q(3, 1).coeffs() == std::vector<PiRational>{rq(-4080, 6793), rq(1)});
  CHECK(table1_q(3, 2).coeffs() ==
        std::vector<PiRational>{rq(288, 121), rq(-582, 121), rq(1)});
  CHECK(table1_q(3, 3).coeffs() ==
        std::vector<PiRational>{rq(-8), rq(121, 6), rq(-121, 12), rq(1)});
}

TEST_CASE("orthogonality residuals vanish exactly in exact mode") {
  for (int n = 1; n <= 3; ++n) {
    auto nu = arcsine_over_xn(Rational(1, 4), Rational(4), n);
    for (int m = 1; m <= n; ++m) {
      const auto p = monic_uops(*nu, m);
      for (int l = 0; l < m; ++l) {
        PiRational acc;
        for (int i = 0; i <= m; ++i) acc += p.coeff(i) * nu->nu(i + l);
        CHECK(acc.is_zero());
      }
    }
  }
}

TEST_CASE("orthogonality residuals stay inside the float precision budget") {
  // triangle q-weight: (t-3)^2 (5-t) / t^3 on (3,5), quadrature-backed moments
  ModifiedJacobiMoments<BigFloat> nu(Rational(3), Rational(5), 2, 1, {0, 1}, 0, 3, 12);
  BigFloat scale(0);
  for (int l = 0; l <= 6; ++l) scale = (std::max)(scale, abs(nu.nu(l)));
  for (int m = 1; m <= 3; ++m) {
    const auto q = monic_uops(nu, m);
    for (int l = 0; l < m; ++l) {
      BigFloat acc(0);
      for (int i = 0; i <= m; ++i) acc += q.coeff(i) * nu.nu(i + l);
      CHECK(abs(acc) <= tol(12) * scale);
    }
  }
}

TEST_CASE("modified jacobi moments: exact beta-integral values") {
  // w2(t) = (t-3)^2 (5-t) on (3,5), n=0, j=0: 2^4 B(3,2) = 4/3
  ModifiedJacobiMoments<PiRational> w2(Rational(3), Rational(5), 2, 1, {0, 1}, 0, 0, 8);
  CHECK(w2.nu(0) == rq(4, 3));
  // (x-1)(2-x)^4 on (1,2), n=0, j=0: B(2,5) = 1/30
  ModifiedJacobiMoments<PiRational> w14(Rational(1), Rational(2), 1, 4, {0, 1}, 0, 0, 8);
  CHECK(w14.nu(0) == rq(1, 30));
}

TEST_CASE("rho folding and the log-weight quadrature path") {
  // w1 = (x-1)(2-x)^3, rho = 2-x, k=0, n=1: net weight (x-1)(2-x)^3 / x.
  // rho^{2k+1-n} = rho^{-1} eats one power of (2-x): exponents fold to (1, 3).
  using MJ = ModifiedJacobiMoments<BigFloat>;
  MJ folded(Rational(1), Rational(2), 1, 4, {Rational(2), Rational(-1)}, -1, 1, 8);

  // partial-fraction oracle: int_1^2 (x-1)(2-x)^3 / x dx with
  // (x-1)(2-x)^3 = -x^4 + 7x^3 - 18x^2 + 20x - 8:
  //   integral = -x^4/4 + 7x^3/3 - 9x^2 + 20x - 8 ln x  over [1,2]
  const BigFloat oracle = BigFloat(Rational(-15, 4)) + BigFloat(Rational(49, 3)) -
                          BigFloat(27) + BigFloat(20) - 8 * log(BigFloat(2));
  CHECK(abs(folded.nu(0) - oracle) <= tol(10) * abs(oracle));

  // the same fold must agree with the directly-specified exponent set
  MJ direct(Rational(1), Rational(2), 1, 3, {0, 1}, 0, 1, 8);
  for (long j = 0; j <= 4; ++j) CHECK(abs(folded.nu(j) - direct.nu(j)) <= tol(10));

  // exact path serves j >= n and refuses negative net powers of x
  ModifiedJacobiMoments<PiRational> exact_side(Rational(1), Rational(2), 1, 3, {0, 1}, 0, 1, 8);
  CHECK(exact_side.nu(1) == rq(1, 20));  // int (x-1)(2-x)^3 dx = B(2,4)
  CHECK_THROWS_AS(exact_side.nu(0), Error);
}

TEST_CASE("non-integrable exponent combinations are rejected") {
  using MJ = ModifiedJacobiMoments<BigFloat>;
  // rho = 2-x with P = -5 folds into (2-x)^{3-5}: negative endpoint exponent
  CHECK_THROWS_AS(MJ(Rational(1), Rational(2), 1, 3, {Rational(2), Rational(-1)}, -5, 0, 8),
                  NonIntegrableWeight);
  // rho changing sign inside (a,b) is rejected
  CHECK_THROWS_AS(MJ(Rational(1), Rational(2), 1, 1, {Rational(-3), Rational(2)}, 1, 0, 8),
                  Error);
}

TEST_CASE("hankel singularity is reported") {
  // a provider violating the positivity assumptions: all moments equal
  class Flat final : public UniMoments<PiRational> {
   public:
    Flat() : UniMoments<PiRational>(10, "flat") {}

   protected:
    PiRational nu_impl(long) const override { return PiRational(1); }
  } flat;
  CHECK_THROWS_AS(monic_uops(flat, 2), SingularMatrix);
}
