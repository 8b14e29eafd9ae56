#include "vopskit/quadrature.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace vopskit {

namespace {

// Legendre P_n and P_n' at x via the three-term recurrence.
std::pair<BigFloat, BigFloat> legendre_with_derivative(int n, const BigFloat& x) {
  BigFloat p0(1), p1 = x;
  for (int k = 2; k <= n; ++k) {
    BigFloat p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
  BigFloat dp = n * (x * p1 - p0) / (x * x - 1);
  return {p1, dp};
}

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const BigFloat pi = pi_value();
  // Newton converges quadratically from the cosine seed; stopping three
  // digits above ulp leaves the final applied step at full precision.
  const BigFloat tol = pow(BigFloat(10), -static_cast<long>(float_precision()) + 3);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    BigFloat x = cos(pi * (4 * i + 3) / (4 * n + 2));
    for (int iter = 0; iter < 60; ++iter) {
      auto [p, d] = legendre_with_derivative(n, x);
      const BigFloat dx = p / d;
      x -= dx;
      if (abs(dx) <= tol) break;
    }
    const BigFloat dp = legendre_with_derivative(n, x).second;
    const BigFloat w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    // symmetric rule: center node sits exactly at zero
    rule.nodes[half - 1] = BigFloat(0);
    auto [p, d] = legendre_with_derivative(n, BigFloat(0));
    rule.weights[half - 1] = 2 / (d * d);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 2) throw Error("gauss_legendre: need at least 2 nodes");
  static std::mutex mtx;
  static std::map<std::pair<unsigned, int>, GaussLegendreRule> cache;
  std::scoped_lock lock(mtx);
  const auto key = std::make_pair(float_precision(), n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_rule(n)).first;
  return it->second;
}

}  // namespace vopskit
