#pragma once

#include <functional>
#include <map>
#include <vector>

#include "vopskit/scalar.hpp"

namespace vopskit {

struct QuadratureConfig {
  int base_nodes = 64;
  int refine_factor = 2;
  int max_rounds = 6;
  int threshold_offset = 8;  // relative threshold 10^(-precision + offset)

  BigFloat rel_threshold() const {
    return pow(BigFloat(10), -static_cast<long>(float_precision()) + threshold_offset);
  }
  int nodes_at_round(int round) const {
    int n = base_nodes;
    for (int r = 0; r < round; ++r) n *= refine_factor;
    return n;
  }
};

/// Gauss-Legendre rule on [-1, 1] at the current working precision.
/// Rules are cached per (precision, node count).
struct GaussLegendreRule {
  std::vector<BigFloat> nodes;
  std::vector<BigFloat> weights;
};

const GaussLegendreRule& gauss_legendre(int n);

template <class F>
BigFloat integrate_fixed(F&& f, const BigFloat& a, const BigFloat& b, int n) {
  const auto& rule = gauss_legendre(n);
  const BigFloat mid = (a + b) / 2, half = (b - a) / 2;
  BigFloat acc(0);
  for (int k = 0; k < n; ++k) acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
  return acc * half;
}

/// Refine the node count until two successive values agree to the relative
/// threshold; returns the finer value.
template <class F>
BigFloat integrate_adaptive(F&& f, const BigFloat& a, const BigFloat& b,
                            const QuadratureConfig& cfg = {}) {
  const BigFloat thr = cfg.rel_threshold();
  BigFloat prev = integrate_fixed(f, a, b, cfg.base_nodes);
  for (int round = 1; round <= cfg.max_rounds; ++round) {
    const BigFloat cur = integrate_fixed(f, a, b, cfg.nodes_at_round(round));
    const BigFloat scale = (std::max)(abs(cur), abs(prev));
    if (abs(cur - prev) <= thr * scale || scale.is_zero()) return cur;
    prev = cur;
  }
  throw QuadratureDidNotConverge("1-D quadrature did not converge after max rounds");
}

/// Iterated 2-D Gauss-Legendre over {a < x1 < b, lo(x1) < x2 < hi(x1)} that
/// serves every moment x1^k x2^m against one weight function. Node grids and
/// weight-times-jacobian inner sums are cached per refinement level, so each
/// additional (k, m) costs one weighted power-sum pass.
class NestedQuadrature {
 public:
  using Weight2D = std::function<BigFloat(const BigFloat&, const BigFloat&)>;
  using Boundary = std::function<BigFloat(const BigFloat&)>;

  NestedQuadrature(Weight2D weight, BigFloat a, BigFloat b, Boundary lower, Boundary upper,
                   long moment_window, QuadratureConfig cfg = {})
      : weight_(std::move(weight)),
        a_(std::move(a)),
        b_(std::move(b)),
        lower_(std::move(lower)),
        upper_(std::move(upper)),
        window_(moment_window),
        cfg_(cfg) {}

  /// Converged moment integral of x1^k x2^m * W; |m| must be within the
  /// declared window. Throws QuadratureDidNotConverge with the last gap.
  BigFloat moment(long k, long m) const {
    const BigFloat thr = cfg_.rel_threshold();
    BigFloat prev = moment_at_round(0, k, m);
    for (int round = 1; round <= cfg_.max_rounds; ++round) {
      const BigFloat cur = moment_at_round(round, k, m);
      const BigFloat scale = (std::max)(abs(cur), abs(prev));
      if (abs(cur - prev) <= thr * scale || scale.is_zero()) return cur;
      prev = cur;
    }
    throw QuadratureDidNotConverge("2-D moment quadrature did not converge; last gap " +
                                   gap_report(k, m));
  }

  /// Plain converged integral of f * W over the domain (no caching reuse).
  template <class F>
  BigFloat integrate(F&& f) const {
    auto outer = [&](int n2d) {
      return integrate_fixed(
          [&](const BigFloat& x1) {
            const BigFloat lo = lower_(x1), hi = upper_(x1);
            return integrate_fixed(
                [&](const BigFloat& x2) { return f(x1, x2) * weight_(x1, x2); }, lo, hi, n2d);
          },
          a_, b_, n2d);
    };
    const BigFloat thr = cfg_.rel_threshold();
    BigFloat prev = outer(cfg_.base_nodes);
    for (int round = 1; round <= cfg_.max_rounds; ++round) {
      const BigFloat cur = outer(cfg_.nodes_at_round(round));
      const BigFloat scale = (std::max)(abs(cur), abs(prev));
      if (abs(cur - prev) <= thr * scale || scale.is_zero()) return cur;
      prev = cur;
    }
    throw QuadratureDidNotConverge("2-D quadrature did not converge after max rounds");
  }

  long window() const { return window_; }
  const QuadratureConfig& config() const { return cfg_; }

 private:
  struct Level {
    std::vector<BigFloat> x1;                      // outer node positions
    std::map<long, std::vector<BigFloat>> inner;   // m -> per-outer-node inner sums
  };

  const Level& level(int round) const {
    auto it = levels_.find(round);
    if (it != levels_.end()) return it->second;
    Level lv;
    const int n = cfg_.nodes_at_round(round);
    const auto& rule = gauss_legendre(n);
    const BigFloat omid = (a_ + b_) / 2, ohalf = (b_ - a_) / 2;
    lv.x1.resize(n);
    for (long m = -window_; m <= window_; ++m) lv.inner[m] = std::vector<BigFloat>(n, BigFloat(0));
    std::vector<BigFloat> pow_up(window_ + 1), pow_dn(window_ + 1);
    for (int i = 0; i < n; ++i) {
      const BigFloat x1 = omid + ohalf * rule.nodes[i];
      lv.x1[i] = x1;
      const BigFloat lo = lower_(x1), hi = upper_(x1);
      const BigFloat imid = (lo + hi) / 2, ihalf = (hi - lo) / 2;
      if (ihalf.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const BigFloat x2 = imid + ihalf * rule.nodes[j];
        const BigFloat wj = weight_(x1, x2) * rule.weights[j];
        // powers of x2 filled incrementally over the whole window
        pow_up[0] = wj;
        for (long m = 1; m <= window_; ++m) pow_up[m] = pow_up[m - 1] * x2;
        pow_dn[0] = wj;
        for (long m = 1; m <= window_; ++m) pow_dn[m] = pow_dn[m - 1] / x2;
        for (long m = 0; m <= window_; ++m) lv.inner[m][i] += pow_up[m];
        for (long m = 1; m <= window_; ++m) lv.inner[-m][i] += pow_dn[m];
      }
      for (long m = -window_; m <= window_; ++m) lv.inner[m][i] *= ihalf;
    }
    // fold the outer Gauss weights and jacobian into the inner sums
    for (long m = -window_; m <= window_; ++m)
      for (int i = 0; i < n; ++i) lv.inner[m][i] *= rule.weights[i] * ohalf;
    return levels_.emplace(round, std::move(lv)).first->second;
  }

  BigFloat moment_at_round(int round, long k, long m) const {
    if (m < -window_ || m > window_)
      throw MomentWindowExceeded("nested quadrature: x2 exponent outside declared window");
    const Level& lv = level(round);
    const auto& sums = lv.inner.at(m);
    BigFloat acc(0);
    for (std::size_t i = 0; i < lv.x1.size(); ++i) {
      if (sums[i].is_zero()) continue;
      acc += pow(lv.x1[i], k) * sums[i];
    }
    return acc;
  }

  std::string gap_report(long k, long m) const {
    const BigFloat v1 = moment_at_round(cfg_.max_rounds - 1, k, m);
    const BigFloat v2 = moment_at_round(cfg_.max_rounds, k, m);
    return v1.str(20) + " vs " + v2.str(20) + " (gap " + BigFloat(abs(v2 - v1)).str(5) + ")";
  }

  Weight2D weight_;
  BigFloat a_, b_;
  Boundary lower_, upper_;
  long window_;
  QuadratureConfig cfg_;
  mutable std::map<int, Level> levels_;
};

}  // namespace vopskit
