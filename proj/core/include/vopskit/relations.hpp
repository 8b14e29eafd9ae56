#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "vopskit/matrix.hpp"
#include "vopskit/vops.hpp"

namespace vopskit {

/// L_{n-1,1} L_{n,2}: the n x (n+2) selector pairing X_{n+1} rows with the
/// x1 x2 shift of X_{n-1}.
template <class T>
Matrix<T> double_shift(int n) {
  return shift_matrix<T>(n - 1, 1) * shift_matrix<T>(n, 2);
}

/// Expand R (entries of degree <= m) in the monic VOPS basis:
/// R = sum_k F_k P_k. Descending elimination; leading matrices are identity,
/// so each F_k is read off the degree-k coefficients directly.
template <class T>
std::vector<Matrix<T>> expand_in_vops_basis(std::vector<BiPoly<T>> R,
                                            const std::vector<VopsLevel<T>>& levels, int m) {
  std::vector<Matrix<T>> F(m + 1);
  for (int k = m; k >= 0; --k) {
    const auto Xk = monomial_vector(k);
    Matrix<T> Fk(R.size(), k + 1);
    for (std::size_t r = 0; r < R.size(); ++r)
      for (int u = 0; u <= k; ++u) Fk(r, u) = R[r].coeff(Xk[u]);
    const auto corr = apply(Fk, levels[k].P);
    for (std::size_t r = 0; r < R.size(); ++r) R[r] -= corr[r];
    F[k] = std::move(Fk);
  }
  return F;
}

template <class T>
struct Relation {
  int degree = -1;
  int axis = 0;      // 1 or 2
  bool used_fallback = false;
  Matrix<T> A, B, C;  // (n+1)x(n+2), (n+1)x(n+1), (n+1)xn
};

namespace detail {

template <class T>
std::vector<BiPoly<T>> ttr_defect_impl(const PolyVec<T>& Pn, const PolyVec<T>& Pn1,
                                       const PolyVec<T>* Pnm1, const Relation<T>& rel) {
  const MultiIndex xi = rel.axis == 1 ? MultiIndex{1, 0} : MultiIndex{0, 1};
  std::vector<BiPoly<T>> R(Pn.size());
  for (std::size_t r = 0; r < Pn.size(); ++r) R[r] = Pn[r].shifted(xi);
  const auto a_part = apply(rel.A, Pn1);
  const auto b_part = apply(rel.B, Pn);
  for (std::size_t r = 0; r < R.size(); ++r) {
    R[r] -= a_part[r];
    R[r] -= b_part[r];
  }
  if (Pnm1 != nullptr && rel.C.cols() > 0) {
    const auto c_part = apply(rel.C, *Pnm1);
    for (std::size_t r = 0; r < R.size(); ++r) R[r] -= c_part[r].shifted({1, 1});
  }
  return R;
}

// Global monomial coefficient-matching over Pi_{n+1}, one output row at a
// time; solved through the normal equations and verified on every equation.
template <class T>
Relation<T> compute_relation_fallback(const std::vector<VopsLevel<T>>& levels, int n, int axis) {
  const PolyVec<T>& Pn = levels[n].P;
  const PolyVec<T>& Pn1 = levels[n + 1].P;
  const MultiIndex xi = axis == 1 ? MultiIndex{1, 0} : MultiIndex{0, 1};

  std::vector<MultiIndex> monos;
  for (int d = 0; d <= n + 1; ++d)
    for (const auto& m : monomial_vector(d)) monos.push_back(m);
  const std::size_t rows = monos.size();           // t_{n+1}
  const std::size_t na = n + 2, nb = n + 1, nc = n;
  const std::size_t unknowns = na + nb + nc;

  Matrix<T> M(rows, unknowns);
  for (std::size_t e = 0; e < rows; ++e) {
    for (std::size_t v = 0; v < na; ++v) M(e, v) = Pn1[v].coeff(monos[e]);
    for (std::size_t v = 0; v < nb; ++v) M(e, na + v) = Pn[v].coeff(monos[e]);
    for (std::size_t v = 0; v < nc; ++v)
      M(e, na + nb + v) = levels[n - 1].P[v].shifted({1, 1}).coeff(monos[e]);
  }
  const Matrix<T> Mt = M.transposed();
  const Matrix<T> gram = Mt * M;

  Relation<T> rel;
  rel.degree = n;
  rel.axis = axis;
  rel.used_fallback = true;
  rel.A = Matrix<T>(n + 1, n + 2);
  rel.B = Matrix<T>(n + 1, n + 1);
  rel.C = Matrix<T>(n + 1, n);

  const BigFloat tol =
      pow(BigFloat(10), -static_cast<long>(float_precision()) + 14) * (1 + max_abs(M));
  for (std::size_t r = 0; r <= static_cast<std::size_t>(n); ++r) {
    Matrix<T> target(rows, 1);
    const BiPoly<T> lhs = Pn[r].shifted(xi);
    for (std::size_t e = 0; e < rows; ++e) target(e, 0) = lhs.coeff(monos[e]);
    Matrix<T> x;
    try {
      x = dense_solve(gram, Mt * target);
    } catch (const SingularMatrix& e) {
      throw ConstructionFailure(std::string("relation fallback: singular normal equations: ") +
                                e.what());
    }
    const Matrix<T> resid = M * x - target;
    if constexpr (field_traits<T>::exact) {
      if (!resid.is_zero())
        throw ConstructionFailure(
            "relation fallback system inconsistent; this contradicts the three-term relation "
            "theorem and signals a moment-provider bug");
    } else if (max_abs(resid) > tol) {
      throw ConstructionFailure("relation fallback residual " + max_abs(resid).str(5) +
                                " exceeds tolerance; moment provider is inconsistent");
    }
    for (std::size_t v = 0; v < na; ++v) rel.A(r, v) = x(v, 0);
    for (std::size_t v = 0; v < nb; ++v) rel.B(r, v) = x(na + v, 0);
    for (std::size_t v = 0; v < nc; ++v) rel.C(r, v) = x(na + nb + v, 0);
  }
  return rel;
}

}  // namespace detail

/// Coefficients of x_i P_n - A P_{n+1} - B P_n - x1 x2 C P_{n-1}; identically
/// zero when the relation holds.
template <class T>
std::vector<BiPoly<T>> ttr_defect(const std::vector<VopsLevel<T>>& levels,
                                  const Relation<T>& rel) {
  const int n = rel.degree;
  return detail::ttr_defect_impl(levels[n].P, levels[n + 1].P,
                                 n >= 1 ? &levels[n - 1].P : nullptr, rel);
}

/// R_II relation matrices for one axis. Fast path: solve for C from the
/// Lambda identity obtained by eliminating A (monic AGCL substituted into
/// RRC), then A = L_{n,i} - C L_{n-1,1} L_{n,2}, then B by expanding the
/// residual in the VOPS basis. Falls back to global coefficient matching
/// when the fast-path matrix is singular.
template <class T>
Relation<T> compute_relation(const std::vector<VopsLevel<T>>& levels, int n, int axis) {
  if (axis != 1 && axis != 2) throw Error("compute_relation: axis must be 1 or 2");
  if (n + 1 >= static_cast<int>(levels.size())) throw Error("compute_relation: need level n+1");

  Relation<T> rel;
  rel.degree = n;
  rel.axis = axis;

  if (n == 0) {
    // x_i = A P_1 + B P_0 is a plain basis expansion; C is 1 x 0.
    std::vector<BiPoly<T>> R{BiPoly<T>::monomial(axis == 1 ? MultiIndex{1, 0}
                                                           : MultiIndex{0, 1})};
    auto F = expand_in_vops_basis(std::move(R), levels, 1);
    rel.A = std::move(F[1]);
    rel.B = std::move(F[0]);
    rel.C = Matrix<T>(1, 0);
    return rel;
  }

  const Matrix<T> S = double_shift<T>(n);
  const Matrix<T>& lam_m1 = levels[n - 1].lambda;
  const Matrix<T>& lam_n = levels[n].lambda;
  const Matrix<T>& lam_p1 = levels[n + 1].lambda;
  const Matrix<T> SL = S * lam_p1;

  bool fast_ok = true;
  try {
    const Matrix<T> K = SL * S.transposed() - lam_m1;
    const Matrix<T> rhs = SL * shift_matrix<T>(n, axis).transposed() -
                          shift_matrix<T>(n - 1, axis) * lam_n;
    rel.C = dense_solve(K, rhs).transposed();
  } catch (const SingularMatrix&) {
    fast_ok = false;
  }

  if (fast_ok) {
    rel.A = shift_matrix<T>(n, axis) - rel.C * S;
    rel.B = Matrix<T>(n + 1, n + 1);  // zero while expanding the residual
    auto R = detail::ttr_defect_impl(levels[n].P, levels[n + 1].P, &levels[n - 1].P, rel);
    auto F = expand_in_vops_basis(std::move(R), levels, n);
    rel.B = std::move(F[n]);
    // every lower expansion matrix must vanish; otherwise distrust the fast path
    const BigFloat tol = pow(BigFloat(10), -static_cast<long>(float_precision()) + 14) *
                         (1 + max_abs(rel.B));
    for (int k = 0; k < n && fast_ok; ++k) {
      if constexpr (field_traits<T>::exact) {
        if (!F[k].is_zero()) fast_ok = false;
      } else {
        if (max_abs(F[k]) > tol) fast_ok = false;
      }
    }
    if (fast_ok) return rel;
  }
  return detail::compute_relation_fallback(levels, n, axis);
}

/// Monic AGCL residual A + C L_{n-1,1} L_{n,2} - L_{n,i}.
template <class T>
Matrix<T> agcl_residual(const Relation<T>& rel) {
  const int n = rel.degree;
  if (n == 0) return rel.A - shift_matrix<T>(0, rel.axis);
  return rel.A + rel.C * double_shift<T>(n) - shift_matrix<T>(n, rel.axis);
}

/// RRC residual L_{n-1,1} L_{n,2} Lambda_{n+1} A^T - L_{n-1,i} Lambda_n
///              + Lambda_{n-1} C^T   (n >= 1).
template <class T>
Matrix<T> rrc_residual(const std::vector<VopsLevel<T>>& levels, const Relation<T>& rel) {
  const int n = rel.degree;
  if (n < 1) throw Error("rrc_residual: defined for n >= 1");
  return double_shift<T>(n) * levels[n + 1].lambda * rel.A.transposed() -
         shift_matrix<T>(n - 1, rel.axis) * levels[n].lambda +
         levels[n - 1].lambda * rel.C.transposed();
}

/// BLCL residual matrix B Upsilon_n^T + C Upsilon_{n-1}^T, of size (n+1) x 2.
/// Column u corresponds to row u of X_{-1} = (x2^{-1}, x1^{-1}).
///
/// Only the x_i^{-1} column is an identity (x_i x_i^{-1} = 1 is a polynomial
/// and orthogonality applies); the full-matrix form printed in the source
/// material fails in general, so both norms are reported.
template <class T>
struct BlclResidual {
  Matrix<T> full;           // B Y_n^T + C Y_{n-1}^T
  BigFloat full_norm;       // 1-norm of the whole matrix
  BigFloat matched_norm;    // 1-norm of the x_i^{-1} column only
};

template <class T>
BlclResidual<T> blcl_residual(const std::vector<VopsLevel<T>>& levels, const Relation<T>& rel) {
  const int n = rel.degree;
  if (n < 1) throw Error("blcl_residual: defined for n >= 1");
  BlclResidual<T> out;
  out.full = rel.B * levels[n].upsilon.transposed() +
             rel.C * levels[n - 1].upsilon.transposed();
  out.full_norm = one_norm(out.full);
  const std::size_t matched_col = rel.axis == 1 ? 1 : 0;  // x_i^{-1} position in X_{-1}
  BigFloat s(0);
  for (std::size_t r = 0; r < out.full.rows(); ++r) {
    if constexpr (field_traits<T>::exact)
      s += BigFloat(abs_value(out.full(r, matched_col)));
    else
      s += abs(out.full(r, matched_col));
  }
  out.matched_norm = s;
  return out;
}

/// Joint matrix stack(A_1; A_2), its rank verdict, and the minimal-norm left
/// inverse split so that D_1^T A_1 + D_2^T A_2 = I_{n+2}.
template <class T>
struct JointPseudoInverse {
  Matrix<T> joint;
  bool full_rank = false;
  Matrix<T> D1, D2;
};

template <class T>
JointPseudoInverse<T> joint_and_pseudoinverse(const Matrix<T>& A1, const Matrix<T>& A2) {
  JointPseudoInverse<T> out;
  out.joint = A1.stacked_on(A2);
  const Matrix<T> gram = out.joint.transposed() * out.joint;
  Matrix<T> gram_inv;
  try {
    gram_inv = inverse(gram);
  } catch (const SingularMatrix&) {
    out.full_rank = false;
    return out;
  }
  out.full_rank = true;
  const Matrix<T> D = out.joint * gram_inv;
  out.D1 = D.block(0, 0, A1.rows(), D.cols());
  out.D2 = D.block(A1.rows(), 0, A2.rows(), D.cols());
  return out;
}

/// Per-degree bundle of both axes plus the recurrence matrices.
template <class T>
struct RelationSet {
  int degree = -1;
  std::array<Relation<T>, 2> rel;  // axis 1, axis 2
  Matrix<T> joint;
  bool joint_full_rank = false;
  Matrix<T> D1, D2;   // (n+1) x (n+2)
  Matrix<T> E, F;     // (n+2) x (n+1), (n+2) x n
};

template <class T>
RelationSet<T> compute_relation_set(const std::vector<VopsLevel<T>>& levels, int n) {
  RelationSet<T> set;
  set.degree = n;
  set.rel[0] = compute_relation(levels, n, 1);
  set.rel[1] = compute_relation(levels, n, 2);
  auto jp = joint_and_pseudoinverse(set.rel[0].A, set.rel[1].A);
  set.joint = std::move(jp.joint);
  set.joint_full_rank = jp.full_rank;
  if (set.joint_full_rank) {
    set.D1 = std::move(jp.D1);
    set.D2 = std::move(jp.D2);
    set.E = -(set.D1.transposed() * set.rel[0].B + set.D2.transposed() * set.rel[1].B);
    if (n >= 1)
      set.F = -(set.D1.transposed() * set.rel[0].C + set.D2.transposed() * set.rel[1].C);
    else
      set.F = Matrix<T>(n + 2, 0);
  }
  return set;
}

/// P_{n+1} = x1 D1^T P_n + x2 D2^T P_n + E P_n + x1 x2 F P_{n-1}.
template <class T>
PolyVec<T> recurrence_step(const std::vector<VopsLevel<T>>& levels, const RelationSet<T>& set) {
  if (!set.joint_full_rank)
    throw ConstructionFailure("recurrence unavailable: joint matrix is rank deficient");
  const int n = set.degree;
  const PolyVec<T>& Pn = levels[n].P;
  auto d1 = apply(set.D1.transposed(), Pn);
  auto d2 = apply(set.D2.transposed(), Pn);
  auto e = apply(set.E, Pn);
  std::vector<BiPoly<T>> entries(n + 2);
  for (int r = 0; r < n + 2; ++r)
    entries[r] = d1[r].shifted({1, 0}) + d2[r].shifted({0, 1}) + e[r];
  if (n >= 1) {
    auto f = apply(set.F, levels[n - 1].P);
    for (int r = 0; r < n + 2; ++r) entries[r] += f[r].shifted({1, 1});
  }
  return PolyVec<T>(n + 1, std::move(entries));
}

}  // namespace vopskit
