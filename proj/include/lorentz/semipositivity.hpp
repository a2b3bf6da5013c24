#pragma once

// Certificate generators and refuters for structured matrices. Each function
// builds a witness from a closed-form construction and re-verifies it before
// returning; a construction that fails re-verification yields NoVerdict.

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "lorentz/certificate.hpp"
#include "lorentz/cone.hpp"
#include "lorentz/decide.hpp"
#include "lorentz/detail/linalg.hpp"
#include "lorentz/errors.hpp"

namespace lorentz {

namespace detail {

inline Certificate emit_primal(const Matrix &A, const Vector &x, const Tolerances &tol, const char *method) {
  const PrimalCheck pc = verify_primal(A, x, tol);
  if (pc.ok)
    return Certificate::semipositive(x, pc.margin, method);
  return Certificate::no_verdict(method, pc.margin);
}

inline Certificate emit_dual(const Matrix &A, const Vector &y, const Tolerances &tol, const char *method) {
  if (y.norm() > 0.0 && verify_dual(A, y, tol))
    return Certificate::not_semipositive(y, dual_margin(A, y), method);
  return Certificate::no_verdict(method);
}

/// Dual witness delegated to decide(); NoVerdict if decide cannot supply one.
inline Certificate dual_via_decide(const Matrix &A, const DecideOptions &opts, const char *method) {
  Certificate c = decide(A, opts);
  if (c.verdict == Verdict::NotSemipositive) {
    c.method = method;
    return c;
  }
  return Certificate::no_verdict(method, c.margin);
}

inline bool is_diagonal(const Matrix &A, double eps) {
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (i != j && std::abs(A(i, j)) > eps)
        return false;
  return true;
}

inline bool is_lower_triangular(const Matrix &A, double eps) {
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = i + 1; j < A.cols(); ++j)
      if (std::abs(A(i, j)) > eps)
        return false;
  return true;
}

inline bool is_orthogonal(const Matrix &Q, double eps) {
  const Eigen::Index n = Q.rows();
  return (Q.transpose() * Q - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= eps * static_cast<double>(n);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Individual screens. Indices below are 0-based; "last" means row/column n.

/// Last row in -L^n_+ refutes semipositivity with y = -e_n.
inline Certificate nth_row_refuter(const Matrix &A, const Tolerances &tol = {}) {
  detail::require_square(A, "nth_row_refuter");
  const Eigen::Index n = A.rows();
  const Vector row = A.row(n - 1).transpose();
  if (membership(Vector(-row), tol).cls == MembershipClass::Exterior)
    return Certificate::no_verdict("nth_row_refuter");
  return detail::emit_dual(A, Vector(-axis(n)), tol, "nth_row_refuter");
}

/// Last column in int L^n_+: e_n is a witness.
inline Certificate last_column_certificate(const Matrix &A, const Tolerances &tol = {}) {
  detail::require_square(A, "last_column_certificate");
  const Eigen::Index n = A.rows();
  if (membership(Vector(A.col(n - 1)), tol).cls != MembershipClass::Interior)
    return Certificate::no_verdict("last_column");
  return detail::emit_primal(A, axis(n), tol, "last_column");
}

/// Last column in L^n_+ and some other column k in int L^n_+:
/// x = e_n + e_k / 2 is a witness.
inline Certificate column_theorem_certificate(const Matrix &A, const Tolerances &tol = {}) {
  detail::require_square(A, "column_theorem_certificate");
  const Eigen::Index n = A.rows();
  if (membership(Vector(A.col(n - 1)), tol).cls == MembershipClass::Exterior)
    return Certificate::no_verdict("column_theorem");
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (membership(Vector(A.col(k)), tol).cls != MembershipClass::Interior)
      continue;
    Vector x = axis(n);
    x(k) = 0.5;
    Certificate c = detail::emit_primal(A, x, tol, "column_theorem");
    if (c.definite())
      return c;
  }
  return Certificate::no_verdict("column_theorem");
}

/// sum_{i<n} ||a_i||^2 < ||a_n||^2 / 2 (rows) and a_nn >= 0:
/// y = a_n / ||a_n|| + e_n is a witness.
inline Certificate row_norm_certificate(const Matrix &A, const Tolerances &tol = {}) {
  detail::require_square(A, "row_norm_certificate");
  const Eigen::Index n = A.rows();
  const Vector last = A.row(n - 1).transpose();
  const double head = A.topRows(n - 1).squaredNorm();
  const double ln = last.norm();
  if (!(head < 0.5 * last.squaredNorm()) || A(n - 1, n - 1) < 0.0 || ln == 0.0)
    return Certificate::no_verdict("row_norm");
  return detail::emit_primal(A, Vector(last / ln + axis(n)), tol, "row_norm");
}

/// Fixed-order composite of the cheap screens above.
inline Certificate structural_screen(const Matrix &A, const Tolerances &tol = {}) {
  detail::require_square(A, "structural_screen");
  for (auto screen : {&nth_row_refuter, &last_column_certificate, &column_theorem_certificate,
                      &row_norm_certificate}) {
    Certificate c = screen(A, tol);
    if (c.definite())
      return c;
  }
  return Certificate::no_verdict("structural_screen");
}

// ---------------------------------------------------------------------------
// Characterizations.

/// A = u v^T with u_n >= 0 is semipositive iff u in int L^n_+ and v not in -L^n_+.
inline Certificate rank_one_certificate(const Vector &u, const Vector &v, const DecideOptions &opts = {}) {
  const Tolerances &tol = opts.tol;
  if (u.size() != v.size())
    throw DimensionError("rank_one_certificate: u and v differ in length");
  if (u.size() < 2)
    throw DimensionError("rank_one_certificate: dimension must be >= 2");
  if (u.norm() == 0.0 || v.norm() == 0.0)
    throw std::invalid_argument("rank_one_certificate: u and v must be non-zero");
  const Eigen::Index n = u.size();
  if (u(n - 1) < 0.0)
    throw PreconditionError("rank_one_certificate: requires u_n >= 0");

  const Matrix A = u * v.transpose();
  const bool u_interior = membership(u, tol).cls == MembershipClass::Interior;
  const bool v_in_neg = membership(Vector(-v), tol).cls != MembershipClass::Exterior;
  if (!u_interior || v_in_neg)
    return detail::dual_via_decide(A, opts, "rank_one");

  const double vn = v(n - 1);
  const double vnorm = v.norm();
  Vector x;
  if (membership(v, tol).cls != MembershipClass::Exterior) {
    x = vn > 0.0 ? axis(n) : Vector(v + vnorm * axis(n));
  } else if (vn >= 0.0) {
    x = v + vnorm * axis(n);
  } else {
    const double s = vnorm * vnorm - vn * vn;
    const double r = std::abs(vn) * std::sqrt(s);
    const double eps = 0.5 * (s - r);
    x = (vnorm * vnorm - eps) * axis(n) - vn * v;
  }
  return detail::emit_primal(A, x, tol, "rank_one");
}

/// Diagonal D is semipositive iff d_nn > 0.
inline Certificate diagonal_certificate(const Matrix &D, const Tolerances &tol = {}) {
  detail::require_square(D, "diagonal_certificate");
  if (!detail::is_diagonal(D, tol.eq))
    throw StructureError("diagonal_certificate: matrix is not diagonal");
  const Eigen::Index n = D.rows();
  if (D(n - 1, n - 1) > 0.0)
    return detail::emit_primal(D, axis(n), tol, "diagonal");
  return detail::emit_dual(D, Vector(-axis(n)), tol, "diagonal");
}

/// Orthogonal Q is semipositive iff q_nn > 0; witness (q_n + e_n) / 2 with
/// q_n the last row. |q_nn| within the strict band gives NoVerdict.
inline Certificate orthogonal_certificate(const Matrix &Q, const DecideOptions &opts = {}) {
  const Tolerances &tol = opts.tol;
  detail::require_square(Q, "orthogonal_certificate");
  if (!detail::is_orthogonal(Q, tol.eq))
    throw StructureError("orthogonal_certificate: matrix is not orthogonal");
  const Eigen::Index n = Q.rows();
  const double qnn = Q(n - 1, n - 1);
  if (std::abs(qnn) <= tol.strict)
    return Certificate::no_verdict("orthogonal");
  if (qnn > 0.0) {
    const Vector z = 0.5 * (Vector(Q.row(n - 1).transpose()) + axis(n));
    if (membership(z, tol).cls != MembershipClass::Interior)
      return Certificate::no_verdict("orthogonal");
    return detail::emit_primal(Q, z, tol, "orthogonal");
  }
  return detail::dual_via_decide(Q, opts, "orthogonal");
}

enum class LowerTriangularRoute { Auto, Axis, ColumnCondition, NormCondition };

/// Lower-triangular A. a_nn > 0 gives x = e_n. Otherwise, with beta = -a_nn,
/// alpha_k = ||(a_1k, ..., a_{n-1,k})|| and gamma = sum_{i<n} ||a_i||^2:
///   column condition: a_nk > 0 and alpha_k + beta < a_nk gives x = c e_k + e_n
///                     with c the midpoint of ((alpha_k + beta)/a_nk, 1);
///   norm condition:   gamma + 2 beta < ||a_n|| gives y = a_n / (3||a_n||) + 2 e_n / 3.
inline Certificate lower_triangular_certificate(const Matrix &A, const Tolerances &tol = {},
                                                LowerTriangularRoute route = LowerTriangularRoute::Auto) {
  using R = LowerTriangularRoute;
  detail::require_square(A, "lower_triangular_certificate");
  if (!detail::is_lower_triangular(A, tol.eq))
    throw StructureError("lower_triangular_certificate: matrix is not lower triangular");
  const Eigen::Index n = A.rows();
  const double ann = A(n - 1, n - 1);

  if (route == R::Auto || route == R::Axis) {
    if (ann > 0.0)
      return detail::emit_primal(A, axis(n), tol, "lower_triangular_axis");
    if (route == R::Axis)
      return Certificate::no_verdict("lower_triangular_axis");
  }
  const double beta = -ann;

  if (route == R::Auto || route == R::ColumnCondition) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double ank = A(n - 1, k);
      const double alpha = A.col(k).head(n - 1).norm();
      if (!(ank > 0.0) || !(alpha + beta < ank))
        continue;
      Vector x = axis(n);
      x(k) = (alpha + beta + ank) / (2.0 * ank);
      Certificate c = detail::emit_primal(A, x, tol, "lower_triangular_column");
      if (c.definite())
        return c;
    }
    if (route == R::ColumnCondition)
      return Certificate::no_verdict("lower_triangular_column");
  }

  const Vector last = A.row(n - 1).transpose();
  const double ln = last.norm();
  const double gamma = A.topRows(n - 1).squaredNorm();
  if (ln > 0.0 && gamma + 2.0 * beta < ln) {
    const Vector y = last / (3.0 * ln) + (2.0 / 3.0) * axis(n);
    return detail::emit_primal(A, y, tol, "lower_triangular_norm");
  }
  return Certificate::no_verdict(route == R::NormCondition ? "lower_triangular_norm" : "lower_triangular");
}

/// If x is a witness for A and D = diag(d) with d in L^n_+, x is a witness
/// for A + D.
inline Certificate perturbation_transfer(const Matrix &A, const Matrix &D, const Vector &x,
                                         const Tolerances &tol = {}) {
  detail::require_square(A, "perturbation_transfer");
  if (D.rows() != A.rows() || D.cols() != A.cols())
    throw DimensionError("perturbation_transfer: D does not match A");
  detail::require_length(A, x, "perturbation_transfer");
  if (!detail::is_diagonal(D, tol.eq))
    throw StructureError("perturbation_transfer: D is not diagonal");
  if (!in_lorentz(Vector(D.diagonal()), tol))
    throw PreconditionError("perturbation_transfer: diagonal of D is not in the Lorentz cone");
  if (!verify_primal(A, x, tol).ok)
    throw PreconditionError("perturbation_transfer: x is not a semipositivity vector of A");
  return detail::emit_primal(A + D, x, tol, "diagonal_perturbation");
}

/// A = [[A11, 0], [A21, A22]] with A22 k x k: a witness x22 of A22 embeds as
/// z = (0, x22).
inline Certificate block_embed_certificate(const Matrix &A, Eigen::Index k, const Vector &x22,
                                           const Tolerances &tol = {}) {
  detail::require_square(A, "block_embed_certificate");
  const Eigen::Index n = A.rows();
  if (k < 2 || k > n)
    throw DimensionError("block_embed_certificate: block size must satisfy 2 <= k <= n");
  if (x22.size() != k)
    throw DimensionError("block_embed_certificate: x22 length must equal k");
  const Eigen::Index m = n - k;
  if (m > 0 && A.topRightCorner(m, k).cwiseAbs().maxCoeff() > tol.eq)
    throw StructureError("block_embed_certificate: upper-right block is not zero");
  const Matrix A22 = A.bottomRightCorner(k, k);
  if (!verify_primal(A22, x22, tol).ok)
    throw PreconditionError("block_embed_certificate: x22 is not a semipositivity vector of A22");
  Vector z = Vector::Zero(n);
  z.tail(k) = x22;
  return detail::emit_primal(A, z, tol, "block_embedding");
}

/// Symmetric positive semidefinite matrices are screened as semipositive;
/// the witness always comes from decide(), and without one the screen is
/// inconclusive.
inline Certificate copositive_screen(const Matrix &A, const DecideOptions &opts = {}) {
  const Tolerances &tol = opts.tol;
  detail::require_square(A, "copositive_screen");
  const double scale = 1.0 + A.cwiseAbs().maxCoeff();
  if (!detail::is_symmetric(A, tol.eq * scale))
    throw StructureError("copositive_screen: matrix is not symmetric");
  const Eigen::Index n = A.rows();
  const Matrix S = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.eq * scale)
    return Certificate::no_verdict("copositive");
  bool positive_somewhere = false;
  for (Eigen::Index i = 0; i < n && !positive_somewhere; ++i) {
    Vector x0 = axis(n);
    if (i + 1 < n)
      x0(i) = 0.5;
    positive_somewhere = x0.dot(S * x0) > 0.0;
  }
  if (!positive_somewhere)
    return Certificate::no_verdict("copositive");
  Certificate c = decide(A, opts);
  if (c.verdict != Verdict::Semipositive)
    return Certificate::no_verdict("copositive", c.margin);
  c.method = "copositive";
  return c;
}

struct InvarianceReport {
  PrimalCheck scaled;
  PrimalCheck permuted;
};

/// x stays a witness for alpha A (alpha > 0) and for P A when P is a
/// permutation fixing coordinate n. Both are re-verified.
inline InvarianceReport invariance_properties(const Matrix &A, const Vector &x, double alpha, const Matrix &P,
                                              const Tolerances &tol = {}) {
  detail::require_square(A, "invariance_properties");
  detail::require_length(A, x, "invariance_properties");
  if (!(alpha > 0.0))
    throw PreconditionError("invariance_properties: alpha must be positive");
  const Eigen::Index n = A.rows();
  if (P.rows() != n || P.cols() != n)
    throw DimensionError("invariance_properties: P does not match A");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j)
      if (P(i, j) != 0.0 && P(i, j) != 1.0)
        throw StructureError("invariance_properties: P is not a permutation matrix");
    if (P.row(i).sum() != 1.0 || P.col(i).sum() != 1.0)
      throw StructureError("invariance_properties: P is not a permutation matrix");
  }
  if (P(n - 1, n - 1) != 1.0)
    throw StructureError("invariance_properties: P must fix the last coordinate");
  if (!verify_primal(A, x, tol).ok)
    throw PreconditionError("invariance_properties: x is not a semipositivity vector of A");
  return {verify_primal(alpha * A, x, tol), verify_primal(P * A, x, tol)};
}

} // namespace lorentz
