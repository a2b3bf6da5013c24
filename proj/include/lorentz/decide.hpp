#pragma once

// Deciding L^n_+-semipositivity with checkable certificates.
//
// Exactly one of the following holds for a square A:
//   (i)  there is x in L^n_+ with A x in int L^n_+          (primal witness)
//   (ii) there is y != 0 with -y in L^n_+, A^T y in L^n_+   (dual witness)
// decide() searches for both and returns whichever verifies first. Every
// emitted witness is checked by verify_primal / verify_dual, so the search
// strategy cannot affect soundness.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "lorentz/certificate.hpp"
#include "lorentz/cone.hpp"
#include "lorentz/detail/linalg.hpp"
#include "lorentz/detail/search.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/tolerances.hpp"

namespace lorentz {

struct DecideOptions {
  int max_starts = 64;
  int max_iters = 2000;
  double step_init = 0.5;
  std::uint64_t seed = 42;
  Tolerances tol{};

  void validate() const {
    if (max_starts < 1)
      throw std::invalid_argument("max_starts must be >= 1");
    if (max_iters < 1)
      throw std::invalid_argument("max_iters must be >= 1");
    if (!(step_init > 0.0))
      throw std::invalid_argument("step_init must be > 0");
    tol.validate();
  }
};

struct PrimalCheck {
  bool ok;
  /// sqrt(2) (Ax)_n - ||Ax||
  double margin;
};

/// x is a semipositivity vector: x in L^n_+ and A x in int L^n_+.
inline PrimalCheck verify_primal(const Matrix &A, const Vector &x, const Tolerances &tol = {}) {
  detail::require_square(A, "verify_primal");
  detail::require_length(A, x, "verify_primal");
  const Vector Ax = A * x;
  const Membership mx = membership(x, tol);
  const Membership mAx = membership(Ax, tol);
  return {mx.cls != MembershipClass::Exterior && mAx.cls == MembershipClass::Interior, mAx.margin};
}

/// y is a dual witness: -y in L^n_+ and A^T y in L^n_+ (L^n_+ is self-dual).
inline bool verify_dual(const Matrix &A, const Vector &y, const Tolerances &tol = {}) {
  detail::require_square(A, "verify_dual");
  detail::require_length(A, y, "verify_dual");
  if (y.norm() == 0.0)
    throw std::invalid_argument("verify_dual: zero vector");
  return in_lorentz(-y, tol) && in_lorentz(A.transpose() * y, tol);
}

/// min of the cone margins of -y and A^T y; >= 0 exactly for dual witnesses.
inline double dual_margin(const Matrix &A, const Vector &y) {
  return std::min(lorentz_margin(-y), lorentz_margin(A.transpose() * y));
}

namespace detail {

inline Certificate try_primal(const Matrix &A, const Vector &v, const Tolerances &tol, const char *method) {
  const Vector x = v / v.norm();
  const PrimalCheck pc = verify_primal(A, x, tol);
  if (pc.ok)
    return Certificate::semipositive(x, pc.margin, method);
  Certificate c = Certificate::no_verdict(method, pc.margin);
  c.band = tol.strict_at((A * x).norm());
  return c;
}

inline Certificate try_dual(const Matrix &A, const Vector &v, const Tolerances &tol, const char *method) {
  // v plays the role of -y.
  const Vector y = -v / v.norm();
  if (verify_dual(A, y, tol))
    return Certificate::not_semipositive(y, dual_margin(A, y), method);
  return Certificate::no_verdict(method);
}

inline Certificate undecided(Certificate primal_best) {
  primal_best.verdict = Verdict::Undecided;
  primal_best.primal.reset();
  primal_best.dual.reset();
  return primal_best;
}

inline Certificate decide_2x2(const Matrix &A, const DecideOptions &opts) {
  const ArcSweep primal = sweep_arc(A);
  Certificate p = try_primal(A, arc_point(primal.theta), opts.tol, "angle_sweep");
  if (p.definite())
    return p;
  const Matrix dual_map = -A.transpose();
  const ArcSweep dual = sweep_arc(dual_map);
  Certificate d = try_dual(A, arc_point(dual.theta), opts.tol, "angle_sweep");
  if (d.definite())
    return d;
  return undecided(p);
}

inline Certificate decide_general(const Matrix &A, const DecideOptions &opts) {
  const Eigen::Index n = A.rows();
  const Eigen::Index d = n - 1;
  const Matrix dual_map = -A.transpose();
  const SliceObjective primal{A};
  const SliceObjective dual{dual_map};

  std::mt19937_64 rng(opts.seed);
  SliceOptimum best_p;
  SliceOptimum best_d;
  // Starts are interleaved primal/dual so that whichever side is feasible
  // is usually found after the first slice.
  for (int s = 0; s < opts.max_starts; ++s) {
    const Vector w0 = s == 0 ? Vector::Zero(d) : random_ball_point(d, rng);
    const SliceOptimum op = projected_ascent(primal, w0, opts.max_iters, opts.step_init);
    if (op.value > best_p.value)
      best_p = op;
    if (best_p.value > 0.0) {
      Certificate c = try_primal(A, primal.lift(best_p.w), opts.tol, "projected_ascent");
      if (c.definite())
        return c;
    }
    const SliceOptimum od = projected_ascent(dual, w0, opts.max_iters, opts.step_init);
    if (od.value > best_d.value)
      best_d = od;
    if (best_d.value >= 0.0 || s + 1 == opts.max_starts) {
      Certificate c = try_dual(A, dual.lift(best_d.w), opts.tol, "projected_ascent");
      if (c.definite())
        return c;
    }
  }

  // Both concave problems solved to high accuracy.
  const SliceOptimum ep = ellipsoid_maximize(primal);
  if (ep.value > best_p.value)
    best_p = ep;
  Certificate p = try_primal(A, primal.lift(best_p.w), opts.tol, "ellipsoid_refinement");
  if (p.definite())
    return p;
  const SliceOptimum ed = ellipsoid_maximize(dual);
  if (ed.value > best_d.value)
    best_d = ed;
  Certificate c = try_dual(A, dual.lift(best_d.w), opts.tol, "ellipsoid_refinement");
  if (c.definite())
    return c;
  return undecided(p);
}

} // namespace detail

/// Decide L^n_+-semipositivity of A.
///
/// n = 2 is settled by an exact sweep of the unit arc of L^2_+. For n >= 3
/// the search runs multi-start projected supergradient ascent on the
/// primal and dual slice objectives, then a central-cut ellipsoid
/// refinement. Results depend only on (A, opts); the seed fixes the starts.
inline Certificate decide(const Matrix &A, const DecideOptions &opts = {}) {
  detail::require_square(A, "decide");
  opts.validate();
  if (!A.allFinite())
    throw std::invalid_argument("decide: matrix has non-finite entries");
  if (A.rows() == 2)
    return detail::decide_2x2(A, opts);
  return detail::decide_general(A, opts);
}

/// Checks a claimed factorization A = Y X^{-1} with X invertible and X, Y
/// both L^n_+-semipositive.
inline bool verify_factorization(const Matrix &A, const Matrix &X, const Matrix &Y,
                                 const DecideOptions &opts = {}) {
  detail::require_square(A, "verify_factorization");
  if (X.rows() != A.rows() || X.cols() != A.cols() || Y.rows() != A.rows() || Y.cols() != A.cols())
    throw DimensionError("verify_factorization: matrix dimensions differ");
  if (!detail::well_conditioned(X))
    throw SingularMatrixError("verify_factorization: X is singular or ill-conditioned");
  const double ynorm = detail::spectral_norm(Y);
  if (detail::spectral_norm(A * X - Y) > opts.tol.eq * (1.0 + ynorm))
    return false;
  return decide(X, opts).verdict == Verdict::Semipositive && decide(Y, opts).verdict == Verdict::Semipositive;
}

// ---------------------------------------------------------------------------
// 2x2 similarity between orthant- and Lorentz-semipositivity.

enum class TransferDirection { ToLorentz, FromLorentz };

struct OrthantCheck {
  bool ok;
  /// min_i (Ax)_i
  double margin;
};

/// x >= 0 and A x > 0 entrywise.
inline OrthantCheck verify_orthant_primal(const Matrix &A, const Vector &x, const Tolerances &tol = {}) {
  detail::require_length(A, x, "verify_orthant_primal");
  const Vector Ax = A * x;
  const bool nonneg = x.minCoeff() >= -tol.mem_at(x.norm());
  const double m = Ax.minCoeff();
  return {nonneg && m > tol.strict_at(Ax.norm()), m};
}

/// Best point of the probability simplex for min_i (Ax)_i, A 2x2. The
/// objective is the minimum of two affine functions of t in x = (t, 1-t),
/// so the optimum is an end point or their crossing.
inline Vector orthant_best_point_2x2(const Matrix &A) {
  auto point = [](double t) {
    Vector x(2);
    x << t, 1.0 - t;
    return x;
  };
  std::vector<double> candidates{0.0, 1.0};
  // (Ax)_0 - (Ax)_1 is affine in t: c0 + c1 t.
  const double c0 = (A(0, 1) - A(1, 1));
  const double c1 = (A(0, 0) - A(1, 0)) - c0;
  if (c1 != 0.0) {
    const double t = -c0 / c1;
    if (t > 0.0 && t < 1.0)
      candidates.push_back(t);
  }
  double best_t = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    const double v = (A * point(t)).minCoeff();
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  return point(best_t);
}

struct TransferResult {
  Matrix C;
  Certificate certificate;
  /// Witness for the source cone that was transported.
  Vector source_witness;
};

/// T = [[1, -1], [1, 1]]; maps R^2_+ onto L^2_+.
inline Matrix transfer_matrix() {
  Matrix T(2, 2);
  T << 1, -1, 1, 1;
  return T;
}

/// ToLorentz: A orthant-semipositive, returns C = T A T^{-1} with an
/// L^2_+ witness. FromLorentz: A L^2_+-semipositive, returns C = T^{-1} A T
/// with an orthant witness (certificate.primal holds it).
inline TransferResult similarity_transfer_2x2(const Matrix &A, TransferDirection direction,
                                              const DecideOptions &opts = {}) {
  if (A.rows() != 2 || A.cols() != 2)
    throw DimensionError("similarity_transfer_2x2: matrix must be 2x2");
  const Matrix T = transfer_matrix();
  Matrix Tinv(2, 2);
  Tinv << 0.5, 0.5, -0.5, 0.5;

  if (direction == TransferDirection::ToLorentz) {
    const Vector x = orthant_best_point_2x2(A);
    if (!verify_orthant_primal(A, x, opts.tol).ok)
      throw PreconditionError("similarity_transfer_2x2: matrix is not orthant-semipositive");
    const Matrix C = T * A * Tinv;
    Vector z = T * x;
    z /= z.norm();
    const PrimalCheck pc = verify_primal(C, z, opts.tol);
    Certificate cert = pc.ok ? Certificate::semipositive(z, pc.margin, "similarity_transfer")
                             : Certificate::no_verdict("similarity_transfer", pc.margin);
    return {C, std::move(cert), x};
  }

  const Certificate src = decide(A, opts);
  if (src.verdict != Verdict::Semipositive)
    throw PreconditionError("similarity_transfer_2x2: matrix is not L^2_+-semipositive");
  const Matrix C = Tinv * A * T;
  Vector x = Tinv * *src.primal;
  x /= x.norm();
  const OrthantCheck oc = verify_orthant_primal(C, x, opts.tol);
  Certificate cert = oc.ok ? Certificate::semipositive(x, oc.margin, "similarity_transfer")
                           : Certificate::no_verdict("similarity_transfer", oc.margin);
  return {C, std::move(cert), *src.primal};
}

} // namespace lorentz
