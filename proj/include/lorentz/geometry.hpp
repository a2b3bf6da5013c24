#pragma once

// Cones attached to a matrix A and a proper cone K:
//   S_{A,K} = { x : A x in K }           (preimage cone)
//   K_{A,K} = { x in K : A x in K }      (semipositive cone)
// together with ellipsoidal representations, extremal rays, invariance
// (A K subset of K) and monotonicity (A x in K implies x in K).

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <type_traits>
#include <variant>
#include <vector>

#include "lorentz/cone.hpp"
#include "lorentz/detail/linalg.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/oracle.hpp"
#include "lorentz/tolerances.hpp"

namespace lorentz {

struct OrthantCone {
  Eigen::Index n;
};

/// X L^n_+ for an invertible X.
class LinearImageCone {
public:
  explicit LinearImageCone(Matrix X) : X_(std::move(X)) {
    detail::require_square(X_, "LinearImageCone");
    Xinv_ = detail::checked_inverse(X_, "LinearImageCone");
  }

  [[nodiscard]] const Matrix &map() const { return X_; }
  [[nodiscard]] const Matrix &inverse() const { return Xinv_; }
  [[nodiscard]] Eigen::Index dim() const { return X_.rows(); }

private:
  Matrix X_;
  Matrix Xinv_;
};

using ConeDescriptor = std::variant<LorentzCone, OrthantCone, LinearImageCone>;

inline Eigen::Index cone_dim(const ConeDescriptor &K) {
  return std::visit(
      [](const auto &c) -> Eigen::Index {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, OrthantCone>)
          return c.n;
        else
          return c.dim();
      },
      K);
}

/// Interior / Boundary / Exterior of K. For the orthant the margin is
/// min_i x_i.
inline Membership cone_membership(const ConeDescriptor &K, const Vector &x, const Tolerances &tol = {}) {
  if (x.size() != cone_dim(K))
    throw DimensionError("cone_membership: vector length does not match cone dimension");
  if (const auto *L = std::get_if<LorentzCone>(&K))
    return membership(x, *L, tol);
  if (const auto *Y = std::get_if<LinearImageCone>(&K))
    return membership(Vector(Y->inverse() * x), tol);
  const double m = x.minCoeff();
  const double norm = x.norm();
  if (m > tol.strict_at(norm))
    return {MembershipClass::Interior, m};
  if (std::abs(m) <= tol.strict_at(norm))
    return {MembershipClass::Boundary, m};
  return {MembershipClass::Exterior, m};
}

// ---------------------------------------------------------------------------
// Inertia and ellipsoidal representations.

struct Inertia {
  int n_plus = 0;
  int n_zero = 0;
  int n_minus = 0;

  friend bool operator==(const Inertia &, const Inertia &) = default;
};

/// Eigenvalue sign counts, with zero meaning |lambda| <= eq * ||Q||.
inline Inertia inertia(const Matrix &Q, const Tolerances &tol = {}) {
  if (Q.rows() != Q.cols())
    throw DimensionError("inertia: matrix must be square");
  const double scale = Q.size() ? Q.cwiseAbs().maxCoeff() : 0.0;
  if (!detail::is_symmetric(Q, tol.eq * std::max(1.0, scale)))
    throw StructureError("inertia: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
  const Vector &ev = es.eigenvalues();
  const double band = tol.eq * ev.cwiseAbs().maxCoeff();
  Inertia out;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > band)
      ++out.n_plus;
    else if (ev(i) < -band)
      ++out.n_minus;
    else
      ++out.n_zero;
  }
  return out;
}

/// { z : z^T Q z <= 0, u^T z >= 0 } with inertia(Q) = (n-1, 0, 1) and u the
/// unit eigenvector of the negative eigenvalue lambda.
struct EllipsoidalRep {
  Matrix Q;
  Vector u;
  double lambda;

  [[nodiscard]] bool contains(const Vector &z, const Tolerances &tol = {}) const {
    if (z.size() != Q.rows())
      throw DimensionError("EllipsoidalRep::contains: vector length does not match");
    const double zz = z.squaredNorm();
    const double a = u.dot(z);
    if (a < -tol.eq * std::sqrt(zz))
      return false;
    // Compare the form on u-perp against the u-axis part; Q u = lambda u so
    // there are no cross terms.  The relative band mirrors the boundary band
    // of membership() in canonical coordinates.
    const Vector perp = z - a * u;
    const double rel = 1.0 + 2.0 * tol.strict;
    const double qnorm = Q.cwiseAbs().maxCoeff() * static_cast<double>(Q.rows());
    return perp.dot(Q * perp) <= -lambda * a * a * rel * rel + tol.eq * qnorm * zz;
  }
};

/// Representation of X L^n_+: Q = X^{-T} J X^{-1}, J = diag(1, ..., 1, -1),
/// u oriented so that u^T (X e_n) > 0.
inline EllipsoidalRep ellipsoidal_rep_from_map(const Matrix &X, const Tolerances &tol = {}) {
  detail::require_square(X, "ellipsoidal_rep_from_map");
  const Matrix Xinv = detail::checked_inverse(X, "ellipsoidal_rep_from_map");
  const Eigen::Index n = X.rows();
  Matrix Q = Xinv.transpose() * detail::lorentz_form(n) * Xinv;
  Q = 0.5 * (Q + Q.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q);
  // Eigenvalues come sorted ascending; the first is the negative one.
  const double lambda = es.eigenvalues()(0);
  Vector u = es.eigenvectors().col(0);
  u.normalize();
  if (u.dot(X.col(n - 1)) < 0.0)
    u = -u;
  const Inertia in = inertia(Q, tol);
  if (in.n_minus != 1 || in.n_zero != 0)
    throw SingularMatrixError("ellipsoidal_rep_from_map: representation lost its inertia (n-1, 0, 1)");
  return {std::move(Q), std::move(u), lambda};
}

// ---------------------------------------------------------------------------
// Preimage and semipositive cones.

/// Classification of A x in K, i.e. of x in S_{A,K}.
inline Membership preimage_membership(const Matrix &A, const ConeDescriptor &K, const Vector &x,
                                      const Tolerances &tol = {}) {
  if (A.rows() != cone_dim(K) || A.cols() != x.size())
    throw DimensionError("preimage_membership: dimensions do not agree");
  return cone_membership(K, Vector(A * x), tol);
}

/// x in K_{A,K}: x in K and A x in K.
inline bool semipositive_cone_membership(const Matrix &A, const ConeDescriptor &K, const Vector &x,
                                         const Tolerances &tol = {}) {
  if (x.size() != cone_dim(K))
    throw DimensionError("semipositive_cone_membership: dimensions do not agree");
  return cone_membership(K, x, tol).cls != MembershipClass::Exterior &&
         preimage_membership(A, K, x, tol).cls != MembershipClass::Exterior;
}

inline bool is_extremal(const ConeDescriptor &K, const Vector &x, const Tolerances &tol = {}) {
  if (x.size() != cone_dim(K))
    throw DimensionError("is_extremal: vector length does not match cone dimension");
  if (x.norm() == 0.0)
    throw std::invalid_argument("is_extremal: zero vector");
  if (const auto *Y = std::get_if<LinearImageCone>(&K))
    return is_extremal(LorentzCone(Y->dim()), Vector(Y->inverse() * x), tol);
  if (std::holds_alternative<LorentzCone>(K))
    return membership(x, tol).cls == MembershipClass::Boundary;
  const double norm = x.norm();
  int positive = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) > tol.strict_at(norm))
      ++positive;
    else if (std::abs(x(i)) > tol.mem_at(norm))
      return false;
  }
  return positive == 1;
}

/// x' = A^{-1} x for an extremal x of K; x' is then an extremal of S_{A,K}.
inline Vector extremal_pushforward(const Matrix &A, const ConeDescriptor &K, const Vector &x,
                                   const Tolerances &tol = {}) {
  detail::require_square(A, "extremal_pushforward");
  if (A.rows() != cone_dim(K))
    throw DimensionError("extremal_pushforward: dimensions do not agree");
  if (!detail::well_conditioned(A))
    throw SingularMatrixError("extremal_pushforward: matrix is singular or ill-conditioned");
  if (!is_extremal(K, x, tol))
    throw PreconditionError("extremal_pushforward: vector is not an extremal of the cone");
  return A.fullPivLu().solve(x);
}

// ---------------------------------------------------------------------------
// Invariance and monotonicity over L^n_+.

struct InvarianceDetail {
  bool invariant;
  /// Last row and last column of A lie in L^n_+.
  bool orientation;
  /// min over mu in [0, mu_max] of lambda_max(A^T J A - mu J), and its argmin.
  double lambda_max;
  double mu;
};

/// A L^n_+ subset of L^n_+, decided via the S-lemma: A maps the double cone
/// {x^T J x <= 0} into itself iff A^T J A - mu J is negative semidefinite for
/// some mu >= 0; the last row and column of A fix the nappe.
inline InvarianceDetail invariance_detail(const Matrix &A, const Tolerances &tol = {}) {
  detail::require_square(A, "is_invariant");
  const Eigen::Index n = A.rows();
  const bool orientation = in_lorentz(Vector(A.row(n - 1).transpose()), tol) && in_lorentz(Vector(A.col(n - 1)), tol);
  const double anorm = detail::spectral_norm(A);
  if (anorm == 0.0)
    return {true, true, 0.0, 0.0};
  const Matrix J = detail::lorentz_form(n);
  const Matrix G = A.transpose() * J * A;
  auto phi = [&](double mu) {
    const Matrix S = G - mu * J;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  };
  // phi is convex in mu; any feasible mu satisfies mu <= ||A e_n||^2.
  const double mu_max = 4.0 * anorm * anorm;
  const double mu = oracle::detail::golden_max([&](double m) { return -phi(m); }, 0.0, mu_max,
                                               1e-14 * (1.0 + mu_max));
  double best_mu = mu;
  double best = phi(mu);
  for (double m : {0.0, mu_max}) {
    const double v = phi(m);
    if (v < best) {
      best = v;
      best_mu = m;
    }
  }
  const bool ok = orientation && best <= tol.eq * (1.0 + anorm * anorm);
  return {ok, orientation, best, best_mu};
}

inline bool is_invariant(const Matrix &A, const Tolerances &tol = {}) { return invariance_detail(A, tol).invariant; }

/// A x in L^n_+ implies x in L^n_+; equivalently A invertible with A^{-1}
/// invariant. Singular (or ill-conditioned) A is not monotone.
inline bool is_monotone(const Matrix &A, const Tolerances &tol = {}) {
  detail::require_square(A, "is_monotone");
  if (!detail::well_conditioned(A))
    return false;
  return is_invariant(Matrix(A.fullPivLu().inverse()), tol);
}

struct EllipsoidalCheck {
  bool ellipsoidal;
  std::optional<EllipsoidalRep> rep;
};

/// S_{A,L} is ellipsoidal iff A is invertible; then S_{A,L} = A^{-1} L^n_+.
inline EllipsoidalCheck s_cone_is_ellipsoidal(const Matrix &A, const Tolerances &tol = {}) {
  detail::require_square(A, "s_cone_is_ellipsoidal");
  if (!detail::well_conditioned(A))
    return {false, std::nullopt};
  return {true, ellipsoidal_rep_from_map(Matrix(A.fullPivLu().inverse()), tol)};
}

struct ConeComparison {
  bool coincides;
  /// Set when A is monotone (then K_{A,L} = S_{A,L} is ellipsoidal).
  std::optional<EllipsoidalRep> rep;
  /// A point of S_{A,L} outside L^n_+, when one was found.
  std::optional<Vector> separator;
  /// True if the answer follows from monotonicity, false if from sampling.
  bool by_monotonicity;
};

/// Compares K_{A,L} with S_{A,L}. Monotone A: they coincide and are
/// ellipsoidal. Otherwise the sampler looks for x with A x in L^n_+ and
/// x outside L^n_+.
inline ConeComparison k_cone_under_monotone(const Matrix &A, const Tolerances &tol = {},
                                            const oracle::SamplerConfig &cfg = {}) {
  detail::require_square(A, "k_cone_under_monotone");
  const Eigen::Index n = A.rows();
  if (is_monotone(A, tol))
    return {true, s_cone_is_ellipsoidal(A, tol).rep, std::nullopt, true};

  auto separates = [&](const Vector &x) {
    return membership(x, tol).cls == MembershipClass::Exterior &&
           membership(Vector(A * x), tol).cls != MembershipClass::Exterior;
  };

  if (!detail::well_conditioned(A)) {
    // Kernel direction: A(+-v) ~ 0 lies in L while one of +-v does not.
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
    const Vector v = svd.matrixV().col(n - 1);
    for (const Vector &x : {v, Vector(-v)})
      if (separates(x))
        return {false, std::nullopt, x, false};
  }

  std::vector<Vector> images = oracle::sample_lorentz(n, cfg);
  const std::vector<Vector> rays = oracle::sample_boundary(n, cfg);
  images.insert(images.end(), rays.begin(), rays.end());
  const auto lu = A.fullPivLu();
  for (const Vector &y : images) {
    const Vector x = lu.solve(y);
    if (x.allFinite() && separates(x))
      return {false, std::nullopt, x, false};
  }
  return {true, std::nullopt, std::nullopt, false};
}

} // namespace lorentz
