#pragma once

// Lorentz (second-order) cone geometry:
//
//   L^n_+ = { x : x_n >= 0, x_1^2 + ... + x_{n-1}^2 <= x_n^2 }
//         = { x : ||x|| <= sqrt(2) * x_n }
//
// Everything here is a pure function of its arguments.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>

#include "lorentz/errors.hpp"
#include "lorentz/tolerances.hpp"

namespace lorentz {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class LorentzCone {
public:
  explicit LorentzCone(Eigen::Index n) : n_(n) {
    if (n < 2)
      throw DimensionError("Lorentz cone requires dimension n >= 2");
  }

  [[nodiscard]] Eigen::Index dim() const { return n_; }

private:
  Eigen::Index n_;
};

enum class MembershipClass { Interior, Boundary, Exterior };

constexpr std::string_view to_string(MembershipClass c) {
  switch (c) {
  case MembershipClass::Interior:
    return "interior";
  case MembershipClass::Boundary:
    return "boundary";
  case MembershipClass::Exterior:
    return "exterior";
  }
  return "exterior";
}

struct Membership {
  MembershipClass cls;
  /// sqrt(2) * x_n - ||x||; negative outside the cone.
  double margin;
};

/// sqrt(2) * x_n - ||x||. Positive exactly on the interior.
inline double lorentz_margin(const Vector &x) {
  return std::numbers::sqrt2 * x(x.size() - 1) - x.norm();
}

inline Membership classify_margin(double margin, double last, double norm, const Tolerances &tol) {
  const double strict = tol.strict_at(norm);
  if (margin > strict && last > 0.0)
    return {MembershipClass::Interior, margin};
  if (std::abs(margin) <= strict && last >= -tol.mem_at(norm))
    return {MembershipClass::Boundary, margin};
  return {MembershipClass::Exterior, margin};
}

inline Membership membership(const Vector &x, const LorentzCone &cone, const Tolerances &tol = {}) {
  if (x.size() != cone.dim())
    throw DimensionError("membership: vector length does not match cone dimension");
  return classify_margin(lorentz_margin(x), x(x.size() - 1), x.norm(), tol);
}

inline Membership membership(const Vector &x, const Tolerances &tol = {}) {
  return membership(x, LorentzCone(x.size()), tol);
}

/// Closed-cone test with the (narrower) membership band: margin >= -mem*(1+||x||).
inline bool in_lorentz(const Vector &x, const Tolerances &tol = {}) {
  if (x.size() < 2)
    throw DimensionError("Lorentz cone requires dimension n >= 2");
  return lorentz_margin(x) >= -tol.mem_at(x.norm());
}

/// Angle in [0, pi] between two non-zero vectors.
inline double angle(const Vector &x, const Vector &y) {
  if (x.size() != y.size())
    throw DimensionError("angle: vectors differ in length");
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0)
    throw std::invalid_argument("angle: zero vector");
  const double c = std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
  return std::acos(c);
}

inline Vector entrywise_power(const Vector &x, unsigned l) {
  if (l == 0)
    throw std::invalid_argument("entrywise_power: exponent must be a positive integer");
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (unsigned k = 0; k < l; ++k)
      p *= x(i);
    out(i) = p;
  }
  return out;
}

enum class Halfspace { UpperOpen, Lower, OnH0 };

constexpr std::string_view to_string(Halfspace h) {
  switch (h) {
  case Halfspace::UpperOpen:
    return "upper";
  case Halfspace::Lower:
    return "lower";
  case Halfspace::OnH0:
    return "on_h0";
  }
  return "on_h0";
}

/// Side of the hyperplane {x_n = 0}.
inline Halfspace halfspace_classify(const Vector &x, const Tolerances &tol = {}) {
  if (x.size() < 2)
    throw DimensionError("halfspace_classify: length must be >= 2");
  const double last = x(x.size() - 1);
  if (last > tol.eq)
    return Halfspace::UpperOpen;
  if (last < -tol.eq)
    return Halfspace::Lower;
  return Halfspace::OnH0;
}

struct ProductBound {
  double lhs;
  double rhs;
};

/// sum_{k<n} x_k y_k against x_n y_n for x, y in the cone (lhs <= rhs).
inline ProductBound pairwise_product_bound(const Vector &x, const Vector &y, const Tolerances &tol = {}) {
  if (x.size() != y.size())
    throw DimensionError("pairwise_product_bound: vectors differ in length");
  if (!in_lorentz(x, tol) || !in_lorentz(y, tol))
    throw PreconditionError("pairwise_product_bound: inputs must lie in the Lorentz cone");
  const Eigen::Index m = x.size() - 1;
  return {x.head(m).dot(y.head(m)), x(m) * y(m)};
}

/// Three-factor version: sum_{k<n} x_k y_k z_k against x_n y_n z_n.
inline ProductBound triple_product_bound(const Vector &x, const Vector &y, const Vector &z,
                                         const Tolerances &tol = {}) {
  if (x.size() != y.size() || x.size() != z.size())
    throw DimensionError("triple_product_bound: vectors differ in length");
  if (!in_lorentz(x, tol) || !in_lorentz(y, tol) || !in_lorentz(z, tol))
    throw PreconditionError("triple_product_bound: inputs must lie in the Lorentz cone");
  const Eigen::Index m = x.size() - 1;
  return {x.head(m).cwiseProduct(y.head(m)).dot(z.head(m)), x(m) * y(m) * z(m)};
}

/// Euclidean projection onto the Lorentz cone.
inline Vector project_lorentz(const Vector &x) {
  const Eigen::Index m = x.size() - 1;
  const double t = x(m);
  const double s = x.head(m).norm();
  if (s <= t)
    return x;
  if (s <= -t)
    return Vector::Zero(x.size());
  const double a = 0.5 * (s + t);
  Vector p(x.size());
  p.head(m) = (a / s) * x.head(m);
  p(m) = a;
  return p;
}

inline Vector unit(Eigen::Index n, Eigen::Index i) { return Vector::Unit(n, i); }

/// e_n, the cone axis.
inline Vector axis(Eigen::Index n) { return Vector::Unit(n, n - 1); }

} // namespace lorentz
