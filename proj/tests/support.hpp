#pragma once

// Shared generators and raw-loop reference checks for the test suites. The
// checks here deliberately avoid the library's membership code.

#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <random>
#include <vector>

#include "lorentz/lorentz.hpp"

namespace testing_support {

using lorentz::Matrix;
using lorentz::Vector;

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto &r : rows) {
    Eigen::Index j = 0;
    for (double v : r)
      A(i, j++) = v;
    ++i;
  }
  return A;
}

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs)
    v(i++) = x;
  return v;
}

/// x_n >= -slack and sum_{i<n} x_i^2 <= x_n^2 + slack, by hand.
inline bool raw_in_cone(const Vector &x, double slack) {
  const Eigen::Index n = x.size();
  double head = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    head += x(i) * x(i);
  const double last = x(n - 1);
  return last >= -slack && std::sqrt(head) <= last + slack;
}

/// sqrt(sum_{i<n} x_i^2) < x_n - slack, by hand.
inline bool raw_in_interior(const Vector &x, double slack) {
  const Eigen::Index n = x.size();
  double head = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    head += x(i) * x(i);
  return std::sqrt(head) < x(n - 1) - slack;
}

/// Raw re-check of a primal witness with the default tolerance scale.
inline bool raw_primal_ok(const Matrix &A, const Vector &x) {
  const Vector Ax = A * x;
  return raw_in_cone(x, 1e-9 * (1.0 + x.norm())) && raw_in_interior(Ax, 0.0);
}

/// Raw re-check of a dual witness.
inline bool raw_dual_ok(const Matrix &A, const Vector &y) {
  const Vector Aty = A.transpose() * y;
  return y.norm() > 0.0 && raw_in_cone(Vector(-y), 1e-9 * (1.0 + y.norm())) &&
         raw_in_cone(Aty, 1e-9 * (1.0 + Aty.norm()));
}

inline Matrix gaussian(Eigen::Index n, std::mt19937_64 &rng, double sigma = 1.0) {
  std::normal_distribution<double> g(0.0, sigma);
  Matrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      A(i, j) = g(rng);
  return A;
}

inline Vector gaussian_vector(Eigen::Index n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = g(rng);
  return v;
}

/// Haar-ish random orthogonal matrix (QR of a Gaussian, sign-fixed).
inline Matrix random_orthogonal(Eigen::Index n, std::mt19937_64 &rng) {
  const Matrix G = gaussian(n, rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (R(j, j) < 0.0)
      Q.col(j) *= -1.0;
  return Q;
}

/// Invertible matrix with condition number below max_cond.
inline Matrix random_invertible(Eigen::Index n, std::mt19937_64 &rng, double max_cond = 1e4) {
  while (true) {
    Matrix A = gaussian(n, rng);
    if (lorentz::detail::condition_number(A) < max_cond)
      return A;
  }
}

/// Random point of L^n_+ with x_n in [0.1, 1] and head radius up to 0.999 x_n.
inline Vector random_cone_point(Eigen::Index n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector head = gaussian_vector(n - 1, rng);
  head.normalize();
  const double t = 0.1 + 0.9 * u(rng);
  Vector x(n);
  x.head(n - 1) = head * (0.999 * t * u(rng));
  x(n - 1) = t;
  return x;
}

/// Unit boundary ray (u, 1) / sqrt(2).
inline Vector random_boundary_ray(Eigen::Index n, std::mt19937_64 &rng) {
  Vector head = gaussian_vector(n - 1, rng);
  head.normalize();
  Vector x(n);
  x.head(n - 1) = head;
  x(n - 1) = 1.0;
  return x / std::sqrt(2.0);
}

/// Lorentz boost in the (i, n) plane with rapidity phi; leaves L^n_+ invariant.
inline Matrix boost(Eigen::Index n, Eigen::Index i, double phi) {
  Matrix B = Matrix::Identity(n, n);
  B(i, i) = std::cosh(phi);
  B(n - 1, n - 1) = std::cosh(phi);
  B(i, n - 1) = std::sinh(phi);
  B(n - 1, i) = std::sinh(phi);
  return B;
}

/// Block diag(R, 1) with R orthogonal of size n-1.
inline Matrix spatial_rotation(Eigen::Index n, std::mt19937_64 &rng) {
  Matrix R = Matrix::Identity(n, n);
  if (n > 2)
    R.topLeftCorner(n - 1, n - 1) = random_orthogonal(n - 1, rng);
  else
    R(0, 0) = (rng() & 1u) ? 1.0 : -1.0;
  return R;
}

/// Random element of the orthochronous Lorentz group (invariant matrix).
inline Matrix random_lorentz_transform(Eigen::Index n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_int_distribution<Eigen::Index> axis(0, n - 2);
  return spatial_rotation(n, rng) * boost(n, axis(rng), u(rng)) * spatial_rotation(n, rng);
}

} // namespace testing_support
