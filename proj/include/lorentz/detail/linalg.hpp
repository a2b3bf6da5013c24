#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>

#include "lorentz/cone.hpp"
#include "lorentz/errors.hpp"

namespace lorentz::detail {

/// Matrices with a 2-norm condition number above this are treated as singular.
inline constexpr double kMaxCondition = 1e8;

inline void require_square(const Matrix &A, const char *what) {
  if (A.rows() != A.cols())
    throw DimensionError(std::string(what) + ": matrix must be square");
  if (A.rows() < 2)
    throw DimensionError(std::string(what) + ": matrix dimension must be >= 2");
}

inline void require_length(const Matrix &A, const Vector &x, const char *what) {
  if (x.size() != A.cols())
    throw DimensionError(std::string(what) + ": vector length does not match matrix");
}

inline double condition_number(const Matrix &A) {
  Eigen::JacobiSVD<Matrix> svd(A);
  const auto &s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (smax == 0.0 || smin == 0.0)
    return std::numeric_limits<double>::infinity();
  return smax / smin;
}

inline bool well_conditioned(const Matrix &A, double max_cond = kMaxCondition) {
  return condition_number(A) <= max_cond;
}

/// Inverse of a square matrix, rejecting singular or ill-conditioned input.
inline Matrix checked_inverse(const Matrix &A, const char *what) {
  if (A.rows() != A.cols())
    throw DimensionError(std::string(what) + ": matrix must be square");
  if (!well_conditioned(A))
    throw SingularMatrixError(std::string(what) + ": matrix is singular or ill-conditioned");
  return A.fullPivLu().inverse();
}

/// diag(1, ..., 1, -1)
inline Matrix lorentz_form(Eigen::Index n) {
  Matrix J = Matrix::Identity(n, n);
  J(n - 1, n - 1) = -1.0;
  return J;
}

inline double spectral_norm(const Matrix &A) {
  if (A.size() == 0)
    return 0.0;
  Eigen::JacobiSVD<Matrix> svd(A);
  return svd.singularValues()(0);
}

inline bool is_symmetric(const Matrix &A, double eps) {
  return A.rows() == A.cols() && (A - A.transpose()).cwiseAbs().maxCoeff() <= eps;
}

} // namespace lorentz::detail
