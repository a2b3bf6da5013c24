#pragma once

// Search machinery behind decide().
//
// Both the primal and the dual question reduce to the same problem: given a
// square M, is there v in L^n_+ with M v in int L^n_+ (resp. in L^n_+)?
// Points of the cone other than 0 have v_n > 0, so we fix v = (w, 1) with
// ||w|| <= 1. On that slice
//
//     h(w) = (M v)_n - ||(M v)_{1:n-1}||
//
// is concave, so a supergradient method (for exploration) and a central-cut
// ellipsoid method (for a certified optimum) both apply.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "lorentz/cone.hpp"

namespace lorentz::detail {

struct SliceObjective {
  const Matrix &M;

  [[nodiscard]] Eigen::Index dim() const { return M.cols() - 1; }

  [[nodiscard]] Vector lift(const Vector &w) const {
    Vector v(w.size() + 1);
    v.head(w.size()) = w;
    v(w.size()) = 1.0;
    return v;
  }

  [[nodiscard]] double value(const Vector &w) const {
    const Vector z = M * lift(w);
    const Eigen::Index m = z.size() - 1;
    return z(m) - z.head(m).norm();
  }

  /// h(w) together with one supergradient.
  [[nodiscard]] double value_and_supergradient(const Vector &w, Vector &g) const {
    const Eigen::Index d = dim();
    const Vector z = M * lift(w);
    const Eigen::Index m = z.size() - 1;
    const double r = z.head(m).norm();
    g = M.row(m).head(d).transpose();
    if (r > 0.0)
      g.noalias() -= M.topLeftCorner(m, d).transpose() * (z.head(m) / r);
    return z(m) - r;
  }
};

struct SliceOptimum {
  Vector w;
  double value = -std::numeric_limits<double>::infinity();
};

inline Vector project_ball(Vector w) {
  const double r = w.norm();
  if (r > 1.0)
    w /= r;
  return w;
}

/// Uniform point of the unit ball in R^d.
inline Vector random_ball_point(Eigen::Index d, std::mt19937_64 &rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector w(d);
  for (Eigen::Index i = 0; i < d; ++i)
    w(i) = gauss(rng);
  const double r = w.norm();
  if (r == 0.0)
    return Vector::Zero(d);
  return w * (std::pow(unif(rng), 1.0 / static_cast<double>(d)) / r);
}

/// Projected supergradient ascent with steps step0 / sqrt(k).
inline SliceOptimum projected_ascent(const SliceObjective &f, Vector w, int iters, double step0) {
  SliceOptimum best{w, f.value(w)};
  Vector g;
  for (int k = 1; k <= iters; ++k) {
    const double h = f.value_and_supergradient(w, g);
    if (h > best.value) {
      best.value = h;
      best.w = w;
    }
    const double gn = g.norm();
    if (gn == 0.0)
      break;
    w = project_ball(w + (step0 / std::sqrt(static_cast<double>(k))) * (g / gn));
  }
  const double h = f.value(w);
  if (h > best.value)
    best = {w, h};
  return best;
}

/// Central-cut ellipsoid method for max h over the unit ball (d >= 2).
/// Falls back to bisection on the supergradient sign when d == 1.
inline SliceOptimum ellipsoid_maximize(const SliceObjective &f, double width_tol = 1e-14) {
  const Eigen::Index d = f.dim();
  SliceOptimum best;
  Vector g;

  if (d == 1) {
    double lo = -1.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > width_tol; ++it) {
      Vector w(1);
      w(0) = 0.5 * (lo + hi);
      const double h = f.value_and_supergradient(w, g);
      if (h > best.value)
        best = {w, h};
      if (g(0) > 0.0)
        lo = w(0);
      else if (g(0) < 0.0)
        hi = w(0);
      else
        break;
    }
    for (double end : {-1.0, 1.0}) {
      Vector w(1);
      w(0) = end;
      const double h = f.value(w);
      if (h > best.value)
        best = {w, h};
    }
    return best;
  }

  const double dd = static_cast<double>(d);
  const int max_iters = 100 + static_cast<int>(2.0 * dd * (dd + 1.0) * 40.0);
  Vector c = Vector::Zero(d);
  Matrix P = Matrix::Identity(d, d);
  for (int it = 0; it < max_iters; ++it) {
    Vector cut;
    const double r = c.norm();
    if (r > 1.0) {
      cut = c / r;
    } else {
      const double h = f.value_and_supergradient(c, g);
      if (h > best.value)
        best = {c, h};
      if (g.norm() == 0.0)
        break;
      cut = -g;
    }
    const Vector Pg = P * cut;
    const double gPg = cut.dot(Pg);
    if (!(gPg > 0.0) || std::sqrt(gPg) < width_tol)
      break;
    const Vector b = Pg / std::sqrt(gPg);
    c -= b / (dd + 1.0);
    P = (dd * dd / (dd * dd - 1.0)) * (P - (2.0 / (dd + 1.0)) * (b * b.transpose()));
    P = 0.5 * (P + P.transpose());
  }
  if (c.norm() <= 1.0) {
    const double h = f.value(c);
    if (h > best.value)
      best = {c, h};
  }
  return best;
}

// ---------------------------------------------------------------------------
// n = 2: angle sweep over the unit arc of L^2_+, theta in [pi/4, 3pi/4].

struct ArcSweep {
  double theta = std::numbers::pi / 2;
  double value = -std::numeric_limits<double>::infinity();
  /// Endpoints of the arcs where the objective changes sign, refined by
  /// bisection; together with the arc ends they delimit the feasible set.
  std::vector<double> sign_changes;
};

inline Vector arc_point(double theta) {
  Vector v(2);
  v << std::cos(theta), std::sin(theta);
  return v;
}

/// Sweep h(theta) = (M v)_2 - |(M v)_1| with v = (cos theta, sin theta).
/// The maximum lies at an arc end, at a kink ((M v)_1 = 0) or at a
/// stationary point of one smooth branch, all of which are evaluated.
inline ArcSweep sweep_arc(const Matrix &M, int samples = 10000, double theta_tol = 1e-12) {
  constexpr double lo = std::numbers::pi / 4;
  constexpr double hi = 3 * std::numbers::pi / 4;
  auto h = [&](double t) {
    const Vector z = M * arc_point(t);
    return z(1) - std::abs(z(0));
  };
  auto first = [&](double t) { return (M.row(0) * arc_point(t))(0); };
  auto bisect = [&](auto &&fn, double a, double b) {
    double fa = fn(a);
    while (b - a > theta_tol) {
      const double m = 0.5 * (a + b);
      const double fm = fn(m);
      if ((fm > 0.0) == (fa > 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };

  ArcSweep out;
  auto consider = [&](double t) {
    if (t < lo || t > hi)
      return;
    const double v = h(t);
    if (v > out.value) {
      out.value = v;
      out.theta = t;
    }
  };

  double prev_t = lo;
  double prev_h = h(lo);
  double prev_z = first(lo);
  consider(lo);
  for (int i = 1; i <= samples; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / samples;
    const double ht = h(t);
    const double zt = first(t);
    consider(t);
    if ((ht > 0.0) != (prev_h > 0.0))
      out.sign_changes.push_back(bisect(h, prev_t, t));
    if ((zt > 0.0) != (prev_z > 0.0))
      consider(bisect(first, prev_t, t));
    prev_t = t;
    prev_h = ht;
    prev_z = zt;
  }
  // Branch z_2 -/+ z_1 = p cos t + q sin t peaks at atan2(q, p).
  for (double s : {-1.0, 1.0}) {
    const double p = M(1, 0) + s * M(0, 0);
    const double q = M(1, 1) + s * M(0, 1);
    if (p != 0.0 || q != 0.0) {
      double t = std::atan2(q, p);
      if (t < 0.0)
        t += 2 * std::numbers::pi;
      consider(t);
    }
  }
  return out;
}

} // namespace lorentz::detail
