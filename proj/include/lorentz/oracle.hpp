#pragma once

// Brute-force references. Nothing here calls into the decision engine; the
// point is to have a slow, obviously-correct second opinion for tests.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "lorentz/certificate.hpp"
#include "lorentz/cone.hpp"
#include "lorentz/errors.hpp"

namespace lorentz::oracle {

struct SamplerConfig {
  std::uint64_t seed = 1;
  int count = 1000;
  int resolution = 100;

  void validate() const {
    if (count < 1)
      throw std::invalid_argument("SamplerConfig: count must be >= 1");
    if (resolution < 10)
      throw std::invalid_argument("SamplerConfig: resolution must be >= 10");
  }
};

namespace detail {

inline Vector random_direction(Eigen::Index d, std::mt19937_64 &rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(d);
  double r = 0.0;
  while (r == 0.0) {
    for (Eigen::Index i = 0; i < d; ++i)
      u(i) = gauss(rng);
    r = u.norm();
  }
  return u / r;
}

/// Unit-norm margin sqrt(2) z_n - ||z|| of z = A x / ||x||.
inline double unit_margin(const Matrix &A, const Vector &v) {
  const Vector z = A * (v / v.norm());
  return std::numbers::sqrt2 * z(z.size() - 1) - z.norm();
}

/// Points (w, 1) of the cone slice with ||w|| <= 1 on a polar grid.
inline std::vector<Vector> slice_grid(Eigen::Index n, int resolution) {
  std::vector<Vector> pts;
  auto lift = [n](const Vector &w) {
    Vector v(n);
    v.head(n - 1) = w;
    v(n - 1) = 1.0;
    return v;
  };
  if (n == 3) {
    const int R = resolution;
    pts.push_back(lift(Vector::Zero(2)));
    for (int i = 1; i < R; ++i) {
      const double r = static_cast<double>(i) / (R - 1);
      for (int j = 0; j < R; ++j) {
        const double phi = 2 * std::numbers::pi * j / R;
        Vector w(2);
        w << r * std::cos(phi), r * std::sin(phi);
        pts.push_back(lift(w));
      }
    }
  } else {
    const int R = std::max(6, static_cast<int>(std::ceil(std::pow(resolution, 2.0 / 3.0))));
    pts.push_back(lift(Vector::Zero(3)));
    for (int i = 1; i < R; ++i) {
      const double r = static_cast<double>(i) / (R - 1);
      for (int j = 0; j <= R; ++j) {
        const double theta = std::numbers::pi * j / R;
        for (int k = 0; k < R; ++k) {
          const double phi = 2 * std::numbers::pi * k / R;
          Vector w(3);
          w << r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi), r * std::cos(theta);
          pts.push_back(lift(w));
        }
      }
    }
  }
  return pts;
}

struct SearchResult {
  Vector v;
  double margin;
};

/// Grid search over the slice, then random local refinement with a radius
/// shrinking from the grid spacing down to ~1e-10.
inline SearchResult grid_search(const Matrix &M, const SamplerConfig &cfg) {
  const Eigen::Index n = M.rows();
  SearchResult best{Vector(), -std::numeric_limits<double>::infinity()};
  for (const Vector &v : slice_grid(n, cfg.resolution)) {
    const double m = unit_margin(M, v);
    if (m > best.margin)
      best = {v, m};
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double r0 = 2.0 / cfg.resolution;
  for (int i = 0; i < cfg.count; ++i) {
    const double radius = r0 * std::pow(1e-9, static_cast<double>(i) / cfg.count);
    Vector w = best.v.head(n - 1) + radius * unif(rng) * random_direction(n - 1, rng);
    const double wn = w.norm();
    if (wn > 1.0)
      w /= wn;
    Vector v(n);
    v.head(n - 1) = w;
    v(n - 1) = 1.0;
    const double m = unit_margin(M, v);
    if (m > best.margin)
      best = {v, m};
  }
  best.v /= best.v.norm();
  return best;
}

/// Golden-section maximisation of fn on [a, b].
template <typename F> double golden_max(F &&fn, double a, double b, double tol = 1e-13) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

/// n = 2: grid on the arc theta in [pi/4, 3pi/4] plus two rounds of local
/// golden-section refinement around the best sample.
inline SearchResult arc_search(const Matrix &M, const SamplerConfig &cfg) {
  constexpr double lo = std::numbers::pi / 4;
  constexpr double hi = 3 * std::numbers::pi / 4;
  auto point = [](double t) {
    Vector v(2);
    v << std::cos(t), std::sin(t);
    return v;
  };
  auto f = [&](double t) { return unit_margin(M, point(t)); };
  const int N = cfg.resolution;
  double best_t = lo;
  double best = f(lo);
  for (int i = 1; i <= N; ++i) {
    const double t = lo + (hi - lo) * i / N;
    const double v = f(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  const double h = (hi - lo) / N;
  for (double width : {h, h * 1e-3}) {
    const double a = std::max(lo, best_t - width);
    const double b = std::min(hi, best_t + width);
    const double t = golden_max(f, a, b);
    if (f(t) > best) {
      best = f(t);
      best_t = t;
    }
  }
  return {point(best_t), best};
}

} // namespace detail

/// Samples of L^n_+: x_n uniform in (0, 1], leading block uniform in the
/// disk of radius x_n.
inline std::vector<Vector> sample_lorentz(Eigen::Index n, const SamplerConfig &cfg) {
  if (n < 2)
    throw DimensionError("sample_lorentz: n must be >= 2");
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(cfg.count));
  const double dim = static_cast<double>(n - 1);
  for (int i = 0; i < cfg.count; ++i) {
    Vector x(n);
    const double t = 1.0 - unif(rng);
    const double r = t * std::pow(unif(rng), 1.0 / dim);
    x.head(n - 1) = r * detail::random_direction(n - 1, rng);
    x(n - 1) = t;
    out.push_back(std::move(x));
  }
  return out;
}

/// Unit-norm points of the boundary: (u, 1) / sqrt(2) with ||u|| = 1.
inline std::vector<Vector> sample_boundary(Eigen::Index n, const SamplerConfig &cfg) {
  if (n < 2)
    throw DimensionError("sample_boundary: n must be >= 2");
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(cfg.count));
  for (int i = 0; i < cfg.count; ++i) {
    Vector x(n);
    x.head(n - 1) = detail::random_direction(n - 1, rng);
    x(n - 1) = 1.0;
    out.push_back(x / std::numbers::sqrt2);
  }
  return out;
}

/// Exhaustive search for a primal witness, then for a dual witness.
/// Semipositive when the best primal margin exceeds the strict band,
/// NotSemipositive when the best dual margin does, Undecided otherwise.
inline Certificate brute_force_decide(const Matrix &A, const SamplerConfig &cfg, const Tolerances &tol = {}) {
  if (A.rows() != A.cols())
    throw DimensionError("brute_force_decide: matrix must be square");
  const Eigen::Index n = A.rows();
  if (n < 2 || n > 4)
    throw DimensionError("brute_force_decide: supported for 2 <= n <= 4 only");
  cfg.validate();

  auto search = [&](const Matrix &M) { return n == 2 ? detail::arc_search(M, cfg) : detail::grid_search(M, cfg); };

  const detail::SearchResult p = search(A);
  if (p.margin > tol.strict_at((A * p.v).norm()))
    return Certificate::semipositive(p.v, p.margin, "brute_force");

  // Dual: v = -y ranges over the cone, and we need -A^T v in L.
  const Matrix dual_map = -A.transpose();
  const detail::SearchResult d = search(dual_map);
  if (d.margin > tol.strict_at((dual_map * d.v).norm()))
    return Certificate::not_semipositive(Vector(-d.v), d.margin, "brute_force");

  Certificate c;
  c.verdict = Verdict::Undecided;
  c.margin = p.margin;
  c.band = tol.strict_at((A * p.v).norm());
  c.method = "brute_force";
  return c;
}

struct InvarianceSweep {
  bool invariant;
  /// Smallest unit margin of A r over the sampled boundary rays r.
  double worst_margin;
};

/// Boundary rays of L^n_+ used for the invariance check: both extreme rays
/// for n = 2, `resolution` evenly spaced rays for n = 3, a Fibonacci
/// lattice of `resolution` rays for n = 4. Unit norm.
inline std::vector<Vector> boundary_rays(Eigen::Index n, int resolution) {
  std::vector<Vector> rays;
  auto push = [&](const Vector &u) {
    Vector r(n);
    r.head(n - 1) = u;
    r(n - 1) = 1.0;
    rays.push_back(r / std::numbers::sqrt2);
  };
  if (n == 2) {
    for (double s : {-1.0, 1.0})
      push(Vector::Constant(1, s));
  } else if (n == 3) {
    for (int j = 0; j < resolution; ++j) {
      const double phi = 2 * std::numbers::pi * j / resolution;
      Vector u(2);
      u << std::cos(phi), std::sin(phi);
      push(u);
    }
  } else {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < resolution; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / resolution;
      const double r = std::sqrt(1.0 - z * z);
      Vector u(3);
      u << r * std::cos(golden * j), r * std::sin(golden * j), z;
      push(u);
    }
  }
  return rays;
}

inline InvarianceSweep brute_force_invariant_sweep(const Matrix &A, const SamplerConfig &cfg,
                                                   const Tolerances &tol = {}) {
  if (A.rows() != A.cols())
    throw DimensionError("brute_force_invariant: matrix must be square");
  const Eigen::Index n = A.rows();
  if (n < 2 || n > 4)
    throw DimensionError("brute_force_invariant: supported for 2 <= n <= 4 only");
  cfg.validate();
  InvarianceSweep out{true, std::numeric_limits<double>::infinity()};
  for (const Vector &r : boundary_rays(n, cfg.resolution)) {
    const Vector z = A * r;
    const double m = std::numbers::sqrt2 * z(n - 1) - z.norm();
    out.worst_margin = std::min(out.worst_margin, m);
    if (m < -tol.mem_at(z.norm()))
      out.invariant = false;
  }
  return out;
}

/// A L^n_+ subset of L^n_+, judged on sampled boundary rays.
inline bool brute_force_invariant(const Matrix &A, const SamplerConfig &cfg, const Tolerances &tol = {}) {
  return brute_force_invariant_sweep(A, cfg, tol).invariant;
}

} // namespace lorentz::oracle
