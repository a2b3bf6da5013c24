#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lorentz/geometry.hpp"
#include "lorentz/oracle.hpp"
#include "support.hpp"

using namespace lorentz;
using testing_support::mat;
using testing_support::vec;

namespace {

Matrix J(Eigen::Index n) { return detail::lorentz_form(n); }

} // namespace

TEST(Inertia, Examples) {
  EXPECT_EQ(inertia(J(4)), (Inertia{3, 0, 1}));
  EXPECT_EQ(inertia(Matrix::Identity(3, 3)), (Inertia{3, 0, 0}));
  EXPECT_EQ(inertia(mat({{0, 0.5}, {0.5, 0}})), (Inertia{1, 0, 1}));
  EXPECT_EQ(inertia(mat({{1, 0}, {0, 0}})), (Inertia{1, 1, 0}));
  EXPECT_THROW(inertia(mat({{0, 1}, {0, 0}})), StructureError);
  EXPECT_THROW(inertia(Matrix(2, 3)), DimensionError);
}

TEST(EllipsoidalRep, Examples) {
  EllipsoidalRep r = ellipsoidal_rep_from_map(Matrix::Identity(3, 3));
  EXPECT_TRUE(r.Q.isApprox(J(3)));
  EXPECT_TRUE(r.u.isApprox(axis(3)));
  EXPECT_NEAR(r.lambda, -1.0, 1e-15);

  r = ellipsoidal_rep_from_map(Matrix(vec({1, 2}).asDiagonal()));
  EXPECT_TRUE(r.Q.isApprox(Matrix(vec({1, -0.25}).asDiagonal())));
  EXPECT_TRUE(r.u.isApprox(axis(2)));
  EXPECT_NEAR(r.lambda, -0.25, 1e-15);
  EXPECT_TRUE(r.contains(vec({0.5, 1})));
  EXPECT_FALSE(r.contains(vec({0.6, 1})));
  EXPECT_FALSE(r.contains(vec({0.5, -1})));

  const Matrix X = mat({{1, -1}, {1, 1}});
  r = ellipsoidal_rep_from_map(X);
  EXPECT_TRUE(r.Q.isApprox(mat({{0, 0.5}, {0.5, 0}}), 1e-15));
  EXPECT_NEAR(r.lambda, -0.5, 1e-15);
  EXPECT_TRUE(r.u.isApprox(vec({-1, 1}) / std::sqrt(2.0), 1e-15));
  EXPECT_TRUE(r.contains(vec({0, 2})));
  EXPECT_TRUE(r.contains(vec({-2, 0})));
  EXPECT_TRUE(r.contains(vec({-1, 1})));
  EXPECT_FALSE(r.contains(vec({1, 1})));
  EXPECT_FALSE(r.contains(vec({2, 0})));

  EXPECT_THROW(ellipsoidal_rep_from_map(Matrix::Zero(2, 2)), SingularMatrixError);
  EXPECT_THROW(ellipsoidal_rep_from_map(mat({{1, 1}, {1, 1 + 1e-12}})), SingularMatrixError);
}

TEST(ConeDescriptor, MembershipKinds) {
  EXPECT_EQ(cone_membership(OrthantCone{3}, vec({1, 2, 3})).cls, MembershipClass::Interior);
  EXPECT_EQ(cone_membership(OrthantCone{3}, vec({0, 2, 3})).cls, MembershipClass::Boundary);
  EXPECT_EQ(cone_membership(OrthantCone{3}, vec({-1, 2, 3})).cls, MembershipClass::Exterior);
  const LinearImageCone Y(mat({{1, -1}, {1, 1}}));
  EXPECT_EQ(cone_membership(Y, vec({-1, 1})).cls, MembershipClass::Interior);
  EXPECT_EQ(cone_membership(Y, vec({0, 2})).cls, MembershipClass::Boundary);
  EXPECT_EQ(cone_membership(Y, vec({1, 1})).cls, MembershipClass::Exterior);
  EXPECT_THROW(LinearImageCone(mat({{1, 2}, {2, 4}})), SingularMatrixError);
  EXPECT_THROW(cone_membership(LorentzCone(3), vec({1, 1})), DimensionError);
}

TEST(Preimage, Examples) {
  EXPECT_EQ(preimage_membership(Matrix::Identity(3, 3), LorentzCone(3), axis(3)).cls, MembershipClass::Interior);
  EXPECT_EQ(preimage_membership(mat({{2, 0}, {0, 1}}), LorentzCone(2), vec({0.5, 1})).cls,
            MembershipClass::Boundary);
  EXPECT_EQ(preimage_membership(Matrix::Zero(2, 2), LorentzCone(2), vec({-4, 1})).cls, MembershipClass::Boundary);
  EXPECT_THROW(preimage_membership(Matrix::Identity(3, 3), LorentzCone(2), vec({1, 1})), DimensionError);
}

TEST(SemipositiveCone, Examples) {
  const Matrix F = mat({{-1, 0}, {0, 1}});
  EXPECT_TRUE(semipositive_cone_membership(Matrix::Identity(2, 2), LorentzCone(2), vec({0, 1})));
  EXPECT_TRUE(semipositive_cone_membership(F, LorentzCone(2), vec({1, 1})));
  EXPECT_FALSE(semipositive_cone_membership(F, LorentzCone(2), vec({2, 1})));
}

TEST(Extremal, Examples) {
  EXPECT_TRUE(is_extremal(LorentzCone(3), vec({3, 4, 5})));
  EXPECT_FALSE(is_extremal(LorentzCone(3), axis(3)));
  EXPECT_TRUE(is_extremal(OrthantCone{3}, unit(3, 0)));
  EXPECT_FALSE(is_extremal(OrthantCone{3}, vec({1, 1, 0})));
  EXPECT_TRUE(is_extremal(LinearImageCone(mat({{1, -1}, {1, 1}})), vec({0, 2})));
  EXPECT_THROW(is_extremal(LorentzCone(2), vec({0, 0})), std::invalid_argument);
}

TEST(Extremal, PushforwardExamples) {
  const Matrix A = vec({2, 1}).asDiagonal();
  Vector xp = extremal_pushforward(A, LorentzCone(2), vec({1, 1}));
  EXPECT_TRUE(xp.isApprox(vec({0.5, 1})));
  EXPECT_EQ(membership(Vector(A * xp)).cls, MembershipClass::Boundary);

  xp = extremal_pushforward(Matrix::Identity(3, 3), LorentzCone(3), vec({3, 4, 5}));
  EXPECT_TRUE(xp.isApprox(vec({3, 4, 5})));

  const Matrix T = mat({{1, -1}, {1, 1}});
  xp = extremal_pushforward(T, LorentzCone(2), vec({1, 1}));
  EXPECT_NEAR(xp(0), 1.0, 1e-15);
  EXPECT_NEAR(xp(1), 0.0, 1e-15);

  EXPECT_THROW(extremal_pushforward(A, LorentzCone(2), vec({0, 1})), PreconditionError);
  EXPECT_THROW(extremal_pushforward(Matrix::Zero(2, 2), LorentzCone(2), vec({1, 1})), SingularMatrixError);
}

TEST(Invariance, Examples) {
  EXPECT_TRUE(is_invariant(Matrix::Identity(3, 3)));
  EXPECT_TRUE(is_invariant(Matrix(vec({1, 2}).asDiagonal())));
  EXPECT_FALSE(is_invariant(Matrix(vec({2, 1}).asDiagonal())));
  EXPECT_FALSE(is_invariant(Matrix(-Matrix::Identity(2, 2))));
  EXPECT_TRUE(is_invariant(Matrix::Zero(3, 3)));
  // A maps e_n to 0 but tilts everything else out of the cone.
  Matrix E = Matrix::Zero(3, 3);
  E(2, 0) = 1.0;
  EXPECT_FALSE(is_invariant(E));
  EXPECT_TRUE(is_invariant(testing_support::boost(3, 0, 0.7)));
  EXPECT_THROW(is_invariant(Matrix(2, 3)), DimensionError);
}

TEST(Monotone, Examples) {
  EXPECT_TRUE(is_monotone(Matrix::Identity(3, 3)));
  EXPECT_TRUE(is_monotone(Matrix(vec({2, 1}).asDiagonal())));
  EXPECT_FALSE(is_monotone(Matrix(vec({1, 2}).asDiagonal())));
  EXPECT_FALSE(is_monotone(Matrix::Zero(2, 2)));
}

TEST(SCone, Examples) {
  EllipsoidalCheck e = s_cone_is_ellipsoidal(Matrix::Identity(3, 3));
  ASSERT_TRUE(e.ellipsoidal);
  EXPECT_TRUE(e.rep->Q.isApprox(J(3)));

  e = s_cone_is_ellipsoidal(Matrix(vec({1, 2, 3}) * vec({0, 1, 1}).transpose()));
  EXPECT_FALSE(e.ellipsoidal);
  EXPECT_FALSE(e.rep.has_value());

  e = s_cone_is_ellipsoidal(Matrix(vec({1, 2}).asDiagonal()));
  ASSERT_TRUE(e.ellipsoidal);
  const EllipsoidalRep expected = ellipsoidal_rep_from_map(Matrix(vec({1, 0.5}).asDiagonal()));
  EXPECT_TRUE(e.rep->Q.isApprox(expected.Q));
  EXPECT_TRUE(e.rep->u.isApprox(expected.u));
}

TEST(KCone, Examples) {
  ConeComparison k = k_cone_under_monotone(Matrix::Identity(2, 2));
  EXPECT_TRUE(k.coincides);
  EXPECT_TRUE(k.by_monotonicity);
  EXPECT_TRUE(k.rep->Q.isApprox(J(2)));

  k = k_cone_under_monotone(Matrix(vec({2, 1}).asDiagonal()));
  EXPECT_TRUE(k.coincides);
  EXPECT_TRUE(k.rep.has_value());

  // A reflection maps L onto itself, so it is monotone.
  k = k_cone_under_monotone(mat({{-1, 0}, {0, 1}}));
  EXPECT_TRUE(k.coincides);

  const Matrix A = mat({{0, 2}, {0.5, 0}});
  EXPECT_FALSE(is_monotone(A));
  EXPECT_FALSE(semipositive_cone_membership(A, LorentzCone(2), vec({2, 0.5})));
  EXPECT_NE(preimage_membership(A, LorentzCone(2), vec({2, 0.5})).cls, MembershipClass::Exterior);
  k = k_cone_under_monotone(A);
  EXPECT_FALSE(k.coincides);
  ASSERT_TRUE(k.separator.has_value());
  EXPECT_EQ(membership(*k.separator).cls, MembershipClass::Exterior);
  EXPECT_NE(membership(Vector(A * *k.separator)).cls, MembershipClass::Exterior);

  // Singular: the kernel direction separates.
  const Matrix S = mat({{1, 0}, {0, 0}});
  k = k_cone_under_monotone(S);
  EXPECT_FALSE(k.coincides);
  ASSERT_TRUE(k.separator.has_value());
}

// --- properties ---------------------------------------------------------------

class GeometryProperties : public ::testing::TestWithParam<int> {};

TEST_P(GeometryProperties, RepresentationAgreesWithPullback) {
  const int n = GetParam();
  std::mt19937_64 rng(40 + n);
  int disagreements = 0;
  for (int t = 0; t < 40; ++t) {
    const Matrix X = testing_support::random_invertible(n, rng);
    const EllipsoidalRep r = ellipsoidal_rep_from_map(X);
    EXPECT_EQ(inertia(r.Q), (Inertia{n - 1, 0, 1}));
    EXPECT_GT(r.u.dot(X.col(n - 1)), 0.0);
    const Matrix Xinv = X.inverse();
    for (int s = 0; s < 100; ++s) {
      const Vector z = testing_support::gaussian_vector(n, rng);
      const MembershipClass c = membership(Vector(Xinv * z)).cls;
      if (c == MembershipClass::Boundary)
        continue;
      if (r.contains(z) != (c == MembershipClass::Interior))
        ++disagreements;
    }
  }
  EXPECT_LE(disagreements, 1);
}

TEST_P(GeometryProperties, RepresentationNearBoundaryOnlyDisagreesInBand) {
  const int n = GetParam();
  std::mt19937_64 rng(60 + n);
  for (int t = 0; t < 40; ++t) {
    const Matrix X = testing_support::random_invertible(n, rng, 1e2);
    const EllipsoidalRep r = ellipsoidal_rep_from_map(X);
    const Matrix Xinv = X.inverse();
    for (int s = 0; s < 100; ++s) {
      const Vector z = X * testing_support::random_boundary_ray(n, rng) + 1e-3 * testing_support::gaussian_vector(n, rng);
      const Vector w = Xinv * z;
      const Membership m = membership(w);
      if (r.contains(z) != (m.cls != MembershipClass::Exterior)) {
        EXPECT_LE(std::abs(m.margin), 1e-5 * (1.0 + w.norm())) << X;
      }
    }
  }
}

TEST_P(GeometryProperties, PushforwardLandsOnBoundary) {
  const int n = GetParam();
  std::mt19937_64 rng(50 + n);
  for (int t = 0; t < 100; ++t) {
    const Matrix A = testing_support::random_invertible(n, rng);
    const Vector x = testing_support::random_boundary_ray(n, rng);
    const Vector xp = extremal_pushforward(A, LorentzCone(n), x);
    EXPECT_LE((A * xp - x).norm(), 1e-9 * x.norm());
    const EllipsoidalRep r = s_cone_is_ellipsoidal(A).rep.value();
    const double q = xp.dot(r.Q * xp) / (r.Q.norm() * xp.squaredNorm());
    EXPECT_LE(std::abs(q), 1e-9);
  }
}

// The sampling oracle stops at n = 4.
class InvarianceProperties : public ::testing::TestWithParam<int> {};

TEST_P(InvarianceProperties, InvariantAgreesWithRaySampling) {
  const int n = GetParam();
  std::mt19937_64 rng(60 + n);
  const oracle::SamplerConfig cfg{1, 1, 2000};
  for (int t = 0; t < 60; ++t) {
    Matrix A = t % 2 ? testing_support::random_lorentz_transform(n, rng) : testing_support::gaussian(n, rng);
    if (t % 4 == 1)
      A += 0.05 * testing_support::gaussian(n, rng);
    const InvarianceDetail d = invariance_detail(A);
    const oracle::InvarianceSweep s = oracle::brute_force_invariant_sweep(A, cfg);
    // Near-boundary cases (worst ray margin within 1e-6) are excused.
    if (std::abs(s.worst_margin) < 1e-6 * (1.0 + A.norm()))
      continue;
    EXPECT_EQ(d.invariant, s.invariant) << A << "\nworst " << s.worst_margin << " lambda " << d.lambda_max;
  }
}

TEST_P(GeometryProperties, MonotoneMeansPreimageInCone) {
  const int n = GetParam();
  std::mt19937_64 rng(70 + n);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    const Matrix M = testing_support::random_lorentz_transform(n, rng);
    const Matrix A = M.inverse();
    ASSERT_TRUE(is_monotone(A));
    for (int s = 0; s < 200; ++s) {
      const Vector y = testing_support::gaussian_vector(n, rng);
      if (!in_lorentz(Vector(A * y)))
        continue;
      ++checked;
      EXPECT_TRUE(testing_support::raw_in_cone(y, 1e-9 * (1.0 + y.norm())));
    }
  }
  EXPECT_GT(checked, 100);
}

TEST_P(GeometryProperties, SelfDuality) {
  const int n = GetParam();
  const auto xs = oracle::sample_lorentz(n, {static_cast<std::uint64_t>(n), 300, 10});
  const auto ys = oracle::sample_lorentz(n, {static_cast<std::uint64_t>(n + 99), 300, 10});
  for (std::size_t i = 0; i < xs.size(); ++i)
    EXPECT_GE(xs[i].dot(ys[i]), -1e-9);
  std::mt19937_64 rng(80 + n);
  int found = 0;
  while (found < 100) {
    const Vector x = testing_support::gaussian_vector(n, rng);
    if (in_lorentz(x))
      continue;
    ++found;
    const Vector y = project_lorentz(x) - x;
    EXPECT_TRUE(in_lorentz(y));
    EXPECT_LT(x.dot(y), 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, GeometryProperties, ::testing::Values(2, 3, 4, 5));
INSTANTIATE_TEST_SUITE_P(Dims, InvarianceProperties, ::testing::Values(2, 3, 4));
