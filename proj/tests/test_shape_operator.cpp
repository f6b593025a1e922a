#include <gtest/gtest.h>

#include "gbq/shape_operator.hpp"

using namespace gbq;

TEST(ShapeOperator, SecondFundamentalFormSymmetric) {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const ShapeOperator sh = random_shape_operator(5, seed);
    const Mat h = sh.g * sh.S;
    EXPECT_LE((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(ShapeOperator, NewtonInvariants) {
  // Cayley-Hamilton: T_d = 0; sigma_d = det S; tr T_j = (d-j) sigma_j.
  const int d = 5;
  const ShapeOperator sh = random_shape_operator(d, 11);
  const NewtonData nd = sigma_newton(sh);
  EXPECT_LE(nd.T[d].cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_NEAR(nd.sigma[d], sh.S.determinant(), 1e-11);
  for (int j = 0; j <= d; ++j)
    EXPECT_NEAR(nd.T[j].trace(), (d - j) * nd.sigma[j], 1e-11) << "j=" << j;
}

TEST(ShapeOperator, UnitSphereGoldens) {
  // Unit sphere slice of Euclidean 5-space: g = I, S = I in dimension 4.
  ShapeOperator sh;
  sh.dim = 4;
  sh.g = Mat::Identity(4, 4);
  sh.S = Mat::Identity(4, 4);
  const NewtonData nd = sigma_newton(sh);
  EXPECT_NEAR(nd.sigma[1], 4.0, 1e-13);
  EXPECT_NEAR(nd.sigma[2], 6.0, 1e-13);
  EXPECT_NEAR(nd.sigma[3], 4.0, 1e-13);
  EXPECT_LE((nd.T[1] - 3.0 * Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-13);

  const AlgebraicCurvature ac = shape_to_curvature(sh);
  EXPECT_NEAR(lovelock(ac, 1).Lk, 12.0, 1e-12);
  EXPECT_NEAR(lovelock(ac, 2).Lk, 24.0, 1e-12);

  const EuclideanCorrespondence ec = euclidean_correspondence(sh, 1);
  EXPECT_NEAR(ec.H2k, 12.0, 1e-12);
  EXPECT_NEAR(ec.H2k1, 24.0, 1e-12);
  EXPECT_NEAR(ec.H2k1 / ec.H2k, 2.0, 1e-12);  // curvature quotient of the unit sphere
}

TEST(ShapeOperator, EuclideanCorrespondenceRandom) {
  for (int k = 0; k <= 2; ++k)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ShapeOperator sh = random_shape_operator(5, 1000 * (k + 1) + seed);
      const EuclideanCorrespondence ec = euclidean_correspondence(sh, k);
      EXPECT_LE(ec.rel_err_H2k, 1e-10) << "k=" << k << " seed=" << seed;
      EXPECT_LE(ec.rel_err_H2k1, 1e-10) << "k=" << k << " seed=" << seed;
      EXPECT_LE(ec.newton_err, 1e-10) << "k=" << k << " seed=" << seed;
    }
}

TEST(ShapeOperator, RejectsOrderBeyondOddDimension) {
  const ShapeOperator sh = random_shape_operator(4, 3);
  EXPECT_THROW(euclidean_correspondence(sh, 2), std::domain_error);
}
