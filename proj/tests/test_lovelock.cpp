#include <gtest/gtest.h>

#include <cstring>
#include <vector>

#include "gbq/gen_delta.hpp"
#include "gbq/lovelock.hpp"

using namespace gbq;

namespace {

// Runs fn(t) over every r-tuple with entries in [1, d], duplicates included.
template <typename F>
void all_tuples(int d, int r, F fn) {
  std::vector<int> t(r, 1);
  while (true) {
    fn(t);
    int p = 0;
    while (p < r && t[p] == d) t[p++] = 1;
    if (p == r) return;
    ++t[p];
  }
}

// Literal delta-contraction evaluation of L_k through gen_delta. The upper
// tuple is restricted to distinct values (the delta vanishes otherwise); the
// lower tuple runs over everything, so the oracle shares no permutation
// machinery with the production path.
double lk_oracle(const AlgebraicCurvature& ac, int k, bool restrict_upper) {
  const int d = ac.dim;
  const Mat ginv = inverse_metric(ac.g);
  const Tensor4 rud = detail::riemann_up_up(ac, ginv);
  double acc = 0.0;
  all_tuples(d, 2 * k, [&](const std::vector<int>& I) {
    if (restrict_upper) {
      for (int a = 0; a < 2 * k; ++a)
        for (int b = a + 1; b < 2 * k; ++b)
          if (I[a] == I[b]) return;
    }
    all_tuples(d, 2 * k, [&](const std::vector<int>& J) {
      const int dl = gen_delta(I, J, d);
      if (dl == 0) return;
      double prod = dl;
      for (int f = 0; f < k; ++f)
        prod *= rud(I[2 * f] - 1, I[2 * f + 1] - 1, J[2 * f] - 1, J[2 * f + 1] - 1);
      acc += prod;
    });
  });
  return std::ldexp(acc, -k);
}

Mat ek_oracle(const AlgebraicCurvature& ac, int k) {
  const int d = ac.dim;
  const Mat ginv = inverse_metric(ac.g);
  const Tensor4 rud = detail::riemann_up_up(ac, ginv);
  Mat mixed = Mat::Zero(d, d);  // E^i_j
  all_tuples(d, 2 * k + 1, [&](const std::vector<int>& U) {
    for (int a = 0; a < 2 * k + 1; ++a)
      for (int b = a + 1; b < 2 * k + 1; ++b)
        if (U[a] == U[b]) return;
    all_tuples(d, 2 * k + 1, [&](const std::vector<int>& V) {
      const int dl = gen_delta(U, V, d);
      if (dl == 0) return;
      double prod = dl;
      for (int f = 1; f <= k; ++f)
        prod *= rud(U[2 * f - 1] - 1, U[2 * f] - 1, V[2 * f - 1] - 1, V[2 * f] - 1);
      mixed(U[0] - 1, V[0] - 1) += prod;
    });
  });
  return -std::ldexp(1.0, -(k + 1)) * (mixed * ginv);
}

Tensor4 pk_oracle(const AlgebraicCurvature& ac, int k) {
  const int d = ac.dim;
  const Mat ginv = inverse_metric(ac.g);
  const Tensor4 rud = detail::riemann_up_up(ac, ginv);
  Tensor4 low(d);  // P^{st}_{ab} before raising
  all_tuples(d, 2 * k, [&](const std::vector<int>& U) {
    for (int a = 0; a < 2 * k; ++a)
      for (int b = a + 1; b < 2 * k; ++b)
        if (U[a] == U[b]) return;
    all_tuples(d, 2 * k, [&](const std::vector<int>& V) {
      const int dl = gen_delta(U, V, d);
      if (dl == 0) return;
      double prod = dl;
      for (int f = 0; f < k - 1; ++f)
        prod *= rud(U[2 * f] - 1, U[2 * f + 1] - 1, V[2 * f] - 1, V[2 * f + 1] - 1);
      low(U[2 * k - 2] - 1, U[2 * k - 1] - 1, V[2 * k - 2] - 1, V[2 * k - 1] - 1) += prod;
    });
  });
  Tensor4 p(d);
  const double scale = std::ldexp(1.0, -k);
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t)
      for (int l = 0; l < d; ++l)
        for (int j = 0; j < d; ++j) {
          double acc = 0.0;
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) acc += low(s, t, a, b) * ginv(a, l) * ginv(b, j);
          p(s, t, l, j) = scale * acc;
        }
  return p;
}

}  // namespace

TEST(Lovelock, OrderZeroConventions) {
  const AlgebraicCurvature ac = random_algebraic_curvature(4, 5);
  const LovelockData ld = lovelock(ac, 0);
  EXPECT_EQ(ld.Lk, 1.0);
  EXPECT_FALSE(ld.has_Pk);
  const Mat ginv = inverse_metric(ac.g);
  EXPECT_LE((ld.Ek + 0.5 * ginv).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(einstein_decomposition_residual(ac, ld), std::domain_error);
}

TEST(Lovelock, RejectsOrderBeyondDimension) {
  const AlgebraicCurvature ac = random_algebraic_curvature(3, 5);
  EXPECT_THROW(lovelock(ac, 2), std::domain_error);
  EXPECT_THROW(lovelock(ac, -1), std::invalid_argument);
}

TEST(Lovelock, SpaceFormClosedForm) {
  // L_k = d!/(d-2k)! c^k and E^{ij} = -(d-2k) L_k / (2d) g^{ij}.
  for (int d = 2; d <= 5; ++d)
    for (int k = 0; 2 * k <= d && k <= 2; ++k)
      for (double c : {-1.0, 0.5, 1.0}) {
        Rng rng(17 * d + k);
        const Mat g = random_metric(d, rng);
        const AlgebraicCurvature ac = space_form_curvature(g, c);
        const LovelockData ld = lovelock(ac, k);
        double want = 1.0;
        for (int i = d - 2 * k + 1; i <= d; ++i) want *= i;
        want *= std::pow(c, k);
        EXPECT_NEAR(ld.Lk, want, 1e-12 * std::max(1.0, std::fabs(want)))
            << "d=" << d << " k=" << k << " c=" << c;
        const Mat ginv = inverse_metric(g);
        const Mat ewant = -(d - 2 * k) * ld.Lk / (2.0 * d) * ginv;
        EXPECT_LE((ld.Ek - ewant).cwiseAbs().maxCoeff(),
                  1e-12 * std::max(1.0, ewant.cwiseAbs().maxCoeff()));
      }
}

TEST(Lovelock, UnitSphereGoldens) {
  const AlgebraicCurvature ac = space_form_curvature(Mat::Identity(4, 4), 1.0);
  EXPECT_NEAR(lovelock(ac, 1).Lk, 12.0, 1e-12);
  EXPECT_NEAR(lovelock(ac, 2).Lk, 24.0, 1e-12);
  EXPECT_LE((lovelock(ac, 1).Ek + 3.0 * Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Lovelock, FirstOrderIsEinsteinTensor) {
  for (int d = 3; d <= 5; ++d) {
    const AlgebraicCurvature ac = random_algebraic_curvature(d, 31 + d);
    const LovelockData ld = lovelock(ac, 1);
    const Contractions con = contractions(ac);
    const Mat ginv = inverse_metric(ac.g);
    EXPECT_NEAR(ld.Lk, con.scal, 1e-12 * std::max(1.0, std::fabs(con.scal)));
    const Mat want = ginv * con.ric * ginv - 0.5 * con.scal * ginv;
    EXPECT_LE((ld.Ek - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Lovelock, SecondOrderQuadraticContraction) {
  // L_2 = |Riem|^2 - 4 |Ric|^2 + Scal^2.
  for (int d = 4; d <= 5; ++d) {
    const AlgebraicCurvature ac = random_algebraic_curvature(d, 77 + d);
    const LovelockData ld = lovelock(ac, 2);
    const Mat ginv = inverse_metric(ac.g);
    const Contractions con = contractions(ac);
    const Tensor4 rud = detail::riemann_up_up(ac, ginv);
    double riem2 = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            double up = 0.0;  // R^{ijab}
            for (int p = 0; p < d; ++p)
              for (int q = 0; q < d; ++q) up += ginv(i, p) * ginv(j, q) * rud(p, q, a, b);
            riem2 += up * ac.R(i, j, a, b);
          }
    const Mat ricup = ginv * con.ric;  // Ric^i_j
    const double ric2 = (ricup * ricup).trace();
    const double want = riem2 - 4.0 * ric2 + con.scal * con.scal;
    EXPECT_NEAR(ld.Lk, want, 1e-10 * std::max(1.0, std::fabs(want)));
  }
}

TEST(Lovelock, TraceIdentity) {
  for (int d = 3; d <= 5; ++d)
    for (int k = 0; 2 * k <= d; ++k) {
      const AlgebraicCurvature ac = random_algebraic_curvature(d, 7 * d + k);
      const LovelockData ld = lovelock(ac, k);
      EXPECT_LE(einstein_trace_residual(ac, ld), 1e-12) << "d=" << d << " k=" << k;
    }
}

TEST(Lovelock, EinsteinVanishesAtCriticalDimension) {
  // 2k = d leaves no room for the extra free index pair.
  const AlgebraicCurvature ac = random_algebraic_curvature(4, 12);
  EXPECT_LE(lovelock(ac, 2).Ek.cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Lovelock, DecompositionResidual) {
  for (int d = 3; d <= 5; ++d)
    for (int k = 1; 2 * k <= d; ++k) {
      const AlgebraicCurvature ac = random_algebraic_curvature(d, 900 + 10 * d + k);
      const LovelockData ld = lovelock(ac, k);
      EXPECT_LE(einstein_decomposition_residual(ac, ld), 1e-10) << "d=" << d << " k=" << k;
    }
}

TEST(Lovelock, FirstOrderPClosedForm) {
  const AlgebraicCurvature ac = random_algebraic_curvature(4, 21);
  const LovelockData ld = lovelock(ac, 1);
  ASSERT_TRUE(ld.has_Pk);
  const Mat gi = inverse_metric(ac.g);
  double err = 0.0;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      for (int l = 0; l < 4; ++l)
        for (int j = 0; j < 4; ++j)
          err = std::max(err, std::fabs(ld.Pk(s, t, l, j) -
                                        0.5 * (gi(s, l) * gi(t, j) - gi(t, l) * gi(s, j))));
  EXPECT_LE(err, 1e-13);
}

TEST(Lovelock, PHasRiemannSymmetries) {
  for (int d = 4; d <= 5; ++d)
    for (int k = 1; 2 * k <= d; ++k) {
      const AlgebraicCurvature ac = random_algebraic_curvature(d, 400 + d + k);
      const LovelockData ld = lovelock(ac, k);
      const SymmetryResiduals sr = symmetry_residuals(ld.Pk);
      EXPECT_LE(sr.antisym_first, 1e-12);
      EXPECT_LE(sr.antisym_second, 1e-12);
      EXPECT_LE(sr.pair_exchange, 1e-12);
      EXPECT_LE(sr.bianchi, 1e-12);
    }
}

TEST(Lovelock, MatchesDeltaOracleSmall) {
  // Full duplicate-inclusive contraction at d = 3, k = 1.
  const AlgebraicCurvature ac = random_algebraic_curvature(3, 55);
  EXPECT_NEAR(lovelock(ac, 1).Lk, lk_oracle(ac, 1, false), 1e-12);
}

TEST(Lovelock, MatchesDeltaOracleOrderTwo) {
  const AlgebraicCurvature ac = random_algebraic_curvature(5, 56);
  const LovelockData ld = lovelock(ac, 2);
  EXPECT_NEAR(ld.Lk, lk_oracle(ac, 2, true), 1e-11 * std::max(1.0, std::fabs(ld.Lk)));
  const Mat eo = ek_oracle(ac, 2);
  EXPECT_LE((ld.Ek - eo).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(Lovelock, PMatchesDeltaOracle) {
  const AlgebraicCurvature ac = random_algebraic_curvature(4, 57);
  const LovelockData ld = lovelock(ac, 2);
  const Tensor4 po = pk_oracle(ac, 2);
  EXPECT_LE(max_abs_diff(ld.Pk, po), 1e-12);
}

TEST(Lovelock, DeterministicBits) {
  const AlgebraicCurvature ac = random_algebraic_curvature(5, 99);
  const LovelockData a = lovelock(ac, 2);
  const LovelockData b = lovelock(ac, 2);
  EXPECT_EQ(std::memcmp(&a.Lk, &b.Lk, sizeof(double)), 0);
  EXPECT_TRUE(a.Ek == b.Ek);
  EXPECT_EQ(std::memcmp(a.Pk.data(), b.Pk.data(), sizeof(double) * a.Pk.size()), 0);
}
