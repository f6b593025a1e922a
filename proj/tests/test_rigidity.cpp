#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "gbq/kottler.hpp"
#include "gbq/rigidity.hpp"
#include "gbq/util.hpp"

using namespace gbq;

namespace {

constexpr double kTau = 6.283185307179586476925287;

Mat random_spd(Rng& rng, int d) {
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.uniform() - 0.5;
  return m.transpose() * m + double(d) * Mat::Identity(d, d);
}

}  // namespace

TEST(Definiteness, VolumeTermIsNegativeSemidefinite) {
  // The degree-0 tensor -g^{ij}/2 has every relative eigenvalue -1/2.
  Rng rng(31);
  const Mat g = random_spd(rng, 4);
  const Mat e = -0.5 * g.inverse();
  const DefinitenessReport rep = classify_definiteness(e, g);
  EXPECT_EQ(rep.kind, DefinitenessKind::negative_semi);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(rep.eigenvalues(i), -0.5, 1e-12);
}

TEST(Definiteness, UnitSphereSliceEigenvalues) {
  const GraphHypersurface gh = slice_graph(euclid_model(5), 4, 1.0);
  const HypersurfacePointData pd = point_data(gh, 0, 1);
  const DefinitenessReport rep = classify_definiteness(pd.E, pd.g);
  EXPECT_EQ(rep.kind, DefinitenessKind::negative_semi);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(rep.eigenvalues(i), -3.0, 1e-9);
}

TEST(Definiteness, MixedSignsAreIndefinite) {
  Mat e = Mat::Zero(3, 3);
  e(0, 0) = 1.0;
  e(1, 1) = -1.0;
  const DefinitenessReport rep =
      classify_definiteness(e, Mat::Identity(3, 3));
  EXPECT_EQ(rep.kind, DefinitenessKind::indefinite);
  EXPECT_NEAR(rep.eigenvalues.minCoeff(), -1.0, 1e-12);
  EXPECT_NEAR(rep.eigenvalues.maxCoeff(), 1.0, 1e-12);
}

TEST(Definiteness, ZeroClassifiesPositiveSemidefinite) {
  const DefinitenessReport rep =
      classify_definiteness(Mat::Zero(3, 3), Mat::Identity(3, 3));
  EXPECT_EQ(rep.kind, DefinitenessKind::positive_semi);
}

TEST(Definiteness, InvariantUnderChangeOfFrame) {
  // Contravariant tensor and covariant metric transform oppositely, so the
  // relative spectrum is frame independent.
  Rng rng(77);
  const int d = 4;
  const Mat g = random_spd(rng, d);
  Mat e(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) e(i, j) = e(j, i) = rng.uniform() - 0.5;
  Mat s = Mat::Identity(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(i, j) += 0.4 * (rng.uniform() - 0.5);
  const Mat si = s.inverse();
  const Mat e2 = s * e * s.transpose();
  const Mat g2 = si.transpose() * g * si;
  const DefinitenessReport a = classify_definiteness(e, g);
  const DefinitenessReport b = classify_definiteness(e2, g2);
  EXPECT_EQ(a.kind, b.kind);
  for (int i = 0; i < d; ++i) {
    EXPECT_NEAR(a.eigenvalues(i), b.eigenvalues(i),
                1e-9 * std::max(1.0, std::fabs(a.eigenvalues(i))));
  }
}

TEST(Definiteness, RejectsNonPositiveMetric) {
  Mat g = Mat::Identity(3, 3);
  g(2, 2) = -1.0;
  EXPECT_THROW(classify_definiteness(Mat::Zero(3, 3), g),
               std::invalid_argument);
  EXPECT_THROW(classify_definiteness(Mat::Zero(2, 2), Mat::Identity(3, 3)),
               std::invalid_argument);
}

TEST(Extrema, SliceComparisonVanishes) {
  const GraphHypersurface gh = slice_graph(euclid_model(4), 6, 1.5);
  const ExtremumDiagnostics ext = extremum_diagnostics(gh, 1);
  EXPECT_EQ(ext.min_node, 0u);  // constant u: ties resolve to the lowest index
  EXPECT_EQ(ext.max_node, 0u);
  EXPECT_NEAR(ext.at_min, 0.0, 1e-8);
  EXPECT_NEAR(ext.at_max, 0.0, 1e-8);
}

TEST(Extrema, MatchesDirectArgminScan) {
  const GraphHypersurface gh = perturbed_graph(
      euclid_model(4), 8, 1.0, 0.005, perturbation_mode("mix2"));
  const ExtremumDiagnostics ext = extremum_diagnostics(gh, 1);
  const auto lo = std::min_element(gh.u.begin(), gh.u.end());
  const auto hi = std::max_element(gh.u.begin(), gh.u.end());
  EXPECT_EQ(ext.min_node, std::size_t(lo - gh.u.begin()));
  EXPECT_EQ(ext.max_node, std::size_t(hi - gh.u.begin()));
  EXPECT_EQ(ext.u_min, *lo);
  EXPECT_EQ(ext.u_max, *hi);
}

TEST(ClaimChain, RandomStarShapedGraphsRespectSigns) {
  // Separable all-cosine perturbations on an even grid put the extrema on
  // nodes with exactly vanishing first differences, so the touching-slice
  // inequality is exercised without discretization slack.  Amplitudes are
  // small enough that the Einstein tensor stays semidefinite; that
  // precondition is asserted, not assumed.
  Rng rng(20260819);
  for (int trial = 0; trial < 10; ++trial) {
    const int N = 8;
    const double r0 = 0.8 + 0.5 * rng.uniform();
    const double eps = 0.002 + 0.006 * rng.uniform();
    double amp[3];
    int shift[3];
    for (int a = 0; a < 3; ++a) {
      amp[a] = 0.3 + 0.7 * rng.uniform();
      shift[a] = int(rng.uniform() * N);
    }
    auto psi = [&](const std::vector<double>& x) {
      double v = 0.0;
      for (int a = 0; a < 3; ++a) {
        v += amp[a] * std::cos(kTau * (x[a] - shift[a] / double(N)));
      }
      return v;
    };
    const GraphHypersurface gh =
        perturbed_graph(euclid_model(4), N, r0, eps, psi);
    const ClaimChainReport rep = claim_chain(gh, 1, 1e-6);
    EXPECT_EQ(rep.def_min.kind, DefinitenessKind::negative_semi)
        << "trial " << trial;
    EXPECT_EQ(rep.def_max.kind, DefinitenessKind::negative_semi)
        << "trial " << trial;
    EXPECT_TRUE(rep.min_ok) << "trial " << trial
                            << " at_min = " << rep.ext.at_min;
    EXPECT_TRUE(rep.max_ok) << "trial " << trial
                            << " at_max = " << rep.ext.at_max;
  }
}

TEST(ClaimChain, PositiveDefiniteCaseFlipsBothSigns) {
  // Hyperbolic-fiber black hole: slices carry negatively curved induced
  // metrics, so the degree-1 Einstein tensor is positive definite and the
  // comparison value changes sign at both extrema relative to the
  // spherical picture.  The oriented verdicts absorb the flip.
  const KottlerSpace ks = make_kottler(4, -1, 1.0);
  const WarpedProduct wp =
      kottler_warped_product(lambda_profile(ks, 3.0 * ks.rho0, 2048));
  const GraphHypersurface gh = perturbed_graph(
      wp, 8, 0.5 * wp.r_max, 0.02,
      [](const std::vector<double>& x) { return std::cos(kTau * x[0]); });
  const ClaimChainReport rep = claim_chain(gh, 1, 1e-6);
  EXPECT_EQ(rep.def_min.kind, DefinitenessKind::positive_semi);
  EXPECT_EQ(rep.def_max.kind, DefinitenessKind::positive_semi);
  EXPECT_LT(rep.ext.at_min, 0.0);
  EXPECT_GT(rep.ext.at_max, 0.0);
  EXPECT_TRUE(rep.min_ok);
  EXPECT_TRUE(rep.max_ok);
}

TEST(Elliptic, MatchedConstantGivesZeroResidual) {
  const GraphHypersurface sphere = slice_graph(euclid_model(5), 6, 1.0);
  EXPECT_LE(elliptic_residual(sphere, 1, 2.0), 1e-8);
  const GraphHypersurface cosh_slice =
      slice_graph(hyperbolic_cosh_model(4), 6, 0.8);
  EXPECT_LE(elliptic_residual(cosh_slice, 1, std::tanh(0.8)), 1e-8);
}

TEST(Elliptic, WrongConstantScalesWithQuotientGap) {
  // Unit sphere slice: lambda = a = 1 and H_2 = 12, so the residual
  // against a candidate constant c is 12 |2 - c|.
  const GraphHypersurface sphere = slice_graph(euclid_model(5), 6, 1.0);
  EXPECT_NEAR(elliptic_residual(sphere, 1, 1.0), 12.0, 1e-8);
  EXPECT_NEAR(elliptic_residual(sphere, 1, 3.0), 12.0, 1e-8);
}

TEST(Elliptic, PerturbedGraphLeavesResidual) {
  const GraphHypersurface gh = perturbed_graph(
      hyperbolic_horo_model(4), 8, 0.2, 0.05, perturbation_mode("mix2"));
  EXPECT_GE(elliptic_residual(gh, 1, 1.0), 0.1);
}

TEST(Perturbations, ModeLibrary) {
  const std::vector<double> x = {0.3, 0.2, 0.7};
  EXPECT_NEAR(perturbation_mode("cos1")(x), std::cos(kTau * 0.3), 1e-15);
  EXPECT_NEAR(perturbation_mode("cos2")(x), std::cos(2.0 * kTau * 0.3), 1e-15);
  EXPECT_NEAR(perturbation_mode("mix2")(x),
              0.7 * std::cos(kTau * 0.3) + 0.3 * std::cos(2.0 * kTau * 0.2),
              1e-15);
  try {
    perturbation_mode("wiggle");
    FAIL() << "unknown mode accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("mix2"), std::string::npos);
  }
}

TEST(Perturbations, OscillationGrowsFromExactZero) {
  const PerturbationScan scan = perturbation_scan(
      euclid_model(4), 8, 1.0, 1, {0.0, 0.01, 0.02, 0.05}, "mix2");
  EXPECT_EQ(scan.mode, "mix2");
  EXPECT_EQ(scan.k, 1);
  ASSERT_EQ(scan.rows.size(), 4u);
  for (const ScanRow& row : scan.rows) EXPECT_TRUE(row.ok) << row.error;
  EXPECT_LE(scan.rows[0].oscillation, 1e-9);
  for (std::size_t i = 1; i < scan.rows.size(); ++i) {
    EXPECT_GT(scan.rows[i].oscillation, scan.rows[i - 1].oscillation);
  }
}

TEST(Perturbations, DegenerateQuotientIsReportedNotThrown) {
  // lambda = e^r slices are intrinsically flat: H_2 vanishes identically
  // and the k = 1 quotient does not exist at eps = 0.  The scan records
  // the failure row by row instead of aborting.
  const PerturbationScan scan = perturbation_scan(
      hyperbolic_horo_model(4), 8, 0.0, 1, {0.0, 0.05}, "cos1");
  ASSERT_EQ(scan.rows.size(), 2u);
  EXPECT_FALSE(scan.rows[0].ok);
  EXPECT_NE(scan.rows[0].error.find("vanishes"), std::string::npos);
  EXPECT_TRUE(scan.rows[1].ok) << scan.rows[1].error;
}

TEST(Bernstein, SliceSatisfiesAllHypotheses) {
  const BernsteinCheck chk =
      bernstein_hypothesis_check(slice_graph(euclid_model(5), 6, 1.0), 1);
  EXPECT_NEAR(chk.h2k_min, 12.0, 1e-9);
  EXPECT_NEAR(chk.h2k_max, 12.0, 1e-9);
  EXPECT_NEAR(chk.min_slack, 0.0, 1e-9);
  EXPECT_LE(chk.max_grad, 1e-9);
  EXPECT_TRUE(chk.grad_bound_ok);
  EXPECT_TRUE(chk.is_slice);
  EXPECT_TRUE(chk.consistent);
}

TEST(Bernstein, PerturbedGraphFailsGradientBound) {
  // Amplitude small enough to keep H_2 > 0 everywhere.  The quotient then
  // overshoots the local slice value somewhere, the signed slack goes
  // negative, and the gradient bound cannot hold on a non-slice: exactly
  // the contrapositive of the entire-graph statement.
  const BernsteinCheck chk = bernstein_hypothesis_check(
      perturbed_graph(euclid_model(5), 6, 1.0, 0.02, perturbation_mode("mix2")),
      1);
  EXPECT_GT(chk.h2k_min, 0.0);
  EXPECT_LT(chk.min_slack, -0.1);
  EXPECT_GT(chk.max_grad, 1e-2);
  EXPECT_FALSE(chk.grad_bound_ok);
  EXPECT_FALSE(chk.is_slice);
  EXPECT_TRUE(chk.consistent);
}

TEST(Bernstein, MeanCurvatureCaseAtDegreeZero) {
  // k = 0: H_0 = 1 and the quotient is the mean curvature sum H_1.
  const BernsteinCheck chk =
      bernstein_hypothesis_check(slice_graph(euclid_model(4), 6, 2.0), 0);
  EXPECT_EQ(chk.h2k_min, 1.0);
  EXPECT_EQ(chk.h2k_max, 1.0);
  EXPECT_NEAR(chk.min_slack, 0.0, 1e-9);
  EXPECT_TRUE(chk.grad_bound_ok);
  EXPECT_TRUE(chk.consistent);
}

TEST(Bernstein, RejectsNonpositiveH2k) {
  // cosh-fiber slices have H_2 < 0, so the pinching hypothesis cannot be
  // stated at all and the check refuses the input.
  try {
    bernstein_hypothesis_check(slice_graph(hyperbolic_cosh_model(5), 6, 0.8),
                               1);
    FAIL() << "expected domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("H_{2k} > 0"), std::string::npos);
  }
}
