#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "gbq/graph_hypersurface.hpp"
#include "gbq/kottler.hpp"

using namespace gbq;

namespace {

// Largest zero of phi for a handful of masses per fiber curvature.
std::vector<double> mass_grid(int kappa, int n) {
  if (kappa == 0) return {0.5, 1.0, 3.0};
  if (kappa == 1) return {0.2, 1.0, 5.0};
  const double mc = critical_mass(n);
  return {0.999 * mc, 0.5 * mc, 0.0, 0.7, 2.0};
}

}  // namespace

TEST(CriticalMass, DoubleRootProperty) {
  // At m = m_c the stationary point of phi is a double root.
  for (int n = 3; n <= 8; ++n) {
    const double mc = critical_mass(n);
    KottlerSpace ks;
    ks.n = n;
    ks.kappa = -1;
    ks.m = mc;
    const double rho_c = std::sqrt((n - 2.0) / n);
    EXPECT_NEAR(ks.phi(rho_c), 0.0, 1e-12);
    EXPECT_NEAR(ks.dphi(rho_c), 0.0, 1e-12);
    EXPECT_LT(mc, 0.0);
  }
  EXPECT_DOUBLE_EQ(critical_mass(4), -0.125);
  EXPECT_DOUBLE_EQ(critical_mass(3), -std::pow(3.0, -1.5));
}

TEST(HorizonRadius, ZeroAndLargestRoot) {
  for (int n = 3; n <= 8; ++n) {
    for (int kappa : {-1, 0, 1}) {
      for (double m : mass_grid(kappa, n)) {
        const KottlerSpace ks = make_kottler(n, kappa, m);
        EXPECT_NEAR(ks.phi(ks.rho0), 0.0,
                    1e-10 * std::max(1.0, ks.rho0 * ks.rho0));
        for (int p = 1; p <= 100; ++p) {
          const double rho = ks.rho0 * (1.0 + p / 100.0);
          EXPECT_GT(ks.phi(rho), 0.0) << "n=" << n << " kappa=" << kappa
                                      << " m=" << m << " rho=" << rho;
        }
      }
    }
  }
}

TEST(HorizonRadius, UnitExamples) {
  EXPECT_NEAR(horizon_radius(3, 0, 0.5), 1.0, 1e-14);
  EXPECT_NEAR(horizon_radius(3, 1, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(horizon_radius(3, -1, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(horizon_radius(4, -1, 1.0), std::sqrt(2.0), 1e-12);
}

TEST(HorizonRadius, RefusesProfilesWithoutHorizon) {
  EXPECT_THROW(horizon_radius(4, 0, 0.0), std::domain_error);
  EXPECT_THROW(horizon_radius(4, 0, -0.3), std::domain_error);
  EXPECT_THROW(horizon_radius(4, 1, -1.0), std::domain_error);
  EXPECT_THROW(horizon_radius(2, -1, 0.1), std::invalid_argument);
  try {
    horizon_radius(4, -1, critical_mass(4));
    FAIL() << "critical mass accepted";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("critical mass"), std::string::npos);
  }
  try {
    horizon_radius(4, -1, 1.5 * critical_mass(4));
    FAIL() << "sub-critical mass accepted";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("critical mass"), std::string::npos);
  }
}

TEST(LambdaProfileTest, HyperbolicOracle) {
  // m = 0, kappa = -1 integrates to lambda = cosh r in every dimension.
  const KottlerSpace ks = make_kottler(3, -1, 0.0);
  const LambdaProfile prof = lambda_profile(ks, 12.0, 512);
  EXPECT_EQ(prof.lambda(0.0), 1.0);
  EXPECT_EQ(prof.dlambda(0.0), 0.0);
  for (int i = 0; i <= 600; ++i) {
    const double r = 3.0 * i / 600;
    EXPECT_NEAR(prof.lambda(r), std::cosh(r), 1e-8);
    EXPECT_NEAR(prof.dlambda(r), std::sinh(r), 1e-7);
  }
  // The accumulated panel integrals reproduce arccosh at every knot.
  for (std::size_t j = 0; j < prof.r_knots.size(); ++j) {
    EXPECT_NEAR(prof.r_knots[j], std::acosh(prof.rho_knots[j]), 1e-10);
  }
}

TEST(LambdaProfileTest, OdeResidualSmall) {
  const LambdaProfile hyper = lambda_profile(make_kottler(3, -1, 0.0), 12.0, 512);
  EXPECT_LE(profile_ode_residual(hyper), 5e-8);
  const KottlerSpace ks = make_kottler(4, -1, 1.0);
  const LambdaProfile prof = lambda_profile(ks, 3.0 * ks.rho0, 2048);
  EXPECT_LE(profile_ode_residual(prof), 1e-8);
}

TEST(LambdaProfileTest, SecondDerivativeMatchesSpeedDerivative) {
  // d/dr sqrt(phi(lambda)) equals lambda'' along the profile; a five-point
  // stencil on the composed map cross-checks the closed form.
  const KottlerSpace ks = make_kottler(4, -1, 1.0);
  const LambdaProfile prof = lambda_profile(ks, 3.0 * ks.rho0, 2048);
  auto speed_along = [&](double r) {
    return ks.radial_speed(prof.lambda(r));
  };
  const double s = 0.25 * (prof.r_knots[1] - prof.r_knots[0]);
  double worst = 0.0;
  for (int i = 1; i < 40; ++i) {
    const double r = prof.r_max() * i / 40.0;
    if (r - 2 * s < 0.0 || r + 2 * s > prof.r_max()) continue;
    const double fd = (-speed_along(r + 2 * s) + 8.0 * speed_along(r + s) -
                       8.0 * speed_along(r - s) + speed_along(r - 2 * s)) /
                      (12.0 * s);
    worst = std::max(worst, std::fabs(fd - prof.ddlambda(r)));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(LambdaProfileTest, MonotoneAndAnchoredAtHorizon) {
  const KottlerSpace ks = make_kottler(5, -1, 0.7);
  const LambdaProfile prof = lambda_profile(ks, 2.5 * ks.rho0, 1024);
  EXPECT_EQ(prof.lambda(0.0), ks.rho0);
  EXPECT_EQ(prof.dlambda(0.0), 0.0);
  EXPECT_NEAR(prof.lambda(prof.r_max()), 2.5 * ks.rho0, 1e-12);
  double prev = prof.lambda(0.0);
  for (int i = 1; i <= 400; ++i) {
    const double cur = prof.lambda(prof.r_max() * i / 400.0);
    EXPECT_GT(cur, prev);
    prev = cur;
  }
}

TEST(LambdaProfileTest, RejectsDegenerateAndOutOfRange) {
  KottlerSpace degen;
  degen.n = 4;
  degen.kappa = -1;
  degen.m = critical_mass(4);
  degen.rho0 = std::sqrt(0.5);  // double root: phi' vanishes here
  EXPECT_THROW(lambda_profile(degen, 2.0, 64), std::domain_error);

  const KottlerSpace ks = make_kottler(4, -1, 1.0);
  EXPECT_THROW(lambda_profile(ks, ks.rho0, 64), std::invalid_argument);
  EXPECT_THROW(lambda_profile(ks, 2.0 * ks.rho0, 4), std::invalid_argument);
  const LambdaProfile prof = lambda_profile(ks, 2.0 * ks.rho0, 64);
  EXPECT_THROW(prof.lambda(-0.1), std::domain_error);
  try {
    prof.lambda(prof.r_max() + 0.1);
    FAIL() << "out-of-range radius accepted";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("outside"), std::string::npos);
  }
}

TEST(LogConvexity, NonNegativeForFlatAndHyperbolicFibers) {
  // lambda log-convex: defect >= 0, with the horizon value matching
  // 1 + n (rho0^2 - 1) / 2 when kappa = -1.
  for (double m : mass_grid(-1, 4)) {
    const KottlerSpace ks = make_kottler(4, -1, m);
    const LambdaProfile prof = lambda_profile(ks, 2.5 * ks.rho0, 2048);
    const LogConvexityReport rep = logconvexity_report(prof, 20);
    EXPECT_GE(rep.min_defect, -1e-8) << "m=" << m;
    EXPECT_LE(rep.max_residual, 1e-7) << "m=" << m;
    EXPECT_NEAR(rep.rows.front().defect,
                1.0 + 4.0 * (ks.rho0 * ks.rho0 - 1.0) / 2.0, 1e-8);
  }
  const KottlerSpace flat = make_kottler(4, 0, 1.0);
  const LambdaProfile prof = lambda_profile(flat, 2.5 * flat.rho0, 2048);
  const LogConvexityReport rep = logconvexity_report(prof, 20);
  EXPECT_GE(rep.min_defect, -1e-8);
  EXPECT_LE(rep.max_residual, 1e-7);
  EXPECT_NEAR(rep.rows.front().defect, flat.logconvexity_defect(flat.rho0),
              1e-8);
}

TEST(LogConvexity, SphericalFiberGoesNegative) {
  const KottlerSpace ks = make_kottler(4, 1, 1.0);
  const LambdaProfile prof = lambda_profile(ks, 4.0 * ks.rho0, 2048);
  const LogConvexityReport rep = logconvexity_report(prof, 20);
  EXPECT_LT(rep.min_defect, -0.5);
}

TEST(LogConvexity, CsvByteStable) {
  const KottlerSpace ks = make_kottler(4, -1, 1.0);
  const LambdaProfile prof = lambda_profile(ks, 2.0 * ks.rho0, 256);
  const LogConvexityReport rep = logconvexity_report(prof, 8);
  const std::string a = dump_logconvexity_csv(rep);
  const std::string b = dump_logconvexity_csv(rep);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("# log-convexity scan:", 0), 0u);
  EXPECT_NE(a.find("r,lambda,dlambda,ddlambda,defect,closed_form,residual"),
            std::string::npos);
}

TEST(KottlerWarped, AdapterIsConsistent) {
  const KottlerSpace ks = make_kottler(4, -1, 1.0);
  const WarpedProduct wp =
      kottler_warped_product(lambda_profile(ks, 3.0 * ks.rho0, 2048));
  EXPECT_LE(validate(wp), 1e-6);
  const double r = 0.7;
  const double l = wp.lambda(r);
  const AmbientGeometry ag = ambient_geometry(wp, r);
  EXPECT_NEAR(ag.sec_fiber, -1.0 + 2.0 * ks.m * std::pow(l, -4.0), 1e-9);
  EXPECT_NEAR(ag.sec_radial, -1.0 - 2.0 * ks.m * std::pow(l, -4.0), 1e-9);
}

TEST(KottlerWarped, MasslessProfileIsHyperbolicSpace) {
  const KottlerSpace ks = make_kottler(5, -1, 0.0);
  const WarpedProduct wp =
      kottler_warped_product(lambda_profile(ks, 10.0, 1024));
  for (double r : {0.3, 1.0, 2.0}) {
    const AmbientGeometry ag = ambient_geometry(wp, r);
    EXPECT_NEAR(ag.sec_fiber, -1.0, 1e-9);
    EXPECT_NEAR(ag.sec_radial, -1.0, 1e-9);
  }
}

TEST(KottlerWarped, SliceQuotientThroughGraphStack) {
  // m = 0 profile is cosh, so the slice quotient at r0 = 1 must be
  // (n - 1 - 2k) tanh(1) with the tabulated warping in the loop.
  const KottlerSpace ks = make_kottler(4, -1, 0.0);
  const WarpedProduct wp =
      kottler_warped_product(lambda_profile(ks, 12.0, 1024));
  const GraphHypersurface gh = slice_graph(wp, 6, 1.0);
  const auto q = quotient_field(gh, 1);
  const double want = std::tanh(1.0);
  for (double v : q) EXPECT_NEAR(v, want, 1e-6);
}
