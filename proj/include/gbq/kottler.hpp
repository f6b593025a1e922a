#pragma once

// Static black-hole warped products.  The profile function
//
//   phi(rho) = rho^2 + kappa - 2 m rho^{2-n}
//
// defines an n-dimensional ambient space  dr^2 + lambda(r)^2 g_N  over the
// space form N^{n-1} of curvature kappa, where lambda(r) = rho(r) solves
// lambda' = sqrt(phi(lambda)) from the horizon rho_0, the largest zero of
// phi.  The radial distance is reconstructed by integrating
//
//   r(rho) = integral_{rho_0}^{rho} dsigma / sqrt(phi(sigma)),
//
// whose square-root singularity at the horizon is removed by the
// substitution sigma = rho_0 + t^2.  The table is interpolated with a
// monotone cubic Hermite spline carrying the exact slopes sqrt(phi(rho_j)).
//
// Derivatives come from closed forms, not the spline: differentiating the
// ODE gives lambda'' = lambda + (n-2) m lambda^{1-n}, and the
// log-convexity defect collapses to
//
//   lambda lambda'' - lambda'^2 = n m lambda^{2-n} - kappa,
//
// which is the quantity the scan reports row by row.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbq/warped_product.hpp"

namespace gbq {

// Mass at which the kappa = -1 profile degenerates: phi acquires a double
// root and the horizon integral diverges.  Below it phi has no zero at all.
inline double critical_mass(int n) {
  if (n < 3) throw std::invalid_argument("ambient dimension must be at least 3");
  return -std::pow(n - 2.0, 0.5 * (n - 2)) / std::pow(double(n), 0.5 * n);
}

struct KottlerSpace {
  int n = 0;        // ambient dimension (fiber has dimension n - 1)
  int kappa = 0;    // fiber space-form curvature, -1 / 0 / +1
  double m = 0.0;   // mass parameter
  double rho0 = 0.0;  // horizon radius, largest zero of phi

  double phi(double rho) const {
    return rho * rho + kappa - 2.0 * m * std::pow(rho, 2 - n);
  }
  double dphi(double rho) const {
    return 2.0 * rho + 2.0 * (n - 2) * m * std::pow(rho, 1 - n);
  }
  // dρ/dr along the profile; clamped so roundoff at the horizon cannot
  // produce a NaN from a slightly negative phi.
  double radial_speed(double rho) const {
    return std::sqrt(std::max(phi(rho), 0.0));
  }
  // Closed form of lambda lambda'' - lambda'^2 at lambda = rho.
  double logconvexity_defect(double rho) const {
    return n * m * std::pow(rho, 2 - n) - kappa;
  }
};

// Largest zero of phi, bracketed per fiber curvature and polished with
// Newton steps.  Throws when the profile has no horizon: kappa in {0, +1}
// needs m > 0, kappa = -1 needs m strictly above the critical mass.
inline double horizon_radius(int n, int kappa, double m) {
  if (n < 3) throw std::invalid_argument("ambient dimension must be at least 3");
  if (kappa < -1 || kappa > 1) {
    throw std::invalid_argument("fiber curvature must be -1, 0 or +1");
  }
  auto phi = [&](double rho) {
    return rho * rho + kappa - 2.0 * m * std::pow(rho, 2 - n);
  };
  double lo = 0.0, hi = 0.0;
  if (kappa == 0) {
    if (!(m > 0.0)) {
      throw std::domain_error(
          "flat-fiber profile has no horizon for m = " + std::to_string(m) +
          "; need m > 0");
    }
    return std::pow(2.0 * m, 1.0 / n);
  }
  if (kappa == 1) {
    if (!(m > 0.0)) {
      throw std::domain_error(
          "spherical-fiber profile has no horizon for m = " +
          std::to_string(m) + "; need m > 0");
    }
    lo = 1.0;
    while (phi(lo) >= 0.0) lo *= 0.5;  // phi -> -inf as rho -> 0+
    hi = 2.0 * lo;
    while (phi(hi) <= 0.0) hi *= 2.0;
  } else {  // kappa == -1
    const double mc = critical_mass(n);
    if (std::fabs(m - mc) <= 1e-12 * std::fabs(mc)) {
      throw std::domain_error(
          "degenerate double-root horizon at the critical mass m_c = " +
          std::to_string(mc));
    }
    if (m < mc) {
      throw std::domain_error(
          "profile has no zero below the critical mass m_c = " +
          std::to_string(mc) + " (got m = " + std::to_string(m) + ")");
    }
    if (m >= 0.0) {
      lo = 1.0;  // phi(1) = -2m <= 0 and phi is increasing past it
    } else {
      lo = std::pow((n - 2.0) * (-m), 1.0 / n);  // stationary point of phi
    }
    hi = std::max(2.0, 2.0 * lo);
    while (phi(hi) <= 0.0) hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) < 0.0 ? lo : hi) = mid;
  }
  double rho = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double df = 2.0 * rho + 2.0 * (n - 2) * m * std::pow(rho, 1 - n);
    if (!(df > 0.0)) break;
    rho -= phi(rho) / df;
  }
  return rho;
}

inline KottlerSpace make_kottler(int n, int kappa, double m) {
  KottlerSpace ks;
  ks.n = n;
  ks.kappa = kappa;
  ks.m = m;
  ks.rho0 = horizon_radius(n, kappa, m);
  return ks;
}

namespace detail {

// 16-point Gauss-Legendre rule on [a, b].
template <typename F>
double gauss16(F&& f, double a, double b) {
  static const double node[8] = {
      0.0950125098376374401853193, 0.2816035507792589132304605,
      0.4580167776572273863424194, 0.6178762444026437484466718,
      0.7554044083550030338951012, 0.8656312023878317438804679,
      0.9445750230732325760779884, 0.9894009349916499325961542};
  static const double weight[8] = {
      0.1894506104550684962853967, 0.1826034150449235888667637,
      0.1691565193950025381893121, 0.1495959888165767320815017,
      0.1246289712555338720524763, 0.0951585116824927848099251,
      0.0622535239386478928628438, 0.0271524594117540948517806};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    acc += weight[i] * (f(mid - half * node[i]) + f(mid + half * node[i]));
  }
  return acc * half;
}

}  // namespace detail

// Tabulated lambda(r) for a static black-hole space, valid on [0, r_max]
// with r = 0 at the horizon.  lambda and dlambda evaluate the Hermite
// interpolant (exact values and exact slopes at the knots); ddlambda uses
// the closed form, which is exact given the interpolated lambda.
struct LambdaProfile {
  KottlerSpace space;
  std::vector<double> r_knots;
  std::vector<double> rho_knots;
  std::vector<double> slope_knots;

  double r_max() const { return r_knots.back(); }

  std::size_t panel_index(double r) const {
    if (!(r >= 0.0) || !(r <= r_knots.back())) {
      throw std::domain_error("radius " + std::to_string(r) +
                              " outside the reconstructed profile [0, " +
                              std::to_string(r_knots.back()) + "]");
    }
    const auto it = std::upper_bound(r_knots.begin(), r_knots.end(), r);
    const std::size_t j = std::size_t(it - r_knots.begin());
    return std::min(std::max<std::size_t>(j, 1), r_knots.size() - 1) - 1;
  }

  double lambda(double r) const {
    const std::size_t j = panel_index(r);
    const double h = r_knots[j + 1] - r_knots[j];
    const double t = (r - r_knots[j]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * rho_knots[j] +
           (t3 - 2.0 * t2 + t) * h * slope_knots[j] +
           (-2.0 * t3 + 3.0 * t2) * rho_knots[j + 1] +
           (t3 - t2) * h * slope_knots[j + 1];
  }

  double dlambda(double r) const {
    const std::size_t j = panel_index(r);
    const double h = r_knots[j + 1] - r_knots[j];
    const double t = (r - r_knots[j]) / h;
    const double t2 = t * t;
    return (6.0 * t2 - 6.0 * t) / h * (rho_knots[j] - rho_knots[j + 1]) +
           (3.0 * t2 - 4.0 * t + 1.0) * slope_knots[j] +
           (3.0 * t2 - 2.0 * t) * slope_knots[j + 1];
  }

  double ddlambda(double r) const {
    const double l = lambda(r);
    return l + (space.n - 2) * space.m * std::pow(l, 1 - space.n);
  }
};

// Integrate the radial distance out to rho_max.  Knots are uniform in the
// de-singularizing variable t = sqrt(rho - rho_0), which clusters them in
// rho near the horizon and in r far from it.
inline LambdaProfile lambda_profile(const KottlerSpace& ks, double rho_max,
                                    int panels = 512) {
  if (!(rho_max > ks.rho0)) {
    throw std::invalid_argument("rho_max must exceed the horizon radius");
  }
  if (panels < 8) throw std::invalid_argument("need at least 8 panels");
  const double slope0 = ks.dphi(ks.rho0);
  if (!(slope0 > 1e-10)) {
    throw std::domain_error(
        "horizon is too close to degenerate (phi'(rho_0) = " +
        std::to_string(slope0) + "); the distance integral diverges");
  }
  auto F = [&](double t) {
    // 2t / sqrt(phi(rho_0 + t^2)); finite at t = 0 with value 2/sqrt(phi').
    const double v = ks.radial_speed(ks.rho0 + t * t);
    return v > 0.0 ? 2.0 * t / v : 2.0 / std::sqrt(slope0);
  };
  const double T = std::sqrt(rho_max - ks.rho0);
  LambdaProfile prof;
  prof.space = ks;
  prof.r_knots.resize(panels + 1);
  prof.rho_knots.resize(panels + 1);
  prof.slope_knots.resize(panels + 1);
  prof.r_knots[0] = 0.0;
  prof.rho_knots[0] = ks.rho0;
  prof.slope_knots[0] = 0.0;
  for (int j = 1; j <= panels; ++j) {
    const double ta = T * (j - 1) / panels;
    const double tb = T * j / panels;
    prof.r_knots[j] = prof.r_knots[j - 1] + detail::gauss16(F, ta, tb);
    prof.rho_knots[j] = ks.rho0 + tb * tb;
    prof.slope_knots[j] = ks.radial_speed(prof.rho_knots[j]);
  }
  return prof;
}

// Worst mismatch between the interpolant's derivative and the closed-form
// speed sqrt(phi(lambda)), sampled inside every panel.  Exactly zero at the
// knots by construction, so this measures pure interpolation error.
inline double profile_ode_residual(const LambdaProfile& prof) {
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < prof.r_knots.size(); ++j) {
    for (double s : {0.25, 0.5, 0.75}) {
      const double r = prof.r_knots[j] +
                       s * (prof.r_knots[j + 1] - prof.r_knots[j]);
      const double res =
          std::fabs(prof.dlambda(r) - prof.space.radial_speed(prof.lambda(r)));
      worst = std::max(worst, res);
    }
  }
  return worst;
}

struct LogConvexityRow {
  double r = 0.0;
  double lambda = 0.0;
  double dlambda = 0.0;
  double ddlambda = 0.0;
  double defect = 0.0;       // lambda ddlambda - dlambda^2 as evaluated
  double closed_form = 0.0;  // n m lambda^{2-n} - kappa
  double residual = 0.0;     // |defect - closed_form|
};

struct LogConvexityReport {
  KottlerSpace space;
  std::vector<LogConvexityRow> rows;
  double min_defect = 0.0;
  double max_residual = 0.0;
};

// Sample the log-convexity defect of lambda on a uniform radial grid.  The
// defect column uses the interpolant's derivative, so its gap against the
// closed form is an end-to-end error bound for the reconstruction.
inline LogConvexityReport logconvexity_report(const LambdaProfile& prof,
                                              int samples) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  LogConvexityReport rep;
  rep.space = prof.space;
  rep.rows.resize(samples);
  for (int s = 0; s < samples; ++s) {
    // Endpoint pinned exactly: the scaled form can round 1 ulp past r_max.
    const double r =
        s == samples - 1 ? prof.r_max() : prof.r_max() * s / (samples - 1);
    LogConvexityRow& row = rep.rows[s];
    row.r = r;
    row.lambda = prof.lambda(r);
    row.dlambda = prof.dlambda(r);
    row.ddlambda = prof.ddlambda(r);
    row.defect = row.lambda * row.ddlambda - row.dlambda * row.dlambda;
    row.closed_form = prof.space.logconvexity_defect(row.lambda);
    row.residual = std::fabs(row.defect - row.closed_form);
    if (s == 0) {
      rep.min_defect = row.defect;
      rep.max_residual = row.residual;
    } else {
      rep.min_defect = std::min(rep.min_defect, row.defect);
      rep.max_residual = std::max(rep.max_residual, row.residual);
    }
  }
  return rep;
}

inline std::string dump_logconvexity_csv(const LogConvexityReport& rep) {
  std::ostringstream os;
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
  };
  os << "# log-convexity scan: n=" << rep.space.n
     << " kappa=" << rep.space.kappa << " m=";
  put(rep.space.m);
  os << " rho0=";
  put(rep.space.rho0);
  os << "\n";
  os << "r,lambda,dlambda,ddlambda,defect,closed_form,residual\n";
  for (const LogConvexityRow& row : rep.rows) {
    const double cols[7] = {row.r,      row.lambda,      row.dlambda,
                            row.ddlambda, row.defect,    row.closed_form,
                            row.residual};
    for (int c = 0; c < 7; ++c) {
      if (c) os << ",";
      put(cols[c]);
    }
    os << "\n";
  }
  return os.str();
}

// Adapter into the generic warped-product interface.  The domain is the
// open interval (0, r_max): the horizon itself is excluded because slices
// there are totally geodesic and several quotient quantities degenerate.
inline WarpedProduct kottler_warped_product(const LambdaProfile& prof) {
  auto p = std::make_shared<LambdaProfile>(prof);
  WarpedProduct wp;
  wp.name = "kottler-n" + std::to_string(p->space.n) + "-k" +
            std::to_string(p->space.kappa) + "-m" + std::to_string(p->space.m);
  wp.n = p->space.n;
  wp.kappa = p->space.kappa;
  wp.r_min = 0.0;
  wp.r_max = p->r_max();
  wp.lambda = [p](double r) { return p->lambda(r); };
  wp.dlambda = [p](double r) { return p->dlambda(r); };
  wp.ddlambda = [p](double r) { return p->ddlambda(r); };
  return wp;
}

}  // namespace gbq
