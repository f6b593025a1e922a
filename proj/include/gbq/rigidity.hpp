#pragma once

// Numerical support for the rigidity argument that pins constant-quotient
// hypersurfaces to slices.  The pieces:
//
//  - definiteness of the degree-k Einstein tensor relative to the induced
//    metric (the ellipticity hypothesis),
//  - touching-slice diagnostics at the extrema of the radial graph
//    function: contracting  hess r = (lambda'/lambda)(g - du du) - a h
//    with -2E at a critical point of u gives
//      (n-1-2k)(lambda'/lambda) H_2k - H_2k1  >= 0  at a minimum
//    when E <= 0, with all four sign combinations covered by orientation,
//  - the residual of the elliptic identity against a candidate constant
//    quotient,
//  - an oscillation scan of the quotient under slice perturbations,
//  - the gradient / positivity hypotheses of the entire-graph statement.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gbq/graph_hypersurface.hpp"

namespace gbq {

enum class DefinitenessKind { positive_semi, negative_semi, indefinite };

inline const char* to_string(DefinitenessKind k) {
  switch (k) {
    case DefinitenessKind::positive_semi: return "positive_semi";
    case DefinitenessKind::negative_semi: return "negative_semi";
    default: return "indefinite";
  }
}

struct DefinitenessReport {
  DefinitenessKind kind = DefinitenessKind::indefinite;
  Eigen::VectorXd eigenvalues;  // of the endomorphism E^i_j, ascending
};

// Classify a contravariant symmetric tensor against the covariant metric.
// The spectrum is that of the mixed tensor E^i_j, computed from the
// generalized problem (g E g) v = mu g v.  A tensor within tolerance of
// zero classifies as positive semidefinite (the first branch that fits).
inline DefinitenessReport classify_definiteness(const Mat& e_contra,
                                                const Mat& g_cov,
                                                double tol = 1e-10) {
  const int d = int(g_cov.rows());
  if (e_contra.rows() != d || e_contra.cols() != d || g_cov.cols() != d) {
    throw std::invalid_argument("definiteness check needs square matching shapes");
  }
  if (Eigen::LLT<Mat>(g_cov).info() != Eigen::Success) {
    throw std::invalid_argument("metric is not positive-definite");
  }
  const Mat lowered = g_cov * e_contra * g_cov;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(lowered, g_cov);
  DefinitenessReport rep;
  rep.eigenvalues = solver.eigenvalues();
  const double scale = std::max(1.0, rep.eigenvalues.cwiseAbs().maxCoeff());
  const double thr = tol * scale;
  if (rep.eigenvalues.minCoeff() >= -thr) {
    rep.kind = DefinitenessKind::positive_semi;
  } else if (rep.eigenvalues.maxCoeff() <= thr) {
    rep.kind = DefinitenessKind::negative_semi;
  } else {
    rep.kind = DefinitenessKind::indefinite;
  }
  return rep;
}

struct ExtremumDiagnostics {
  std::size_t min_node = 0, max_node = 0;  // lowest flat index on ties
  double u_min = 0.0, u_max = 0.0;
  double at_min = 0.0;  // (n-1-2k)(log lambda)'(u) H_2k - H_2k1 at the argmin
  double at_max = 0.0;  // same quantity at the argmax
};

// Evaluate the touching-slice comparison at the extrema of u.  The sign of
// at_min / at_max is only constrained when E is semidefinite there; callers
// pair this with classify_definiteness (see claim_chain).
inline ExtremumDiagnostics extremum_diagnostics(const GraphHypersurface& gh,
                                                int k) {
  validate_graph(gh);
  ExtremumDiagnostics out;
  out.u_min = gh.u[0];
  out.u_max = gh.u[0];
  for (std::size_t node = 1; node < gh.u.size(); ++node) {
    if (gh.u[node] < out.u_min) {
      out.u_min = gh.u[node];
      out.min_node = node;
    }
    if (gh.u[node] > out.u_max) {
      out.u_max = gh.u[node];
      out.max_node = node;
    }
  }
  const int n = gh.wp.n;
  auto compare = [&](std::size_t node, double u) {
    const HypersurfacePointData pd = point_data(gh, node, k);
    const double lg = gh.wp.dlambda(u) / gh.wp.lambda(u);
    return (n - 1 - 2 * k) * lg * pd.H2k - pd.H2k1;
  };
  out.at_min = compare(out.min_node, out.u_min);
  out.at_max = compare(out.max_node, out.u_max);
  return out;
}

// Max-norm residual of  -2 E : hess(phi) = (n-1-2k) lambda' H_2k
//                                          - lambda a c H_2k
// over the graph, where the candidate constant c stands in for the
// curvature quotient H_2k1 / H_2k.  Zero (to discretization error) exactly
// when the quotient is constant equal to c; the Hessian comes from the
// independent stencil pipeline, so slices give exact zeros on every chart.
inline double elliptic_residual(const GraphHypersurface& gh, int k, double c) {
  const GraphHessians gH = graph_hessians(gh);
  const int n = gh.wp.n;
  const int d = gh.grid.dim();
  double worst = 0.0;
  for (std::size_t node = 0; node < gh.grid.size(); ++node) {
    const HypersurfacePointData pd = point_data(gh, node, k);
    double lhs = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) lhs += pd.E(i, j) * gH.hess_phi[node](i, j);
    lhs *= -2.0;
    const double lam = gh.wp.lambda(pd.u);
    const double rhs = (n - 1 - 2 * k) * gh.wp.dlambda(pd.u) * pd.H2k -
                       lam * pd.a * c * pd.H2k;
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

// Named perturbation shapes for the oscillation scan.  Version 1 of the
// library; scans record the name so reports stay comparable across runs.
inline std::function<double(const std::vector<double>&)> perturbation_mode(
    const std::string& name) {
  const double tau = 6.283185307179586476925287;
  if (name == "cos1") {
    return [tau](const std::vector<double>& x) { return std::cos(tau * x[0]); };
  }
  if (name == "cos2") {
    return [tau](const std::vector<double>& x) {
      return std::cos(2.0 * tau * x[0]);
    };
  }
  if (name == "mix2") {
    return [tau](const std::vector<double>& x) {
      return 0.7 * std::cos(tau * x[0]) + 0.3 * std::cos(2.0 * tau * x[1]);
    };
  }
  throw std::invalid_argument("unknown perturbation mode '" + name +
                              "'; have cos1, cos2, mix2");
}

struct ScanRow {
  double eps = 0.0;
  double oscillation = 0.0;  // max - min of the quotient over the graph
  bool ok = false;
  std::string error;  // set when the quotient is undefined at this eps
};

struct PerturbationScan {
  std::string mode;
  int k = 0;
  std::vector<ScanRow> rows;
};

// Oscillation of the curvature quotient under u = r0 + eps psi.  Failures
// (quotient undefined, graph leaving the domain) are recorded per row, not
// thrown: a scan is a report, and one bad epsilon must not hide the rest.
inline PerturbationScan perturbation_scan(const WarpedProduct& wp, int n_grid,
                                          double r0, int k,
                                          const std::vector<double>& eps_list,
                                          const std::string& mode) {
  const auto psi = perturbation_mode(mode);
  PerturbationScan scan;
  scan.mode = mode;
  scan.k = k;
  scan.rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    ScanRow row;
    row.eps = eps;
    try {
      const GraphHypersurface gh = perturbed_graph(wp, n_grid, r0, eps, psi);
      const std::vector<double> q = quotient_field(gh, k);
      const auto [lo, hi] = std::minmax_element(q.begin(), q.end());
      row.oscillation = *hi - *lo;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    scan.rows.push_back(std::move(row));
  }
  return scan;
}

struct BernsteinCheck {
  double h2k_min = 0.0;        // the two positive bounds on H_2k
  double h2k_max = 0.0;
  double min_slack = 0.0;      // min of (n-1-2k)(log lambda)'(u) - quotient
  double max_grad = 0.0;       // max |grad r| = sqrt(1 - a^2)
  bool grad_bound_ok = false;  // max_grad <= min_slack within tolerance
  bool is_slice = false;       // max_grad below tolerance
  bool consistent = false;     // gradient hypothesis can only hold on a slice
};

// Hypotheses of the entire-graph statement: H_2k pinched between two
// positive constants and |grad r| bounded by the worst-case gap between
// the local slice value and the quotient.  On a compact graph the gradient
// hypothesis forces a slice, so the check also reports whether that
// conclusion is consistent with what it measured.
inline BernsteinCheck bernstein_hypothesis_check(const GraphHypersurface& gh,
                                                 int k, double tol = 1e-6) {
  validate_graph(gh);
  const int n = gh.wp.n;
  BernsteinCheck out;
  double max_grad_sq = 0.0;
  for (std::size_t node = 0; node < gh.grid.size(); ++node) {
    const HypersurfacePointData pd = point_data(gh, node, k);
    if (!(pd.H2k > 0.0)) {
      throw std::domain_error("comparison requires H_{2k} > 0; H_" +
                              std::to_string(2 * k) + " = " +
                              std::to_string(pd.H2k) + " at node " +
                              detail::node_label(gh.grid, node));
    }
    if (node == 0) {
      out.h2k_min = pd.H2k;
      out.h2k_max = pd.H2k;
    }
    out.h2k_min = std::min(out.h2k_min, pd.H2k);
    out.h2k_max = std::max(out.h2k_max, pd.H2k);
    max_grad_sq = std::max(max_grad_sq, 1.0 - pd.a * pd.a);
    const double lg = gh.wp.dlambda(pd.u) / gh.wp.lambda(pd.u);
    const double slack = (n - 1 - 2 * k) * lg - pd.H2k1 / pd.H2k;
    if (node == 0) out.min_slack = slack;
    out.min_slack = std::min(out.min_slack, slack);
  }
  out.max_grad = std::sqrt(std::max(max_grad_sq, 0.0));
  out.grad_bound_ok = out.max_grad <= out.min_slack + tol;
  out.is_slice = out.max_grad <= tol;
  out.consistent = !out.grad_bound_ok || out.is_slice;
  return out;
}

struct ClaimChainReport {
  ExtremumDiagnostics ext;
  DefinitenessReport def_min, def_max;  // of E at the two extremum nodes
  bool applicable_min = false;          // semidefinite, so the sign is forced
  bool applicable_max = false;
  bool min_ok = false;  // oriented inequality holds within tolerance
  bool max_ok = false;
};

// Full sign chain at the graph extrema.  With E negative semidefinite the
// comparison value is >= 0 at a minimum and <= 0 at a maximum; positive
// semidefinite E flips both.  Indefinite E forces nothing and is reported
// as not applicable rather than as a failure.
inline ClaimChainReport claim_chain(const GraphHypersurface& gh, int k,
                                    double tol = 1e-6) {
  ClaimChainReport rep;
  rep.ext = extremum_diagnostics(gh, k);
  const HypersurfacePointData pmin = point_data(gh, rep.ext.min_node, k);
  const HypersurfacePointData pmax = point_data(gh, rep.ext.max_node, k);
  rep.def_min = classify_definiteness(pmin.E, pmin.g);
  rep.def_max = classify_definiteness(pmax.E, pmax.g);
  auto orient = [](DefinitenessKind kind) {
    return kind == DefinitenessKind::negative_semi ? 1.0 : -1.0;
  };
  rep.applicable_min = rep.def_min.kind != DefinitenessKind::indefinite;
  rep.applicable_max = rep.def_max.kind != DefinitenessKind::indefinite;
  rep.min_ok = rep.applicable_min &&
               orient(rep.def_min.kind) * rep.ext.at_min >= -tol;
  rep.max_ok = rep.applicable_max &&
               orient(rep.def_max.kind) * rep.ext.at_max <= tol;
  return rep;
}

}  // namespace gbq
