#pragma once

// Radial graphs Sigma = {(u(x), x)} inside a warped product I x_lambda N^d.
//
// The graph is sampled on a periodic grid over the unit chart box of the
// fiber; only u is finite-differenced (second-order central stencils), every
// chart and warping quantity is evaluated in closed form.  With e_i = d_i +
// u_i d_r the induced data at a node are
//
//   g_ij   = lambda^2 gN_ij + u_i u_j
//   W^2    = 1 + lambda^-2 gN^{ab} u_a u_b,            a = 1/W = <d/dr, nu>
//   h_ij   = (1/W) [ lambda lambda' gN_ij + 2 (lambda'/lambda) u_i u_j
//                    - (u_ij - GammaN^c_{ij} u_c) ]
//
// for the outward unit normal nu (positive radial component), and the Gauss
// equation assembles the intrinsic curvature from the ambient block
//
//   amb_ijkl = (kappa - lambda'^2) lambda^2 (gN_ik gN_jl - gN_il gN_jk)
//              - lambda lambda'' [ u_i u_k gN_jl + u_j u_l gN_ik
//                                  - u_i u_l gN_jk - u_j u_k gN_il ]
//
// as R_ijkl = amb_ijkl + h_ik h_jl - h_il h_jk.  H_{2k} is the Gauss-Bonnet
// curvature L_k of that intrinsic tensor and H_{2k+1} = -2 E_(k)^{ij} h_ij.
//
// a > 0 holds automatically for graphs; the star-shapedness / domain guard
// below instead rejects nodes whose radius leaves the model's interval or the
// positivity region of lambda, which is how a perturbation destroys the graph
// in practice.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbq/algebraic_curvature.hpp"
#include "gbq/fiber_chart.hpp"
#include "gbq/lovelock.hpp"
#include "gbq/metric_field.hpp"
#include "gbq/periodic_grid.hpp"
#include "gbq/util.hpp"
#include "gbq/warped_product.hpp"

namespace gbq {

struct GraphHypersurface {
  WarpedProduct wp;
  FiberChart chart;
  PeriodicGrid grid;       // unit chart box, period 1
  std::vector<double> u;   // radius per node

  double spacing() const { return 1.0 / grid.n(); }
};

// Builds u(x) = fn(x) on an n_grid^d grid over the unit chart box.
template <typename F>
inline GraphHypersurface graph_from_function(const WarpedProduct& wp, int n_grid,
                                             F&& fn) {
  GraphHypersurface gh;
  gh.wp = wp;
  gh.chart = FiberChart(wp.n - 1, wp.kappa);
  gh.grid = PeriodicGrid(wp.n - 1, n_grid);
  gh.u.resize(gh.grid.size());
  const double h = 1.0 / n_grid;
  const int d = wp.n - 1;
  std::vector<double> x(d);
  for (std::size_t node = 0; node < gh.grid.size(); ++node) {
    const std::vector<int> c = gh.grid.decode(node);
    for (int a = 0; a < d; ++a) x[a] = c[a] * h;
    gh.u[node] = fn(x);
  }
  return gh;
}

// Constant-radius slice {r0} x N.
inline GraphHypersurface slice_graph(const WarpedProduct& wp, int n_grid,
                                     double r0) {
  return graph_from_function(wp, n_grid,
                             [&](const std::vector<double>&) { return r0; });
}

// u = r0 + eps * psi(x).
template <typename F>
inline GraphHypersurface perturbed_graph(const WarpedProduct& wp, int n_grid,
                                         double r0, double eps, F&& psi) {
  return graph_from_function(wp, n_grid, [&](const std::vector<double>& x) {
    return r0 + eps * psi(x);
  });
}

// Serial guard: every node radius must be finite, inside the model interval,
// and give lambda > 0.  Throws before any parallel pass runs so workers never
// see invalid nodes.
inline void validate_graph(const GraphHypersurface& gh) {
  for (std::size_t node = 0; node < gh.grid.size(); ++node) {
    const double r = gh.u[node];
    if (!std::isfinite(r) || !gh.wp.contains(r) || !(gh.wp.lambda(r) > 0.0)) {
      throw std::domain_error(
          "graph leaves the star-shaped domain of model '" + gh.wp.name +
          "' at node " + detail::node_label(gh.grid, node) +
          " (u = " + std::to_string(r) + ")");
    }
  }
}

struct HypersurfacePointData {
  int k = 0;
  double u = 0.0;          // radius at the node
  double a = 0.0;          // <d/dr, nu> in (0, 1]
  Mat g;                   // induced metric
  Mat ginv;
  Mat h;                   // second fundamental form
  Eigen::VectorXd du;      // chart partials of u
  AlgebraicCurvature intrinsic;
  Mat E;                   // E_(k)^{ij} of the intrinsic curvature
  double H2k = 0.0;        // L_k of the intrinsic curvature
  double H2k1 = 0.0;       // -2 E_(k)^{ij} h_ij
};

// Full pointwise package at one node.  Assumes validate_graph passed.
inline HypersurfacePointData point_data(const GraphHypersurface& gh,
                                        std::size_t node, int k) {
  const int d = gh.grid.dim();
  const double h = gh.spacing();
  const double u0 = gh.u[node];

  // Central differences of u; the only discretized object.
  Eigen::VectorXd du(d);
  Mat d2u(d, d);
  for (int a = 0; a < d; ++a) {
    const double up = gh.u[gh.grid.shift(node, a, +1)];
    const double um = gh.u[gh.grid.shift(node, a, -1)];
    du(a) = (up - um) / (2.0 * h);
    d2u(a, a) = (up - 2.0 * u0 + um) / (h * h);
  }
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      const double upp = gh.u[gh.grid.shift(gh.grid.shift(node, a, +1), b, +1)];
      const double upm = gh.u[gh.grid.shift(gh.grid.shift(node, a, +1), b, -1)];
      const double ump = gh.u[gh.grid.shift(gh.grid.shift(node, a, -1), b, +1)];
      const double umm = gh.u[gh.grid.shift(gh.grid.shift(node, a, -1), b, -1)];
      d2u(a, b) = d2u(b, a) = (upp - upm - ump + umm) / (4.0 * h * h);
    }

  std::vector<double> x(d);
  const std::vector<int> c = gh.grid.decode(node);
  for (int a = 0; a < d; ++a) x[a] = c[a] * h;

  const Mat gN = gh.chart.metric(x);
  const Mat gNinv = gh.chart.inverse_metric(x);
  const Tensor3 gammaN = gh.chart.christoffels(x);

  const double lam = gh.wp.lambda(u0);
  const double dlam = gh.wp.dlambda(u0);
  const double ddlam = gh.wp.ddlambda(u0);

  HypersurfacePointData out;
  out.k = k;
  out.u = u0;
  out.du = du;

  out.g = lam * lam * gN + du * du.transpose();
  out.ginv = inverse_metric(out.g);

  double grad2 = 0.0;  // gN^{ab} u_a u_b
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) grad2 += gNinv(a, b) * du(a) * du(b);
  const double W = std::sqrt(1.0 + grad2 / (lam * lam));
  out.a = 1.0 / W;

  out.h = Mat(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double cov = d2u(i, j);
      for (int cidx = 0; cidx < d; ++cidx) cov -= gammaN(cidx, i, j) * du(cidx);
      out.h(i, j) = (lam * dlam * gN(i, j) +
                     2.0 * (dlam / lam) * du(i) * du(j) - cov) / W;
    }

  // Gauss equation: ambient block plus h o h.
  Tensor4 R(d);
  const double cf = (gh.wp.kappa - dlam * dlam) * lam * lam;
  const double cr = lam * ddlam;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int kk = 0; kk < d; ++kk)
        for (int l = 0; l < d; ++l) {
          double amb = cf * (gN(i, kk) * gN(j, l) - gN(i, l) * gN(j, kk));
          amb -= cr * (du(i) * du(kk) * gN(j, l) + du(j) * du(l) * gN(i, kk) -
                       du(i) * du(l) * gN(j, kk) - du(j) * du(kk) * gN(i, l));
          R(i, j, kk, l) =
              amb + out.h(i, kk) * out.h(j, l) - out.h(i, l) * out.h(j, kk);
        }
  out.intrinsic.dim = d;
  out.intrinsic.g = out.g;
  out.intrinsic.R = R;

  const LovelockData ld = lovelock(out.intrinsic, k);
  out.E = ld.Ek;
  out.H2k = ld.Lk;
  double eh = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) eh += ld.Ek(i, j) * out.h(i, j);
  out.H2k1 = -2.0 * eh;
  return out;
}

// Covariant Hessians of r and of the radial primitive phi (phi' = lambda)
// along the graph, discretized independently of the pointwise package:
// second differences of the node fields u(x) and phi(u(x)) with Christoffels
// from central differences of the induced metric field.  point_data output
// is 2-jet algebra, so comparing against these Hessians is a genuine
// numerical check rather than an identity of the stencil values.
//
// Convergence requires the flat fiber chart (kappa = 0): the conformal
// charts are continuous across the periodic wrap but their factor has a
// derivative kink there, so differencing the metric field across the seam
// leaves an O(1) Christoffel error at boundary nodes.  On slices the first
// differences of u and phi vanish identically, so the corrupt correction
// terms drop out and the result is exact on every chart.
struct GraphHessians {
  std::vector<Mat> hess_phi;
  std::vector<Mat> hess_r;
};

inline GraphHessians graph_hessians(const GraphHypersurface& gh) {
  validate_graph(gh);
  const std::size_t nn = gh.grid.size();
  const int d = gh.grid.dim();
  const double h = gh.spacing();
  const PeriodicGrid& gr = gh.grid;

  std::vector<double> phiv(nn);
  std::vector<Mat> gfield(nn);
  parallel_for(nn, [&](std::size_t node) {
    phiv[node] = phi_primitive(gh.wp, gh.u[node], 1e-12);
    gfield[node] = point_data(gh, node, 0).g;
  });

  GraphHessians out;
  out.hess_phi.resize(nn);
  out.hess_r.resize(nn);
  parallel_for(nn, [&](std::size_t node) {
    auto second_diffs = [&](const std::vector<double>& fld, Eigen::VectorXd& d1,
                            Mat& d2) {
      const double f0 = fld[node];
      d1.resize(d);
      d2.resize(d, d);
      for (int a = 0; a < d; ++a) {
        const double fp = fld[gr.shift(node, a, +1)];
        const double fm = fld[gr.shift(node, a, -1)];
        d1(a) = (fp - fm) / (2.0 * h);
        d2(a, a) = (fp - 2.0 * f0 + fm) / (h * h);
      }
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
          const double fpp = fld[gr.shift(gr.shift(node, a, +1), b, +1)];
          const double fpm = fld[gr.shift(gr.shift(node, a, +1), b, -1)];
          const double fmp = fld[gr.shift(gr.shift(node, a, -1), b, +1)];
          const double fmm = fld[gr.shift(gr.shift(node, a, -1), b, -1)];
          d2(a, b) = d2(b, a) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
        }
    };
    Eigen::VectorXd du, dphi;
    Mat d2u, d2phi;
    second_diffs(gh.u, du, d2u);
    second_diffs(phiv, dphi, d2phi);

    Tensor3 dg(d);
    for (int a = 0; a < d; ++a) {
      const Mat diff = (gfield[gr.shift(node, a, +1)] -
                        gfield[gr.shift(node, a, -1)]) / (2.0 * h);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) dg(a, i, j) = diff(i, j);
    }
    const Mat ginv = inverse_metric(gfield[node]);
    out.hess_phi[node] = Mat(d, d);
    out.hess_r[node] = Mat(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double corr_r = 0.0, corr_phi = 0.0;
        for (int m = 0; m < d; ++m) {
          double gam = 0.0;
          for (int p = 0; p < d; ++p) {
            gam += 0.5 * ginv(m, p) * (dg(i, j, p) + dg(j, i, p) - dg(p, i, j));
          }
          corr_r += gam * du(m);
          corr_phi += gam * dphi(m);
        }
        out.hess_r[node](i, j) = d2u(i, j) - corr_r;
        out.hess_phi[node](i, j) = d2phi(i, j) - corr_phi;
      }
  });
  return out;
}

// H_{2k+1}/H_{2k} per node.  Throws if H_{2k} vanishes anywhere (relative to
// its largest magnitude over the graph), naming the first offending node.
inline std::vector<double> quotient_field(const GraphHypersurface& gh, int k) {
  validate_graph(gh);
  const std::size_t nn = gh.grid.size();
  std::vector<double> h2k(nn), h2k1(nn);
  parallel_for(nn, [&](std::size_t node) {
    const HypersurfacePointData pd = point_data(gh, node, k);
    h2k[node] = pd.H2k;
    h2k1[node] = pd.H2k1;
  });
  double big = 0.0;
  for (std::size_t node = 0; node < nn; ++node) {
    big = std::max(big, std::fabs(h2k[node]));
  }
  const double thr = 1e-12 * std::max(1.0, big);
  std::vector<double> q(nn);
  for (std::size_t node = 0; node < nn; ++node) {
    if (std::fabs(h2k[node]) <= thr) {
      throw std::domain_error("H_{2k} vanishes at node " +
                              detail::node_label(gh.grid, node) + " (H_" +
                              std::to_string(2 * k) + " = " +
                              std::to_string(h2k[node]) +
                              "); quotient undefined");
    }
    q[node] = h2k1[node] / h2k[node];
  }
  return q;
}

struct HessianResiduals {
  double r1 = 0.0;  // hess phi = lambda' g - lambda a h
  double r2 = 0.0;  // hess r = (lambda'/lambda)(g - du du) - a h
  double r3 = 0.0;  // -2 E : hess phi = (n-1-2k) lambda' H_2k - lambda a H_2k+1
  double r4 = 0.0;  // -2 E : hess r = (n-1-2k)(lambda'/lambda) H_2k
                    //               + 2 (lambda'/lambda) E^{ij} u_i u_j - a H_2k+1
};

// Max-norm residuals of the structural Hessian identities over all nodes,
// comparing the independently discretized Hessians against the pointwise
// geometric package.
inline HessianResiduals hessian_identity_residuals(const GraphHypersurface& gh,
                                                   int k) {
  validate_graph(gh);
  const GraphHessians gH = graph_hessians(gh);
  const std::size_t nn = gh.grid.size();
  const int d = gh.grid.dim();
  const int n = gh.wp.n;
  std::vector<double> m1(nn), m2(nn), m3(nn), m4(nn);
  parallel_for(nn, [&](std::size_t node) {
    const HypersurfacePointData pd = point_data(gh, node, k);
    const Mat& hess_phi = gH.hess_phi[node];
    const Mat& hess_r = gH.hess_r[node];
    const double lam = gh.wp.lambda(pd.u);
    const double dlam = gh.wp.dlambda(pd.u);
    double w1 = 0.0, w2 = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double want1 = dlam * pd.g(i, j) - lam * pd.a * pd.h(i, j);
        const double want2 = (dlam / lam) * (pd.g(i, j) - pd.du(i) * pd.du(j)) -
                             pd.a * pd.h(i, j);
        w1 = std::max(w1, std::fabs(hess_phi(i, j) - want1));
        w2 = std::max(w2, std::fabs(hess_r(i, j) - want2));
      }
    m1[node] = w1;
    m2[node] = w2;
    double ephi = 0.0, er = 0.0, euu = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        ephi += pd.E(i, j) * hess_phi(i, j);
        er += pd.E(i, j) * hess_r(i, j);
        euu += pd.E(i, j) * pd.du(i) * pd.du(j);
      }
    const double want3 =
        (n - 1 - 2 * k) * dlam * pd.H2k - lam * pd.a * pd.H2k1;
    const double want4 = (n - 1 - 2 * k) * (dlam / lam) * pd.H2k +
                         2.0 * (dlam / lam) * euu - pd.a * pd.H2k1;
    m3[node] = std::fabs(-2.0 * ephi - want3);
    m4[node] = std::fabs(-2.0 * er - want4);
  });
  HessianResiduals out;
  for (std::size_t node = 0; node < nn; ++node) {
    out.r1 = std::max(out.r1, m1[node]);
    out.r2 = std::max(out.r2, m2[node]);
    out.r3 = std::max(out.r3, m3[node]);
    out.r4 = std::max(out.r4, m4[node]);
  }
  return out;
}

// Packs the induced metric into a periodic field for the grid curvature
// pipeline.  Only meaningful on the flat fiber chart, where the box really is
// a torus; other charts are rejected.
inline PeriodicMetricField induced_metric_field(const GraphHypersurface& gh) {
  if (gh.chart.kappa != 0) {
    throw std::invalid_argument(
        "induced metric field requires the flat fiber chart (kappa = 0)");
  }
  validate_graph(gh);
  PeriodicMetricField f;
  f.grid = gh.grid;
  f.period = 1.0;
  f.g.resize(gh.grid.size());
  parallel_for(gh.grid.size(), [&](std::size_t node) {
    f.g[node] = point_data(gh, node, 0).g;
  });
  return f;
}

// CSV dump: node multi-index, u, a, H_2k, H_2k+1, and their quotient (raw
// division; not-a-number when H_2k = 0).
inline void dump_hypersurface_csv(const GraphHypersurface& gh, int k,
                                  const std::string& path) {
  validate_graph(gh);
  const std::size_t nn = gh.grid.size();
  const int d = gh.grid.dim();
  std::vector<double> va(nn), vh2k(nn), vh2k1(nn);
  parallel_for(nn, [&](std::size_t node) {
    const HypersurfacePointData pd = point_data(gh, node, k);
    va[node] = pd.a;
    vh2k[node] = pd.H2k;
    vh2k1[node] = pd.H2k1;
  });
  std::ofstream os(path);
  if (!os) throw std::runtime_error("dump_hypersurface_csv: cannot open " + path);
  os << "# radial graph dump: model=" << gh.wp.name << " n=" << gh.wp.n
     << " grid=" << gh.grid.n() << " k=" << k << "\n";
  for (int a = 0; a < d; ++a) os << "i" << a << ",";
  os << "u,a,H" << 2 * k << ",H" << 2 * k + 1 << ",quotient\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
  };
  for (std::size_t node = 0; node < nn; ++node) {
    const std::vector<int> c = gh.grid.decode(node);
    for (int a = 0; a < d; ++a) os << c[a] << ",";
    put(gh.u[node]);
    os << ",";
    put(va[node]);
    os << ",";
    put(vh2k[node]);
    os << ",";
    put(vh2k1[node]);
    os << ",";
    put(vh2k1[node] / vh2k[node]);
    os << "\n";
  }
}

}  // namespace gbq
