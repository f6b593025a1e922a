#pragma once

#include <cmath>
#include <vector>

#include "gbq/metric_field.hpp"

namespace gbq {

struct VariationCheck {
  double fd = 0.0;         // centered difference of the total L_k integral
  double predicted = 0.0;  // -integral of E^{ij} v_{ij}
  double rel_err = 0.0;
};

inline PeriodicMetricField perturbed_field(const PeriodicMetricField& f,
                                           const std::vector<Mat>& v, double t) {
  if (v.size() != f.g.size())
    throw std::invalid_argument("perturbed_field: direction size does not match field");
  PeriodicMetricField out = f;
  for (std::size_t x = 0; x < out.g.size(); ++x) out.g[x] += t * v[x];
  return out;
}

// First variation of the total L_k integral against the direction v, compared
// with the generalized Einstein tensor prediction d/dt total = -int E^{ij} v_ij.
inline VariationCheck first_variation_check(const PeriodicMetricField& f,
                                            const std::vector<Mat>& v, int k, double step) {
  const PeriodicMetricField fp = perturbed_field(f, v, step);
  const PeriodicMetricField fm = perturbed_field(f, v, -step);
  const double tp = total_Lk(fp, fd_curvature(fp), k);
  const double tm = total_Lk(fm, fd_curvature(fm), k);

  VariationCheck out;
  out.fd = (tp - tm) / (2.0 * step);

  const FieldGeometry geom = fd_curvature(f);
  const double cell = std::pow(f.spacing(), f.grid.dim());
  out.predicted = deterministic_sum(f.grid.size(), [&](std::size_t x) {
    const LovelockData ld = lovelock(node_curvature(f, geom, x), k);
    double s = 0.0;
    const int d = f.grid.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s += ld.Ek(i, j) * v[x](i, j);
    return -s * geom.sqrtdet[x] * cell;
  });
  out.rel_err = std::fabs(out.fd - out.predicted) /
                std::max({std::fabs(out.fd), std::fabs(out.predicted), 1e-300});
  return out;
}

// Max-norm residual between the finite-difference time derivative of the
// curvature under g(t) = g + t v and the analytic evolution law
//   dR_ijkl/dt = (v_k^q R_ijql - v_l^q R_ijqk)/2
//              + (Z_iljk - Z_jlik - Z_ikjl + Z_jkil)/2,   Z_absc = D_a D_b v_sc,
// written in the same index storage as FieldGeometry::riem.
inline double curvature_evolution_residual(const PeriodicMetricField& f,
                                           const std::vector<Mat>& v, double step) {
  const PeriodicGrid& gr = f.grid;
  const int d = gr.dim();
  const std::size_t nn = gr.size();
  const double h = f.spacing();

  const FieldGeometry geom = fd_curvature(f);
  const FieldGeometry gp = fd_curvature(perturbed_field(f, v, step));
  const FieldGeometry gm = fd_curvature(perturbed_field(f, v, -step));

  // First covariant derivative W_jsl = D_j v_sl at every node.
  std::vector<Tensor3> w(nn);
  parallel_for(nn, [&](std::size_t x) {
    Tensor3 wx(d);
    const Tensor3& gam = geom.gamma[x];
    for (int j = 0; j < d; ++j) {
      const Mat dv = (v[gr.shift(x, j, 1)] - v[gr.shift(x, j, -1)]) / (2.0 * h);
      for (int s = 0; s < d; ++s)
        for (int l = 0; l < d; ++l) {
          double acc = dv(s, l);
          for (int m = 0; m < d; ++m)
            acc -= gam(m, j, s) * v[x](m, l) + gam(m, j, l) * v[x](s, m);
          wx(j, s, l) = acc;
        }
    }
    w[x] = wx;
  });

  return deterministic_max(nn, [&](std::size_t x) {
    // Z_ijsl = D_i W_jsl.
    Tensor4 z(d);
    const Tensor3& gam = geom.gamma[x];
    for (int i = 0; i < d; ++i) {
      const Tensor3& wp = w[gr.shift(x, i, 1)];
      const Tensor3& wm = w[gr.shift(x, i, -1)];
      for (int j = 0; j < d; ++j)
        for (int s = 0; s < d; ++s)
          for (int l = 0; l < d; ++l) {
            double acc = (wp(j, s, l) - wm(j, s, l)) / (2.0 * h);
            for (int m = 0; m < d; ++m)
              acc -= gam(m, i, j) * w[x](m, s, l) + gam(m, i, s) * w[x](j, m, l) +
                     gam(m, i, l) * w[x](j, s, m);
            z(i, j, s, l) = acc;
          }
    }
    const Mat vup = v[x] * geom.ginv[x];  // v_a^q
    const Tensor4& r = geom.riem[x];
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const double fd_t =
                (gp.riem[x](i, j, k, l) - gm.riem[x](i, j, k, l)) / (2.0 * step);
            double law = 0.0;
            for (int q = 0; q < d; ++q)
              law += 0.5 * (vup(k, q) * r(i, j, q, l) - vup(l, q) * r(i, j, q, k));
            law += 0.5 * (z(i, l, j, k) - z(j, l, i, k) - z(i, k, j, l) + z(j, k, i, l));
            worst = std::max(worst, std::fabs(fd_t - law));
          }
    return worst;
  });
}

struct DivergenceCheck {
  double maxdiv_e = 0.0;  // max |D_s E^{sj}|
  double maxdiv_p = 0.0;  // max |D_s P^{stlj}| (0 when P is undefined, k = 0)
};

inline DivergenceCheck divergence_free_check(const PeriodicMetricField& f,
                                             const FieldGeometry& geom, int k) {
  const PeriodicGrid& gr = f.grid;
  const int d = gr.dim();
  const std::size_t nn = gr.size();
  const double h = f.spacing();

  std::vector<Mat> e(nn);
  std::vector<Tensor4> p(k >= 1 ? nn : 0);
  parallel_for(nn, [&](std::size_t x) {
    const LovelockData ld = lovelock(node_curvature(f, geom, x), k);
    e[x] = ld.Ek;
    if (k >= 1) p[x] = ld.Pk;
  });

  DivergenceCheck out;
  out.maxdiv_e = deterministic_max(nn, [&](std::size_t x) {
    const Tensor3& gam = geom.gamma[x];
    double worst = 0.0;
    for (int j = 0; j < d; ++j) {
      double div = 0.0;
      for (int s = 0; s < d; ++s) {
        div += (e[gr.shift(x, s, 1)](s, j) - e[gr.shift(x, s, -1)](s, j)) / (2.0 * h);
        for (int m = 0; m < d; ++m)
          div += gam(s, s, m) * e[x](m, j) + gam(j, s, m) * e[x](s, m);
      }
      worst = std::max(worst, std::fabs(div));
    }
    return worst;
  });

  if (k >= 1) {
    out.maxdiv_p = deterministic_max(nn, [&](std::size_t x) {
      const Tensor3& gam = geom.gamma[x];
      double worst = 0.0;
      for (int t = 0; t < d; ++t)
        for (int l = 0; l < d; ++l)
          for (int j = 0; j < d; ++j) {
            double div = 0.0;
            for (int s = 0; s < d; ++s) {
              div += (p[gr.shift(x, s, 1)](s, t, l, j) - p[gr.shift(x, s, -1)](s, t, l, j)) /
                     (2.0 * h);
              for (int m = 0; m < d; ++m)
                div += gam(s, s, m) * p[x](m, t, l, j) + gam(t, s, m) * p[x](s, m, l, j) +
                       gam(l, s, m) * p[x](s, t, m, j) + gam(j, s, m) * p[x](s, t, l, m);
            }
            worst = std::max(worst, std::fabs(div));
          }
      return worst;
    });
  }
  return out;
}

}  // namespace gbq
