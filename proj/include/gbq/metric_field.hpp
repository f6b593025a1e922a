#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "gbq/algebraic_curvature.hpp"
#include "gbq/lovelock.hpp"
#include "gbq/periodic_grid.hpp"
#include "gbq/tensor4.hpp"
#include "gbq/util.hpp"

namespace gbq {

// Smooth Riemannian metric sampled on a periodic lattice covering a torus of
// the given period per axis (spacing = period / n).
struct PeriodicMetricField {
  PeriodicGrid grid;
  double period = 1.0;
  std::vector<Mat> g;

  double spacing() const { return period / grid.n(); }
};

// Geometry derived from a metric field by second-order central differences.
// gamma(m,j,l) = Gamma^m_{jl}; riem holds the fully lowered tensor in the
// convention R_{ijkl} = g_{km}(d_i Gamma^m_{jl} - d_j Gamma^m_{il}
//                             + Gamma^m_{is} Gamma^s_{jl} - Gamma^m_{js} Gamma^s_{il}),
// so space forms give R_{ijkl} = c (g_ik g_jl - g_il g_jk).
struct FieldGeometry {
  std::vector<Mat> ginv;
  std::vector<double> sqrtdet;
  std::vector<Tensor3> gamma;
  std::vector<Tensor4> riem;
};

template <typename F>
inline PeriodicMetricField make_metric_field(int dim, int n, double period, F&& fn) {
  PeriodicMetricField f;
  f.grid = PeriodicGrid(dim, n);
  f.period = period;
  f.g.resize(f.grid.size());
  const double h = period / n;
  std::vector<double> x(dim);
  for (std::size_t node = 0; node < f.grid.size(); ++node) {
    const std::vector<int> c = f.grid.decode(node);
    for (int a = 0; a < dim; ++a) x[a] = c[a] * h;
    f.g[node] = fn(x);
  }
  return f;
}

// Identity plus a few low-frequency trigonometric harmonics per component;
// amplitude is kept small enough that the result stays positive-definite.
inline PeriodicMetricField random_trig_metric_field(int dim, int n, double period,
                                                    std::uint64_t seed,
                                                    double amplitude = 0.03) {
  Rng rng(seed);
  struct Harmonic {
    int i, j;
    std::vector<int> freq;
    double amp, phase;
  };
  std::vector<Harmonic> harmonics;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Harmonic h;
      h.i = i;
      h.j = j;
      h.freq.resize(dim);
      int nz = 0;
      for (int a = 0; a < dim; ++a) {
        h.freq[a] = static_cast<int>(std::floor(rng.uniform(0.0, 3.0))) - 1;  // {-1,0,1}
        nz += h.freq[a] != 0;
      }
      if (nz == 0) h.freq[0] = 1;
      h.amp = amplitude * rng.uniform(0.5, 1.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      h.phase = rng.uniform(0.0, 6.283185307179586);
      harmonics.push_back(h);
    }
  const double twopi = 6.283185307179586;
  return make_metric_field(dim, n, period, [&](const std::vector<double>& x) {
    Mat g = Mat::Identity(dim, dim);
    for (const Harmonic& h : harmonics) {
      double arg = h.phase;
      for (int a = 0; a < dim; ++a) arg += twopi * h.freq[a] * x[a] / period;
      const double v = h.amp * std::cos(arg);
      g(h.i, h.j) += v;
      if (h.i != h.j) g(h.j, h.i) += v;
    }
    return g;
  });
}

// Smooth symmetric (0,2)-tensor field for variation directions.
inline std::vector<Mat> random_trig_symmetric_field(const PeriodicGrid& grid, double period,
                                                    std::uint64_t seed,
                                                    double amplitude = 1.0) {
  Rng rng(seed);
  const int dim = grid.dim();
  struct Harmonic {
    std::vector<int> freq;
    double amp, phase;
  };
  std::vector<std::vector<Harmonic>> comp;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Harmonic h;
      h.freq.resize(dim);
      int nz = 0;
      for (int a = 0; a < dim; ++a) {
        h.freq[a] = static_cast<int>(std::floor(rng.uniform(0.0, 3.0))) - 1;
        nz += h.freq[a] != 0;
      }
      if (nz == 0) h.freq[dim - 1] = 1;
      h.amp = amplitude * rng.uniform(0.3, 1.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      h.phase = rng.uniform(0.0, 6.283185307179586);
      comp.push_back({h});
    }
  const double twopi = 6.283185307179586;
  const double h_spacing = period / grid.n();
  std::vector<Mat> v(grid.size());
  for (std::size_t node = 0; node < grid.size(); ++node) {
    const std::vector<int> c = grid.decode(node);
    Mat m = Mat::Zero(dim, dim);
    int idx = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        for (const Harmonic& h : comp[idx]) {
          double arg = h.phase;
          for (int a = 0; a < dim; ++a) arg += twopi * h.freq[a] * (c[a] * h_spacing) / period;
          const double val = h.amp * std::cos(arg);
          m(i, j) += val;
          if (i != j) m(j, i) += val;
        }
        ++idx;
      }
    v[node] = m;
  }
  return v;
}

// Conformally flat field g = exp(2 phi) delta.
template <typename F>
inline PeriodicMetricField conformal_metric_field(int dim, int n, double period, F&& phi) {
  return make_metric_field(dim, n, period, [&](const std::vector<double>& x) {
    return std::exp(2.0 * phi(x)) * Mat::Identity(dim, dim);
  });
}

namespace detail {

inline std::string node_label(const PeriodicGrid& grid, std::size_t node) {
  const std::vector<int> c = grid.decode(node);
  std::string s = "(";
  for (int a = 0; a < grid.dim(); ++a) {
    if (a) s += ",";
    s += std::to_string(c[a]);
  }
  s += ")";
  return s;
}

}  // namespace detail

inline FieldGeometry fd_curvature(const PeriodicMetricField& f) {
  const PeriodicGrid& gr = f.grid;
  const int d = gr.dim();
  const std::size_t nn = gr.size();
  if (f.g.size() != nn)
    throw std::invalid_argument("fd_curvature: field size does not match grid");
  const double h = f.spacing();

  FieldGeometry out;
  out.ginv.resize(nn);
  out.sqrtdet.resize(nn);
  out.gamma.resize(nn);
  out.riem.resize(nn);

  // Positive-definiteness gate runs serially so the failing node is reported.
  for (std::size_t x = 0; x < nn; ++x) {
    Eigen::LLT<Mat> llt(f.g[x]);
    if (llt.info() != Eigen::Success)
      throw std::domain_error("fd_curvature: metric not positive-definite at node " +
                              detail::node_label(gr, x));
    out.ginv[x] = llt.solve(Mat::Identity(d, d));
    out.sqrtdet[x] = std::sqrt(f.g[x].determinant());
  }

  parallel_for(nn, [&](std::size_t x) {
    std::vector<Mat> dg(d);
    for (int a = 0; a < d; ++a)
      dg[a] = (f.g[gr.shift(x, a, 1)] - f.g[gr.shift(x, a, -1)]) / (2.0 * h);
    Tensor3 gam(d);
    const Mat& gi = out.ginv[x];
    for (int m = 0; m < d; ++m)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int p = 0; p < d; ++p)
            s += gi(m, p) * (dg[j](l, p) + dg[l](j, p) - dg[p](j, l));
          gam(m, j, l) = 0.5 * s;
        }
    out.gamma[x] = gam;
  });

  parallel_for(nn, [&](std::size_t x) {
    std::vector<Tensor3> dgam(d, Tensor3(d));
    for (int a = 0; a < d; ++a) {
      const Tensor3& gp = out.gamma[gr.shift(x, a, 1)];
      const Tensor3& gm = out.gamma[gr.shift(x, a, -1)];
      for (int m = 0; m < d; ++m)
        for (int j = 0; j < d; ++j)
          for (int l = 0; l < d; ++l) dgam[a](m, j, l) = (gp(m, j, l) - gm(m, j, l)) / (2.0 * h);
    }
    const Tensor3& gam = out.gamma[x];
    Tensor4 r(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
          for (int m = 0; m < d; ++m) {
            double fm = dgam[i](m, j, l) - dgam[j](m, i, l);
            for (int s = 0; s < d; ++s)
              fm += gam(m, i, s) * gam(s, j, l) - gam(m, j, s) * gam(s, i, l);
            for (int k = 0; k < d; ++k) r(i, j, k, l) += f.g[x](k, m) * fm;
          }
        }
    out.riem[x] = r;
  });
  return out;
}

inline AlgebraicCurvature node_curvature(const PeriodicMetricField& f, const FieldGeometry& geom,
                                         std::size_t node) {
  AlgebraicCurvature ac;
  ac.dim = f.grid.dim();
  ac.g = f.g[node];
  ac.R = geom.riem[node];
  return ac;
}

// Integral of L_k over the torus (Riemann sum against the metric volume).
inline double total_Lk(const PeriodicMetricField& f, const FieldGeometry& geom, int k) {
  const double cell = std::pow(f.spacing(), f.grid.dim());
  return deterministic_sum(f.grid.size(), [&](std::size_t x) {
    return lovelock(node_curvature(f, geom, x), k).Lk * geom.sqrtdet[x] * cell;
  });
}

// CSV dump: one row per node with the multi-index, the metric upper triangle
// (row-major), L_k, and the E_(k) upper triangle (row-major).
inline void dump_field_csv(const PeriodicMetricField& f, const FieldGeometry& geom, int k,
                           const std::string& path) {
  const int d = f.grid.dim();
  std::ofstream os(path);
  if (!os) throw std::runtime_error("dump_field_csv: cannot open " + path);
  os << "# periodic metric field dump: dim=" << d << " n=" << f.grid.n()
     << " period=" << f.period << " k=" << k << "\n";
  os << "# columns: node index per axis; g_ij upper triangle row-major; L_k; "
        "E_k^ij upper triangle row-major\n";
  for (int a = 0; a < d; ++a) os << "i" << a << ",";
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) os << "g" << i << j << ",";
  os << "L" << k;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) os << ",E" << i << j;
  os << "\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
  };
  for (std::size_t x = 0; x < f.grid.size(); ++x) {
    const std::vector<int> c = f.grid.decode(x);
    for (int a = 0; a < d; ++a) os << c[a] << ",";
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        put(f.g[x](i, j));
        os << ",";
      }
    const LovelockData ld = lovelock(node_curvature(f, geom, x), k);
    put(ld.Lk);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        os << ",";
        put(ld.Ek(i, j));
      }
    os << "\n";
  }
}

}  // namespace gbq
