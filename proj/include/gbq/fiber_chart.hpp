#pragma once

// Coordinate charts on the fiber space form N^d of curvature kappa.
//
// kappa = 0: the flat torus chart, w == 1 on the unit period box.
// kappa = +-1: a conformally flat box, gN = w(x)^2 delta with
//     w(x) = 2L / (1 + kappa L^2 |x - c|^2),
// which has constant curvature exactly kappa for any L > 0.  The chart is
// centered at c = (1/2, ..., 1/2) with L = 1/2, so the unit box stays well
// inside the kappa = -1 disk for every fiber dimension d <= 15.
//
// All chart quantities (metric, inverse, Christoffels, log-w gradient) are
// closed form; nothing here is finite-differenced.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbq/tensor4.hpp"

namespace gbq {

struct FiberChart {
  int dim = 0;
  int kappa = 0;
  double L = 0.5;       // conformal scale (unused when kappa = 0)
  double center = 0.5;  // chart center along each axis

  FiberChart() = default;
  FiberChart(int d, int kap) : dim(d), kappa(kap) {
    if (d < 1 || d > 15) {
      throw std::invalid_argument("fiber chart supports 1 <= dim <= 15");
    }
    if (kap < -1 || kap > 1) {
      throw std::invalid_argument("fiber curvature must be -1, 0 or +1");
    }
  }

  // Conformal factor w at chart point x (kappa = 0 gives 1).
  double w(const std::vector<double>& x) const {
    if (kappa == 0) return 1.0;
    double q = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double t = x[a] - center;
      q += t * t;
    }
    const double den = 1.0 + kappa * L * L * q;
    if (!(den > 0.0)) {
      throw std::domain_error("chart point outside the conformal disk");
    }
    return 2.0 * L / den;
  }

  // phi_a = d_a log w.
  std::vector<double> log_w_grad(const std::vector<double>& x) const {
    std::vector<double> out(dim, 0.0);
    if (kappa == 0) return out;
    double q = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double t = x[a] - center;
      q += t * t;
    }
    const double den = 1.0 + kappa * L * L * q;
    if (!(den > 0.0)) {
      throw std::domain_error("chart point outside the conformal disk");
    }
    for (int a = 0; a < dim; ++a) {
      out[a] = -2.0 * kappa * L * L * (x[a] - center) / den;
    }
    return out;
  }

  Mat metric(const std::vector<double>& x) const {
    const double ww = w(x) * w(x);
    return ww * Mat::Identity(dim, dim);
  }

  Mat inverse_metric(const std::vector<double>& x) const {
    const double ww = w(x) * w(x);
    return (1.0 / ww) * Mat::Identity(dim, dim);
  }

  // GammaN^c_{ab} for gN = w^2 delta:
  //   delta^c_a phi_b + delta^c_b phi_a - delta_{ab} phi_c,  phi = log w.
  Tensor3 christoffels(const std::vector<double>& x) const {
    const std::vector<double> phi = log_w_grad(x);
    Tensor3 gamma(dim);
    for (int c = 0; c < dim; ++c)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          double v = 0.0;
          if (c == a) v += phi[b];
          if (c == b) v += phi[a];
          if (a == b) v -= phi[c];
          gamma(c, a, b) = v;
        }
    return gamma;
  }

  // RN_{abcd} = kappa (gN_ac gN_bd - gN_ad gN_bc), exact for this chart.
  Tensor4 curvature(const std::vector<double>& x) const {
    const Mat gN = metric(x);
    Tensor4 R(dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c)
          for (int e = 0; e < dim; ++e) {
            R(a, b, c, e) =
                kappa * (gN(a, c) * gN(b, e) - gN(a, e) * gN(b, c));
          }
    return R;
  }
};

}  // namespace gbq
