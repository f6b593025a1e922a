#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "gbq/algebraic_curvature.hpp"
#include "gbq/lovelock.hpp"
#include "gbq/util.hpp"

namespace gbq {

// Pointwise data of a hypersurface in Euclidean space: induced metric g and
// shape operator S (g-self-adjoint, i.e. h = g S is the symmetric second
// fundamental form).
struct ShapeOperator {
  int dim = 0;
  Mat g;
  Mat S;
};

// Elementary symmetric functions sigma_0..sigma_d of S and the Newton
// transformations T_0..T_d, T_j = sigma_j I - T_{j-1} S.
struct NewtonData {
  std::vector<double> sigma;
  std::vector<Mat> T;
};

inline ShapeOperator random_shape_operator(int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_shape_operator: need dim >= 2");
  Rng rng(seed);
  ShapeOperator sh;
  sh.dim = d;
  sh.g = random_metric(d, rng);
  Mat b(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = rng.uniform(-1.0, 1.0);
      b(i, j) = v;
      b(j, i) = v;
    }
  // S = g^{-1} b keeps g S = b symmetric.
  sh.S = inverse_metric(sh.g) * b;
  return sh;
}

inline NewtonData sigma_newton(const ShapeOperator& sh) {
  const int d = sh.dim;
  const Mat h = sh.g * sh.S;  // symmetric by construction
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(h, sh.g);
  if (es.info() != Eigen::Success)
    throw std::domain_error("sigma_newton: eigenvalue solve failed");

  NewtonData out;
  out.sigma.assign(d + 1, 0.0);
  out.sigma[0] = 1.0;
  for (int i = 0; i < d; ++i) {
    const double lam = es.eigenvalues()(i);
    for (int j = std::min(i + 1, d); j >= 1; --j) out.sigma[j] += lam * out.sigma[j - 1];
  }
  out.T.assign(d + 1, Mat());
  out.T[0] = Mat::Identity(d, d);
  for (int j = 1; j <= d; ++j) out.T[j] = out.sigma[j] * Mat::Identity(d, d) - out.T[j - 1] * sh.S;
  return out;
}

// Gauss equation with flat ambient space: R_{ijkl} = h_{ik} h_{jl} - h_{il} h_{jk}.
inline AlgebraicCurvature shape_to_curvature(const ShapeOperator& sh) {
  const int d = sh.dim;
  const Mat h = sh.g * sh.S;
  AlgebraicCurvature ac;
  ac.dim = d;
  ac.g = sh.g;
  ac.R = Tensor4(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          ac.R(i, j, k, l) = h(i, k) * h(j, l) - h(i, l) * h(j, k);
  return ac;
}

// Checks that the intrinsic Gauss-Bonnet quantities of a Euclidean
// hypersurface reduce to elementary symmetric functions of its principal
// curvatures:
//   H_{2k}   := L_k            = (2k)!   sigma_{2k}
//   H_{2k+1} := -2 E^{ij} h_ij = (2k+1)! sigma_{2k+1}
//   -E^i_j                     = (2k)!/2 (T_{2k})^i_j
// Relative errors use denominator max(1, |a|, |b|).
struct EuclideanCorrespondence {
  double H2k = 0.0;
  double H2k1 = 0.0;
  double sigma_ref_2k = 0.0;    // (2k)! sigma_{2k}
  double sigma_ref_2k1 = 0.0;   // (2k+1)! sigma_{2k+1}
  double rel_err_H2k = 0.0;
  double rel_err_H2k1 = 0.0;
  double newton_err = 0.0;      // max-norm of -E^i_j - (2k)!/2 (T_{2k})^i_j
};

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline EuclideanCorrespondence euclidean_correspondence(const ShapeOperator& sh, int k) {
  const int d = sh.dim;
  if (2 * k + 1 > d)
    throw std::domain_error("euclidean_correspondence: needs 2k+1 <= dim for H_{2k+1}");
  const AlgebraicCurvature ac = shape_to_curvature(sh);
  const LovelockData ld = lovelock(ac, k);
  const NewtonData nd = sigma_newton(sh);
  const Mat h = sh.g * sh.S;

  EuclideanCorrespondence out;
  out.H2k = ld.Lk;
  out.sigma_ref_2k = factorial(2 * k) * nd.sigma[2 * k];
  double c = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c += ld.Ek(i, j) * h(i, j);
  out.H2k1 = -2.0 * c;
  out.sigma_ref_2k1 = factorial(2 * k + 1) * nd.sigma[2 * k + 1];

  auto rel = [](double a, double b) {
    return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
  };
  out.rel_err_H2k = rel(out.H2k, out.sigma_ref_2k);
  out.rel_err_H2k1 = rel(out.H2k1, out.sigma_ref_2k1);

  const Mat e_mixed = ld.Ek * sh.g;  // E^i_j
  const Mat want = 0.5 * factorial(2 * k) * nd.T[2 * k];
  out.newton_err = (-e_mixed - want).cwiseAbs().maxCoeff() /
                   std::max({1.0, e_mixed.cwiseAbs().maxCoeff(), want.cwiseAbs().maxCoeff()});
  return out;
}

}  // namespace gbq
