#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "gbq/tensor4.hpp"
#include "gbq/util.hpp"

namespace gbq {

// Pointwise curvature data: metric plus fully lowered Riemann tensor.
//
// Conventions (enforced by the space-form tests):
//   R antisymmetric in slots (1,2) and (3,4), symmetric under pair exchange;
//   space forms satisfy R_{ijkl} = c (g_{ik} g_{jl} - g_{il} g_{jk}), so the
//   unit round sphere has sectional curvature +1 and Scal = d(d-1);
//   Ric_{ij} = g^{kl} R_{kilj}.
struct AlgebraicCurvature {
  int dim = 0;
  Mat g;
  Tensor4 R;
};

struct Contractions {
  Mat ric;     // lowered Ricci
  double scal = 0.0;
};

struct SymmetryResiduals {
  double antisym_first = 0.0;   // R(i,j,k,l) + R(j,i,k,l)
  double antisym_second = 0.0;  // R(i,j,k,l) + R(i,j,l,k)
  double pair_exchange = 0.0;   // R(i,j,k,l) - R(k,l,i,j)
  double bianchi = 0.0;         // cyclic sum over the last three slots
};

inline Mat inverse_metric(const Mat& g) {
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("metric is not positive-definite");
  return llt.solve(Mat::Identity(g.rows(), g.cols()));
}

// Well-conditioned random SPD metric: random rotation of eigenvalues drawn
// from [0.8, 1.25].
inline Mat random_metric(int d, Rng& rng) {
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat diag = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) diag(i, i) = rng.uniform(0.8, 1.25);
  return q * diag * q.transpose();
}

// Projects a raw rank-4 array onto the Riemann symmetry class: antisymmetrize
// both pairs, symmetrize pair exchange, then remove the first-Bianchi
// violation. The last step subtracts b(T)_{ijkl} = (T_{ijkl} + T_{iklj} +
// T_{iljk})/3, which on pair-symmetric input is totally antisymmetric, so the
// subtraction stays inside the symmetry class and is idempotent.
inline void project_riemann_symmetries(Tensor4& t) {
  const int d = t.dim();
  Tensor4 a(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          a(i, j, k, l) = 0.25 * (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) + t(j, i, l, k));
  Tensor4 s(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          s(i, j, k, l) = 0.5 * (a(i, j, k, l) + a(k, l, i, j));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          t(i, j, k, l) = s(i, j, k, l) -
                          (s(i, j, k, l) + s(i, k, l, j) + s(i, l, j, k)) / 3.0;
}

inline AlgebraicCurvature random_algebraic_curvature(int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_algebraic_curvature: need dim >= 2");
  Rng rng(seed);
  AlgebraicCurvature ac;
  ac.dim = d;
  ac.g = random_metric(d, rng);
  ac.R = Tensor4(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) ac.R(i, j, k, l) = rng.uniform(-1.0, 1.0);
  project_riemann_symmetries(ac.R);
  return ac;
}

inline AlgebraicCurvature space_form_curvature(const Mat& g, double c) {
  AlgebraicCurvature ac;
  ac.dim = static_cast<int>(g.rows());
  ac.g = g;
  ac.R = Tensor4(ac.dim);
  for (int i = 0; i < ac.dim; ++i)
    for (int j = 0; j < ac.dim; ++j)
      for (int k = 0; k < ac.dim; ++k)
        for (int l = 0; l < ac.dim; ++l)
          ac.R(i, j, k, l) = c * (g(i, k) * g(j, l) - g(i, l) * g(j, k));
  return ac;
}

inline Contractions contractions(const AlgebraicCurvature& ac) {
  const int d = ac.dim;
  const Mat ginv = inverse_metric(ac.g);
  Contractions out;
  out.ric = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s += ginv(k, l) * ac.R(k, i, l, j);
      out.ric(i, j) = s;
    }
  out.scal = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.scal += ginv(i, j) * out.ric(i, j);
  return out;
}

inline SymmetryResiduals symmetry_residuals(const Tensor4& r) {
  const int d = r.dim();
  SymmetryResiduals out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          out.antisym_first = std::max(out.antisym_first, std::fabs(r(i, j, k, l) + r(j, i, k, l)));
          out.antisym_second = std::max(out.antisym_second, std::fabs(r(i, j, k, l) + r(i, j, l, k)));
          out.pair_exchange = std::max(out.pair_exchange, std::fabs(r(i, j, k, l) - r(k, l, i, j)));
          out.bianchi = std::max(out.bianchi,
                                 std::fabs(r(i, j, k, l) + r(i, k, l, j) + r(i, l, j, k)));
        }
  return out;
}

}  // namespace gbq
