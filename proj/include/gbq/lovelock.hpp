#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "gbq/algebraic_curvature.hpp"
#include "gbq/tensor4.hpp"
#include "gbq/util.hpp"

namespace gbq {

// Gauss-Bonnet curvature L_k, generalized Einstein tensor E_(k) (contravariant)
// and its curvature-gradient tensor P_(k), all evaluated pointwise from
// algebraic curvature data:
//
//   L_k     = 2^{-k}     delta^{I}_{J}     R_{I1 I2}^{J1 J2} ... (k factors)
//   E_(k)^i_j = -2^{-(k+1)} delta^{i I}_{j J} R_{I1 I2}^{J1 J2} ... (k factors)
//   P_(k)^{st}_{lj} = 2^{-k} delta^{I s t}_{W l j} R_{I1 I2}^{W1 W2} ... (k-1 factors)
//
// with delta the generalized Kronecker delta. Indices of E and P are then
// raised with the inverse metric. The deltas kill repeated indices, so sums
// run over distinct tuples only; the delta itself is realised as an explicit
// signed sum over permutations of the lower slots.
//
// Conventions that follow from these normalisations (all covered by tests):
//   L_0 = 1 and E_(0) = -g^{ij}/2 fall out of the same code paths;
//   tr_g E_(k) = -(d-2k)/2 L_k;
//   E_(1)^{ij} = Ric^{ij} - Scal g^{ij}/2;
//   E^{ms} = -L_k g^{ms}/2 + k P^{ijsp} R_{ij}^m_p;
//   P_(1)^{stlj} = (g^{sl} g^{tj} - g^{tl} g^{sj})/2.
// P_(0) is not defined here (has_Pk = false for k = 0).
struct LovelockData {
  int k = 0;
  double Lk = 0.0;
  Mat Ek;        // E_(k)^{ij}, contravariant, symmetric
  Tensor4 Pk;    // P_(k)^{stlj}; antisymmetric in (s,t) and (l,j), pair-exchange symmetric
  bool has_Pk = false;
};

namespace detail {

// Calls fn(idx) for every r-tuple of distinct values in [0, d).
template <typename F>
inline void distinct_tuples_rec(int d, int r, int depth, std::array<int, 8>& idx,
                                unsigned& used, F& fn) {
  if (depth == r) {
    fn(idx);
    return;
  }
  for (int v = 0; v < d; ++v) {
    const unsigned bit = 1u << v;
    if (used & bit) continue;
    used |= bit;
    idx[depth] = v;
    distinct_tuples_rec(d, r, depth + 1, idx, used, fn);
    used &= ~bit;
  }
}

template <typename F>
inline void distinct_tuples(int d, int r, F&& fn) {
  if (r > d) return;  // pigeonhole: no distinct tuple exists
  std::array<int, 8> idx{};
  unsigned used = 0;
  distinct_tuples_rec(d, r, 0, idx, used, fn);
}

// R_{ij}^{ab}: last index pair raised with the inverse metric.
inline Tensor4 riemann_up_up(const AlgebraicCurvature& ac, const Mat& ginv) {
  const int d = ac.dim;
  Tensor4 rud(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double s = 0.0;
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) s += ac.R(i, j, k, l) * ginv(k, a) * ginv(l, b);
          rud(i, j, a, b) = s;
        }
  return rud;
}

}  // namespace detail

inline LovelockData lovelock(const AlgebraicCurvature& ac, int k) {
  const int d = ac.dim;
  if (k < 0) throw std::invalid_argument("lovelock: k must be nonnegative");
  if (2 * k > d)
    throw std::domain_error("lovelock: 2k = " + std::to_string(2 * k) +
                            " exceeds dimension d = " + std::to_string(d));
  if (2 * k + 1 > 8 || d > 31)
    throw std::invalid_argument("lovelock: order/dimension beyond compiled limits");

  const Mat ginv = inverse_metric(ac.g);
  LovelockData out;
  out.k = k;

  Tensor4 rud;
  if (k >= 1) rud = detail::riemann_up_up(ac, ginv);

  // L_k. The k = 0 case reduces to the empty product: L_0 = 1.
  if (k == 0) {
    out.Lk = 1.0;
  } else {
    const PermTable& pt = permutations(2 * k);
    double acc = 0.0;
    detail::distinct_tuples(d, 2 * k, [&](const std::array<int, 8>& I) {
      for (std::size_t p = 0; p < pt.perm.size(); ++p) {
        const auto& s = pt.perm[p];
        double prod = static_cast<double>(pt.sign[p]);
        for (int f = 0; f < k; ++f)
          prod *= rud(I[2 * f], I[2 * f + 1], I[s[2 * f]], I[s[2 * f + 1]]);
        acc += prod;
      }
    });
    out.Lk = std::ldexp(acc, -k);
  }

  // E_(k)^i_l accumulated in C, then raised. U[0] carries the free upper
  // index; the permuted image W[0] = U[sigma(0)] carries the free lower one.
  {
    const PermTable& pt = permutations(2 * k + 1);
    Mat C = Mat::Zero(d, d);
    detail::distinct_tuples(d, 2 * k + 1, [&](const std::array<int, 8>& U) {
      for (std::size_t p = 0; p < pt.perm.size(); ++p) {
        const auto& s = pt.perm[p];
        double prod = static_cast<double>(pt.sign[p]);
        for (int f = 1; f <= k; ++f)
          prod *= rud(U[2 * f - 1], U[2 * f], U[s[2 * f - 1]], U[s[2 * f]]);
        C(U[0], U[s[0]]) += prod;
      }
    });
    out.Ek = -std::ldexp(1.0, -(k + 1)) * (C * ginv);
  }

  // P_(k): the free pair (s,t) sits in the last two upper slots, its permuted
  // image in the last two lower slots; only k-1 curvature factors remain.
  if (k >= 1) {
    const PermTable& pt = permutations(2 * k);
    Tensor4 D(d);
    detail::distinct_tuples(d, 2 * k, [&](const std::array<int, 8>& U) {
      for (std::size_t p = 0; p < pt.perm.size(); ++p) {
        const auto& s = pt.perm[p];
        double prod = static_cast<double>(pt.sign[p]);
        for (int f = 0; f < k - 1; ++f)
          prod *= rud(U[2 * f], U[2 * f + 1], U[s[2 * f]], U[s[2 * f + 1]]);
        D(U[2 * k - 2], U[2 * k - 1], U[s[2 * k - 2]], U[s[2 * k - 1]]) += prod;
      }
    });
    out.Pk = Tensor4(d);
    const double scale = std::ldexp(1.0, -k);
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t)
        for (int l = 0; l < d; ++l)
          for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (int a = 0; a < d; ++a)
              for (int b = 0; b < d; ++b) acc += D(s, t, a, b) * ginv(a, l) * ginv(b, j);
            out.Pk(s, t, l, j) = scale * acc;
          }
    out.has_Pk = true;
  }
  return out;
}

// Max-norm residual of E^{ms} = -L_k g^{ms}/2 + k P^{ijsp} R_{ij}^m_p.
// Undefined for k = 0 since P_(0) is not defined under this convention.
inline double einstein_decomposition_residual(const AlgebraicCurvature& ac,
                                              const LovelockData& ld) {
  if (ld.k == 0)
    throw std::domain_error(
        "einstein_decomposition_residual: P_(0) is undefined under this convention; "
        "need k >= 1");
  const int d = ac.dim;
  const Mat ginv = inverse_metric(ac.g);
  const Tensor4 rud = detail::riemann_up_up(ac, ginv);

  // R_{ij}^m_p: raise slot 3 only.
  Tensor4 rmixed(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m)
        for (int p = 0; p < d; ++p) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) s += rud(i, j, m, l) * ac.g(l, p);
          rmixed(i, j, m, p) = s;
        }

  double res = 0.0;
  for (int m = 0; m < d; ++m)
    for (int s = 0; s < d; ++s) {
      double contr = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int p = 0; p < d; ++p) contr += ld.Pk(i, j, s, p) * rmixed(i, j, m, p);
      const double lhs = ld.Ek(m, s) + 0.5 * ld.Lk * ginv(m, s) - ld.k * contr;
      res = std::max(res, std::fabs(lhs));
    }
  return res;
}

// tr_g E_(k) = -(d-2k)/2 L_k, returned as a relative residual with the
// denominator floored at 1.
inline double einstein_trace_residual(const AlgebraicCurvature& ac, const LovelockData& ld) {
  const int d = ac.dim;
  double tr = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) tr += ld.Ek(i, j) * ac.g(i, j);
  const double want = -0.5 * (d - 2 * ld.k) * ld.Lk;
  return std::fabs(tr - want) / std::max(1.0, std::fabs(ld.Lk));
}

}  // namespace gbq
