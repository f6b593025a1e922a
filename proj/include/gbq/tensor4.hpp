#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <vector>

namespace gbq {

using Mat = Eigen::MatrixXd;

// Dense rank-3 array over a d-dimensional index range.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int d) : d_(d), v_(static_cast<std::size_t>(d) * d * d, 0.0) {}

  double& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }
  int dim() const { return d_; }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
  }

 private:
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * d_ + j) * d_ + k;
  }
  int d_ = 0;
  std::vector<double> v_;
};

// Dense rank-4 array.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int d) : d_(d), v_(static_cast<std::size_t>(d) * d * d * d, 0.0) {}

  double& operator()(int i, int j, int k, int l) { return v_[idx(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return v_[idx(i, j, k, l)]; }
  int dim() const { return d_; }
  std::size_t size() const { return v_.size(); }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
  }

 private:
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * d_ + j) * d_ + k) * d_ + l;
  }
  int d_ = 0;
  std::vector<double> v_;
};

inline double max_abs_diff(const Tensor4& a, const Tensor4& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace gbq
