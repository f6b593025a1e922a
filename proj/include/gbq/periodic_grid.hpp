#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gbq {

// Uniform periodic lattice with n nodes per axis in dim axes. Node ids are
// flat indices with axis 0 fastest; all neighbour access wraps.
class PeriodicGrid {
 public:
  PeriodicGrid() = default;
  PeriodicGrid(int dim, int n) : dim_(dim), n_(n) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("PeriodicGrid: dim out of range");
    if (n < 4) throw std::invalid_argument("PeriodicGrid: need at least 4 nodes per axis");
    stride_.assign(dim, 1);
    size_ = 1;
    for (int a = 0; a < dim; ++a) {
      stride_[a] = size_;
      size_ *= static_cast<std::size_t>(n);
    }
  }

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }

  std::size_t encode(const std::vector<int>& c) const {
    std::size_t node = 0;
    for (int a = 0; a < dim_; ++a) node += stride_[a] * static_cast<std::size_t>(c[a]);
    return node;
  }

  std::vector<int> decode(std::size_t node) const {
    std::vector<int> c(dim_);
    for (int a = 0; a < dim_; ++a) {
      c[a] = static_cast<int>((node / stride_[a]) % static_cast<std::size_t>(n_));
    }
    return c;
  }

  // Neighbour along one axis, wrapping; |delta| may exceed n.
  std::size_t shift(std::size_t node, int axis, int delta) const {
    const int old_c = static_cast<int>((node / stride_[axis]) % static_cast<std::size_t>(n_));
    int nc = (old_c + delta) % n_;
    if (nc < 0) nc += n_;
    return node + stride_[axis] * static_cast<std::size_t>(nc - old_c);
  }

 private:
  int dim_ = 0;
  int n_ = 0;
  std::size_t size_ = 0;
  std::vector<std::size_t> stride_;
};

}  // namespace gbq
