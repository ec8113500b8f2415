#include "isoembed/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoembed {

namespace {

MatrixXc dft_matrix(int m, bool forward) {
  MatrixXc out(m, m);
  const Real scale = forward ? Real(1) / m : Real(1);
  const Real sign = forward ? Real(-1) : Real(1);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      // Reduce j*k mod m before taking the angle so large products do not
      // degrade the trig accuracy.
      const Index r = (Index(j) * Index(k)) % m;
      const Real angle = sign * Real(2) * std::numbers::pi * Real(r) / Real(m);
      out(j, k) = std::polar(scale, angle);
    }
  }
  return out;
}

}  // namespace

GridSpec::GridSpec(int dim, int size, Index max_points) : dim_(dim), size_(size) {
  if (dim < 1) throw std::invalid_argument("grid dim must be >= 1");
  if (size < 8) throw std::invalid_argument("grid size must be >= 8");
  if (size % 2 != 0) throw std::invalid_argument("grid size must be even");
  Real points = 1.0;
  for (int t = 0; t < dim; ++t) points *= Real(size);
  // The bound also covers the m x m transform matrices.
  if (points > Real(max_points) || Index(size) * Index(size) > 4 * max_points) {
    throw std::invalid_argument("grid exceeds the configured memory bound of " +
                                std::to_string(max_points) + " points");
  }
  points_ = 1;
  for (int t = 0; t < dim; ++t) points_ *= size;
  forward_dft_ = std::make_shared<const MatrixXc>(dft_matrix(size, true));
  backward_dft_ = std::make_shared<const MatrixXc>(dft_matrix(size, false));
}

Real GridSpec::coordinate(int index_on_axis) const {
  return Real(2) * std::numbers::pi * Real(index_on_axis) / Real(size_);
}

Index GridSpec::stride(int axis) const {
  Index s = 1;
  for (int t = axis + 1; t < dim_; ++t) s *= size_;
  return s;
}

void GridSpec::unravel(Index flat, int* out) const {
  for (int t = dim_ - 1; t >= 0; --t) {
    out[t] = int(flat % size_);
    flat /= size_;
  }
}

void GridSpec::unravel_wavenumbers(Index flat, int* out) const {
  unravel(flat, out);
  for (int t = 0; t < dim_; ++t) out[t] = wavenumber(out[t]);
}

Index GridSpec::mode_index(const int* k) const {
  Index flat = 0;
  for (int t = 0; t < dim_; ++t) {
    const int bin = k[t] >= 0 ? k[t] : k[t] + size_;
    flat = flat * size_ + bin;
  }
  return flat;
}

void GridSpec::apply_axis(const MatrixXc& dft, int axis, ArrayXc& data) const {
  const Index inner = stride(axis);
  const Index outer = points_ / (inner * size_);
  VectorXc tmp(size_);
  using Line = Eigen::Map<VectorXc, 0, Eigen::InnerStride<>>;
  for (Index o = 0; o < outer; ++o) {
    for (Index i = 0; i < inner; ++i) {
      Line line(data.data() + o * size_ * inner + i, size_,
                Eigen::InnerStride<>(inner));
      tmp.noalias() = dft * line;
      line = tmp;
    }
  }
}

void GridSpec::forward(ArrayXc& data) const {
  for (int t = 0; t < dim_; ++t) apply_axis(*forward_dft_, t, data);
}

void GridSpec::backward(ArrayXc& data) const {
  for (int t = 0; t < dim_; ++t) apply_axis(*backward_dft_, t, data);
}

GridSpec make_grid(int dim, int size, Index max_points) {
  return GridSpec(dim, size, max_points);
}

}  // namespace isoembed
