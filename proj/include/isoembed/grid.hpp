#pragma once

#include <memory>

#include "isoembed/types.hpp"

namespace isoembed {

inline constexpr Index kDefaultMaxPoints = Index{1} << 22;

/// Uniform periodic grid over [0, 2*pi)^n with m points per axis, m even.
///
/// The grid owns the per-axis DFT matrices used by every spectral operation.
/// They are built once at construction and shared immutably between copies,
/// so copies are cheap and concurrent use is safe. Flat indexing is row-major
/// with axis 0 outermost.
class GridSpec {
 public:
  /// Requires dim >= 1, size even and >= 8, and size^dim <= max_points.
  GridSpec(int dim, int size, Index max_points = kDefaultMaxPoints);

  int dim() const { return dim_; }
  int size() const { return size_; }
  Index num_points() const { return points_; }

  /// Coordinate of grid index a on any axis: 2*pi*a/m.
  Real coordinate(int index_on_axis) const;

  Index stride(int axis) const;
  void unravel(Index flat, int* out) const;

  /// Integer wavenumber of spectral bin a: a for a <= m/2, a - m above.
  /// The Nyquist bin a = m/2 maps to +m/2.
  int wavenumber(int bin) const { return bin <= size_ / 2 ? bin : bin - size_; }
  int nyquist() const { return size_ / 2; }
  void unravel_wavenumbers(Index flat, int* out) const;
  /// Flat spectral index of an integer wavevector with |k_t| <= m/2.
  Index mode_index(const int* k) const;

  /// In-place tensor-product DFTs. The forward transform divides by m per
  /// axis, so the zero mode of a transformed field equals the grid mean; the
  /// backward transform is its exact inverse.
  void forward(ArrayXc& data) const;
  void backward(ArrayXc& data) const;

  bool operator==(const GridSpec& other) const {
    return dim_ == other.dim_ && size_ == other.size_;
  }
  bool operator!=(const GridSpec& other) const { return !(*this == other); }

 private:
  void apply_axis(const MatrixXc& dft, int axis, ArrayXc& data) const;

  int dim_ = 0;
  int size_ = 0;
  Index points_ = 0;
  std::shared_ptr<const MatrixXc> forward_dft_;
  std::shared_ptr<const MatrixXc> backward_dft_;
};

/// Builds a grid, rejecting odd sizes, sizes below 8, and point counts beyond
/// the memory bound.
GridSpec make_grid(int dim, int size, Index max_points = kDefaultMaxPoints);

}  // namespace isoembed
