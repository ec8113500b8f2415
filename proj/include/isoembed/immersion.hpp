#pragma once

#include "isoembed/field.hpp"

namespace isoembed {

/// A map u: T^n -> R^N whose first partial derivatives have full rank n at
/// every grid point. The rank margin (smallest singular value of the
/// derivative matrix, minimized over the grid) is computed at construction;
/// maps with margin at or below rank_tol are rejected.
class Immersion {
 public:
  explicit Immersion(VecField map, Real rank_tol = 1e-12);

  const VecField& map() const { return map_; }
  const GridSpec& grid() const { return map_.grid(); }
  int dim() const { return grid().dim(); }
  int ambient_dim() const { return map_.ambient_dim(); }
  Real rank_margin() const { return rank_margin_; }

 private:
  VecField map_;
  Real rank_margin_ = 0;
};

/// Pullback metric g_ij = du_i . du_j, derivatives spectral.
SymTensorField pullback_metric(const Immersion& u);

}  // namespace isoembed
