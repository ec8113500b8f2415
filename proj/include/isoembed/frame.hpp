#pragma once

#include <Eigen/Cholesky>
#include <vector>

#include "isoembed/immersion.hpp"

namespace isoembed {

struct FrameOptions {
  /// Reject frames whose pointwise Gram matrix has an eigenvalue <= this.
  Real freeness_tol = 1e-10;
  /// Reject frames whose pointwise Gram condition number exceeds this.
  Real cond_bound = 1e12;
  /// When false the frame is built without the freeness check or the Gram
  /// factorizations; only margin inspection is allowed on such a frame.
  bool validate = true;
};

/// Per-point column matrix [u_1 .. u_n, u_11, u_12, .., u_nn] (first
/// derivatives, then second derivatives in lexicographic i <= j order)
/// together with the pointwise Gram factorizations used by the span solves.
/// The column order is a fixed convention that the span operators encode
/// their constraint rows against.
class Frame {
 public:
  int dim() const { return dim_; }
  int ambient_dim() const { return ambient_dim_; }
  int num_columns() const { return dim_ + dim_ * (dim_ + 1) / 2; }
  const GridSpec& grid() const { return first_.front().grid(); }

  const VecField& first(int i) const { return first_.at(size_t(i)); }
  const VecField& second(int i, int j) const {
    return second_.at(size_t(SymTensorField::pair_index(i, j, dim_)));
  }
  const VecField& second_flat(int idx) const { return second_.at(size_t(idx)); }

  /// Column matrix E(x) at grid point p, N x d.
  const MatrixXr& point_matrix(Index p) const { return columns_.at(size_t(p)); }

  /// Solves Gram(x) c = rhs at grid point p. Requires a validated frame.
  VectorXr span_solve(Index p, const VectorXr& rhs) const;

  /// Min over grid points of the smallest singular value of E(x).
  Real freeness_margin() const { return margin_; }
  bool validated() const { return validated_; }

 private:
  friend Frame build_frame(const Immersion&, const FrameOptions&);
  Frame() = default;

  int dim_ = 0;
  int ambient_dim_ = 0;
  std::vector<VecField> first_;
  std::vector<VecField> second_;
  std::vector<MatrixXr> columns_;
  std::vector<Eigen::LLT<MatrixXr>> gram_llt_;
  Real margin_ = 0;
  bool validated_ = false;
};

/// Builds the derivative frame of an immersion, derivatives spectral. Throws
/// FreenessError (naming the worst grid point) when validation is on and any
/// pointwise Gram matrix fails the eigenvalue or condition bound.
Frame build_frame(const Immersion& u, const FrameOptions& opts = {});

Real freeness_margin(const Frame& frame);

}  // namespace isoembed
