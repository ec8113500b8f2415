#include "isoembed/frame.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "isoembed/errors.hpp"
#include "isoembed/spectral.hpp"

namespace isoembed {

VectorXr Frame::span_solve(Index p, const VectorXr& rhs) const {
  if (!validated_)
    throw FreenessError("span_solve: frame was built without freeness validation");
  return gram_llt_.at(size_t(p)).solve(rhs);
}

Frame build_frame(const Immersion& u, const FrameOptions& opts) {
  Frame f;
  f.dim_ = u.dim();
  f.ambient_dim_ = u.ambient_dim();
  const GridSpec& g = u.grid();
  const int n = f.dim_;
  const int N = f.ambient_dim_;
  const int d = f.num_columns();

  for (int i = 0; i < n; ++i) f.first_.push_back(partial(u.map(), i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) f.second_.push_back(partial(f.first_[size_t(i)], j));

  f.columns_.reserve(size_t(g.num_points()));
  Eigen::SelfAdjointEigenSolver<MatrixXr> es;
  Real worst_eig = std::numeric_limits<Real>::infinity();
  Real worst_cond = 0;
  Index worst_point = 0;
  for (Index p = 0; p < g.num_points(); ++p) {
    MatrixXr E(N, d);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < N; ++c) E(c, i) = f.first_[size_t(i)].component(c).values()[p];
    for (int idx = 0; idx < d - n; ++idx)
      for (int c = 0; c < N; ++c) E(c, n + idx) = f.second_[size_t(idx)].component(c).values()[p];
    f.columns_.push_back(std::move(E));

    es.compute(f.columns_.back().transpose() * f.columns_.back(), Eigen::EigenvaluesOnly);
    const Real lo = es.eigenvalues().minCoeff();
    const Real hi = es.eigenvalues().maxCoeff();
    if (lo < worst_eig) {
      worst_eig = lo;
      worst_point = p;
    }
    if (lo > 0) worst_cond = std::max(worst_cond, hi / lo);
  }
  f.margin_ = worst_eig > 0 ? std::sqrt(worst_eig) : Real(0);

  if (opts.validate) {
    if (worst_eig <= opts.freeness_tol || worst_eig <= 0 || worst_cond > opts.cond_bound) {
      std::vector<int> coords(static_cast<size_t>(n), 0);
      g.unravel(worst_point, coords.data());
      std::ostringstream msg;
      msg << "freeness violated at grid point (";
      for (int t = 0; t < n; ++t) msg << (t ? "," : "") << coords[size_t(t)];
      msg << "): min Gram eigenvalue " << worst_eig << ", condition " << worst_cond;
      throw FreenessError(msg.str());
    }
    f.gram_llt_.reserve(size_t(g.num_points()));
    for (Index p = 0; p < g.num_points(); ++p) {
      const MatrixXr& E = f.columns_[size_t(p)];
      f.gram_llt_.emplace_back(MatrixXr(E.transpose() * E));
    }
    f.validated_ = true;
  }
  return f;
}

Real freeness_margin(const Frame& frame) { return frame.freeness_margin(); }

}  // namespace isoembed
