#include "isoembed/immersion.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "isoembed/spectral.hpp"

namespace isoembed {

Immersion::Immersion(VecField map, Real rank_tol) : map_(std::move(map)) {
  const int n = grid().dim();
  const int N = ambient_dim();
  if (N < n) throw std::invalid_argument("Immersion: ambient dimension below domain dimension");

  std::vector<VecField> du;
  du.reserve(size_t(n));
  for (int i = 0; i < n; ++i) du.push_back(partial(map_, i));

  // Smallest singular value of [du_1 .. du_n] via its n x n Gram matrix.
  Eigen::SelfAdjointEigenSolver<MatrixXr> es;
  MatrixXr gram(n, n);
  Real min_eig = std::numeric_limits<Real>::infinity();
  for (Index p = 0; p < grid().num_points(); ++p) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Real s = 0;
        for (int c = 0; c < N; ++c)
          s += du[size_t(i)].component(c).values()[p] * du[size_t(j)].component(c).values()[p];
        gram(i, j) = s;
        gram(j, i) = s;
      }
    es.compute(gram, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  rank_margin_ = min_eig > 0 ? std::sqrt(min_eig) : Real(0);
  if (rank_margin_ <= rank_tol)
    throw std::invalid_argument("Immersion: first derivatives are rank deficient on the grid");
}

SymTensorField pullback_metric(const Immersion& u) {
  const int n = u.dim();
  std::vector<VecField> du;
  du.reserve(size_t(n));
  for (int i = 0; i < n; ++i) du.push_back(partial(u.map(), i));
  std::vector<ScalarField> comps;
  comps.reserve(size_t(n * (n + 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) comps.push_back(dot(du[size_t(i)], du[size_t(j)]));
  return SymTensorField(n, std::move(comps));
}

}  // namespace isoembed
