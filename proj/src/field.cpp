#include "isoembed/field.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>
#include <utility>

namespace isoembed {

namespace {

void check_same_grid(const GridSpec& a, const GridSpec& b, const char* op) {
  if (a != b) throw std::invalid_argument(std::string(op) + ": grids differ");
}

}  // namespace

ScalarField::ScalarField(GridSpec grid, ArrayXr values, ArrayXc spectrum)
    : grid_(std::move(grid)), values_(std::move(values)), spectrum_(std::move(spectrum)) {}

ScalarField ScalarField::from_values(const GridSpec& grid, ArrayXr values) {
  if (values.size() != grid.num_points())
    throw std::invalid_argument("from_values: value count does not match grid");
  ArrayXc spectrum = values.cast<Complex>();
  grid.forward(spectrum);
  return ScalarField(grid, std::move(values), std::move(spectrum));
}

ScalarField ScalarField::from_spectrum(const GridSpec& grid, ArrayXc spectrum) {
  if (spectrum.size() != grid.num_points())
    throw std::invalid_argument("from_spectrum: coefficient count does not match grid");
  ArrayXc work = spectrum;
  grid.backward(work);
  return ScalarField(grid, work.real(), std::move(spectrum));
}

ScalarField ScalarField::zero(const GridSpec& grid) {
  return ScalarField(grid, ArrayXr::Zero(grid.num_points()),
                     ArrayXc::Zero(grid.num_points()));
}

ScalarField ScalarField::constant(const GridSpec& grid, Real value) {
  ArrayXc spectrum = ArrayXc::Zero(grid.num_points());
  spectrum[0] = value;
  return ScalarField(grid, ArrayXr::Constant(grid.num_points(), value),
                     std::move(spectrum));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid(), b.grid(), "operator+");
  return ScalarField(a.grid_, a.values_ + b.values_, a.spectrum_ + b.spectrum_);
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid(), b.grid(), "operator-");
  return ScalarField(a.grid_, a.values_ - b.values_, a.spectrum_ - b.spectrum_);
}

ScalarField operator*(Real c, const ScalarField& f) {
  return ScalarField(f.grid_, c * f.values_, c * f.spectrum_);
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a.grid(), b.grid(), "multiply");
  return ScalarField::from_values(a.grid(), a.values() * b.values());
}

VecField::VecField(std::vector<ScalarField> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("VecField: no components");
  for (const auto& c : components_)
    check_same_grid(c.grid(), components_.front().grid(), "VecField");
}

VecField VecField::zero(const GridSpec& grid, int ambient_dim) {
  if (ambient_dim < 1) throw std::invalid_argument("VecField: ambient_dim must be >= 1");
  std::vector<ScalarField> comps;
  comps.reserve(size_t(ambient_dim));
  for (int c = 0; c < ambient_dim; ++c) comps.push_back(ScalarField::zero(grid));
  return VecField(std::move(comps));
}

namespace {

template <typename Op>
VecField combine(const VecField& a, const VecField& b, Op op, const char* name) {
  check_same_grid(a.grid(), b.grid(), name);
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument(std::string(name) + ": ambient dims differ");
  std::vector<ScalarField> comps;
  comps.reserve(size_t(a.ambient_dim()));
  for (int c = 0; c < a.ambient_dim(); ++c) comps.push_back(op(a.component(c), b.component(c)));
  return VecField(std::move(comps));
}

}  // namespace

VecField operator+(const VecField& a, const VecField& b) {
  return combine(a, b, [](const ScalarField& x, const ScalarField& y) { return x + y; },
                 "VecField operator+");
}

VecField operator-(const VecField& a, const VecField& b) {
  return combine(a, b, [](const ScalarField& x, const ScalarField& y) { return x - y; },
                 "VecField operator-");
}

VecField operator*(Real c, const VecField& f) {
  std::vector<ScalarField> comps;
  comps.reserve(size_t(f.ambient_dim()));
  for (int i = 0; i < f.ambient_dim(); ++i) comps.push_back(c * f.component(i));
  return VecField(std::move(comps));
}

SymTensorField::SymTensorField(int dim, std::vector<ScalarField> components) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("SymTensorField: dim must be >= 1");
  if (int(components.size()) != dim * (dim + 1) / 2)
    throw std::invalid_argument("SymTensorField: wrong component count");
  for (const auto& c : components)
    check_same_grid(c.grid(), components.front().grid(), "SymTensorField");
  components_ = std::move(components);
}

SymTensorField SymTensorField::zero(const GridSpec& grid, int dim) {
  std::vector<ScalarField> comps;
  comps.reserve(size_t(dim * (dim + 1) / 2));
  for (int i = 0; i < dim * (dim + 1) / 2; ++i) comps.push_back(ScalarField::zero(grid));
  return SymTensorField(dim, std::move(comps));
}

int SymTensorField::pair_index(int i, int j, int dim) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= dim) throw std::out_of_range("pair_index: index out of range");
  return i * dim - i * (i - 1) / 2 + (j - i);
}

const ScalarField& SymTensorField::component(int i, int j) const {
  return components_.at(size_t(pair_index(i, j, dim_)));
}

MatrixXr SymTensorField::at_point(Index p) const {
  MatrixXr out(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      const Real v = component(i, j).values()[p];
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

namespace {

template <typename Op>
SymTensorField combine(const SymTensorField& a, const SymTensorField& b, Op op,
                       const char* name) {
  check_same_grid(a.grid(), b.grid(), name);
  if (a.dim() != b.dim()) throw std::invalid_argument(std::string(name) + ": dims differ");
  std::vector<ScalarField> comps;
  comps.reserve(size_t(a.num_components()));
  for (int i = 0; i < a.num_components(); ++i)
    comps.push_back(op(a.component_flat(i), b.component_flat(i)));
  return SymTensorField(a.dim(), std::move(comps));
}

}  // namespace

SymTensorField operator+(const SymTensorField& a, const SymTensorField& b) {
  return combine(a, b, [](const ScalarField& x, const ScalarField& y) { return x + y; },
                 "SymTensorField operator+");
}

SymTensorField operator-(const SymTensorField& a, const SymTensorField& b) {
  return combine(a, b, [](const ScalarField& x, const ScalarField& y) { return x - y; },
                 "SymTensorField operator-");
}

SymTensorField operator*(Real c, const SymTensorField& f) {
  std::vector<ScalarField> comps;
  comps.reserve(size_t(f.num_components()));
  for (int i = 0; i < f.num_components(); ++i) comps.push_back(c * f.component_flat(i));
  return SymTensorField(f.dim(), std::move(comps));
}

Real min_eigenvalue(const SymTensorField& t) {
  Eigen::SelfAdjointEigenSolver<MatrixXr> es;
  Real worst = std::numeric_limits<Real>::infinity();
  for (Index p = 0; p < t.grid().num_points(); ++p) {
    es.compute(t.at_point(p), Eigen::EigenvaluesOnly);
    worst = std::min(worst, es.eigenvalues().minCoeff());
  }
  return worst;
}

}  // namespace isoembed
