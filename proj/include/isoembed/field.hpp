#pragma once

#include <vector>

#include "isoembed/grid.hpp"

namespace isoembed {

/// Real scalar field on a periodic grid.
///
/// Both representations are stored: grid values and Fourier coefficients,
/// consistent by construction. Fields are immutable values; every operation
/// returns a new field, so concurrent reads are safe.
class ScalarField {
 public:
  static ScalarField from_values(const GridSpec& grid, ArrayXr values);
  static ScalarField from_spectrum(const GridSpec& grid, ArrayXc spectrum);
  static ScalarField zero(const GridSpec& grid);
  static ScalarField constant(const GridSpec& grid, Real value);

  const GridSpec& grid() const { return grid_; }
  const ArrayXr& values() const { return values_; }
  const ArrayXc& spectrum() const { return spectrum_; }
  Real mean() const { return spectrum_[0].real(); }

 private:
  ScalarField(GridSpec grid, ArrayXr values, ArrayXc spectrum);

  GridSpec grid_;
  ArrayXr values_;
  ArrayXc spectrum_;

  friend ScalarField operator+(const ScalarField&, const ScalarField&);
  friend ScalarField operator-(const ScalarField&, const ScalarField&);
  friend ScalarField operator*(Real, const ScalarField&);
};

// Linear combinations act on values and spectra together; no transforms run.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(Real c, const ScalarField& f);

/// Pointwise product of grid values.
ScalarField multiply(const ScalarField& a, const ScalarField& b);

/// R^N-valued field: N scalar components on a shared grid.
class VecField {
 public:
  explicit VecField(std::vector<ScalarField> components);
  static VecField zero(const GridSpec& grid, int ambient_dim);

  const GridSpec& grid() const { return components_.front().grid(); }
  int ambient_dim() const { return int(components_.size()); }
  const ScalarField& component(int c) const { return components_.at(size_t(c)); }
  const std::vector<ScalarField>& components() const { return components_; }

 private:
  std::vector<ScalarField> components_;
};

VecField operator+(const VecField& a, const VecField& b);
VecField operator-(const VecField& a, const VecField& b);
VecField operator*(Real c, const VecField& f);

/// Symmetric 2-tensor field; only the independent components (i <= j, in
/// lexicographic order) are stored. Component lookups accept either index
/// order.
class SymTensorField {
 public:
  SymTensorField(int dim, std::vector<ScalarField> components);
  static SymTensorField zero(const GridSpec& grid, int dim);

  int dim() const { return dim_; }
  int num_components() const { return dim_ * (dim_ + 1) / 2; }
  const GridSpec& grid() const { return components_.front().grid(); }

  /// Flat position of the pair (min(i,j), max(i,j)) in lexicographic order.
  static int pair_index(int i, int j, int dim);

  const ScalarField& component(int i, int j) const;
  const ScalarField& component_flat(int idx) const { return components_.at(size_t(idx)); }

  /// Full symmetric matrix of component values at one grid point.
  MatrixXr at_point(Index p) const;

 private:
  int dim_;
  std::vector<ScalarField> components_;
};

SymTensorField operator+(const SymTensorField& a, const SymTensorField& b);
SymTensorField operator-(const SymTensorField& a, const SymTensorField& b);
SymTensorField operator*(Real c, const SymTensorField& f);

/// Smallest eigenvalue of the pointwise component matrix over the whole grid.
Real min_eigenvalue(const SymTensorField& t);

}  // namespace isoembed
