#pragma once

#include "isoembed/field.hpp"

namespace isoembed {

/// Spectral partial derivative along one axis (0-based). The Nyquist mode's
/// derivative coefficient is set to zero, which keeps real fields real.
ScalarField partial(const ScalarField& f, int axis);
VecField partial(const VecField& f, int axis);

/// Laplacian: Fourier multiplier -|k|^2 (Nyquist included).
ScalarField laplacian(const ScalarField& f);

/// (laplacian - 1): multiplier -(|k|^2 + 1).
ScalarField helmholtz(const ScalarField& f);
VecField helmholtz(const VecField& f);

/// Inverse of (laplacian - 1): multiplier -1/(|k|^2 + 1). Unconditionally
/// defined; the symbol never vanishes.
ScalarField inv_helmholtz(const ScalarField& f);

/// Pointwise Euclidean inner product of two R^N fields.
ScalarField dot(const VecField& a, const VecField& b);

/// Grid sup norm over all spectral partial derivatives of total order
/// <= order. Supported orders: 0..3. Vector and tensor overloads take the
/// max over components.
Real norm_c(const ScalarField& f, int order);
Real norm_c(const VecField& f, int order);
Real norm_c(const SymTensorField& f, int order);

/// Zeroes all modes with max-norm wavenumber above max_wavenumber.
ScalarField truncate_modes(const ScalarField& f, int max_wavenumber);
VecField truncate_modes(const VecField& f, int max_wavenumber);

/// Total spectral energy: sum over components and modes of |f_hat|^2. With
/// the mean-normalized forward transform this equals the grid mean of |f|^2.
Real energy(const VecField& f);

/// Energy carried by modes with max-norm wavenumber strictly above the cutoff.
Real energy_above(const VecField& f, int max_wavenumber);

}  // namespace isoembed
