#include "isoembed/spectral.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace isoembed {

namespace {

// Applies a per-mode multiplier fn(k) to the spectrum and rebuilds the field.
template <typename Fn>
ScalarField apply_multiplier(const ScalarField& f, Fn&& fn) {
  const GridSpec& g = f.grid();
  ArrayXc spectrum = f.spectrum();
  std::vector<int> k(static_cast<size_t>(g.dim()), 0);
  for (Index p = 0; p < g.num_points(); ++p) {
    g.unravel_wavenumbers(p, k.data());
    spectrum[p] *= fn(k.data());
  }
  return ScalarField::from_spectrum(g, std::move(spectrum));
}

Real squared_wavenumber(const int* k, int dim) {
  Real s = 0;
  for (int t = 0; t < dim; ++t) s += Real(k[t]) * Real(k[t]);
  return s;
}

int max_abs_wavenumber(const int* k, int dim) {
  int s = 0;
  for (int t = 0; t < dim; ++t) s = std::max(s, std::abs(k[t]));
  return s;
}

void check_axis(const GridSpec& g, int axis, const char* op) {
  if (axis < 0 || axis >= g.dim())
    throw std::invalid_argument(std::string(op) + ": axis out of range");
}

// Multiplier for a pure derivative multi-index: product over axes of
// (i*k_t)^beta_t, zero whenever a differentiated axis sits on the Nyquist
// wavenumber.
Complex derivative_symbol(const int* k, const int* beta, int dim, int nyquist) {
  Complex m(1, 0);
  for (int t = 0; t < dim; ++t) {
    if (beta[t] == 0) continue;
    if (std::abs(k[t]) == nyquist) return Complex(0, 0);
    const Complex ik(0, Real(k[t]));
    for (int r = 0; r < beta[t]; ++r) m *= ik;
  }
  return m;
}

}  // namespace

ScalarField partial(const ScalarField& f, int axis) {
  check_axis(f.grid(), axis, "partial");
  const int nyq = f.grid().nyquist();
  return apply_multiplier(f, [axis, nyq](const int* k) {
    if (std::abs(k[axis]) == nyq) return Complex(0, 0);
    return Complex(0, Real(k[axis]));
  });
}

VecField partial(const VecField& f, int axis) {
  std::vector<ScalarField> comps;
  comps.reserve(size_t(f.ambient_dim()));
  for (int c = 0; c < f.ambient_dim(); ++c) comps.push_back(partial(f.component(c), axis));
  return VecField(std::move(comps));
}

ScalarField laplacian(const ScalarField& f) {
  const int dim = f.grid().dim();
  return apply_multiplier(f, [dim](const int* k) {
    return Complex(-squared_wavenumber(k, dim), 0);
  });
}

ScalarField helmholtz(const ScalarField& f) {
  const int dim = f.grid().dim();
  return apply_multiplier(f, [dim](const int* k) {
    return Complex(-(squared_wavenumber(k, dim) + 1), 0);
  });
}

VecField helmholtz(const VecField& f) {
  std::vector<ScalarField> comps;
  comps.reserve(size_t(f.ambient_dim()));
  for (int c = 0; c < f.ambient_dim(); ++c) comps.push_back(helmholtz(f.component(c)));
  return VecField(std::move(comps));
}

ScalarField inv_helmholtz(const ScalarField& f) {
  const int dim = f.grid().dim();
  return apply_multiplier(f, [dim](const int* k) {
    return Complex(Real(-1) / (squared_wavenumber(k, dim) + 1), 0);
  });
}

ScalarField dot(const VecField& a, const VecField& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("dot: grids differ");
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("dot: ambient dims differ");
  ArrayXr acc = a.component(0).values() * b.component(0).values();
  for (int c = 1; c < a.ambient_dim(); ++c)
    acc += a.component(c).values() * b.component(c).values();
  return ScalarField::from_values(a.grid(), std::move(acc));
}

namespace {

// Enumerates multi-indices with 1 <= |beta| <= order.
void for_each_multi_index(int dim, int order, const std::function<void(const int*)>& fn) {
  std::vector<int> beta(size_t(dim), 0);
  auto recurse = [&](auto&& self, int axis, int remaining) -> void {
    if (axis == dim) {
      if (remaining < order) fn(beta.data());  // skip beta = 0
      return;
    }
    for (int b = 0; b <= remaining; ++b) {
      beta[size_t(axis)] = b;
      self(self, axis + 1, remaining - b);
    }
    beta[size_t(axis)] = 0;
  };
  recurse(recurse, 0, order);
}

}  // namespace

Real norm_c(const ScalarField& f, int order) {
  if (order < 0 || order > 3)
    throw std::invalid_argument("norm_c: order must be in {0,1,2,3}");
  const GridSpec& g = f.grid();
  Real best = f.values().abs().maxCoeff();
  if (order == 0) return best;
  const int nyq = g.nyquist();
  std::vector<int> k(static_cast<size_t>(g.dim()), 0);
  for_each_multi_index(g.dim(), order, [&](const int* beta) {
    ArrayXc spectrum = f.spectrum();
    for (Index p = 0; p < g.num_points(); ++p) {
      g.unravel_wavenumbers(p, k.data());
      spectrum[p] *= derivative_symbol(k.data(), beta, g.dim(), nyq);
    }
    g.backward(spectrum);
    best = std::max(best, spectrum.real().abs().maxCoeff());
  });
  return best;
}

Real norm_c(const VecField& f, int order) {
  Real best = 0;
  for (int c = 0; c < f.ambient_dim(); ++c) best = std::max(best, norm_c(f.component(c), order));
  return best;
}

Real norm_c(const SymTensorField& f, int order) {
  Real best = 0;
  for (int i = 0; i < f.num_components(); ++i)
    best = std::max(best, norm_c(f.component_flat(i), order));
  return best;
}

ScalarField truncate_modes(const ScalarField& f, int max_wavenumber) {
  const int dim = f.grid().dim();
  return apply_multiplier(f, [dim, max_wavenumber](const int* k) {
    return max_abs_wavenumber(k, dim) > max_wavenumber ? Complex(0, 0) : Complex(1, 0);
  });
}

VecField truncate_modes(const VecField& f, int max_wavenumber) {
  std::vector<ScalarField> comps;
  comps.reserve(size_t(f.ambient_dim()));
  for (int c = 0; c < f.ambient_dim(); ++c)
    comps.push_back(truncate_modes(f.component(c), max_wavenumber));
  return VecField(std::move(comps));
}

Real energy(const VecField& f) {
  Real total = 0;
  for (int c = 0; c < f.ambient_dim(); ++c) total += f.component(c).spectrum().abs2().sum();
  return total;
}

Real energy_above(const VecField& f, int max_wavenumber) {
  const GridSpec& g = f.grid();
  std::vector<int> k(static_cast<size_t>(g.dim()), 0);
  Real tail = 0;
  for (Index p = 0; p < g.num_points(); ++p) {
    g.unravel_wavenumbers(p, k.data());
    if (max_abs_wavenumber(k.data(), g.dim()) <= max_wavenumber) continue;
    for (int c = 0; c < f.ambient_dim(); ++c) tail += std::norm(f.component(c).spectrum()[p]);
  }
  return tail;
}

}  // namespace isoembed
