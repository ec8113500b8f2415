#pragma once

// Test-side oracles. These deliberately avoid the library's transform and
// multiplier code paths: direct-summation DFTs, finite differences, and
// explicit mod-m convolutions, with their own wavenumber bookkeeping.

#include <cmath>
#include <numbers>
#include <vector>

#include "isoembed/field.hpp"

namespace oracle {

using isoembed::ArrayXc;
using isoembed::ArrayXr;
using isoembed::Complex;
using isoembed::GridSpec;
using isoembed::Index;
using isoembed::Real;

// Direct-summation DFT with the library's mean normalization.
inline ArrayXc naive_dft(const GridSpec& g, const ArrayXr& values) {
  const Index M = g.num_points();
  const int n = g.dim();
  const int m = g.size();
  ArrayXc out = ArrayXc::Zero(M);
  std::vector<int> kb(static_cast<size_t>(n), 0), xb(static_cast<size_t>(n), 0);
  for (Index kk = 0; kk < M; ++kk) {
    g.unravel(kk, kb.data());
    Complex acc(0, 0);
    for (Index xx = 0; xx < M; ++xx) {
      g.unravel(xx, xb.data());
      Index phase = 0;
      for (int t = 0; t < n; ++t) phase += Index(kb[size_t(t)]) * Index(xb[size_t(t)]);
      const Real angle = -2.0 * std::numbers::pi * Real(phase % m) / Real(m);
      acc += values[xx] * std::polar(Real(1), angle);
    }
    out[kk] = acc / Real(M);
  }
  return out;
}

// 8th-order centered finite difference along one axis, periodic wrap.
inline ArrayXr fd8_partial(const GridSpec& g, const ArrayXr& values, int axis) {
  static const Real coeff[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  const int m = g.size();
  const Real h = 2.0 * std::numbers::pi / Real(m);
  const Index stride = g.stride(axis);
  ArrayXr out(g.num_points());
  std::vector<int> coords(static_cast<size_t>(g.dim()), 0);
  for (Index p = 0; p < g.num_points(); ++p) {
    g.unravel(p, coords.data());
    const int a = coords[size_t(axis)];
    const Index base = p - Index(a) * stride;
    Real acc = 0;
    for (int s = 1; s <= 4; ++s) {
      const Index plus = base + Index((a + s) % m) * stride;
      const Index minus = base + Index((a - s + 2 * m) % m) * stride;
      acc += coeff[s - 1] * (values[plus] - values[minus]);
    }
    out[p] = acc / h;
  }
  return out;
}

// Spectrum of a pointwise product: mod-m convolution of the factor spectra.
inline ArrayXc convolve(const GridSpec& g, const ArrayXc& a, const ArrayXc& b) {
  const Index M = g.num_points();
  const int n = g.dim();
  const int m = g.size();
  ArrayXc out = ArrayXc::Zero(M);
  std::vector<int> ba(static_cast<size_t>(n), 0), bb(static_cast<size_t>(n), 0);
  for (Index pa = 0; pa < M; ++pa) {
    if (a[pa] == Complex(0, 0)) continue;
    g.unravel(pa, ba.data());
    for (Index pb = 0; pb < M; ++pb) {
      if (b[pb] == Complex(0, 0)) continue;
      g.unravel(pb, bb.data());
      Index target = 0;
      for (int t = 0; t < n; ++t)
        target = target * m + Index((ba[size_t(t)] + bb[size_t(t)]) % m);
      out[target] += a[pa] * b[pb];
    }
  }
  return out;
}

inline int wavenumber_of_bin(int bin, int m) { return bin <= m / 2 ? bin : bin - m; }

// Derivative on a raw spectrum, Nyquist zeroed.
inline ArrayXc spec_deriv(const GridSpec& g, const ArrayXc& spec, int axis) {
  ArrayXc out = spec;
  std::vector<int> bins(size_t(g.dim()));
  for (Index p = 0; p < g.num_points(); ++p) {
    g.unravel(p, bins.data());
    const int k = wavenumber_of_bin(bins[size_t(axis)], g.size());
    out[p] *= (std::abs(k) == g.size() / 2) ? Complex(0, 0) : Complex(0, Real(k));
  }
  return out;
}

inline ArrayXc spec_helmholtz(const GridSpec& g, const ArrayXc& spec, bool inverse) {
  ArrayXc out = spec;
  std::vector<int> bins(size_t(g.dim()));
  for (Index p = 0; p < g.num_points(); ++p) {
    g.unravel(p, bins.data());
    Real k2 = 0;
    for (int t = 0; t < g.dim(); ++t) {
      const Real k = Real(wavenumber_of_bin(bins[size_t(t)], g.size()));
      k2 += k * k;
    }
    out[p] *= inverse ? Real(-1) / (k2 + 1) : -(k2 + 1);
  }
  return out;
}

inline Real max_abs(const ArrayXr& a) { return a.abs().maxCoeff(); }

inline Real max_abs_diff(const ArrayXr& a, const ArrayXr& b) {
  return (a - b).abs().maxCoeff();
}

}  // namespace oracle
