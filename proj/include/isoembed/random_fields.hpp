#pragma once

#include <cstdint>
#include <random>

#include "isoembed/field.hpp"

namespace isoembed {

/// Deterministic uniform stream on top of mt19937_64. The engine is fully
/// specified by the standard and the 53-bit mapping avoids the
/// implementation-defined std distributions, so streams reproduce bit-exactly
/// everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  Real uniform01() { return Real(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  Real symmetric() { return 2 * uniform01() - 1; }

 private:
  std::mt19937_64 engine_;
};

/// Random real field supported on modes with max-norm wavenumber <= K.
/// Coefficients are drawn in a fixed lexicographic mode order, so the result
/// is a pure function of (grid, K, seed stream).
ScalarField random_band_limited(const GridSpec& grid, int max_wavenumber, Rng& rng);
ScalarField random_band_limited(const GridSpec& grid, int max_wavenumber, std::uint64_t seed);

/// Vector field with independent band-limited components drawn from one seed.
VecField random_band_limited_vec(const GridSpec& grid, int ambient_dim, int max_wavenumber,
                                 std::uint64_t seed);

}  // namespace isoembed
