#include "isoembed/random_fields.hpp"

#include <stdexcept>
#include <vector>

namespace isoembed {

namespace {

// Walks the box [-K, K]^n in lexicographic order and reports each wavevector
// that is either zero or has a positive leading nonzero entry; the mirrored
// modes carry the conjugate coefficients.
template <typename Fn>
void for_each_half_space_mode(int dim, int K, Fn&& fn) {
  std::vector<int> k(size_t(dim), -K);
  while (true) {
    int lead = 0;
    for (int t = 0; t < dim; ++t) {
      if (k[size_t(t)] != 0) {
        lead = k[size_t(t)];
        break;
      }
    }
    if (lead >= 0) fn(k.data(), lead == 0);
    int t = dim - 1;
    while (t >= 0 && k[size_t(t)] == K) {
      k[size_t(t)] = -K;
      --t;
    }
    if (t < 0) break;
    ++k[size_t(t)];
  }
}

}  // namespace

ScalarField random_band_limited(const GridSpec& grid, int max_wavenumber, Rng& rng) {
  if (max_wavenumber < 0 || max_wavenumber > grid.nyquist())
    throw std::invalid_argument("random_band_limited: wavenumber beyond Nyquist");
  ArrayXc spectrum = ArrayXc::Zero(grid.num_points());
  std::vector<int> neg(static_cast<size_t>(grid.dim()), 0);
  for_each_half_space_mode(grid.dim(), max_wavenumber, [&](const int* k, bool is_zero) {
    if (is_zero) {
      spectrum[0] = Complex(rng.symmetric(), 0);
      return;
    }
    const Real a = rng.symmetric();
    const Real b = rng.symmetric();
    for (int t = 0; t < grid.dim(); ++t) neg[size_t(t)] = -k[t];
    // a*cos(k.x) + b*sin(k.x)
    spectrum[grid.mode_index(k)] = Complex(a / 2, -b / 2);
    spectrum[grid.mode_index(neg.data())] = Complex(a / 2, b / 2);
  });
  return ScalarField::from_spectrum(grid, std::move(spectrum));
}

ScalarField random_band_limited(const GridSpec& grid, int max_wavenumber, std::uint64_t seed) {
  Rng rng(seed);
  return random_band_limited(grid, max_wavenumber, rng);
}

VecField random_band_limited_vec(const GridSpec& grid, int ambient_dim, int max_wavenumber,
                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ScalarField> comps;
  comps.reserve(size_t(ambient_dim));
  for (int c = 0; c < ambient_dim; ++c)
    comps.push_back(random_band_limited(grid, max_wavenumber, rng));
  return VecField(std::move(comps));
}

}  // namespace isoembed
