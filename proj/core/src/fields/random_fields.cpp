#include "nsreg/fields/random_fields.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

#include "nsreg/fields/spectral.hpp"

namespace nsreg {

ScalarField random_smooth_scalar(PeriodicGrid grid, std::uint64_t seed, int kmax) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField fh(grid);
  const int n = grid.n();
  const double width = 0.5 * kmax * kmax;
  for_each_mode(grid, [&](std::size_t m, int k1, int k2, int k3) {
    const bool inside = std::abs(k1) <= kmax && std::abs(k2) <= kmax && k3 <= kmax &&
                        2 * std::abs(k1) != n && 2 * std::abs(k2) != n && 2 * k3 != n;
    // draw unconditionally so the stream does not depend on kmax
    const double re = normal(rng);
    const double im = normal(rng);
    if (!inside) return;
    const double kk = static_cast<double>(k1 * k1 + k2 * k2 + k3 * k3);
    fh[m] = std::exp(-kk / width) * Complex(re, im);
  });
  // The k3 = 0 plane need not be Hermitian here; the round trip below
  // replaces the draw by the real field FFTW actually synthesizes.
  ScalarField f = inverse(fh);
  f = inverse(forward(f));
  const double m = f.max_abs();
  if (m > 0.0) f *= 1.0 / m;
  return f;
}

VectorField random_smooth_vector(PeriodicGrid grid, std::uint64_t seed, int kmax) {
  return VectorField(random_smooth_scalar(grid, seed * 3 + 0x9e37, kmax),
                     random_smooth_scalar(grid, seed * 3 + 0x9e38, kmax),
                     random_smooth_scalar(grid, seed * 3 + 0x9e39, kmax));
}

VectorField random_solenoidal(PeriodicGrid grid, std::uint64_t seed, int kmax) {
  VectorField v = leray_project(random_smooth_vector(grid, seed, kmax));
  for (int c = 0; c < 3; ++c) {
    const double mean = v[c].integral() / grid.total_measure();
    for (double& x : v[c].values()) x -= mean;
  }
  const double m = v.max_abs();
  if (m > 0.0) v *= 1.0 / m;
  v = leray_project(v);
  return v;
}

}  // namespace nsreg
