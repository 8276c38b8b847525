#pragma once

#include <cstdint>

#include "nsreg/fields/field.hpp"

namespace nsreg {

/// Band-limited random field with Gaussian spectral envelope over |k_i| <= kmax,
/// scaled so that max |f| = 1. Deterministic in (grid, seed, kmax).
ScalarField random_smooth_scalar(PeriodicGrid grid, std::uint64_t seed, int kmax = 4);
VectorField random_smooth_vector(PeriodicGrid grid, std::uint64_t seed, int kmax = 4);

/// Mean-free, Leray-projected random vector field with max |component| = 1.
VectorField random_solenoidal(PeriodicGrid grid, std::uint64_t seed, int kmax = 4);

}  // namespace nsreg
