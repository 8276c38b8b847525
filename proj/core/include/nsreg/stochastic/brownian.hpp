#pragma once

#include <array>
#include <cstdint>

#include "nsreg/fields/grid.hpp"

namespace nsreg {

/// Philox4x32-10 (Salmon et al., SC'11): a keyed bijection on 128-bit counters.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Brownian paths for many particles, sampled on a fine time grid of spacing
/// `fine_step`. Increment j of particle p is a pure function of
/// (seed, stream, p, j), so any particle subset and any coarser grid made of
/// whole fine steps reproduce the same path bit for bit.
class BrownianPath {
 public:
  BrownianPath(std::uint64_t seed, std::uint32_t stream, double fine_step);

  double fine_step() const noexcept { return fine_step_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint32_t stream() const noexcept { return stream_; }

  /// Three independent standard normals for fine step `index`.
  Vec3 normal(std::uint64_t particle, std::uint64_t index) const noexcept;
  /// W(j1) - W(j0) = sqrt(fine_step) * sum_{j0 <= j < j1} normal(p, j).
  Vec3 increment(std::uint64_t particle, std::uint64_t j0, std::uint64_t j1) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint32_t stream_;
  double fine_step_;
  double sqrt_step_;
};

}  // namespace nsreg
