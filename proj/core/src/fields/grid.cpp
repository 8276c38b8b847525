#include "nsreg/fields/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nsreg {

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid size must be a power of two >= 8, got " +
                                std::to_string(n));
  }
}

Vec3 PeriodicGrid::point(std::size_t flat) const noexcept {
  const std::size_t nn = static_cast<std::size_t>(n_);
  const std::size_t k = flat % nn;
  const std::size_t j = (flat / nn) % nn;
  const std::size_t i = flat / (nn * nn);
  const double h = spacing();
  return {h * static_cast<double>(i), h * static_cast<double>(j), h * static_cast<double>(k)};
}

double wrap(double x) noexcept {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2pi
  if (y >= kTwoPi) y = 0.0;
  return y;
}

Vec3 wrap(const Vec3& x) noexcept { return {wrap(x[0]), wrap(x[1]), wrap(x[2])}; }

Vec3 periodic_difference(const Vec3& a, const Vec3& b) noexcept {
  Vec3 d{};
  for (int c = 0; c < 3; ++c) {
    double v = std::fmod(a[c] - b[c], kTwoPi);
    if (v > 0.5 * kTwoPi) v -= kTwoPi;
    if (v < -0.5 * kTwoPi) v += kTwoPi;
    d[c] = v;
  }
  return d;
}

}  // namespace nsreg
