#pragma once

#include <array>
#include <cstddef>
#include <numbers>

namespace nsreg {

using Vec3 = std::array<double, 3>;

/// Row-major 3x3 matrix. Entry (i, j) holds d(u_i)/d(x_j).
using Mat3 = std::array<double, 9>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform n^3 grid on the periodic cube [0, 2pi)^3.
///
/// Physical values are stored row-major with x1 slowest: flat index
/// (i * n + j) * n + k for the point (2pi i/n, 2pi j/n, 2pi k/n). The
/// half-complex spectral layout used by the transforms is n * n * (n/2 + 1).
class PeriodicGrid {
 public:
  /// Throws std::invalid_argument unless n >= 8 and n is a power of two.
  explicit PeriodicGrid(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_ * n_; }
  std::size_t spectral_size() const noexcept {
    return static_cast<std::size_t>(n_) * n_ * (n_ / 2 + 1);
  }
  int spectral_last() const noexcept { return n_ / 2 + 1; }

  double spacing() const noexcept { return kTwoPi / n_; }
  double cell_volume() const noexcept {
    const double h = spacing();
    return h * h * h;
  }
  static constexpr double total_measure() noexcept { return kTwoPi * kTwoPi * kTwoPi; }

  std::size_t index(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  Vec3 point(std::size_t flat) const noexcept;

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  int n_;
};

/// Signed wavenumber of spectral index `idx` along a full dimension of length n.
/// The Nyquist index n/2 maps to -n/2.
inline int wavenumber(int idx, int n) noexcept { return idx < n / 2 ? idx : idx - n; }

/// Wavenumber used for odd derivatives: as above but zero at Nyquist.
inline double derivative_wavenumber(int idx, int n) noexcept {
  return idx == n / 2 ? 0.0 : static_cast<double>(wavenumber(idx, n));
}

double wrap(double x) noexcept;
Vec3 wrap(const Vec3& x) noexcept;

/// Minimum-image difference a - b on the torus.
Vec3 periodic_difference(const Vec3& a, const Vec3& b) noexcept;

}  // namespace nsreg
