#include "nsreg/stochastic/brownian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nsreg {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// uniform in (0, 1) with 53 random bits
inline double to_open_unit(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(a) << 21) ^ (b >> 11);
  return (static_cast<double>(bits & ((1ull << 53) - 1)) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

BrownianPath::BrownianPath(std::uint64_t seed, std::uint32_t stream, double fine_step)
    : seed_(seed), stream_(stream), fine_step_(fine_step), sqrt_step_(std::sqrt(fine_step)) {
  if (!(fine_step > 0.0)) throw std::invalid_argument("Brownian fine step must be positive");
}

Vec3 BrownianPath::normal(std::uint64_t particle, std::uint64_t index) const noexcept {
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                         static_cast<std::uint32_t>(seed_ >> 32)};
  const auto p_lo = static_cast<std::uint32_t>(particle);
  const auto p_hi = static_cast<std::uint32_t>(particle >> 32);
  const auto i_lo = static_cast<std::uint32_t>(index);
  const auto i_hi = static_cast<std::uint32_t>(index >> 32);
  // two blocks give two Box-Muller pairs; the fourth normal is unused
  const auto r0 = philox4x32({p_lo, stream_ ^ (p_hi << 16), i_lo, i_hi << 1}, key);
  const auto r1 = philox4x32({p_lo, stream_ ^ (p_hi << 16), i_lo, (i_hi << 1) | 1u}, key);
  const double u1 = to_open_unit(r0[0], r0[1]);
  const double u2 = to_open_unit(r0[2], r0[3]);
  const double u3 = to_open_unit(r1[0], r1[1]);
  const double u4 = to_open_unit(r1[2], r1[3]);
  const double rad1 = std::sqrt(-2.0 * std::log(u1));
  const double rad2 = std::sqrt(-2.0 * std::log(u3));
  const double th1 = 2.0 * std::numbers::pi * u2;
  const double th2 = 2.0 * std::numbers::pi * u4;
  return {rad1 * std::cos(th1), rad1 * std::sin(th1), rad2 * std::cos(th2)};
}

Vec3 BrownianPath::increment(std::uint64_t particle, std::uint64_t j0,
                             std::uint64_t j1) const noexcept {
  Vec3 s{0.0, 0.0, 0.0};
  for (std::uint64_t j = j0; j < j1; ++j) {
    const Vec3 z = normal(particle, j);
    s[0] += z[0];
    s[1] += z[1];
    s[2] += z[2];
  }
  return {s[0] * sqrt_step_, s[1] * sqrt_step_, s[2] * sqrt_step_};
}

}  // namespace nsreg
