#include "nsreg/norms/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nsreg {
namespace {

constexpr double kEm1 = std::numbers::e - 1.0;

void require_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite field value");
  }
}

double max_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double lp_norm(std::span<const double> magnitudes, double cell_volume, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) return max_of(magnitudes);
  const double m = max_of(magnitudes);
  if (m == 0.0) return 0.0;
  // scale by the max to keep |f|^p representable for large p
  double s = 0.0;
  for (double x : magnitudes) s += std::pow(std::abs(x) / m, p);
  return m * std::pow(s * cell_volume, 1.0 / p);
}

double lp_norm(const ScalarField& f, double p) {
  return lp_norm(f.values(), f.grid().cell_volume(), p);
}

double lp_norm(const VectorField& v, double p) {
  const ScalarField mag = v.magnitude();
  return lp_norm(mag.values(), mag.grid().cell_volume(), p);
}

double lp_norm(const TensorField& t, double p) {
  const ScalarField mag = t.frobenius();
  return lp_norm(mag.values(), mag.grid().cell_volume(), p);
}

double phi_q(double lambda, double q) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("phi_q: negative argument");
  return std::pow(std::expm1(lambda) / kEm1, q);
}

double phi_q_inv(double y, double q) {
  if (!(y >= 0.0)) throw std::invalid_argument("phi_q_inv: negative argument");
  return std::log1p(kEm1 * std::pow(y, 1.0 / q));
}

void OrliczSpec::validate() const {
  if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("Orlicz exponent must satisfy 1 < q < inf");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("Orlicz tolerance must lie in (0, 1)");
  if (!(expansion > 1.0)) throw std::invalid_argument("Orlicz bracket expansion must exceed 1");
}

double orlicz_modular(std::span<const double> magnitudes, double cell_volume, double lambda,
                      double q) {
  const double inv = 1.0 / lambda;
  double s = 0.0;
  for (double x : magnitudes) {
    const double a = std::abs(x) * inv;
    if (a == 0.0) continue;
    s += std::pow(std::expm1(a) / kEm1, q);
  }
  return s * cell_volume;
}

double orlicz_norm(std::span<const double> magnitudes, double cell_volume, const OrliczSpec& spec) {
  spec.validate();
  require_finite(magnitudes);
  const double fmax = max_of(magnitudes);
  if (fmax == 0.0) return 0.0;

  auto modular = [&](double lambda) {
    return orlicz_modular(magnitudes, cell_volume, lambda, spec.q);
  };
  double lo = fmax / 50.0;
  double hi = fmax * 50.0;
  while (modular(lo) <= 1.0) {
    hi = lo;
    lo /= spec.expansion;
  }
  while (modular(hi) > 1.0) {
    lo = hi;
    hi *= spec.expansion;
  }
  // invariant: modular(lo) > 1 >= modular(hi)
  while ((hi - lo) > spec.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (modular(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double orlicz_norm(const ScalarField& f, const OrliczSpec& spec) {
  return orlicz_norm(f.values(), f.grid().cell_volume(), spec);
}

double orlicz_norm(const VectorField& v, const OrliczSpec& spec) {
  const ScalarField mag = v.magnitude();
  return orlicz_norm(mag.values(), mag.grid().cell_volume(), spec);
}

double orlicz_norm(const TensorField& t, const OrliczSpec& spec) {
  const ScalarField mag = t.frobenius();
  return orlicz_norm(mag.values(), mag.grid().cell_volume(), spec);
}

double lemma_upper_bound(std::span<const double> magnitudes, double cell_volume,
                         const OrliczSpec& spec) {
  spec.validate();
  require_finite(magnitudes);
  const double fmax = max_of(magnitudes);
  if (fmax == 0.0) throw std::invalid_argument("lemma_upper_bound: zero field");
  // normalized so that |f|_inf = 1; the general case follows by homogeneity
  const double a = lp_norm(magnitudes, cell_volume, spec.q) / fmax;
  const double b = phi_q_inv(std::pow(a, -spec.q), spec.q);
  const double n = a + 1.0 / (1.0 + b);
  return 6.0 * n * fmax;
}

double lemma_upper_bound(const ScalarField& f, const OrliczSpec& spec) {
  return lemma_upper_bound(f.values(), f.grid().cell_volume(), spec);
}

double lemma_upper_bound(const VectorField& v, const OrliczSpec& spec) {
  const ScalarField mag = v.magnitude();
  return lemma_upper_bound(mag.values(), mag.grid().cell_volume(), spec);
}

LemmaCheck check_lemma_bound(const ScalarField& f, const OrliczSpec& spec) {
  return {orlicz_norm(f, spec), lemma_upper_bound(f, spec)};
}

}  // namespace nsreg
