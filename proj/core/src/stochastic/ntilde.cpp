#include "nsreg/stochastic/ntilde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nsreg/norms/norms.hpp"
#include "nsreg/stochastic/feynman_kac.hpp"

namespace nsreg {

double orlicz_gradient_integral(const VelocityHistory& history, const TimeSet& window, double T0,
                                double t, double q) {
  if (history.empty()) throw std::invalid_argument("empty velocity history");
  if (!(T0 <= t) || !history.covers(T0, t))
    throw std::invalid_argument("interval outside the velocity history");
  OrliczSpec spec;
  spec.q = q;
  spec.validate();
  std::vector<double> norms(history.size(), 0.0);
  std::vector<char> done(history.size(), 0);
  auto norm_at = [&](std::size_t i) {
    if (!done[i]) {
      norms[i] = orlicz_norm(history[i].grad, spec);
      done[i] = 1;
    }
    return norms[i];
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < history.size(); ++i) {
    const double a = history[i].time;
    const double b = history[i + 1].time;
    const double lo = std::max(a, T0);
    const double hi = std::min(b, t);
    if (!(hi > lo)) continue;
    for (const auto& [wa, wb] : window.intervals()) {
      const double s0 = std::max(lo, wa);
      const double s1 = std::min(hi, wb);
      if (!(s1 > s0)) continue;
      const double na = norm_at(i);
      const double nb = norm_at(i + 1);
      auto lerp = [&](double s) { return na + (nb - na) * (s - a) / (b - a); };
      total += 0.5 * (lerp(s0) + lerp(s1)) * (s1 - s0);
    }
  }
  return total;
}

NtildeReport ntilde_estimate(const VelocityHistory& history, const TimeSet& window, double T0,
                             double t, const SDEConfig& config, double q, int points_per_dim,
                             std::uint32_t stream) {
  config.validate(history);
  if (!(q >= 1.0) || !std::isfinite(q)) throw std::invalid_argument("Ntilde needs finite q >= 1");
  if (points_per_dim < 1) throw std::invalid_argument("quadrature needs at least one point per axis");
  if (!(T0 <= t) || !history.covers(T0, t))
    throw std::invalid_argument("interval outside the velocity history");

  NtildeReport r;
  r.q = q;
  r.hypothesis_integral = orlicz_gradient_integral(history, window, T0, t, q);
  r.hypothesis_holds = r.hypothesis_integral <= 1.0 / q;

  const auto nq = static_cast<std::size_t>(points_per_dim);
  const std::size_t points = nq * nq * nq;
  const std::size_t per = config.particles;
  r.quadrature_points = points;
  r.particles_per_point = per;
  const double spacing = kTwoPi / static_cast<double>(points_per_dim);
  const double weight = PeriodicGrid::total_measure() / static_cast<double>(points);
  const std::size_t steps = flow_steps(T0, t, config.step);
  const bool trivial = window.measure(T0, t) == 0.0 || history.is_zero() || steps == 0;

  double sum = 0.0;
  double var = 0.0;
  if (!trivial) {
    const double h = (t - T0) / static_cast<double>(steps);
    const BrownianPath path(config.seed, stream, h);
    const std::size_t batch = std::max<std::size_t>(1, 100000 / per);
    std::vector<double> mean;
    std::vector<double> se;
    for (std::size_t start = 0; start < points; start += batch) {
      const std::size_t count = std::min(batch, points - start);
      ParticleEnsemble e;
      e.first_particle = start * per;
      e.track = kTrackGradient;
      for (std::size_t b = 0; b < count; ++b) {
        const std::size_t idx = start + b;
        const Vec3 x{spacing * static_cast<double>(idx / (nq * nq)),
                     spacing * static_cast<double>((idx / nq) % nq),
                     spacing * static_cast<double>(idx % nq)};
        e.position.insert(e.position.end(), per, x);
      }
      e.accumulated.assign(e.position.size(), 0.0);
      e.accumulated_total.assign(e.position.size(), 0.0);
      march(history, e, t, T0, h, path, {t, config.interpolation, &window});
      for (std::size_t b = 0; b < count; ++b) {
        std::vector<double> chunk(per);
        for (std::size_t p = 0; p < per; ++p)
          chunk[p] = std::pow(std::expm1(q * e.accumulated[b * per + p]), q);
        sample_statistics(chunk, 1, mean, se);
        sum += mean[0];
        var += se[0] * se[0];
      }
    }
  }
  r.ntilde_q = weight * sum;
  r.std_error_q = weight * std::sqrt(var);
  r.ntilde = std::pow(r.ntilde_q, 1.0 / q);
  r.relative_std_error = r.ntilde_q > 0.0 ? r.std_error_q / r.ntilde_q / q : 0.0;
  r.bound_holds = !r.hypothesis_holds ||
                  r.ntilde <= (std::numbers::e - 1.0) * (1.0 + 5.0 * r.relative_std_error);
  return r;
}

}  // namespace nsreg
