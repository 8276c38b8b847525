#include "nsreg/stochastic/feynman_kac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsreg {
namespace {

PackedField pack_static(std::vector<const ScalarField*> comps, Interpolation mode) {
  PackedField packed(comps.front()->grid(), static_cast<int>(comps.size()));
  packed.assign_blend(comps, comps, 0.0);
  packed.prepare(mode);
  return packed;
}

void require_grid(const VelocityHistory& history, const PeriodicGrid& g) {
  if (history.empty()) throw std::invalid_argument("empty velocity history");
  if (!(history.grid() == g)) throw std::invalid_argument("field grid differs from history grid");
}

FKEstimate make_estimate(const Vec3& x, double t0, double t1, double h, const SDEConfig& c) {
  FKEstimate est;
  est.particles = c.particles;
  est.x = x;
  est.t0 = t0;
  est.t1 = t1;
  est.step = h;
  est.seed = c.seed;
  return est;
}

double effective_step(double t0, double t1, double h) {
  const std::size_t steps = flow_steps(t0, t1, h);
  return steps == 0 ? h : (t1 - t0) / static_cast<double>(steps);
}

StretchingEstimates stretching(const VelocityHistory& history, const VectorField* m0,
                               const VectorField* w0, double T0, double t, const Vec3& x,
                               const SDEConfig& config, std::uint32_t stream) {
  unsigned track = kTrackGradient;
  if (m0) track |= kTrackMagnetization;
  if (w0) track |= kTrackVorticity;
  for (const VectorField* f : {m0, w0}) {
    if (!f) continue;
    require_grid(history, f->grid());
    require_finite(*f, "initial field");
  }
  auto e = backward_flow(history, x, t, T0, config, track, stream);
  const double h = effective_step(T0, t, config.step);
  const double slack = 1.0 + 10.0 * h;
  const std::size_t n = e.size();

  StretchingEstimates out;
  auto run = [&](const VectorField& f0, const std::vector<Mat3>& q, FKEstimate& est) {
    est = make_estimate(x, T0, t, h, config);
    const auto packed = pack_static({&f0[0], &f0[1], &f0[2]}, config.interpolation);
    std::vector<double> samples(3 * n);
    std::vector<double> ratio(n, 0.0);
    std::vector<char> ok(n, 1);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(n); ++p) {
      double a[3];
      packed.sample(e.position[p], config.interpolation, a);
      double norm_m = 0.0;
      double norm_a = 0.0;
      for (int b = 0; b < 3; ++b) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) s += a[c] * q[p][3 * c + b];
        samples[3 * p + b] = s;
        norm_m += s * s;
        norm_a += a[b] * a[b];
      }
      norm_m = std::sqrt(norm_m);
      norm_a = std::sqrt(norm_a);
      const double bound = std::exp(e.accumulated_total[p]) * norm_a;
      if (bound > 0.0) ratio[p] = norm_m / bound;
      ok[p] = norm_m <= bound * slack || norm_m == 0.0;
    }
    sample_statistics(samples, 3, est.mean, est.std_error);
    GronwallCertificate cert;
    cert.paths = n;
    cert.slack = slack;
    for (std::size_t p = 0; p < n; ++p) {
      cert.passed += ok[p] ? 1 : 0;
      cert.max_ratio = std::max(cert.max_ratio, ratio[p]);
    }
    est.gronwall = cert;
  };
  if (m0) run(*m0, e.magnetization, out.magnetization);
  if (w0) run(*w0, e.vorticity, out.vorticity);
  return out;
}

}  // namespace

void sample_statistics(const std::vector<double>& samples, std::size_t dim,
                       std::vector<double>& mean, std::vector<double>& std_error) {
  const std::size_t n = dim == 0 ? 0 : samples.size() / dim;
  mean.assign(dim, 0.0);
  std_error.assign(dim, 0.0);
  if (n == 0) return;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t c = 0; c < dim; ++c) mean[c] += samples[p * dim + c];
  for (auto& m : mean) m /= static_cast<double>(n);
  if (n < 2) return;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t c = 0; c < dim; ++c) {
      const double d = samples[p * dim + c] - mean[c];
      std_error[c] += d * d;
    }
  for (auto& s : std_error)
    s = std::sqrt(s / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

FKEstimate feynman_kac_scalar(const VelocityHistory& history, const ScalarField& f, double t0,
                              double t1, const Vec3& x, const SDEConfig& config,
                              std::uint32_t stream) {
  require_grid(history, f.grid());
  require_finite(f, "transported field");
  const auto e = backward_flow(history, x, t1, t0, config, kTrackNone, stream);
  auto est = make_estimate(x, t0, t1, effective_step(t0, t1, config.step), config);
  const auto packed = pack_static({&f}, config.interpolation);
  std::vector<double> samples(e.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(e.size()); ++p)
    packed.sample(e.position[p], config.interpolation, &samples[p]);
  sample_statistics(samples, 1, est.mean, est.std_error);
  return est;
}

FKEstimate feynman_kac_magnetization(const VelocityHistory& history, const VectorField& m0,
                                     double T0, double t, const Vec3& x, const SDEConfig& config,
                                     std::uint32_t stream) {
  return stretching(history, &m0, nullptr, T0, t, x, config, stream).magnetization;
}

FKEstimate feynman_kac_vorticity(const VelocityHistory& history, const VectorField& w0, double T0,
                                 double t, const Vec3& x, const SDEConfig& config,
                                 std::uint32_t stream) {
  return stretching(history, nullptr, &w0, T0, t, x, config, stream).vorticity;
}

StretchingEstimates feynman_kac_stretching(const VelocityHistory& history, const VectorField& m0,
                                           const VectorField& w0, double T0, double t,
                                           const Vec3& x, const SDEConfig& config,
                                           std::uint32_t stream) {
  return stretching(history, &m0, &w0, T0, t, x, config, stream);
}

bool MeasurePreservationReport::within(double k) const noexcept {
  if (pooled_std_error == 0.0)
    return std::abs(discrepancy) <= 1e-12 * std::max(1.0, std::abs(integral_f));
  return std::abs(discrepancy) <= k * pooled_std_error;
}

MeasurePreservationReport measure_preservation_check(const VelocityHistory& history,
                                                     const ScalarField& f, double t0, double t1,
                                                     const SDEConfig& config, int points_per_dim,
                                                     std::uint32_t stream) {
  require_grid(history, f.grid());
  require_finite(f, "integrand");
  config.validate(history);
  if (points_per_dim < 1) throw std::invalid_argument("quadrature needs at least one point per axis");
  if (!(t0 <= t1) || !history.covers(t0, t1))
    throw std::invalid_argument("flow interval outside the velocity history");

  const auto q = static_cast<std::size_t>(points_per_dim);
  const std::size_t points = q * q * q;
  const std::size_t per = config.particles;
  const double spacing = kTwoPi / static_cast<double>(points_per_dim);
  const double weight = PeriodicGrid::total_measure() / static_cast<double>(points);
  const std::size_t steps = flow_steps(t0, t1, config.step);
  const double h = steps == 0 ? config.step : (t1 - t0) / static_cast<double>(steps);
  const BrownianPath path(config.seed, stream, h);
  const auto packed = pack_static({&f}, config.interpolation);

  const std::size_t batch = std::max<std::size_t>(1, 200000 / per);
  std::vector<double> mean;
  std::vector<double> se;
  double sum = 0.0;
  double var = 0.0;
  for (std::size_t start = 0; start < points; start += batch) {
    const std::size_t count = std::min(batch, points - start);
    ParticleEnsemble e;
    e.first_particle = start * per;
    e.track = kTrackNone;
    e.position.reserve(count * per);
    for (std::size_t b = 0; b < count; ++b) {
      const std::size_t idx = start + b;
      const Vec3 x{spacing * static_cast<double>(idx / (q * q)),
                   spacing * static_cast<double>((idx / q) % q),
                   spacing * static_cast<double>(idx % q)};
      e.position.insert(e.position.end(), per, x);
    }
    e.accumulated.assign(e.position.size(), 0.0);
    e.accumulated_total.assign(e.position.size(), 0.0);
    if (steps > 0) march(history, e, t1, t0, h, path, {t1, config.interpolation, nullptr});

    std::vector<double> samples(e.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(e.size()); ++p)
      packed.sample(e.position[p], config.interpolation, &samples[p]);
    for (std::size_t b = 0; b < count; ++b) {
      std::vector<double> chunk(samples.begin() + static_cast<std::ptrdiff_t>(b * per),
                                samples.begin() + static_cast<std::ptrdiff_t>((b + 1) * per));
      sample_statistics(chunk, 1, mean, se);
      sum += mean[0];
      var += se[0] * se[0];
    }
  }

  MeasurePreservationReport r;
  r.integral_f = f.integral();
  r.integral_estimate = weight * sum;
  r.discrepancy = r.integral_estimate - r.integral_f;
  r.relative_discrepancy =
      r.integral_f != 0.0 ? std::abs(r.discrepancy) / std::abs(r.integral_f) : std::abs(r.discrepancy);
  r.pooled_std_error = weight * std::sqrt(var);
  r.quadrature_points = points;
  r.particles_per_point = per;
  return r;
}

bool CompositionReport::ratios_within(double lo, double hi) const noexcept {
  if (ratios.empty()) return false;
  return std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r >= lo && r <= hi; });
}

CompositionReport composition_check(const VelocityHistory& history, const Vec3& x, double t0,
                                    double t1, double t2, const std::vector<double>& steps,
                                    double fine_step, const SDEConfig& config,
                                    std::uint32_t stream) {
  config.validate();
  if (!(t0 <= t1 && t1 <= t2)) throw std::invalid_argument("composition needs t0 <= t1 <= t2");
  if (steps.empty()) throw std::invalid_argument("composition needs at least one step size");
  const BrownianPath path(config.seed, stream, fine_step);
  const MarchOptions opts{t2, config.interpolation, nullptr};

  CompositionReport r;
  r.t0 = t0;
  r.t1 = t1;
  r.t2 = t2;
  r.fine_step = fine_step;
  r.steps = steps;
  for (double h : steps) {
    auto direct = ParticleEnsemble::at_point(x, config.particles, kTrackNone);
    march(history, direct, t2, t0, h, path, opts);
    auto composed = ParticleEnsemble::at_point(x, config.particles, kTrackNone);
    march(history, composed, t2, t1, h, path, opts);
    march(history, composed, t1, t0, h, path, opts);
    double mx = 0.0;
    double ss = 0.0;
    for (std::size_t p = 0; p < direct.size(); ++p) {
      const Vec3 d = periodic_difference(direct.position[p], composed.position[p]);
      const double dist2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
      mx = std::max(mx, std::sqrt(dist2));
      ss += dist2;
    }
    r.max_discrepancy.push_back(mx);
    r.rms_discrepancy.push_back(std::sqrt(ss / static_cast<double>(direct.size())));
  }
  for (std::size_t k = 0; k + 1 < r.rms_discrepancy.size(); ++k)
    r.ratios.push_back(r.rms_discrepancy[k + 1] > 0.0
                           ? r.rms_discrepancy[k] / r.rms_discrepancy[k + 1]
                           : std::numeric_limits<double>::infinity());
  return r;
}

}  // namespace nsreg
