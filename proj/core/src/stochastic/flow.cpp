#include "nsreg/stochastic/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsreg {

void SDEConfig::validate() const {
  if (particles == 0) throw std::invalid_argument("SDE particle count must be positive");
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("SDE step must be positive");
}

void SDEConfig::validate(const VelocityHistory& history) const {
  validate();
  double spacing = 0.0;
  for (std::size_t i = 1; i < history.size(); ++i)
    spacing = std::max(spacing, history[i].time - history[i - 1].time);
  if (history.size() > 1 && step > spacing * (1.0 + 1e-9))
    throw std::invalid_argument("SDE step exceeds the snapshot interval of the history");
}

TimeSet::TimeSet(std::vector<std::pair<double, double>> intervals) {
  for (const auto& [a, b] : intervals) {
    if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
      throw std::invalid_argument("time interval must satisfy a <= b");
  }
  std::sort(intervals.begin(), intervals.end());
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.first <= intervals_.back().second)
      intervals_.back().second = std::max(intervals_.back().second, iv.second);
    else
      intervals_.push_back(iv);
  }
}

bool TimeSet::contains(double t) const noexcept {
  for (const auto& [a, b] : intervals_)
    if (t >= a && t <= b) return true;
  return false;
}

double TimeSet::measure(double a, double b) const noexcept {
  double m = 0.0;
  for (const auto& [lo, hi] : intervals_) m += std::max(0.0, std::min(b, hi) - std::max(a, lo));
  return m;
}

ParticleEnsemble ParticleEnsemble::at_point(const Vec3& x, std::size_t count, unsigned track,
                                            std::uint64_t first_particle) {
  ParticleEnsemble e;
  e.position.assign(count, wrap(x));
  e.accumulated.assign(count, 0.0);
  e.accumulated_total.assign(count, 0.0);
  const Mat3 id{1, 0, 0, 0, 1, 0, 0, 0, 1};
  if (track & kTrackMagnetization) e.magnetization.assign(count, id);
  if (track & kTrackVorticity) e.vorticity.assign(count, id);
  e.first_particle = first_particle;
  e.track = track;
  return e;
}

std::size_t flow_steps(double t0, double t1, double h) noexcept {
  const double r = (t1 - t0) / h;
  if (!(r > 0.0)) return 0;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(r - 1e-9)));
}

namespace {

class FineClock {
 public:
  FineClock(double anchor, double delta) : anchor_(anchor), delta_(delta) {}
  std::uint64_t operator()(double tau) const {
    const double r = (anchor_ - tau) / delta_;
    const double j = std::round(r);
    if (j < 0.0 || std::abs(r - j) > 1e-6 * std::max(1.0, std::abs(r)))
      throw std::invalid_argument("flow time is not on the Brownian fine grid");
    return static_cast<std::uint64_t>(j);
  }

 private:
  double anchor_;
  double delta_;
};

// G Q with G = I - dt T (magnetization) or I + dt T^T (vorticity)
inline void left_multiply(Mat3& q, const double* t, double dt, bool transpose) {
  Mat3 out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += (transpose ? t[3 * c + a] : t[3 * a + c]) * q[3 * c + b];
      out[3 * a + b] = q[3 * a + b] + (transpose ? dt : -dt) * s;
    }
  q = out;
}

void fill_packed(PackedField& packed, const VelocityHistory& history, double tau, bool gradient,
                 Interpolation mode) {
  const auto br = history.bracket(tau);
  const auto& lo = history[br.lo];
  const auto& hi = history[br.hi];
  std::vector<const ScalarField*> a, b;
  for (int c = 0; c < 3; ++c) {
    a.push_back(&lo.u[c]);
    b.push_back(&hi.u[c]);
  }
  if (gradient) {
    for (int e = 0; e < 9; ++e) {
      a.push_back(&lo.grad.flat(e));
      b.push_back(&hi.grad.flat(e));
    }
  }
  packed.assign_blend(a, b, br.weight);
  packed.prepare(mode);
}

}  // namespace

void march(const VelocityHistory& history, ParticleEnsemble& e, double from, double to, double h,
           const BrownianPath& path, const MarchOptions& options) {
  if (!(to <= from)) throw std::invalid_argument("flow interval must satisfy t0 <= t1");
  if (!(h > 0.0)) throw std::invalid_argument("flow step must be positive");
  if (history.empty() || !history.covers(to, from))
    throw std::invalid_argument("flow interval outside the velocity history");
  if (to == from || e.size() == 0) return;

  const std::size_t steps = flow_steps(to, from, h);
  std::vector<double> taus(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) taus[k] = from - static_cast<double>(k) * h;
  taus[steps] = to;

  const FineClock clock(options.anchor, path.fine_step());
  const double noise = std::sqrt(2.0 * history.viscosity());
  const bool zero = history.is_zero();
  const bool gradient = e.track != kTrackNone;
  const bool mag = e.track & kTrackMagnetization;
  const bool vort = e.track & kTrackVorticity;
  const auto n = static_cast<std::ptrdiff_t>(e.size());
  const Interpolation mode = options.interpolation;

  std::vector<Vec3> drift(e.size(), Vec3{0.0, 0.0, 0.0});
  PackedField packed(history.grid(), gradient ? 12 : 3);
  if (!zero) {
    PackedField u0(history.grid(), 3);
    fill_packed(u0, history, from, false, mode);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) u0.sample(e.position[p], mode, drift[p].data());
  }

  for (std::size_t k = 0; k < steps; ++k) {
    const double ta = taus[k];
    const double tb = taus[k + 1];
    const double dt = ta - tb;
    const std::uint64_t ja = clock(ta);
    const std::uint64_t jb = clock(tb);
    const bool last = k + 1 == steps;
    const bool sample = !zero && (gradient || !last);
    const bool in_window = options.window == nullptr || options.window->contains(0.5 * (ta + tb));
    if (sample) fill_packed(packed, history, tb, gradient, mode);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
      const Vec3 dw = path.increment(e.first_particle + static_cast<std::uint64_t>(p), ja, jb);
      Vec3& x = e.position[p];
      for (int c = 0; c < 3; ++c) x[c] = x[c] - drift[p][c] * dt + noise * dw[c];
      x = wrap(x);
      if (!sample) continue;
      double v[12];
      packed.sample(x, mode, v);
      drift[p] = {v[0], v[1], v[2]};
      if (!gradient) continue;
      const double* t = v + 3;
      double f2 = 0.0;
      for (int c = 0; c < 9; ++c) f2 += t[c] * t[c];
      const double a = std::sqrt(f2) * dt;
      e.accumulated_total[p] += a;
      if (in_window) e.accumulated[p] += a;
      if (mag) left_multiply(e.magnetization[p], t, dt, false);
      if (vort) left_multiply(e.vorticity[p], t, dt, true);
    }
  }
}

ParticleEnsemble backward_flow(const VelocityHistory& history, const Vec3& x, double t1,
                               double t0, const SDEConfig& config, unsigned track,
                               std::uint32_t stream) {
  config.validate(history);
  if (!(t0 <= t1)) throw std::invalid_argument("flow interval must satisfy t0 <= t1");
  if (history.empty() || !history.covers(t0, t1))
    throw std::invalid_argument("flow interval outside the velocity history");
  auto e = ParticleEnsemble::at_point(x, config.particles, track);
  const std::size_t steps = flow_steps(t0, t1, config.step);
  if (steps == 0) return e;
  const double h = (t1 - t0) / static_cast<double>(steps);
  const BrownianPath path(config.seed, stream, h);
  march(history, e, t1, t0, h, path, {t1, config.interpolation, nullptr});
  return e;
}

}  // namespace nsreg
