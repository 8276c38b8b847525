#include "nsreg/solver/history.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "nsreg/fields/spectral.hpp"

namespace nsreg {
namespace {
constexpr double kTimeSlack = 1e-12;
}

void VelocityHistory::append(double time, VectorField u) {
  TensorField g = grad_tensor(u);
  append(time, std::move(u), std::move(g));
}

void VelocityHistory::append(double time, VectorField u, TensorField grad) {
  if (!snaps_.empty()) {
    if (!(time > snaps_.back().time)) {
      throw std::invalid_argument("history times must be strictly increasing");
    }
    require_same_grid(u.grid(), snaps_.front().u.grid());
  }
  require_same_grid(u.grid(), grad.grid());
  if (all_zero_) all_zero_ = u.max_abs() == 0.0;
  snaps_.push_back({time, std::move(u), std::move(grad)});
}

const PeriodicGrid& VelocityHistory::grid() const {
  if (snaps_.empty()) throw std::logic_error("empty velocity history");
  return snaps_.front().u.grid();
}

double VelocityHistory::start_time() const {
  if (snaps_.empty()) throw std::logic_error("empty velocity history");
  return snaps_.front().time;
}

double VelocityHistory::end_time() const {
  if (snaps_.empty()) throw std::logic_error("empty velocity history");
  return snaps_.back().time;
}

std::vector<double> VelocityHistory::times() const {
  std::vector<double> t;
  t.reserve(snaps_.size());
  for (const auto& s : snaps_) t.push_back(s.time);
  return t;
}

bool VelocityHistory::covers(double t0, double t1) const noexcept {
  if (snaps_.empty() || t1 < t0) return false;
  return t0 >= snaps_.front().time - kTimeSlack && t1 <= snaps_.back().time + kTimeSlack;
}

VelocityHistory::Bracket VelocityHistory::bracket(double t) const {
  if (!covers(t, t)) {
    throw std::out_of_range("time " + std::to_string(t) + " outside velocity history");
  }
  if (snaps_.size() == 1) return {0, 0, 0.0};
  auto it = std::upper_bound(snaps_.begin(), snaps_.end(), t,
                             [](double v, const VelocitySnapshot& s) { return v < s.time; });
  std::size_t hi = static_cast<std::size_t>(it - snaps_.begin());
  if (hi == 0) return {0, 0, 0.0};
  if (hi == snaps_.size()) return {hi - 1, hi - 1, 0.0};
  const std::size_t lo = hi - 1;
  const double w = (t - snaps_[lo].time) / (snaps_[hi].time - snaps_[lo].time);
  if (w == 0.0) return {lo, lo, 0.0};
  return {lo, hi, w};
}

VectorField VelocityHistory::velocity_at(double t) const {
  const Bracket b = bracket(t);
  VectorField u = snaps_[b.lo].u;
  if (b.weight != 0.0) {
    u *= 1.0 - b.weight;
    u.axpy(b.weight, snaps_[b.hi].u);
  }
  u.mark_solenoidal(snaps_[b.lo].u.solenoidal() && snaps_[b.hi].u.solenoidal());
  return u;
}

TensorField VelocityHistory::gradient_at(double t) const {
  const Bracket b = bracket(t);
  TensorField g = snaps_[b.lo].grad;
  if (b.weight != 0.0) {
    g *= 1.0 - b.weight;
    g.axpy(b.weight, snaps_[b.hi].grad);
  }
  return g;
}

VelocityHistory VelocityHistory::frozen(const VectorField& u, double t0, double t1,
                                        double viscosity) {
  VelocityHistory h(viscosity);
  TensorField g = grad_tensor(u);
  h.append(t0, u, g);
  if (t1 > t0) h.append(t1, u, std::move(g));
  return h;
}

}  // namespace nsreg
