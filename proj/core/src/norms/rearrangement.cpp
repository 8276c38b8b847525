#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "nsreg/norms/norms.hpp"

namespace nsreg {

RearrangementTable::RearrangementTable(std::vector<double> values_desc, double cell_volume)
    : values_(std::move(values_desc)), cell_(cell_volume) {
  if (!std::is_sorted(values_.begin(), values_.end(), std::greater<>())) {
    throw std::invalid_argument("rearrangement values must be non-increasing");
  }
}

double RearrangementTable::operator()(double t) const noexcept {
  if (t < 0.0) return values_.empty() ? 0.0 : values_.front();
  const auto i = static_cast<std::size_t>(std::floor(t / cell_));
  return i < values_.size() ? values_[i] : 0.0;
}

double RearrangementTable::integrate(const std::function<double(double)>& F) const {
  double s = 0.0;
  for (double v : values_) s += F(v);
  return s * cell_;
}

double RearrangementTable::lp_norm(double p) const {
  return nsreg::lp_norm(values_, cell_, p);
}

namespace {
RearrangementTable build(std::vector<double> v, double cell) {
  for (double& x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("rearrangement: non-finite value");
    x = std::abs(x);
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  return RearrangementTable(std::move(v), cell);
}
}  // namespace

RearrangementTable rearrangement(const ScalarField& f) {
  return build({f.values().begin(), f.values().end()}, f.grid().cell_volume());
}

RearrangementTable rearrangement(const VectorField& v) {
  const ScalarField mag = v.magnitude();
  return build({mag.values().begin(), mag.values().end()}, mag.grid().cell_volume());
}

}  // namespace nsreg
