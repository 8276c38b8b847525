#include "nsreg/diagnostics/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nsreg/fields/spectral.hpp"
#include "nsreg/norms/norms.hpp"

namespace nsreg {

bool DiagnosticSeries::any_saturated() const noexcept {
  return std::any_of(saturated.begin(), saturated.end(), [](char c) { return c != 0; });
}

double DiagnosticSeries::start() const {
  if (empty()) throw std::logic_error("empty series");
  return times.front();
}

double DiagnosticSeries::end() const {
  if (empty()) throw std::logic_error("empty series");
  return times.back();
}

double DiagnosticSeries::max_value() const {
  if (empty()) throw std::logic_error("empty series");
  return *std::max_element(values.begin(), values.end());
}

void DiagnosticSeries::push(double t, double v) {
  if (!std::isfinite(t) || (!times.empty() && !(t > times.back())))
    throw std::invalid_argument("series times must increase strictly");
  const bool sat = !std::isfinite(v);
  times.push_back(t);
  values.push_back(sat ? std::numeric_limits<double>::infinity() : v);
  saturated.push_back(sat ? 1 : 0);
}

double DiagnosticSeries::value_at(double t) const {
  if (empty() || t < times.front() || t > times.back())
    throw std::out_of_range("time outside the series");
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.end()) return values.back();
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  if (w == 0.0) return values[lo];
  return values[lo] + w * (values[hi] - values[lo]);
}

DiagnosticSeries DiagnosticSeries::map(const std::function<double(double)>& fn,
                                       std::string new_name) const {
  DiagnosticSeries out;
  out.name = new_name.empty() ? name : std::move(new_name);
  for (std::size_t i = 0; i < size(); ++i)
    out.push(times[i], saturated[i] ? std::numeric_limits<double>::infinity() : fn(values[i]));
  return out;
}

void FunctionalSpec::validate() const {
  if (order < 0 || order > kMaxOrder)
    throw std::invalid_argument("derivative order must lie in [0, 4]");
  if (kind == FunctionalKind::kGradientOrlicz) {
    if (!(q >= 1.0) || !std::isfinite(q)) throw std::invalid_argument("Orlicz q must be finite and >= 1");
  } else if (!(q >= 1.0)) {
    throw std::invalid_argument("Lebesgue exponent must be >= 1");
  }
}

namespace {

std::string q_label(double q) {
  if (std::isinf(q)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", q);
  return buf;
}

}  // namespace

std::string FunctionalSpec::label() const {
  switch (kind) {
    case FunctionalKind::kVelocityLq: return "u_L" + q_label(q);
    case FunctionalKind::kVorticityLq: return "w_L" + q_label(q);
    case FunctionalKind::kDerivativeLq: return "grad" + std::to_string(order) + "u_L" + q_label(q);
    case FunctionalKind::kGradientOrlicz: return "gradu_Phi" + q_label(q);
  }
  return "?";
}

const char* to_string(FunctionalKind kind) noexcept {
  switch (kind) {
    case FunctionalKind::kVelocityLq: return "velocity_lq";
    case FunctionalKind::kVorticityLq: return "vorticity_lq";
    case FunctionalKind::kDerivativeLq: return "derivative_lq";
    case FunctionalKind::kGradientOrlicz: return "gradient_orlicz";
  }
  return "?";
}

FunctionalKind functional_from_string(std::string_view name) {
  for (auto k : {FunctionalKind::kVelocityLq, FunctionalKind::kVorticityLq,
                 FunctionalKind::kDerivativeLq, FunctionalKind::kGradientOrlicz})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown functional: " + std::string(name));
}

ScalarField derivative_magnitude(const VectorField& u, int order) {
  if (order < 0 || order > FunctionalSpec::kMaxOrder)
    throw std::invalid_argument("derivative order must lie in [0, 4]");
  const auto& g = u.grid();
  std::vector<double> sq(g.size(), 0.0);
  double fact[FunctionalSpec::kMaxOrder + 1] = {1, 1, 2, 6, 24};
  for (int a = 0; a <= order; ++a)
    for (int b = 0; a + b <= order; ++b) {
      const int c = order - a - b;
      const double weight = fact[order] / (fact[a] * fact[b] * fact[c]);
      for (int comp = 0; comp < 3; ++comp) {
        const ScalarField d = order == 0 ? u[comp] : partial_derivative(u[comp], {a, b, c});
        for (std::size_t p = 0; p < g.size(); ++p) sq[p] += weight * d[p] * d[p];
      }
    }
  for (auto& v : sq) v = std::sqrt(v);
  return ScalarField(g, std::move(sq));
}

double functional_value(const VelocitySnapshot& snap, const FunctionalSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case FunctionalKind::kVelocityLq: return lp_norm(snap.u, spec.q);
    case FunctionalKind::kVorticityLq: return lp_norm(curl(snap.u), spec.q);
    case FunctionalKind::kDerivativeLq:
      if (spec.order == 0) return lp_norm(snap.u, spec.q);
      if (spec.order == 1) return lp_norm(snap.grad, spec.q);
      return lp_norm(derivative_magnitude(snap.u, spec.order), spec.q);
    case FunctionalKind::kGradientOrlicz: {
      OrliczSpec o;
      o.q = spec.q;
      return orlicz_norm(snap.grad, o);
    }
  }
  return 0.0;
}

DiagnosticSeries series(const VelocityHistory& history, const FunctionalSpec& spec) {
  spec.validate();
  DiagnosticSeries s;
  s.name = spec.label();
  for (const auto& snap : history) s.push(snap.time, functional_value(snap, spec));
  return s;
}

double trapezoid(const DiagnosticSeries& s) {
  if (s.empty()) throw std::invalid_argument("cannot integrate an empty series");
  return trapezoid(s, s.start(), s.end());
}

double trapezoid(const DiagnosticSeries& s, double a, double b) {
  if (s.empty()) throw std::invalid_argument("cannot integrate an empty series");
  a = std::max(a, s.start());
  b = std::min(b, s.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double lo = std::max(a, s.times[i]);
    const double hi = std::min(b, s.times[i + 1]);
    if (!(hi > lo)) continue;
    if (s.saturated[i] || s.saturated[i + 1]) return std::numeric_limits<double>::infinity();
    const double span = s.times[i + 1] - s.times[i];
    const double slope = (s.values[i + 1] - s.values[i]) / span;
    const double va = lo == s.times[i] ? s.values[i] : s.values[i] + slope * (lo - s.times[i]);
    const double vb =
        hi == s.times[i + 1] ? s.values[i + 1] : s.values[i] + slope * (hi - s.times[i]);
    total += 0.5 * (va + vb) * (hi - lo);
  }
  return total;
}

}  // namespace nsreg
