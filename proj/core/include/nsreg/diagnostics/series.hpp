#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "nsreg/solver/history.hpp"

namespace nsreg {

/// Sampled scalar function of time. Non-finite values are stored as +inf and
/// flagged saturated; integrals over them are +inf.
struct DiagnosticSeries {
  std::string name;
  std::vector<double> times;
  std::vector<double> values;
  std::vector<char> saturated;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  bool any_saturated() const noexcept;
  double start() const;
  double end() const;
  double max_value() const;

  /// Throws std::invalid_argument unless times strictly increase.
  void push(double t, double v);
  /// Linear interpolation; t must lie in [start, end].
  double value_at(double t) const;
  /// Same times, values replaced by fn(value). Saturation is kept.
  DiagnosticSeries map(const std::function<double(double)>& fn, std::string name = {}) const;
};

enum class FunctionalKind { kVelocityLq, kVorticityLq, kDerivativeLq, kGradientOrlicz };

/// Norm sampled at each snapshot. q may be +inf for the Lebesgue kinds.
struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::kVelocityLq;
  double q = 2.0;
  int order = 0;

  static constexpr int kMaxOrder = 4;

  /// Throws std::invalid_argument on an order outside [0, 4] or a bad q.
  void validate() const;
  std::string label() const;
};

const char* to_string(FunctionalKind kind) noexcept;
FunctionalKind functional_from_string(std::string_view name);

/// |grad^n u| pointwise: sqrt of the sum over components and all ordered
/// n-tuples of partial derivatives, i.e. distinct multi-indices weighted by
/// their multinomial counts.
ScalarField derivative_magnitude(const VectorField& u, int order);

double functional_value(const VelocitySnapshot& snap, const FunctionalSpec& spec);
DiagnosticSeries series(const VelocityHistory& history, const FunctionalSpec& spec);

/// Trapezoid integral over the whole series.
double trapezoid(const DiagnosticSeries& s);
/// Integral of the piecewise-linear interpolant over [a, b] clipped to the series span.
double trapezoid(const DiagnosticSeries& s, double a, double b);

inline double log_plus(double x) noexcept { return x > 1.0 ? std::log(x) : 0.0; }

}  // namespace nsreg
