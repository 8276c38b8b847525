#include "nsreg/diagnostics/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsreg {

ThetaFunction theta_from_string(std::string_view name) {
  if (name == "one") return [](double) { return 1.0; };
  if (name == "log") return [](double x) { return 1.0 + log_plus(x); };
  if (name == "identity") return [](double x) { return x; };
  if (name == "square-over-log") return [](double x) { return x * x / (1.0 + log_plus(x)); };
  if (name.starts_with("power:")) {
    const std::string arg(name.substr(6));
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || !(a > 0.0)) throw std::invalid_argument("bad power exponent: " + arg);
    return [a](double x) { return std::pow(x, a); };
  }
  throw std::invalid_argument("unknown Theta function: " + std::string(name));
}

ThetaTable::ThetaTable(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.empty()) throw std::invalid_argument("Theta table needs matching non-empty columns");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("Theta table abscissae must increase");
    if (y_[i] < y_[i - 1]) throw std::invalid_argument("Theta table is not monotone");
  }
}

double ThetaTable::operator()(double lambda) const noexcept {
  if (lambda <= x_.front()) return y_.front();
  if (lambda >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), lambda);
  const std::size_t hi = static_cast<std::size_t>(it - x_.begin());
  const double w = (lambda - x_[hi - 1]) / (x_[hi] - x_[hi - 1]);
  return y_[hi - 1] + w * (y_[hi] - y_[hi - 1]);
}

void require_serrin_pair(double p, double q) {
  if (!(p > 2.0) || !std::isfinite(p)) throw std::invalid_argument("Prodi-Serrin needs 2 < p < inf");
  if (!(q > 3.0) || !std::isfinite(q)) throw std::invalid_argument("Prodi-Serrin needs 3 < q < inf");
  if (std::abs(2.0 / p + 3.0 / q - 1.0) > 1e-12)
    throw std::invalid_argument("exponents violate 2/p + 3/q = 1");
}

double prodi_serrin_log(const DiagnosticSeries& s, double p, double q) {
  require_serrin_pair(p, q);
  if (s.empty()) throw std::invalid_argument("empty series");
  return trapezoid(s.map([p](double y) { return std::pow(y, p) / (1.0 + log_plus(y)); }));
}

double theta_criterion(const DiagnosticSeries& s, const ThetaFunction& theta, double p, double q) {
  if (!(p > 0.0) || !(q >= 1.0)) throw std::invalid_argument("theta criterion needs p > 0 and q >= 1");
  if (s.empty()) throw std::invalid_argument("empty series");
  std::vector<double> v;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!s.saturated[i]) v.push_back(s.values[i]);
  std::sort(v.begin(), v.end());
  double prev = -std::numeric_limits<double>::infinity();
  for (double y : v) {
    const double th = theta(y);
    if (!(th > 0.0)) throw std::invalid_argument("Theta must be positive on the sampled values");
    if (th < prev) throw std::invalid_argument("Theta is not monotone on the sampled values");
    prev = th;
  }
  return trapezoid(s.map([&](double y) { return std::pow(y, p) / theta(y); }));
}

double bkm_integral(const DiagnosticSeries& s) { return trapezoid(s); }

double orlicz_integral(const DiagnosticSeries& s) { return trapezoid(s); }

RiccatiFit riccati_envelope(const DiagnosticSeries& s, double p) {
  if (s.empty()) throw std::invalid_argument("empty series");
  if (!(p > 0.0)) throw std::invalid_argument("Riccati exponent must be positive");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(s.values[i] > 0.0) || s.saturated[i])
      throw std::invalid_argument("Riccati envelope needs a strictly positive finite series");
  const auto lhs = [](double y) { return std::log(1.0 + log_plus(y)); };
  const auto integrand = s.map([p](double y) { return std::pow(y, p) / (1.0 + log_plus(y)); });

  RiccatiFit fit;
  const double l0 = lhs(s.values.front());
  double integral = 0.0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    integral += 0.5 * (integrand.values[k - 1] + integrand.values[k]) * (s.times[k] - s.times[k - 1]);
    const double rise = lhs(s.values[k]) - l0;
    if (rise <= 0.0) continue;
    if (integral <= 0.0) {
      fit.infinite = true;
      fit.c = std::numeric_limits<double>::infinity();
      continue;
    }
    fit.c = std::max(fit.c, rise / integral);
  }
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double slope = (s.values[k] - s.values[k - 1]) / (s.times[k] - s.times[k - 1]);
    const double mid = 0.5 * (s.values[k] + s.values[k - 1]);
    fit.finite_difference_c = std::max(fit.finite_difference_c, slope / std::pow(mid, p + 1.0));
  }
  return fit;
}

}  // namespace nsreg
