#include "nsreg/diagnostics/corollary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsreg {

double kappa(const ThetaFunction& theta, double c, double T0, double T1,
             const std::vector<double>& grid) {
  if (!(c > 0.0) || !(T0 >= 0.0) || !(T1 >= 0.0)) throw std::invalid_argument("kappa needs c > 0, T0 >= 0, T1 >= 0");
  if (grid.size() < 2) throw std::invalid_argument("kappa needs at least two grid points");
  double total = 0.0;
  double prev = theta(grid.front());
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if (!(grid[k + 1] > grid[k]) || grid[k] < 0.0)
      throw std::invalid_argument("lambda grid must be non-negative and increasing");
    const double next = theta(grid[k + 1]);
    if (next < prev) throw std::invalid_argument("Theta is not monotone on the lambda grid");
    const double mid = 0.5 * (grid[k] + grid[k + 1]);
    const double weight = std::min(std::max(c / (mid * mid) - T0, 0.0), T1);
    total += weight * (next - prev);
    prev = next;
  }
  return total;
}

std::vector<double> kappa_lambda_grid(double c, double T0, double T1, std::size_t points) {
  if (!(T0 > 0.0)) throw std::invalid_argument("automatic lambda grid needs T0 > 0");
  if (!(c > 0.0) || points < 2) throw std::invalid_argument("bad kappa grid request");
  const double top = std::sqrt(c / T0);
  const double knee = std::sqrt(c / (T0 + T1));
  const double bottom = std::min(knee, top) * 1e-6;
  std::vector<double> g{0.0};
  const double ratio = std::pow(top / bottom, 1.0 / static_cast<double>(points - 1));
  double x = bottom;
  for (std::size_t k = 0; k + 1 < points; ++k, x *= ratio) g.push_back(x);
  g.push_back(top);
  return g;
}

bool CorollaryReport::finite() const noexcept {
  if (!std::isfinite(lhs)) return false;
  return std::all_of(rhs.begin(), rhs.end(), [](double v) { return std::isfinite(v); });
}

CorollaryReport corollary_check(const DiagnosticSeries& left, const DiagnosticSeries& right,
                                const ThetaFunction& theta, int order, double q1, double q2,
                                double T0, double T1, const std::vector<double>& c_grid,
                                CorollaryVariant variant) {
  if (left.empty() || right.empty()) throw std::invalid_argument("empty series");
  if (!(T0 < T1)) throw std::invalid_argument("corollary window needs T0 < T1");
  double left_exp = 0.0;
  double right_exp = 0.0;
  if (variant == CorollaryVariant::kLebesgue) {
    if (!(q1 > 3.0) || !(q1 <= q2)) throw std::invalid_argument("need 3 < q1 <= q2 <= inf");
    if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
    const double iq2 = std::isinf(q2) ? 0.0 : 1.0 / q2;
    const double iq1 = std::isinf(q1) ? 0.0 : 1.0 / q1;
    left_exp = 1.0 / (1.0 + order - 3.0 * iq2);
    right_exp = 1.0 / (1.0 - 3.0 * iq1);
  } else {
    if (order < 1) throw std::invalid_argument("L2 variant needs n >= 1");
    left_exp = 1.0 / (order - 0.5);
    right_exp = 2.0;
  }

  CorollaryReport rep;
  rep.variant = variant;
  rep.order = order;
  rep.q1 = q1;
  rep.q2 = q2;
  rep.T0 = T0;
  rep.T1 = T1;
  rep.c_grid = c_grid;
  rep.lhs = trapezoid(left.map([&](double y) { return theta(std::pow(y, left_exp)); }), T0, T1);
  const auto g = right.map([&](double y) { return std::pow(y, right_exp); });
  rep.constant = std::numeric_limits<double>::infinity();
  for (double c : c_grid) {
    const double k = kappa(theta, c, T0, T1, kappa_lambda_grid(c, T0, T1));
    const double tail = trapezoid(g.map([&](double y) { return theta(c * y); }), right.start(), T1);
    const double r = c * k + c * tail;
    rep.kappa.push_back(k);
    rep.rhs.push_back(r);
    if (rep.lhs <= r) rep.constant = std::min(rep.constant, c);
  }
  return rep;
}

CorollaryReport corollary_check(const VelocityHistory& history, const ThetaFunction& theta,
                                int order, double q1, double q2, double T0, double T1,
                                const std::vector<double>& c_grid, CorollaryVariant variant) {
  if (variant == CorollaryVariant::kLebesgue) {
    return corollary_check(series(history, {FunctionalKind::kDerivativeLq, q2, order}),
                           series(history, {FunctionalKind::kDerivativeLq, q1, 0}), theta, order,
                           q1, q2, T0, T1, c_grid, variant);
  }
  return corollary_check(series(history, {FunctionalKind::kDerivativeLq, 2.0, order}),
                         series(history, {FunctionalKind::kDerivativeLq, 2.0, 1}), theta, order, q1,
                         q2, T0, T1, c_grid, variant);
}

double fgt_integral(const DiagnosticSeries& s, int order) {
  if (order < 1) throw std::invalid_argument("FGT integral needs n >= 1");
  const double e = 1.0 / (order - 0.5);
  return trapezoid(s.map([e](double y) { return std::pow(y, e); }));
}

}  // namespace nsreg
