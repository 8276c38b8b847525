#include "nsreg/diagnostics/level_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsreg {

double level_set_measure(const DiagnosticSeries& s, double lambda, double a, double b) {
  if (s.empty()) throw std::invalid_argument("empty series");
  const double slack = 1e-12 * std::max(1.0, std::abs(s.end()));
  if (a < s.start() - slack || b > s.end() + slack || a > b)
    throw std::invalid_argument("level-set window outside the series span");
  a = std::max(a, s.start());
  b = std::min(b, s.end());
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double t0 = s.times[i];
    const double t1 = s.times[i + 1];
    const double lo = std::max(a, t0);
    const double hi = std::min(b, t1);
    if (!(hi > lo)) continue;
    const double y0 = s.values[i];
    const double y1 = s.values[i + 1];
    if (std::isinf(y0) || std::isinf(y1)) {
      m += hi - lo;
      continue;
    }
    if (y0 >= lambda && y1 >= lambda) {
      m += hi - lo;
      continue;
    }
    if (y0 < lambda && y1 < lambda) continue;
    const double tc = t0 + (lambda - y0) / (y1 - y0) * (t1 - t0);
    if (y1 > y0)
      m += std::max(0.0, hi - std::max(lo, tc));
    else
      m += std::max(0.0, std::min(hi, tc) - lo);
  }
  return m;
}

double level_set_measure(const DiagnosticSeries& s, double lambda) {
  if (s.empty()) throw std::invalid_argument("empty series");
  return level_set_measure(s, lambda, s.start(), s.end());
}

double LevelSetReport::median_c2() const {
  if (c2_of_r.empty()) return 0.0;
  std::vector<double> v = c2_of_r;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

bool LevelSetReport::bounded(double factor) const {
  if (c2_of_r.empty()) return false;
  const double mx = *std::max_element(c2_of_r.begin(), c2_of_r.end());
  return std::isfinite(mx) && mx <= factor * median_c2();
}

namespace {

double inverse_q(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

double ratio(double left, double right) {
  if (left == 0.0) return 0.0;
  if (right == 0.0) return std::numeric_limits<double>::infinity();
  return left / right;
}

}  // namespace

LevelSetReport fgt_ratio_report(const DiagnosticSeries& left, const DiagnosticSeries& right,
                                int order, double q1, double q2, const std::vector<double>& r_grid,
                                const std::vector<double>& c_grid) {
  if (!(q1 > 3.0) || !(q1 <= q2)) throw std::invalid_argument("need 3 < q1 <= q2 <= inf");
  if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (r_grid.empty() || c_grid.empty()) throw std::invalid_argument("empty r or c grid");
  for (double r : r_grid)
    if (!(r > 0.0)) throw std::invalid_argument("r grid must be positive");
  for (double c : c_grid)
    if (!(c > 0.0)) throw std::invalid_argument("c grid must be positive");
  if (left.empty() || right.empty()) throw std::invalid_argument("empty series");

  LevelSetReport rep;
  rep.order = order;
  rep.q1 = q1;
  rep.q2 = q2;
  rep.T1 = std::max(left.start(), right.start());
  rep.T2 = std::min(left.end(), right.end());
  rep.r_grid = r_grid;
  rep.c_grid = c_grid;
  const std::size_t nr = r_grid.size();
  const std::size_t nc = c_grid.size();
  std::vector<char> active(nr, 0);
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = r_grid[i];
    rep.lambda_left.push_back(std::pow(r, 3.0 * inverse_q(q2) - order - 1.0));
    rep.lambda_right.push_back(std::pow(r, 3.0 * inverse_q(q1) - 1.0));
    const double start = rep.T1 + r * r;
    active[i] = start < rep.T2;
    std::vector<double> lrow, rrow;
    for (double c : c_grid) {
      lrow.push_back(active[i] ? level_set_measure(left, c * rep.lambda_left[i], start, rep.T2) : 0.0);
      rrow.push_back(level_set_measure(right, c * rep.lambda_right[i], rep.T1, rep.T2));
    }
    rep.left_measure.push_back(std::move(lrow));
    rep.right_measure.push_back(std::move(rrow));
  }

  double best = std::numeric_limits<double>::infinity();
  bool best_nondegenerate = false;
  bool found = false;
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b) {
      bool nondegenerate = false;
      double worst = 0.0;
      std::vector<double> per_r;
      for (std::size_t i = 0; i < nr; ++i) {
        const double x = ratio(rep.left_measure[i][a], rep.right_measure[i][b]);
        per_r.push_back(x);
        worst = std::max(worst, x);
      }
      nondegenerate = std::isfinite(worst);
      for (std::size_t i = 0; i < nr; ++i)
        if (active[i] && rep.left_measure[i][a] == 0.0) nondegenerate = false;
      const bool better = !found || (nondegenerate && !best_nondegenerate) ||
                          (nondegenerate == best_nondegenerate && worst < best);
      if (better) {
        found = true;
        best = worst;
        best_nondegenerate = nondegenerate;
        rep.c1 = c_grid[a];
        rep.c3 = c_grid[b];
        rep.c2 = worst;
        rep.c2_of_r.clear();
        for (std::size_t i = 0; i < nr; ++i)
          if (active[i]) rep.c2_of_r.push_back(per_r[i]);
      }
    }
  rep.degenerate = !best_nondegenerate;
  return rep;
}

LevelSetReport fgt_ratio_report(const VelocityHistory& history, int order, double q1, double q2,
                                const std::vector<double>& r_grid,
                                const std::vector<double>& c_grid) {
  FunctionalSpec ls{FunctionalKind::kDerivativeLq, q2, order};
  FunctionalSpec rs{FunctionalKind::kDerivativeLq, q1, 0};
  return fgt_ratio_report(series(history, ls), series(history, rs), order, q1, q2, r_grid, c_grid);
}

}  // namespace nsreg
