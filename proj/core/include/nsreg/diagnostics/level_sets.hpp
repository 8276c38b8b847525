#pragma once

#include <vector>

#include "nsreg/diagnostics/series.hpp"

namespace nsreg {

/// Length of {t in [a, b] : s(t) >= lambda} for the piecewise-linear
/// interpolant of s. Throws unless [a, b] lies within the series span.
double level_set_measure(const DiagnosticSeries& s, double lambda, double a, double b);
double level_set_measure(const DiagnosticSeries& s, double lambda);

/// Measures of A^{n,q2}_{T1+r^2,T2}(c lambda2(r)) and A^{0,q1}_{T1,T2}(c lambda1(r))
/// with lambda2 = r^{3/q2-n-1}, lambda1 = r^{3/q1-1}, over a grid of trial
/// constants c used for both c1 and c3.
struct LevelSetReport {
  int order = 0;
  double q1 = 0.0;
  double q2 = 0.0;
  double T1 = 0.0;
  double T2 = 0.0;
  std::vector<double> r_grid;
  std::vector<double> c_grid;
  std::vector<double> lambda_left;
  std::vector<double> lambda_right;
  /// [r][c] indexed measures.
  std::vector<std::vector<double>> left_measure;
  std::vector<std::vector<double>> right_measure;

  /// Pair (c1, c3) minimising the largest ratio over r, preferring pairs whose
  /// left measure is positive at every r with a non-empty left window.
  double c1 = 0.0;
  double c3 = 0.0;
  double c2 = 0.0;
  std::vector<double> c2_of_r;
  bool degenerate = true;

  double median_c2() const;
  /// max c2(r) <= factor * median c2(r).
  bool bounded(double factor = 10.0) const;
};

/// left: |grad^n u(t)|_{q2}; right: |u(t)|_{q1}. Needs 3 < q1 <= q2 <= inf.
LevelSetReport fgt_ratio_report(const DiagnosticSeries& left, const DiagnosticSeries& right,
                                int order, double q1, double q2, const std::vector<double>& r_grid,
                                const std::vector<double>& c_grid);
LevelSetReport fgt_ratio_report(const VelocityHistory& history, int order, double q1, double q2,
                                const std::vector<double>& r_grid,
                                const std::vector<double>& c_grid);

}  // namespace nsreg
