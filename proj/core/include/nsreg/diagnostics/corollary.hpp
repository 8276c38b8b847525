#pragma once

#include <vector>

#include "nsreg/diagnostics/criteria.hpp"
#include "nsreg/diagnostics/series.hpp"

namespace nsreg {

/// kappa = int_0^inf min{(c lambda^-2 - T0)^+, T1} dTheta(lambda) as a
/// Riemann-Stieltjes sum: integrand at interval midpoints times
/// Theta(lambda_{k+1}) - Theta(lambda_k). The grid must increase and Theta must
/// not decrease on it.
double kappa(const ThetaFunction& theta, double c, double T0, double T1,
             const std::vector<double>& lambda_grid);

/// 0 followed by a geometric grid ending at sqrt(c / T0), where the integrand
/// vanishes. Needs T0 > 0.
std::vector<double> kappa_lambda_grid(double c, double T0, double T1, std::size_t points = 4000);

enum class CorollaryVariant { kLebesgue, kL2 };

struct CorollaryReport {
  CorollaryVariant variant = CorollaryVariant::kLebesgue;
  int order = 0;
  double q1 = 0.0;
  double q2 = 0.0;
  double T0 = 0.0;
  double T1 = 0.0;
  /// int_{T0}^{T1} Theta(|grad^n u|^{exponent}) ds.
  double lhs = 0.0;
  std::vector<double> c_grid;
  std::vector<double> kappa;
  /// c kappa(c) + c int_0^{T1} Theta(c g(s)) ds.
  std::vector<double> rhs;
  /// Smallest grid c with lhs <= rhs(c); +inf when none.
  double constant = 0.0;

  bool finite() const noexcept;
};

/// Lebesgue variant: left = |grad^n u|_{q2}, right = |u|_{q1}, exponents
/// 1/(1+n-3/q2) and 1/(1-3/q1). L2 variant: left = |grad^n u|_2, right =
/// |grad u|_2, exponents 1/(n-1/2) and 2 (q1, q2 ignored, n >= 1).
CorollaryReport corollary_check(const DiagnosticSeries& left, const DiagnosticSeries& right,
                                const ThetaFunction& theta, int order, double q1, double q2,
                                double T0, double T1, const std::vector<double>& c_grid,
                                CorollaryVariant variant);
CorollaryReport corollary_check(const VelocityHistory& history, const ThetaFunction& theta,
                                int order, double q1, double q2, double T0, double T1,
                                const std::vector<double>& c_grid, CorollaryVariant variant);

/// int |grad^n u(t)|_2^{1/(n-1/2)} dt, n >= 1.
double fgt_integral(const DiagnosticSeries& derivative_l2, int order);

}  // namespace nsreg
