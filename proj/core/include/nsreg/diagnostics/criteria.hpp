#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nsreg/diagnostics/series.hpp"

namespace nsreg {

using ThetaFunction = std::function<double(double)>;

/// Named increasing functions:
///   one, log (1 + log+ x), identity, square-over-log (x^2 / (1 + log+ x)), power:<a>.
ThetaFunction theta_from_string(std::string_view name);

/// Monotone table with linear interpolation and constant extension.
class ThetaTable {
 public:
  /// Throws unless x increases strictly and y does not decrease.
  ThetaTable(std::vector<double> x, std::vector<double> y);
  double operator()(double lambda) const noexcept;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Throws unless 2 < p, 3 < q (both finite) and |2/p + 3/q - 1| <= 1e-12.
void require_serrin_pair(double p, double q);

/// int |u|_q^p / (1 + log+ |u|_q) dt from a series of |u(t)|_q.
double prodi_serrin_log(const DiagnosticSeries& norm_q, double p, double q);

/// int |u|_q^p / Theta(|u|_q) dt. Theta must be positive and non-decreasing
/// on the sampled values; divergence of int 1/(x Theta(x)) is not checked.
double theta_criterion(const DiagnosticSeries& norm_q, const ThetaFunction& theta, double p,
                       double q);

/// int |w(t)|_inf dt.
double bkm_integral(const DiagnosticSeries& vorticity_sup);
/// int |grad u(t)|_{Phi_q} dt.
double orlicz_integral(const DiagnosticSeries& gradient_orlicz);

struct RiccatiFit {
  /// Smallest c with log(1 + log+ y(t)) - log(1 + log+ y(T0)) <= c int y^p / (1 + log+ y).
  double c = 0.0;
  bool infinite = false;
  /// max over intervals of the difference quotient of y over y^{p+1} at the midpoint.
  double finite_difference_c = 0.0;
};

/// Throws unless every value is positive.
RiccatiFit riccati_envelope(const DiagnosticSeries& norm_q, double p);

}  // namespace nsreg
