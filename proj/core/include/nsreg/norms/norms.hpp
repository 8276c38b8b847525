#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nsreg/fields/field.hpp"

namespace nsreg {

/// L_p norm with grid (midpoint) quadrature; p = infinity gives max |f|.
/// Vector fields use the pointwise Euclidean magnitude, tensors the Frobenius
/// norm. Throws std::invalid_argument for p < 1.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& v, double p);
double lp_norm(const TensorField& t, double p);
double lp_norm(std::span<const double> magnitudes, double cell_volume, double p);

/// Phi_q(lambda) = ((e^lambda - 1) / (e - 1))^q.
double phi_q(double lambda, double q);
/// Closed-form inverse log(1 + (e - 1) y^{1/q}).
double phi_q_inv(double y, double q);

struct OrliczSpec {
  double q = 2.0;
  double rel_tol = 1e-10;
  double expansion = 2.0;

  /// Throws std::invalid_argument unless 1 < q < inf and the tolerances are sane.
  void validate() const;
};

/// Luxemburg norm inf{lambda > 0 : sum Phi_q(|f|/lambda) dV <= 1}, by
/// bisection. Returns the upper end of the final bracket, so the modular at
/// the returned value never exceeds 1. Zero fields return 0.
double orlicz_norm(std::span<const double> magnitudes, double cell_volume, const OrliczSpec& spec);
double orlicz_norm(const ScalarField& f, const OrliczSpec& spec);
double orlicz_norm(const VectorField& v, const OrliczSpec& spec);
double orlicz_norm(const TensorField& t, const OrliczSpec& spec);

/// sum Phi_q(|f|/lambda) dV.
double orlicz_modular(std::span<const double> magnitudes, double cell_volume, double lambda,
                      double q);

/// Explicit upper bound on the Orlicz norm from the rearrangement argument:
/// with a = |f|_q / |f|_inf, b = Phi_q^{-1}(a^{-q}), n = a + 1/(1+b), returns
/// 6 n |f|_inf. Throws std::invalid_argument on the zero field.
double lemma_upper_bound(std::span<const double> magnitudes, double cell_volume,
                         const OrliczSpec& spec);
double lemma_upper_bound(const ScalarField& f, const OrliczSpec& spec);
double lemma_upper_bound(const VectorField& v, const OrliczSpec& spec);

struct LemmaCheck {
  double orlicz = 0.0;
  double bound = 0.0;
  bool holds() const noexcept { return orlicz <= bound; }
};
LemmaCheck check_lemma_bound(const ScalarField& f, const OrliczSpec& spec);

/// Non-increasing rearrangement f* of |f| as a step function: value[i] on
/// [cumulative[i] - cell, cumulative[i]).
class RearrangementTable {
 public:
  RearrangementTable(std::vector<double> values_desc, double cell_volume);

  std::span<const double> values() const noexcept { return values_; }
  double cell_volume() const noexcept { return cell_; }
  double total_measure() const noexcept { return cell_ * static_cast<double>(values_.size()); }
  /// Cumulative measure after the i-th entry.
  double cumulative(std::size_t i) const noexcept { return cell_ * static_cast<double>(i + 1); }

  /// f*(t); zero beyond the total measure.
  double operator()(double t) const noexcept;
  /// integral_0^inf F(f*(t)) dt
  double integrate(const std::function<double(double)>& F) const;
  double lp_norm(double p) const;

 private:
  std::vector<double> values_;
  double cell_;
};

RearrangementTable rearrangement(const ScalarField& f);
RearrangementTable rearrangement(const VectorField& v);

}  // namespace nsreg
