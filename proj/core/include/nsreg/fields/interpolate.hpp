#pragma once

#include <span>
#include <vector>

#include "nsreg/fields/field.hpp"
#include "nsreg/fields/spectral.hpp"

namespace nsreg {

/// Off-grid evaluation rule.
///  - kTrilinear: 8-point, second order.
///  - kTricubic: 64-point tensor Lagrange, fourth order.
///  - kSpectral: exact evaluation of the trigonometric interpolant (slow).
enum class Interpolation { kTrilinear, kTricubic, kSpectral };

const char* to_string(Interpolation mode) noexcept;
/// Throws std::invalid_argument for unknown names.
Interpolation interpolation_from_string(std::string_view name);

double sample_at(const ScalarField& f, const Vec3& x, Interpolation mode = Interpolation::kTrilinear);
Vec3 sample_at(const VectorField& v, const Vec3& x, Interpolation mode = Interpolation::kTrilinear);
Mat3 sample_at(const TensorField& t, const Vec3& x, Interpolation mode = Interpolation::kTrilinear);

/// Exact value of the trigonometric interpolant at x.
double evaluate_spectral(const SpectralField& f, const Vec3& x);

/// Several scalar fields stored interleaved (all components of a grid point
/// adjacent) so that one stencil walk samples every component.
class PackedField {
 public:
  PackedField(PeriodicGrid grid, int components);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  int components() const noexcept { return comps_; }

  /// this = (1 - w) * a + w * b componentwise; a and b must hold `components()`
  /// fields each. Pass w = 0 with a == b for a plain copy.
  void assign_blend(std::span<const ScalarField* const> a, std::span<const ScalarField* const> b,
                    double w);

  /// Must be called after assign_blend before sampling with kSpectral.
  void prepare(Interpolation mode);

  /// Writes `components()` values to out. x must already be wrapped.
  void sample(const Vec3& x, Interpolation mode, double* out) const;

 private:

  PeriodicGrid grid_;
  int comps_;
  std::vector<double> data_;
  std::vector<SpectralField> spectral_;
  bool spectral_stale_ = true;
};

}  // namespace nsreg
