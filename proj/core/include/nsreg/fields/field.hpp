#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "nsreg/fields/grid.hpp"

namespace nsreg {

/// Real scalar values on a PeriodicGrid, physical space.
class ScalarField {
 public:
  explicit ScalarField(PeriodicGrid grid, double fill = 0.0);
  ScalarField(PeriodicGrid grid, std::vector<double> values);

  template <class F>
  static ScalarField from_function(PeriodicGrid grid, F&& f) {
    ScalarField out(grid);
    for (std::size_t p = 0; p < grid.size(); ++p) out.values_[p] = f(grid.point(p));
    return out;
  }

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t p) const noexcept { return values_[p]; }
  double& operator[](std::size_t p) noexcept { return values_[p]; }
  double at(int i, int j, int k) const noexcept { return values_[grid_.index(i, j, k)]; }

  bool all_finite() const noexcept;
  double max_abs() const noexcept;
  /// Grid quadrature of the field over the torus.
  double integral() const noexcept;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s) noexcept;
  /// this += s * o
  ScalarField& axpy(double s, const ScalarField& o);

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Three scalar components. `solenoidal()` records that the field came out of
/// a Leray projection (or an operation preserving it).
class VectorField {
 public:
  explicit VectorField(PeriodicGrid grid);
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  template <class F>
  static VectorField from_function(PeriodicGrid grid, F&& f) {
    VectorField out(grid);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const Vec3 v = f(grid.point(p));
      for (int c = 0; c < 3; ++c) out.c_[c][p] = v[c];
    }
    return out;
  }

  const PeriodicGrid& grid() const noexcept { return c_[0].grid(); }
  const ScalarField& operator[](int c) const noexcept { return c_[c]; }
  ScalarField& operator[](int c) noexcept { return c_[c]; }

  bool solenoidal() const noexcept { return solenoidal_; }
  void mark_solenoidal(bool v = true) noexcept { solenoidal_ = v; }

  bool all_finite() const noexcept;
  /// Pointwise Euclidean magnitude.
  ScalarField magnitude() const;
  double max_abs() const noexcept;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s) noexcept;
  VectorField& axpy(double s, const VectorField& o);

 private:
  std::array<ScalarField, 3> c_;
  bool solenoidal_ = false;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Nine scalar components; (i, j) = d(v_i)/d(x_j).
class TensorField {
 public:
  explicit TensorField(PeriodicGrid grid);

  const PeriodicGrid& grid() const noexcept { return c_[0].grid(); }
  const ScalarField& operator()(int i, int j) const noexcept { return c_[3 * i + j]; }
  ScalarField& operator()(int i, int j) noexcept { return c_[3 * i + j]; }
  const ScalarField& flat(int e) const noexcept { return c_[e]; }
  ScalarField& flat(int e) noexcept { return c_[e]; }

  bool all_finite() const noexcept;
  /// Pointwise Frobenius norm.
  ScalarField frobenius() const;

  TensorField& operator+=(const TensorField& o);
  TensorField& operator*=(double s) noexcept;
  TensorField& axpy(double s, const TensorField& o);

 private:
  std::array<ScalarField, 9> c_;
};

/// Grid inner product sum(a . b) * cell_volume.
double inner_product(const VectorField& a, const VectorField& b);

void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b);

}  // namespace nsreg
