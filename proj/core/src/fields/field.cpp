#include "nsreg/fields/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsreg {

void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

ScalarField::ScalarField(PeriodicGrid grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("value count does not match grid size");
  }
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::integral() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * grid_.cell_volume();
}

ScalarField& ScalarField::operator+=(const ScalarField& o) { return axpy(1.0, o); }
ScalarField& ScalarField::operator-=(const ScalarField& o) { return axpy(-1.0, o); }

ScalarField& ScalarField::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::axpy(double s, const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t p = 0; p < values_.size(); ++p) values_[p] += s * o.values_[p];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

VectorField::VectorField(PeriodicGrid grid)
    : c_{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : c_{std::move(x), std::move(y), std::move(z)} {
  require_same_grid(c_[0].grid(), c_[1].grid());
  require_same_grid(c_[0].grid(), c_[2].grid());
}

bool VectorField::all_finite() const noexcept {
  return c_[0].all_finite() && c_[1].all_finite() && c_[2].all_finite();
}

ScalarField VectorField::magnitude() const {
  ScalarField out(grid());
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = std::sqrt(c_[0][p] * c_[0][p] + c_[1][p] * c_[1][p] + c_[2][p] * c_[2][p]);
  }
  return out;
}

double VectorField::max_abs() const noexcept {
  return std::max({c_[0].max_abs(), c_[1].max_abs(), c_[2].max_abs()});
}

VectorField& VectorField::operator+=(const VectorField& o) { return axpy(1.0, o); }
VectorField& VectorField::operator-=(const VectorField& o) { return axpy(-1.0, o); }

VectorField& VectorField::operator*=(double s) noexcept {
  for (auto& c : c_) c *= s;
  return *this;
}

VectorField& VectorField::axpy(double s, const VectorField& o) {
  for (int c = 0; c < 3; ++c) c_[c].axpy(s, o.c_[c]);
  solenoidal_ = solenoidal_ && o.solenoidal_;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

TensorField::TensorField(PeriodicGrid grid)
    : c_{ScalarField(grid), ScalarField(grid), ScalarField(grid),
         ScalarField(grid), ScalarField(grid), ScalarField(grid),
         ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

bool TensorField::all_finite() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](const ScalarField& f) { return f.all_finite(); });
}

ScalarField TensorField::frobenius() const {
  ScalarField out(grid());
  for (std::size_t p = 0; p < out.size(); ++p) {
    double s = 0.0;
    for (const auto& c : c_) s += c[p] * c[p];
    out[p] = std::sqrt(s);
  }
  return out;
}

TensorField& TensorField::operator+=(const TensorField& o) { return axpy(1.0, o); }

TensorField& TensorField::operator*=(double s) noexcept {
  for (auto& c : c_) c *= s;
  return *this;
}

TensorField& TensorField::axpy(double s, const TensorField& o) {
  for (int e = 0; e < 9; ++e) c_[e].axpy(s, o.c_[e]);
  return *this;
}

double inner_product(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid());
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t p = 0; p < a.grid().size(); ++p) s += a[c][p] * b[c][p];
  }
  return s * a.grid().cell_volume();
}

}  // namespace nsreg
