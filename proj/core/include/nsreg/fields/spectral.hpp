#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "nsreg/fields/field.hpp"

namespace nsreg {

using Complex = std::complex<double>;

/// Half-complex Fourier coefficients of a real field (unnormalized forward
/// transform). Layout n x n x (n/2 + 1), last index fastest.
class SpectralField {
 public:
  explicit SpectralField(PeriodicGrid grid);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> coeffs() const noexcept { return c_; }
  std::span<Complex> coeffs() noexcept { return c_; }
  Complex operator[](std::size_t m) const noexcept { return c_[m]; }
  Complex& operator[](std::size_t m) noexcept { return c_[m]; }
  std::size_t index(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(i) * grid_.n() + j) * grid_.spectral_last() + k;
  }

  SpectralField& operator*=(double s) noexcept;
  SpectralField& axpy(Complex s, const SpectralField& o);

 private:
  PeriodicGrid grid_;
  std::vector<Complex> c_;
};

SpectralField forward(const ScalarField& f);
/// Inverse transform including the 1/n^3 normalization.
ScalarField inverse(const SpectralField& f);

/// Calls fn(m, k1, k2, k3) for every stored mode, where k are signed
/// wavenumbers (Nyquist reported as -n/2 on the full axes, +n/2 on the last).
template <class Fn>
void for_each_mode(const PeriodicGrid& g, Fn&& fn) {
  const int n = g.n();
  const int nl = g.spectral_last();
  std::size_t m = 0;
  for (int i = 0; i < n; ++i) {
    const int k1 = wavenumber(i, n);
    for (int j = 0; j < n; ++j) {
      const int k2 = wavenumber(j, n);
      for (int k = 0; k < nl; ++k, ++m) fn(m, k1, k2, k);
    }
  }
}

/// Same iteration but with derivative wavenumbers (zero on Nyquist indices).
template <class Fn>
void for_each_derivative_mode(const PeriodicGrid& g, Fn&& fn) {
  const int n = g.n();
  const int nl = g.spectral_last();
  std::size_t m = 0;
  for (int i = 0; i < n; ++i) {
    const double k1 = derivative_wavenumber(i, n);
    for (int j = 0; j < n; ++j) {
      const double k2 = derivative_wavenumber(j, n);
      for (int k = 0; k < nl; ++k, ++m) {
        const double k3 = (k == n / 2) ? 0.0 : static_cast<double>(k);
        fn(m, k1, k2, k3);
      }
    }
  }
}

/// Zero every mode outside the two-thirds box |k_i| < n/3.
void dealias(SpectralField& f);
bool dealias_keeps(int k1, int k2, int k3, int n) noexcept;

// Differential operators. All reject non-finite input with std::invalid_argument.

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);
TensorField grad_tensor(const VectorField& v);

/// d^{a+b+c} f / dx1^a dx2^b dx3^c.
ScalarField partial_derivative(const ScalarField& f, std::array<int, 3> orders);

/// v - grad(inverse laplacian(div v)); the k = 0 mode passes through.
VectorField leray_project(const VectorField& v);
void leray_project(std::array<SpectralField, 3>& v);

/// exp(t * Laplacian). Throws std::invalid_argument for t < 0.
ScalarField heat_semigroup(const ScalarField& f, double t);
VectorField heat_semigroup(const VectorField& v, double t);
void heat_semigroup(SpectralField& f, double t);

void require_finite(const ScalarField& f, const char* what);
void require_finite(const VectorField& v, const char* what);

}  // namespace nsreg
