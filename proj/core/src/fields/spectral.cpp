#include "nsreg/fields/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace nsreg {
namespace {

class FftPlans {
 public:
  explicit FftPlans(int n) {
    const int dims[3] = {n, n, n};
    const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
    const std::size_t cplx_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    double* r = fftw_alloc_real(real_size);
    fftw_complex* c = fftw_alloc_complex(cplx_size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    r2c_ = fftw_plan_dft_r2c(3, dims, r, c, flags);
    c2r_ = fftw_plan_dft_c2r(3, dims, c, r, flags);
    fftw_free(r);
    fftw_free(c);
    if (r2c_ == nullptr || c2r_ == nullptr) throw std::runtime_error("FFTW planning failed");
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
  ~FftPlans() {
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
  }

  void r2c(const double* in, Complex* out) const {
    fftw_execute_dft_r2c(r2c_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  }
  // destroys `in`
  void c2r(Complex* in, double* out) const {
    fftw_execute_dft_c2r(c2r_, reinterpret_cast<fftw_complex*>(in), out);
  }

 private:
  fftw_plan r2c_;
  fftw_plan c2r_;
};

const FftPlans& plans_for(int n) {
  // FFTW's planner is not thread safe; execution with new-array calls is.
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<FftPlans>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlans>(n);
  return *slot;
}

constexpr Complex kI{0.0, 1.0};

}  // namespace

SpectralField::SpectralField(PeriodicGrid grid) : grid_(grid), c_(grid.spectral_size()) {}

SpectralField& SpectralField::operator*=(double s) noexcept {
  for (auto& c : c_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(Complex s, const SpectralField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += s * o.c_[m];
  return *this;
}

SpectralField forward(const ScalarField& f) {
  SpectralField out(f.grid());
  plans_for(f.grid().n()).r2c(f.values().data(), out.coeffs().data());
  return out;
}

ScalarField inverse(const SpectralField& f) {
  std::vector<Complex> scratch(f.coeffs().begin(), f.coeffs().end());
  ScalarField out(f.grid());
  plans_for(f.grid().n()).c2r(scratch.data(), out.values().data());
  out *= 1.0 / static_cast<double>(f.grid().size());
  return out;
}

bool dealias_keeps(int k1, int k2, int k3, int n) noexcept {
  // keep |k| < n/3 on every axis, i.e. 3|k| < n
  return 3 * std::abs(k1) < n && 3 * std::abs(k2) < n && 3 * std::abs(k3) < n;
}

void dealias(SpectralField& f) {
  const int n = f.grid().n();
  for_each_mode(f.grid(), [&](std::size_t m, int k1, int k2, int k3) {
    if (!dealias_keeps(k1, k2, k3, n)) f[m] = 0.0;
  });
}

void require_finite(const ScalarField& f, const char* what) {
  if (!f.all_finite()) throw std::invalid_argument(std::string(what) + ": non-finite input");
}

void require_finite(const VectorField& v, const char* what) {
  if (!v.all_finite()) throw std::invalid_argument(std::string(what) + ": non-finite input");
}

VectorField gradient(const ScalarField& f) {
  require_finite(f, "gradient");
  const SpectralField fh = forward(f);
  std::array<SpectralField, 3> d{SpectralField(f.grid()), SpectralField(f.grid()),
                                 SpectralField(f.grid())};
  for_each_derivative_mode(f.grid(), [&](std::size_t m, double k1, double k2, double k3) {
    d[0][m] = kI * k1 * fh[m];
    d[1][m] = kI * k2 * fh[m];
    d[2][m] = kI * k3 * fh[m];
  });
  return VectorField(inverse(d[0]), inverse(d[1]), inverse(d[2]));
}

ScalarField divergence(const VectorField& v) {
  require_finite(v, "divergence");
  const PeriodicGrid& g = v.grid();
  const SpectralField a = forward(v[0]);
  const SpectralField b = forward(v[1]);
  const SpectralField c = forward(v[2]);
  SpectralField out(g);
  for_each_derivative_mode(g, [&](std::size_t m, double k1, double k2, double k3) {
    out[m] = kI * (k1 * a[m] + k2 * b[m] + k3 * c[m]);
  });
  return inverse(out);
}

VectorField curl(const VectorField& v) {
  require_finite(v, "curl");
  const PeriodicGrid& g = v.grid();
  const SpectralField a = forward(v[0]);
  const SpectralField b = forward(v[1]);
  const SpectralField c = forward(v[2]);
  std::array<SpectralField, 3> w{SpectralField(g), SpectralField(g), SpectralField(g)};
  for_each_derivative_mode(g, [&](std::size_t m, double k1, double k2, double k3) {
    w[0][m] = kI * (k2 * c[m] - k3 * b[m]);
    w[1][m] = kI * (k3 * a[m] - k1 * c[m]);
    w[2][m] = kI * (k1 * b[m] - k2 * a[m]);
  });
  VectorField out(inverse(w[0]), inverse(w[1]), inverse(w[2]));
  out.mark_solenoidal();
  return out;
}

TensorField grad_tensor(const VectorField& v) {
  require_finite(v, "grad_tensor");
  const PeriodicGrid& g = v.grid();
  TensorField out(g);
  SpectralField d(g);
  for (int i = 0; i < 3; ++i) {
    const SpectralField vh = forward(v[i]);
    for (int j = 0; j < 3; ++j) {
      for_each_derivative_mode(g, [&](std::size_t m, double k1, double k2, double k3) {
        const double kj = j == 0 ? k1 : (j == 1 ? k2 : k3);
        d[m] = kI * kj * vh[m];
      });
      out(i, j) = inverse(d);
    }
  }
  return out;
}

ScalarField partial_derivative(const ScalarField& f, std::array<int, 3> orders) {
  require_finite(f, "partial_derivative");
  for (int o : orders) {
    if (o < 0) throw std::invalid_argument("partial_derivative: negative order");
  }
  SpectralField fh = forward(f);
  for_each_derivative_mode(f.grid(), [&](std::size_t m, double k1, double k2, double k3) {
    Complex factor = 1.0;
    for (int a = 0; a < orders[0]; ++a) factor *= kI * k1;
    for (int a = 0; a < orders[1]; ++a) factor *= kI * k2;
    for (int a = 0; a < orders[2]; ++a) factor *= kI * k3;
    fh[m] *= factor;
  });
  return inverse(fh);
}

void leray_project(std::array<SpectralField, 3>& v) {
  // Uses the derivative wavenumbers so that the spectral divergence of the
  // result vanishes identically, Nyquist planes included.
  for_each_derivative_mode(v[0].grid(), [&](std::size_t m, double k1, double k2, double k3) {
    const double kk = k1 * k1 + k2 * k2 + k3 * k3;
    if (kk == 0.0) return;
    const Complex kdotv = k1 * v[0][m] + k2 * v[1][m] + k3 * v[2][m];
    const Complex s = kdotv / kk;
    v[0][m] -= k1 * s;
    v[1][m] -= k2 * s;
    v[2][m] -= k3 * s;
  });
}

VectorField leray_project(const VectorField& v) {
  require_finite(v, "leray_project");
  std::array<SpectralField, 3> vh{forward(v[0]), forward(v[1]), forward(v[2])};
  leray_project(vh);
  VectorField out(inverse(vh[0]), inverse(vh[1]), inverse(vh[2]));
  out.mark_solenoidal();
  return out;
}

void heat_semigroup(SpectralField& f, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat_semigroup: negative time");
  for_each_mode(f.grid(), [&](std::size_t m, int k1, int k2, int k3) {
    const double kk = static_cast<double>(k1 * k1 + k2 * k2 + k3 * k3);
    f[m] *= std::exp(-kk * t);
  });
}

ScalarField heat_semigroup(const ScalarField& f, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat_semigroup: negative time");
  require_finite(f, "heat_semigroup");
  if (t == 0.0) return f;
  SpectralField fh = forward(f);
  heat_semigroup(fh, t);
  return inverse(fh);
}

VectorField heat_semigroup(const VectorField& v, double t) {
  VectorField out(heat_semigroup(v[0], t), heat_semigroup(v[1], t), heat_semigroup(v[2], t));
  out.mark_solenoidal(v.solenoidal());
  return out;
}

}  // namespace nsreg
