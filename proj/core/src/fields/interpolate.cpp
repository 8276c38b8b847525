#include "nsreg/fields/interpolate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nsreg {
namespace {

struct Stencil1D {
  int idx[4];
  double w[4];
};

inline int floor_index(double x, double inv_h, int n, double& frac) {
  const double s = x * inv_h;
  double f = std::floor(s);
  frac = s - f;
  // grid points must reproduce stored values exactly
  const double r = std::nearbyint(s);
  if (std::abs(s - r) <= 1e-12 * std::max(1.0, std::abs(s))) {
    f = r;
    frac = 0.0;
  }
  int i = static_cast<int>(f) % n;
  if (i < 0) i += n;
  return i;
}

inline Stencil1D linear_stencil(double x, double inv_h, int n) {
  double t;
  const int i0 = floor_index(x, inv_h, n, t);
  Stencil1D s{};
  s.idx[0] = i0;
  s.idx[1] = (i0 + 1) % n;
  s.w[0] = 1.0 - t;
  s.w[1] = t;
  return s;
}

inline Stencil1D cubic_stencil(double x, double inv_h, int n) {
  double t;
  const int i0 = floor_index(x, inv_h, n, t);
  Stencil1D s{};
  for (int a = 0; a < 4; ++a) s.idx[a] = (i0 - 1 + a + n) % n;
  // Lagrange basis on nodes -1, 0, 1, 2
  const double tm1 = t - 1.0, tm2 = t - 2.0, tp1 = t + 1.0;
  s.w[0] = -t * tm1 * tm2 / 6.0;
  s.w[1] = tp1 * tm1 * tm2 / 2.0;
  s.w[2] = -tp1 * t * tm2 / 2.0;
  s.w[3] = tp1 * t * tm1 / 6.0;
  return s;
}

template <int C>
void stencil_sum(const double* data, int n, const Stencil1D& sx, const Stencil1D& sy,
                 const Stencil1D& sz, int width, double* out) {
  double acc[C] = {};
  const std::size_t nn = static_cast<std::size_t>(n);
  for (int a = 0; a < width; ++a) {
    for (int b = 0; b < width; ++b) {
      const double wab = sx.w[a] * sy.w[b];
      const std::size_t row = (static_cast<std::size_t>(sx.idx[a]) * nn + sy.idx[b]) * nn;
      for (int c = 0; c < width; ++c) {
        const double w = wab * sz.w[c];
        const double* p = data + (row + sz.idx[c]) * C;
        for (int e = 0; e < C; ++e) acc[e] += w * p[e];
      }
    }
  }
  for (int e = 0; e < C; ++e) out[e] = acc[e];
}

void stencil_sum_dynamic(const double* data, int comps, int n, const Stencil1D& sx,
                         const Stencil1D& sy, const Stencil1D& sz, int width, double* out) {
  for (int e = 0; e < comps; ++e) out[e] = 0.0;
  const std::size_t nn = static_cast<std::size_t>(n);
  for (int a = 0; a < width; ++a) {
    for (int b = 0; b < width; ++b) {
      const double wab = sx.w[a] * sy.w[b];
      const std::size_t row = (static_cast<std::size_t>(sx.idx[a]) * nn + sy.idx[b]) * nn;
      for (int c = 0; c < width; ++c) {
        const double w = wab * sz.w[c];
        const double* p = data + (row + sz.idx[c]) * comps;
        for (int e = 0; e < comps; ++e) out[e] += w * p[e];
      }
    }
  }
}

void sample_local(const double* data, int comps, int n, const Vec3& x, Interpolation mode,
                  double* out) {
  const double inv_h = n / kTwoPi;
  int width;
  Stencil1D sx, sy, sz;
  if (mode == Interpolation::kTrilinear) {
    width = 2;
    sx = linear_stencil(x[0], inv_h, n);
    sy = linear_stencil(x[1], inv_h, n);
    sz = linear_stencil(x[2], inv_h, n);
  } else {
    width = 4;
    sx = cubic_stencil(x[0], inv_h, n);
    sy = cubic_stencil(x[1], inv_h, n);
    sz = cubic_stencil(x[2], inv_h, n);
  }
  switch (comps) {
    case 1: stencil_sum<1>(data, n, sx, sy, sz, width, out); break;
    case 3: stencil_sum<3>(data, n, sx, sy, sz, width, out); break;
    case 12: stencil_sum<12>(data, n, sx, sy, sz, width, out); break;
    default: stencil_sum_dynamic(data, comps, n, sx, sy, sz, width, out); break;
  }
}

}  // namespace

const char* to_string(Interpolation mode) noexcept {
  switch (mode) {
    case Interpolation::kTrilinear: return "trilinear";
    case Interpolation::kTricubic: return "tricubic";
    case Interpolation::kSpectral: return "spectral";
  }
  return "?";
}

Interpolation interpolation_from_string(std::string_view name) {
  if (name == "trilinear") return Interpolation::kTrilinear;
  if (name == "tricubic") return Interpolation::kTricubic;
  if (name == "spectral") return Interpolation::kSpectral;
  throw std::invalid_argument("unknown interpolation mode '" + std::string(name) + "'");
}

double evaluate_spectral(const SpectralField& f, const Vec3& x) {
  const PeriodicGrid& g = f.grid();
  const int n = g.n();
  const int nl = g.spectral_last();
  std::vector<Complex> e1(n), e2(n), e3(nl);
  for (int i = 0; i < n; ++i) {
    e1[i] = std::polar(1.0, wavenumber(i, n) * x[0]);
    e2[i] = std::polar(1.0, wavenumber(i, n) * x[1]);
  }
  for (int k = 0; k < nl; ++k) {
    const double weight = (k == 0 || k == n / 2) ? 1.0 : 2.0;
    e3[k] = weight * std::polar(1.0, k * x[2]);
  }
  double total = 0.0;
  std::size_t m = 0;
  for (int i = 0; i < n; ++i) {
    Complex si = 0.0;
    for (int j = 0; j < n; ++j) {
      Complex sj = 0.0;
      for (int k = 0; k < nl; ++k, ++m) sj += f[m] * e3[k];
      si += e2[j] * sj;
    }
    total += (e1[i] * si).real();
  }
  return total / static_cast<double>(g.size());
}

double sample_at(const ScalarField& f, const Vec3& x, Interpolation mode) {
  const Vec3 xw = wrap(x);
  if (mode == Interpolation::kSpectral) return evaluate_spectral(forward(f), xw);
  double out;
  sample_local(f.values().data(), 1, f.grid().n(), xw, mode, &out);
  return out;
}

Vec3 sample_at(const VectorField& v, const Vec3& x, Interpolation mode) {
  return {sample_at(v[0], x, mode), sample_at(v[1], x, mode), sample_at(v[2], x, mode)};
}

Mat3 sample_at(const TensorField& t, const Vec3& x, Interpolation mode) {
  Mat3 out{};
  for (int e = 0; e < 9; ++e) out[e] = sample_at(t.flat(e), x, mode);
  return out;
}

PackedField::PackedField(PeriodicGrid grid, int components)
    : grid_(grid), comps_(components), data_(grid.size() * components, 0.0) {
  if (components < 1) throw std::invalid_argument("PackedField needs at least one component");
}

void PackedField::assign_blend(std::span<const ScalarField* const> a,
                               std::span<const ScalarField* const> b, double w) {
  if (static_cast<int>(a.size()) != comps_ || static_cast<int>(b.size()) != comps_) {
    throw std::invalid_argument("PackedField::assign_blend: component count mismatch");
  }
  const std::size_t np = grid_.size();
  const double wa = 1.0 - w;
  for (int c = 0; c < comps_; ++c) {
    const double* pa = a[c]->values().data();
    const double* pb = b[c]->values().data();
    double* dst = data_.data() + c;
    if (w == 0.0) {
      for (std::size_t p = 0; p < np; ++p) dst[p * comps_] = pa[p];
    } else {
      for (std::size_t p = 0; p < np; ++p) dst[p * comps_] = wa * pa[p] + w * pb[p];
    }
  }
  spectral_stale_ = true;
}

void PackedField::prepare(Interpolation mode) {
  if (mode != Interpolation::kSpectral || !spectral_stale_) return;
  spectral_.clear();
  ScalarField comp(grid_);
  for (int c = 0; c < comps_; ++c) {
    for (std::size_t p = 0; p < grid_.size(); ++p) comp[p] = data_[p * comps_ + c];
    spectral_.push_back(forward(comp));
  }
  spectral_stale_ = false;
}

void PackedField::sample(const Vec3& x, Interpolation mode, double* out) const {
  if (mode == Interpolation::kSpectral) {
    if (spectral_stale_) throw std::logic_error("PackedField: prepare(kSpectral) not called");
    for (int c = 0; c < comps_; ++c) out[c] = evaluate_spectral(spectral_[c], x);
    return;
  }
  sample_local(data_.data(), comps_, grid_.n(), x, mode, out);
}

}  // namespace nsreg
