#pragma once

// Helpers shared by the velocity and passive solvers; not installed.

#include <cmath>
#include <vector>

#include "nsreg/fields/spectral.hpp"

namespace nsreg::detail {

using SpectralState = std::vector<SpectralField>;

inline SpectralState to_state(const VectorField& v) {
  return {forward(v[0]), forward(v[1]), forward(v[2])};
}

inline VectorField to_vector(const SpectralState& s) {
  return VectorField(inverse(s[0]), inverse(s[1]), inverse(s[2]));
}

inline void scale_heat(SpectralState& s, double t) {
  for (auto& f : s) heat_semigroup(f, t);
}

inline void dealias(SpectralState& s) {
  for (auto& f : s) nsreg::dealias(f);
}

inline bool finite(const SpectralState& s) {
  for (const auto& f : s) {
    for (const Complex& c : f.coeffs()) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
  }
  return true;
}

/// grad of each component: entry (i, j) = d(s_i)/d(x_j).
inline TensorField spectral_grad(const SpectralState& s) {
  const PeriodicGrid& g = s[0].grid();
  TensorField out(g);
  SpectralField d(g);
  const Complex I{0.0, 1.0};
  for (int i = 0; i < static_cast<int>(s.size()); ++i) {
    for (int j = 0; j < 3; ++j) {
      for_each_derivative_mode(g, [&](std::size_t m, double k1, double k2, double k3) {
        const double kj = j == 0 ? k1 : (j == 1 ? k2 : k3);
        d[m] = I * kj * s[i][m];
      });
      out(i, j) = inverse(d);
    }
  }
  return out;
}

/// Heun's method on the integrating-factor form of ds/dt = nu Lap s + N(t, s):
///   a   = E (s + dt N(t, s))
///   s'  = E (s + dt/2 N(t, s)) + dt/2 N(t + dt, a),   E = exp(nu dt Lap)
template <class Rhs>
SpectralState if_rk2_step(const SpectralState& s, double t, double dt, double nu, Rhs&& rhs) {
  const SpectralState n0 = rhs(t, s);
  SpectralState a = s;
  for (std::size_t c = 0; c < s.size(); ++c) a[c].axpy(dt, n0[c]);
  scale_heat(a, nu * dt);
  const SpectralState n1 = rhs(t + dt, a);
  SpectralState out = s;
  for (std::size_t c = 0; c < s.size(); ++c) out[c].axpy(0.5 * dt, n0[c]);
  scale_heat(out, nu * dt);
  for (std::size_t c = 0; c < s.size(); ++c) out[c].axpy(0.5 * dt, n1[c]);
  return out;
}

/// Number of steps of size dt covering `span`; throws if not a whole number.
long whole_steps(double span, double dt, const char* what);

}  // namespace nsreg::detail
