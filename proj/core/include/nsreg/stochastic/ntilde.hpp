#pragma once

#include <cstdint>

#include "nsreg/stochastic/flow.hpp"

namespace nsreg {

struct NtildeReport {
  double q = 2.0;
  double ntilde = 0.0;
  /// Estimate of Ntilde^q and its pooled standard error.
  double ntilde_q = 0.0;
  double std_error_q = 0.0;
  /// Relative standard error of Ntilde (delta method: relative SE of Ntilde^q over q).
  double relative_std_error = 0.0;
  /// int_{B cap [T0, t]} |grad u(s)|_{Phi_q} ds.
  double hypothesis_integral = 0.0;
  bool hypothesis_holds = false;
  /// Ntilde <= (e - 1)(1 + 5 relative SE); vacuous when the hypothesis fails.
  bool bound_holds = true;
  std::size_t quadrature_points = 0;
  std::size_t particles_per_point = 0;
};

/// Time integral of the Orlicz norm of |grad u|_F over window cap [T0, t],
/// with the norm linearly interpolated between snapshots.
double orlicz_gradient_integral(const VelocityHistory& history, const TimeSet& window, double T0,
                                double t, double q);

/// Monte Carlo and grid quadrature (points_per_dim^3 nodes) estimate of
/// Ntilde^q = int E (exp(q int_{B cap [T0,t]} |grad u(phi_{s,t}(x), s)| ds) - 1)^q dx.
NtildeReport ntilde_estimate(const VelocityHistory& history, const TimeSet& window, double T0,
                             double t, const SDEConfig& config, double q, int points_per_dim,
                             std::uint32_t stream = 0);

}  // namespace nsreg
