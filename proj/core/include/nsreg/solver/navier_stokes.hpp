#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "nsreg/fields/field.hpp"
#include "nsreg/solver/history.hpp"

namespace nsreg {

struct SolverConfig {
  int n = 32;
  double dt = 1e-3;
  double viscosity = 1.0;
  bool dealias = true;
  double snapshot_interval = 0.01;
  double end_time = 1.0;

  /// Throws std::invalid_argument on a bad grid, a non-positive step, a step
  /// above the diffusive guard 0.25 (2pi/n)^2 / nu, or intervals that are not
  /// whole multiples of dt.
  void validate() const;
  long steps_per_snapshot() const;
  long total_steps() const;
};

/// L div(u (x) u), dealiased with the two-thirds rule when requested.
/// Throws std::invalid_argument if u is not divergence free
/// (|div u|_inf > 1e-8 max(|u|_inf, 1)).
VectorField nonlinear_term(const VectorField& u, bool dealias = true);

/// One integrating-factor RK2 step of du/dt = nu Lap u - L div(u (x) u).
VectorField step(const VectorField& u, double dt, double viscosity = 1.0, bool dealias = true);

struct SolveResult {
  VelocityHistory history;
  /// Set when a non-finite state appeared; the history stops at the last
  /// finite snapshot and `last_valid_time` is the last finite step.
  std::optional<double> blowup_time;
  double last_valid_time = 0.0;
};

/// Integrates from u0 at t = 0 to config.end_time, recording snapshots (and
/// their gradient tensors) every snapshot_interval. u0 must be solenoidal.
SolveResult run(const SolverConfig& config, const VectorField& u0);

}  // namespace nsreg
