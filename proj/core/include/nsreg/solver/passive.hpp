#pragma once

#include <vector>

#include "nsreg/fields/field.hpp"
#include "nsreg/solver/history.hpp"

namespace nsreg {

/// Passive fields recorded at the start time, at every history snapshot time
/// inside the interval, and at the end time.
template <class Field>
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> fields;

  const Field& final() const { return fields.back(); }
  /// Field recorded at time t (within 1e-9); throws std::out_of_range otherwise.
  const Field& at(double t) const;
};

using VectorTrajectory = Trajectory<VectorField>;
using ScalarTrajectory = Trajectory<ScalarField>;

// Each solver advances with the same integrating-factor RK2 scheme as the
// velocity, with u and grad u taken from the history (linear in time). The
// interval [t0, t1] must lie inside the history and be a whole number of
// steps dt.

/// dw/dt = nu Lap w - u.grad w + (w.grad) u
VectorTrajectory solve_vorticity(const VelocityHistory& history, const VectorField& w0, double t0,
                                 double t1, double dt, bool dealias = true);

/// dm/dt = nu Lap m - u.grad m - (grad u)^T m
VectorTrajectory solve_magnetization(const VelocityHistory& history, const VectorField& m0,
                                     double t0, double t1, double dt, bool dealias = true);

/// da/dt = nu Lap a - u.grad a
ScalarTrajectory solve_transport(const VelocityHistory& history, const ScalarField& a0, double t0,
                                 double t1, double dt, bool dealias = true);

}  // namespace nsreg
