#include "nsreg/solver/passive.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nsreg/fields/spectral.hpp"
#include "spectral_state.hpp"

namespace nsreg {

template <class Field>
const Field& Trajectory<Field>::at(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - t) <= 1e-9) return fields[i];
  }
  throw std::out_of_range("no passive field recorded at t = " + std::to_string(t));
}

template struct Trajectory<VectorField>;
template struct Trajectory<ScalarField>;

namespace {

using detail::SpectralState;

enum class Stretching { kNone, kVorticity, kMagnetization };

// Nonlinear right-hand side -u.grad s + stretching(s, grad u) for a passive
// state with 1 or 3 components.
SpectralState passive_rhs(const VelocityHistory& history, double t, const SpectralState& s,
                          Stretching kind, bool dealias) {
  const PeriodicGrid& g = s[0].grid();
  const VectorField u = history.velocity_at(t);
  const int nc = static_cast<int>(s.size());
  std::vector<ScalarField> phys;
  for (const auto& c : s) phys.push_back(inverse(c));
  const TensorField gs = detail::spectral_grad(s);  // rows beyond nc stay zero

  TensorField gu(g);
  if (kind != Stretching::kNone) gu = history.gradient_at(t);

  SpectralState out;
  ScalarField r(g);
  for (int i = 0; i < nc; ++i) {
    for (std::size_t p = 0; p < g.size(); ++p) {
      double v = -(u[0][p] * gs(i, 0)[p] + u[1][p] * gs(i, 1)[p] + u[2][p] * gs(i, 2)[p]);
      if (kind == Stretching::kVorticity) {
        // (w . grad) u: sum_j w_j d(u_i)/d(x_j)
        v += phys[0][p] * gu(i, 0)[p] + phys[1][p] * gu(i, 1)[p] + phys[2][p] * gu(i, 2)[p];
      } else if (kind == Stretching::kMagnetization) {
        // (grad u)^T m: sum_j m_j d(u_j)/d(x_i)
        v -= phys[0][p] * gu(0, i)[p] + phys[1][p] * gu(1, i)[p] + phys[2][p] * gu(2, i)[p];
      }
      r[p] = v;
    }
    out.push_back(forward(r));
  }
  if (dealias) detail::dealias(out);
  return out;
}

template <class Field>
Trajectory<Field> march(const VelocityHistory& history, SpectralState state, double t0, double t1,
                        double dt, Stretching kind, bool dealias,
                        Field (*to_field)(const SpectralState&)) {
  if (!history.covers(t0, t1)) {
    throw std::invalid_argument("passive solve interval [" + std::to_string(t0) + ", " +
                                std::to_string(t1) + "] lies outside the velocity history");
  }
  const long steps = detail::whole_steps(t1 - t0, dt, "passive solve");
  const std::vector<double> snap_times = history.times();
  auto is_snapshot_time = [&](double t) {
    for (double s : snap_times) {
      if (std::abs(s - t) <= 1e-9) return true;
    }
    return false;
  };

  Trajectory<Field> traj;
  traj.times.push_back(t0);
  traj.fields.push_back(to_field(state));
  auto rhs = [&](double t, const SpectralState& s) {
    return passive_rhs(history, std::min(t, t1), s, kind, dealias);
  };
  for (long k = 1; k <= steps; ++k) {
    const double t = t0 + (k - 1) * dt;
    state = detail::if_rk2_step(state, t, dt, history.viscosity(), rhs);
    const double tn = (k == steps) ? t1 : t0 + k * dt;
    if (k == steps || is_snapshot_time(tn)) {
      traj.times.push_back(tn);
      traj.fields.push_back(to_field(state));
    }
  }
  return traj;
}

VectorField vector_from_state(const SpectralState& s) { return detail::to_vector(s); }
ScalarField scalar_from_state(const SpectralState& s) { return inverse(s[0]); }

}  // namespace

VectorTrajectory solve_vorticity(const VelocityHistory& history, const VectorField& w0, double t0,
                                 double t1, double dt, bool dealias) {
  require_finite(w0, "solve_vorticity");
  return march<VectorField>(history, detail::to_state(w0), t0, t1, dt, Stretching::kVorticity,
                            dealias, &vector_from_state);
}

VectorTrajectory solve_magnetization(const VelocityHistory& history, const VectorField& m0,
                                     double t0, double t1, double dt, bool dealias) {
  require_finite(m0, "solve_magnetization");
  return march<VectorField>(history, detail::to_state(m0), t0, t1, dt,
                            Stretching::kMagnetization, dealias, &vector_from_state);
}

ScalarTrajectory solve_transport(const VelocityHistory& history, const ScalarField& a0, double t0,
                                 double t1, double dt, bool dealias) {
  require_finite(a0, "solve_transport");
  return march<ScalarField>(history, SpectralState{forward(a0)}, t0, t1, dt, Stretching::kNone,
                            dealias, &scalar_from_state);
}

}  // namespace nsreg
