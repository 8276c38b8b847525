#include "nsreg/solver/navier_stokes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nsreg/fields/spectral.hpp"
#include "spectral_state.hpp"

namespace nsreg {

namespace detail {

long whole_steps(double span, double dt, const char* what) {
  if (!(dt > 0.0)) throw std::invalid_argument(std::string(what) + ": step must be positive");
  if (span < 0.0) throw std::invalid_argument(std::string(what) + ": negative interval");
  const double ratio = span / dt;
  const long k = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(k)) > 1e-6) {
    throw std::invalid_argument(std::string(what) + ": interval " + std::to_string(span) +
                                " is not a whole number of steps " + std::to_string(dt));
  }
  return k;
}

namespace {

// -L div(u (x) u) for a spectral velocity state.
SpectralState convective_rhs(const SpectralState& uh, bool dealias_output) {
  const PeriodicGrid& g = uh[0].grid();
  const VectorField u = to_vector(uh);
  static constexpr int kPairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  std::vector<SpectralField> prod;
  prod.reserve(6);
  ScalarField p(g);
  for (const auto& ab : kPairs) {
    for (std::size_t q = 0; q < g.size(); ++q) p[q] = u[ab[0]][q] * u[ab[1]][q];
    prod.push_back(forward(p));
  }
  auto P = [&](int i, int j) -> const SpectralField& {
    if (i > j) std::swap(i, j);
    for (int e = 0; e < 6; ++e) {
      if (kPairs[e][0] == i && kPairs[e][1] == j) return prod[e];
    }
    return prod[0];
  };
  SpectralState out(3, SpectralField(g));
  const Complex I{0.0, 1.0};
  for (int i = 0; i < 3; ++i) {
    const SpectralField& a = P(i, 0);
    const SpectralField& b = P(i, 1);
    const SpectralField& c = P(i, 2);
    for_each_derivative_mode(g, [&](std::size_t m, double k1, double k2, double k3) {
      out[i][m] = -I * (k1 * a[m] + k2 * b[m] + k3 * c[m]);
    });
  }
  std::array<SpectralField, 3> arr{std::move(out[0]), std::move(out[1]), std::move(out[2])};
  leray_project(arr);
  SpectralState res{std::move(arr[0]), std::move(arr[1]), std::move(arr[2])};
  if (dealias_output) detail::dealias(res);
  return res;
}

}  // namespace
}  // namespace detail

void SolverConfig::validate() const {
  const PeriodicGrid grid(n);  // throws on a bad size
  if (!(dt > 0.0)) throw std::invalid_argument("solver dt must be positive");
  if (!(viscosity > 0.0)) throw std::invalid_argument("viscosity must be positive");
  const double guard = 0.25 * grid.spacing() * grid.spacing() / viscosity;
  if (dt > guard) {
    throw std::invalid_argument("solver dt " + std::to_string(dt) +
                                " exceeds the diffusive guard " + std::to_string(guard));
  }
  if (!(end_time > 0.0)) throw std::invalid_argument("end_time must be positive");
  if (!(snapshot_interval > 0.0)) throw std::invalid_argument("snapshot_interval must be positive");
  detail::whole_steps(snapshot_interval, dt, "snapshot_interval");
  detail::whole_steps(end_time, dt, "end_time");
}

long SolverConfig::steps_per_snapshot() const {
  return detail::whole_steps(snapshot_interval, dt, "snapshot_interval");
}

long SolverConfig::total_steps() const { return detail::whole_steps(end_time, dt, "end_time"); }

namespace {
void require_solenoidal(const VectorField& u, const char* what) {
  const double div = divergence(u).max_abs();
  if (div > 1e-8 * std::max(u.max_abs(), 1.0)) {
    throw std::invalid_argument(std::string(what) + ": velocity is not divergence free (|div|=" +
                                std::to_string(div) + ")");
  }
}
}  // namespace

VectorField nonlinear_term(const VectorField& u, bool dealias) {
  require_finite(u, "nonlinear_term");
  require_solenoidal(u, "nonlinear_term");
  detail::SpectralState uh = detail::to_state(u);
  detail::SpectralState n = detail::convective_rhs(uh, dealias);
  for (auto& f : n) f *= -1.0;
  VectorField out = detail::to_vector(n);
  out.mark_solenoidal();
  return out;
}

VectorField step(const VectorField& u, double dt, double viscosity, bool dealias) {
  require_finite(u, "step");
  require_solenoidal(u, "step");
  detail::SpectralState uh = detail::to_state(u);
  auto rhs = [&](double, const detail::SpectralState& s) {
    return detail::convective_rhs(s, dealias);
  };
  uh = detail::if_rk2_step(uh, 0.0, dt, viscosity, rhs);
  VectorField out = detail::to_vector(uh);
  out.mark_solenoidal();
  return out;
}

SolveResult run(const SolverConfig& config, const VectorField& u0) {
  config.validate();
  if (u0.grid().n() != config.n) throw std::invalid_argument("initial data grid differs from config");
  require_finite(u0, "run");
  require_solenoidal(u0, "run");

  detail::SpectralState uh = detail::to_state(u0);
  if (config.dealias) detail::dealias(uh);

  SolveResult result{VelocityHistory(config.viscosity), std::nullopt, 0.0};
  auto record = [&](double t) {
    VectorField u = detail::to_vector(uh);
    u.mark_solenoidal();
    result.history.append(t, std::move(u), detail::spectral_grad(uh));
  };
  record(0.0);

  auto rhs = [&](double, const detail::SpectralState& s) {
    return detail::convective_rhs(s, config.dealias);
  };
  const long total = config.total_steps();
  const long every = config.steps_per_snapshot();
  for (long k = 1; k <= total; ++k) {
    detail::SpectralState next = detail::if_rk2_step(uh, (k - 1) * config.dt, config.dt,
                                                      config.viscosity, rhs);
    if (!detail::finite(next)) {
      result.blowup_time = k * config.dt;
      return result;
    }
    uh = std::move(next);
    result.last_valid_time = k * config.dt;
    if (k % every == 0 || k == total) record(k * config.dt);
  }
  return result;
}

}  // namespace nsreg
