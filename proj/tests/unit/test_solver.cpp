#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "nsreg/fields/random_fields.hpp"
#include "nsreg/fields/spectral.hpp"
#include "nsreg/norms/norms.hpp"
#include "nsreg/solver/navier_stokes.hpp"
#include "nsreg/solver/passive.hpp"
#include "nsreg/solver/scenarios.hpp"
#include "support.hpp"

using namespace nsreg;
using nsreg::test::max_diff;
using nsreg::test::rel_diff;

namespace {

SolverConfig config(int n, double dt, double end, double every) {
  SolverConfig c;
  c.n = n;
  c.dt = dt;
  c.end_time = end;
  c.snapshot_interval = every;
  return c;
}

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.dt = 0.25 * std::pow(kTwoPi / c.n, 2) * 1.01;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SolverConfig{};
  c.snapshot_interval = 0.0105;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SolverConfig{};
  c.n = 24;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SolverConfig{};
  CHECK(c.steps_per_snapshot() == 10);
  CHECK(c.total_steps() == 1000);
}

TEST_CASE("scenario names") {
  CHECK(scenario_from_string("shear") == Scenario::kShear);
  CHECK(scenario_from_string("taylor-green") == Scenario::kTaylorGreen);
  CHECK(scenario_from_string("random-solenoidal") == Scenario::kRandomSolenoidal);
  CHECK(scenario_from_string("zero") == Scenario::kZero);
  CHECK_THROWS_AS(scenario_from_string("kolmogorov"), std::invalid_argument);
  const PeriodicGrid g(16);
  for (auto s : {Scenario::kShear, Scenario::kTaylorGreen, Scenario::kRandomSolenoidal}) {
    const VectorField u = initial_condition(s, g, 4);
    CHECK(u.solenoidal());
    CHECK(divergence(u).max_abs() <= 1e-10 * u.max_abs());
  }
}

TEST_CASE("nonlinear term") {
  const PeriodicGrid g(32);
  CHECK(nonlinear_term(shear_flow(g)).max_abs() < 1e-14);
  VectorField zero(g);
  zero.mark_solenoidal();
  CHECK(nonlinear_term(zero).max_abs() == 0.0);
  const VectorField tg = taylor_green(g);
  const VectorField nl = nonlinear_term(tg);
  CHECK(nl.max_abs() > 0.1);
  CHECK(divergence(nl).max_abs() <= 1e-10);
  const auto bad = VectorField::from_function(g, [](const Vec3& x) { return Vec3{std::sin(x[0]), 0.0, 0.0}; });
  CHECK_THROWS_AS(nonlinear_term(bad), std::invalid_argument);
}

TEST_CASE("shear flow decays exactly") {
  const auto res = run(config(32, 1e-3, 0.2, 0.05), shear_flow(PeriodicGrid(32)));
  REQUIRE(res.history.size() == 5);
  CHECK_FALSE(res.blowup_time.has_value());
  for (const auto& s : res.history) {
    VectorField e = shear_flow(PeriodicGrid(32));
    e *= std::exp(-s.time);
    CHECK(rel_diff(s.u, e) <= 1e-6);
  }
}

TEST_CASE("zero data stays zero") {
  const PeriodicGrid g(16);
  VectorField z(g);
  z.mark_solenoidal();
  const auto res = run(config(16, 1e-3, 0.05, 0.01), z);
  CHECK(res.history.is_zero());
  for (const auto& s : res.history) CHECK(s.u.max_abs() == 0.0);
}

TEST_CASE("Taylor-Green run keeps its invariants") {
  const auto res = run(config(16, 2e-3, 0.4, 0.02), taylor_green(PeriodicGrid(16)));
  const auto& h = res.history;
  REQUIRE(h.size() == 21);
  double prev = INFINITY;
  for (const auto& s : h) {
    const double e = lp_norm(s.u, 2.0);
    CHECK(e <= prev * (1 + 1e-10));
    prev = e;
    CHECK(divergence(s.u).max_abs() <= 1e-10 * s.u.max_abs());
    for (int c = 0; c < 3; ++c) CHECK(std::abs(forward(s.u[c])[0]) / 4096.0 <= 1e-14);
    CHECK(max_diff(s.grad, grad_tensor(s.u)) <= 1e-12);
  }
}

TEST_CASE("second order in time on Taylor-Green") {
  const PeriodicGrid g(16);
  const VectorField u0 = taylor_green(g, 2.0);
  const double T = 0.2;
  const auto ref = run(config(16, 1.25e-4, T, T), u0).history[1].u;
  std::vector<double> err;
  for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) err.push_back(max_diff(run(config(16, dt, T, T), u0).history[1].u, ref));
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double ratio = err[i] / err[i + 1];
    MESSAGE("dt halving ratio " << ratio);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}

TEST_CASE("Navier-Stokes scaling") {
  // U0(x) = 2 u0(2x) on a twice finer grid evolves as U(x, t) = 2 u(2x, 4t)
  const PeriodicGrid coarse(16);
  const PeriodicGrid fine(32);
  const VectorField u0 = random_solenoidal(coarse, 8, 4);
  VectorField U0(fine);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      for (int k = 0; k < 32; ++k)
        for (int c = 0; c < 3; ++c) U0[c][fine.index(i, j, k)] = 2.0 * u0[c].at(i % 16, j % 16, k % 16);
  U0.mark_solenoidal();
  const auto a = run(config(16, 4e-3, 0.2, 0.2), u0).history[1].u;
  const auto b = run(config(32, 1e-3, 0.05, 0.05), U0).history[1].u;
  double worst = 0.0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      for (int k = 0; k < 32; ++k)
        for (int c = 0; c < 3; ++c)
          worst = std::max(worst, std::abs(b[c][fine.index(i, j, k)] - 2.0 * a[c].at(i % 16, j % 16, k % 16)));
  CHECK(worst <= 1e-5 * b.max_abs());
}

TEST_CASE("blow-up is reported with the last valid time") {
  const PeriodicGrid g(16);
  VectorField u0 = random_solenoidal(g, 3, 5);
  u0 *= 1e6;
  const auto res = run(config(16, 1e-2, 1.0, 0.05), u0);
  REQUIRE(res.blowup_time.has_value());
  CHECK(res.last_valid_time < *res.blowup_time);
  for (const auto& s : res.history) CHECK(s.u.all_finite());
}

TEST_CASE("velocity history") {
  const PeriodicGrid g(8);
  const VectorField u = shear_flow(g);
  VelocityHistory h;
  h.append(0.0, u);
  VectorField half = u;
  half *= 0.5;
  h.append(0.1, half);
  CHECK_THROWS_AS(h.append(0.1, u), std::invalid_argument);
  CHECK_THROWS_AS(h.append(0.2, shear_flow(PeriodicGrid(16))), std::invalid_argument);
  CHECK(h.covers(0.0, 0.1));
  CHECK_FALSE(h.covers(0.0, 0.11));
  const auto br = h.bracket(0.025);
  CHECK(br.lo == 0);
  CHECK(br.hi == 1);
  CHECK(br.weight == doctest::Approx(0.25));
  VectorField e = u;
  e *= 0.875;
  CHECK(max_diff(h.velocity_at(0.025), e) < 1e-15);
  CHECK_THROWS_AS(h.bracket(0.2), std::out_of_range);
  CHECK_FALSE(h.is_zero());
  const auto f = VelocityHistory::frozen(u, 0.0, 1.0);
  CHECK(f.size() == 2);
  CHECK(max_diff(f.velocity_at(0.3), u) == 0.0);
}

TEST_CASE("passive vorticity of the shear flow") {
  const PeriodicGrid g(32);
  const auto res = run(config(32, 1e-3, 0.2, 0.02), shear_flow(g));
  const auto traj = solve_vorticity(res.history, curl(shear_flow(g)), 0.0, 0.2, 1e-3);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const auto e = VectorField::from_function(g, [t](const Vec3& x) { return Vec3{0.0, 0.0, -std::exp(-t) * std::cos(x[1])}; });
    CHECK(rel_diff(traj.fields[i], e) <= 1e-5);
  }
  CHECK_THROWS_AS(solve_vorticity(res.history, curl(shear_flow(g)), 0.0, 0.3, 1e-3), std::invalid_argument);
}

TEST_CASE("passive magnetization without flow is the heat semigroup") {
  const PeriodicGrid g(16);
  VectorField zero(g);
  zero.mark_solenoidal();
  const auto h = VelocityHistory::frozen(zero, 0.0, 0.1);
  const VectorField m0 = random_smooth_vector(g, 2);
  const auto traj = solve_magnetization(h, m0, 0.0, 0.1, 1e-3);
  CHECK(rel_diff(traj.final(), heat_semigroup(m0, 0.1)) <= 1e-12);
}

TEST_CASE("magnetization projects onto the velocity and vorticity is the curl") {
  const PeriodicGrid g(16);
  const auto res = run(config(16, 1e-3, 0.2, 0.01), taylor_green(g));
  const auto& h = res.history;
  const auto m = solve_magnetization(h, h[0].u, 0.0, 0.2, 1e-3);
  const auto w = solve_vorticity(h, curl(h[0].u), 0.0, 0.2, 1e-3);
  for (const auto& s : h) {
    CHECK(rel_diff(leray_project(m.at(s.time)), s.u) <= 1e-4);
    CHECK(rel_diff(w.at(s.time), curl(s.u)) <= 1e-4);
  }
}
