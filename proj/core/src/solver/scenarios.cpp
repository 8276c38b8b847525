#include "nsreg/solver/scenarios.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nsreg/fields/random_fields.hpp"

namespace nsreg {

const char* to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::kShear: return "shear";
    case Scenario::kTaylorGreen: return "taylor-green";
    case Scenario::kRandomSolenoidal: return "random-solenoidal";
    case Scenario::kZero: return "zero";
  }
  return "?";
}

Scenario scenario_from_string(std::string_view name) {
  if (name == "shear") return Scenario::kShear;
  if (name == "taylor-green") return Scenario::kTaylorGreen;
  if (name == "random-solenoidal") return Scenario::kRandomSolenoidal;
  if (name == "zero") return Scenario::kZero;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

VectorField shear_flow(PeriodicGrid grid, double amplitude) {
  VectorField u = VectorField::from_function(
      grid, [&](const Vec3& x) { return Vec3{amplitude * std::sin(x[1]), 0.0, 0.0}; });
  u.mark_solenoidal();
  return u;
}

VectorField taylor_green(PeriodicGrid grid, double amplitude) {
  VectorField u = VectorField::from_function(grid, [&](const Vec3& x) {
    return Vec3{amplitude * std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]),
                -amplitude * std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]), 0.0};
  });
  u.mark_solenoidal();
  return u;
}

VectorField initial_condition(Scenario s, PeriodicGrid grid, std::uint64_t seed) {
  switch (s) {
    case Scenario::kShear: return shear_flow(grid);
    case Scenario::kTaylorGreen: return taylor_green(grid);
    case Scenario::kRandomSolenoidal: return random_solenoidal(grid, seed);
    case Scenario::kZero: {
      VectorField z(grid);
      z.mark_solenoidal();
      return z;
    }
  }
  throw std::invalid_argument("unknown scenario");
}

}  // namespace nsreg
