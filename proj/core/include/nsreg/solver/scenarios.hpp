#pragma once

#include <cstdint>
#include <string_view>

#include "nsreg/fields/field.hpp"

namespace nsreg {

enum class Scenario { kShear, kTaylorGreen, kRandomSolenoidal, kZero };

const char* to_string(Scenario s) noexcept;
/// Accepts "shear", "taylor-green", "random-solenoidal", "zero".
Scenario scenario_from_string(std::string_view name);

/// amplitude * sin(x2) e1: an exact solution, u(t) = exp(-nu t) u0.
VectorField shear_flow(PeriodicGrid grid, double amplitude = 1.0);
/// (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0)
VectorField taylor_green(PeriodicGrid grid, double amplitude = 1.0);

VectorField initial_condition(Scenario s, PeriodicGrid grid, std::uint64_t seed = 0);

}  // namespace nsreg
