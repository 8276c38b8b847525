#pragma once

#include <algorithm>
#include <cmath>

#include "nsreg/fields/field.hpp"

namespace nsreg::test {

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) m = std::max(m, std::abs(a[p] - b[p]));
  return m;
}

inline double max_diff(const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c) m = std::max(m, max_diff(a[c], b[c]));
  return m;
}

inline double max_diff(const TensorField& a, const TensorField& b) {
  double m = 0.0;
  for (int e = 0; e < 9; ++e) m = std::max(m, max_diff(a.flat(e), b.flat(e)));
  return m;
}

inline double max_abs(const VectorField& v) { return v.max_abs(); }

inline double rel_diff(const VectorField& a, const VectorField& b) {
  return max_diff(a, b) / std::max(b.max_abs(), 1e-300);
}

inline double rel_diff(const ScalarField& a, const ScalarField& b) {
  return max_diff(a, b) / std::max(b.max_abs(), 1e-300);
}

}  // namespace nsreg::test
