#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nsreg/fields/field.hpp"

namespace nsreg {

struct VelocitySnapshot {
  double time;
  VectorField u;
  TensorField grad;
};

/// Time-ordered solenoidal velocity snapshots with their gradient tensors.
/// Between snapshots both u and grad u are linear in time. Immutable once
/// built; concurrent readers are safe.
class VelocityHistory {
 public:
  explicit VelocityHistory(double viscosity = 1.0) : viscosity_(viscosity) {}

  /// Computes grad u spectrally. Throws std::invalid_argument if time does not
  /// increase or the grid changes.
  void append(double time, VectorField u);
  void append(double time, VectorField u, TensorField grad);

  std::size_t size() const noexcept { return snaps_.size(); }
  bool empty() const noexcept { return snaps_.empty(); }
  const VelocitySnapshot& operator[](std::size_t i) const { return snaps_[i]; }
  auto begin() const noexcept { return snaps_.begin(); }
  auto end() const noexcept { return snaps_.end(); }

  double viscosity() const noexcept { return viscosity_; }
  const PeriodicGrid& grid() const;
  double start_time() const;
  double end_time() const;
  std::vector<double> times() const;
  bool covers(double t0, double t1) const noexcept;

  /// Snapshot indices bracketing t and the weight of the later one.
  struct Bracket {
    std::size_t lo;
    std::size_t hi;
    double weight;
  };
  /// Throws std::out_of_range if t lies outside the history.
  Bracket bracket(double t) const;

  VectorField velocity_at(double t) const;
  TensorField gradient_at(double t) const;

  /// True when every stored velocity value is exactly zero.
  bool is_zero() const noexcept { return all_zero_; }

  /// Two identical snapshots at t0 and t1 (a steady, "frozen" velocity).
  static VelocityHistory frozen(const VectorField& u, double t0, double t1, double viscosity = 1.0);

 private:
  double viscosity_;
  std::vector<VelocitySnapshot> snaps_;
  bool all_zero_ = true;
};

}  // namespace nsreg
