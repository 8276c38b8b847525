#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nsreg/fields/interpolate.hpp"
#include "nsreg/solver/history.hpp"
#include "nsreg/stochastic/brownian.hpp"

namespace nsreg {

struct SDEConfig {
  std::size_t particles = 10000;
  double step = 1e-3;
  std::uint64_t seed = 1;
  Interpolation interpolation = Interpolation::kTricubic;

  /// Throws std::invalid_argument on zero particles or a non-positive step.
  void validate() const;
  /// Also requires step <= the largest snapshot spacing of the history.
  void validate(const VelocityHistory& history) const;
};

/// Finite union of closed time intervals.
class TimeSet {
 public:
  TimeSet() = default;
  /// Overlapping or touching intervals are merged. Throws if some b < a.
  explicit TimeSet(std::vector<std::pair<double, double>> intervals);

  bool empty() const noexcept { return intervals_.empty(); }
  bool contains(double t) const noexcept;
  /// Length of the intersection with [a, b].
  double measure(double a, double b) const noexcept;
  const std::vector<std::pair<double, double>>& intervals() const noexcept { return intervals_; }

 private:
  std::vector<std::pair<double, double>> intervals_;
};

enum Track : unsigned {
  kTrackNone = 0,
  kTrackGradient = 1,
  kTrackMagnetization = 2,
  kTrackVorticity = 4,
};

/// Particles of the backward flow. Propagators map the transported vector at
/// the earliest time reached to its value at the start time:
/// M(start)_b = sum_a M(end)_a Q_ab.
struct ParticleEnsemble {
  std::vector<Vec3> position;
  /// Integral of |grad u|_F along each path (restricted to a window if given).
  std::vector<double> accumulated;
  /// Same integral over the whole march; feeds the Gronwall certificate.
  std::vector<double> accumulated_total;
  std::vector<Mat3> magnetization;
  std::vector<Mat3> vorticity;
  /// Global index of position[0] in the Brownian path.
  std::uint64_t first_particle = 0;
  unsigned track = kTrackNone;

  std::size_t size() const noexcept { return position.size(); }

  static ParticleEnsemble at_point(const Vec3& x, std::size_t count, unsigned track,
                                   std::uint64_t first_particle = 0);
};

struct MarchOptions {
  /// Time at which the Brownian fine index is zero.
  double anchor = 0.0;
  Interpolation interpolation = Interpolation::kTricubic;
  /// When set, `accumulated` only integrates over steps whose midpoint lies inside.
  const TimeSet* window = nullptr;
};

/// Euler-Maruyama for dX = -u dt + sqrt(2 nu) dW in reversed time, from time
/// `from` down to `to` with nominal step h (the last step may be shorter).
/// Every step boundary must sit on the fine grid of `path` anchored at
/// options.anchor. Drift uses u at the step's starting point; gradient
/// quantities use grad u at the step's end point and time, which is the left
/// endpoint in forward time.
void march(const VelocityHistory& history, ParticleEnsemble& ensemble, double from, double to,
           double h, const BrownianPath& path, const MarchOptions& options);

/// Samples of the backward flow from (x, t1) to time t0. The step is shrunk
/// to divide t1 - t0 evenly. Particle streams use Brownian stream `stream`.
ParticleEnsemble backward_flow(const VelocityHistory& history, const Vec3& x, double t1,
                               double t0, const SDEConfig& config,
                               unsigned track = kTrackGradient, std::uint32_t stream = 0);

/// Number of steps of size close to h covering [t0, t1].
std::size_t flow_steps(double t0, double t1, double h) noexcept;

}  // namespace nsreg
