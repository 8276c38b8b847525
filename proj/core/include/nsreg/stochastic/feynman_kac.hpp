#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nsreg/stochastic/flow.hpp"

namespace nsreg {

/// Per-path check |M(t)| <= exp(int |grad u|_F ds) |M(T0)| (1 + 10 h).
struct GronwallCertificate {
  std::size_t paths = 0;
  std::size_t passed = 0;
  /// Largest |M(t)| / (exp(acc) |M(T0)|) over paths with M(T0) != 0.
  double max_ratio = 0.0;
  double slack = 1.0;

  double pass_rate() const noexcept {
    return paths == 0 ? 1.0 : static_cast<double>(passed) / static_cast<double>(paths);
  }
};

struct FKEstimate {
  std::vector<double> mean;
  /// Sample standard deviation over sqrt(N).
  std::vector<double> std_error;
  std::size_t particles = 0;
  Vec3 x{};
  double t0 = 0.0;
  double t1 = 0.0;
  double step = 0.0;
  std::uint64_t seed = 0;
  std::optional<GronwallCertificate> gronwall;
};

/// Mean and standard error of each column of a row-major N x dim sample table.
void sample_statistics(const std::vector<double>& samples, std::size_t dim,
                       std::vector<double>& mean, std::vector<double>& std_error);

/// E f(phi_{t0,t1}(x)).
FKEstimate feynman_kac_scalar(const VelocityHistory& history, const ScalarField& f, double t0,
                              double t1, const Vec3& x, const SDEConfig& config,
                              std::uint32_t stream = 0);

/// Path-wise magnetization transported from (T0, m0) to time t at x.
FKEstimate feynman_kac_magnetization(const VelocityHistory& history, const VectorField& m0,
                                     double T0, double t, const Vec3& x, const SDEConfig& config,
                                     std::uint32_t stream = 0);

/// Path-wise vorticity transported from (T0, w0) to time t at x.
FKEstimate feynman_kac_vorticity(const VelocityHistory& history, const VectorField& w0, double T0,
                                 double t, const Vec3& x, const SDEConfig& config,
                                 std::uint32_t stream = 0);

struct StretchingEstimates {
  FKEstimate magnetization;
  FKEstimate vorticity;
};

/// Both estimators on one set of paths.
StretchingEstimates feynman_kac_stretching(const VelocityHistory& history, const VectorField& m0,
                                           const VectorField& w0, double T0, double t,
                                           const Vec3& x, const SDEConfig& config,
                                           std::uint32_t stream = 0);

struct MeasurePreservationReport {
  double integral_f = 0.0;
  double integral_estimate = 0.0;
  double discrepancy = 0.0;
  double relative_discrepancy = 0.0;
  double pooled_std_error = 0.0;
  std::size_t quadrature_points = 0;
  std::size_t particles_per_point = 0;

  /// |discrepancy| <= k pooled SE, or exact agreement when the SE vanishes.
  bool within(double k = 3.0) const noexcept;
};

/// Grid quadrature (points_per_dim^3 nodes) of x -> E f(phi_{t0,t1}(x)) against int f.
MeasurePreservationReport measure_preservation_check(const VelocityHistory& history,
                                                     const ScalarField& f, double t0, double t1,
                                                     const SDEConfig& config, int points_per_dim,
                                                     std::uint32_t stream = 0);

struct CompositionReport {
  double t0 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double fine_step = 0.0;
  std::vector<double> steps;
  std::vector<double> max_discrepancy;
  std::vector<double> rms_discrepancy;
  /// rms_discrepancy[k] / rms_discrepancy[k + 1]. The per-path maximum is an
  /// extreme-value statistic and too noisy for an order estimate.
  std::vector<double> ratios;

  bool ratios_within(double lo, double hi) const noexcept;
};

/// phi_{t0,t1}(phi_{t1,t2}(x)) against phi_{t0,t2}(x) on one shared Brownian
/// path for each step size. Every step and both sub-interval lengths must be
/// whole multiples of fine_step.
CompositionReport composition_check(const VelocityHistory& history, const Vec3& x, double t0,
                                    double t1, double t2, const std::vector<double>& steps,
                                    double fine_step, const SDEConfig& config,
                                    std::uint32_t stream = 0);

}  // namespace nsreg
