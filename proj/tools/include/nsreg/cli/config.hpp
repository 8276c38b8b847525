#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsreg/solver/navier_stokes.hpp"
#include "nsreg/stochastic/flow.hpp"

namespace nsreg::cli {

/// Configuration problem; the message carries "line N: " when a position is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One entry of the diagnostics list. Kinds and their parameters:
///   prodi_serrin_log p q | theta theta p q | bkm | orlicz q | riccati p q
///   velocity_lq q | derivative_lq order q | fgt_integral order
struct DiagnosticRequest {
  std::string kind;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<int> order;
  std::optional<std::string> theta;

  bool operator==(const DiagnosticRequest&) const = default;
};

struct FkConfig {
  std::vector<std::string> checks;
  double T0 = 0.0;
  /// Negative means the end of the history.
  double t = -1.0;
  std::vector<Vec3> probes{{1.0, 2.0, 3.0}};
  double q = 2.0;
  int quadrature = 4;
  int halvings = 3;

  bool operator==(const FkConfig&) const = default;
};

struct FgtConfig {
  int order = 0;
  double q1 = 4.0;
  double q2 = 4.0;
  std::vector<double> r{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> c{0.25, 0.5, 1.0, 2.0, 4.0};
  std::string theta = "log";
  /// Start of the integration window for the corollary integrals; must be positive.
  double T0 = 0.1;

  bool operator==(const FgtConfig&) const = default;
};

struct RunConfig {
  std::string scenario = "taylor-green";
  std::uint64_t seed = 1;
  std::string output = "run";
  SolverConfig solver;
  SDEConfig sde;
  std::vector<DiagnosticRequest> diagnostics;
  FkConfig fk;
  FgtConfig fgt;

  bool operator==(const RunConfig& o) const;
};

/// Parses and validates YAML text. Unknown keys are errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
/// Canonical YAML; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

const std::vector<std::string>& known_checks();

}  // namespace nsreg::cli
