#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <optional>
#include <vector>

#include "nsreg/cli/config.hpp"
#include "nsreg/solver/history.hpp"

namespace nsreg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBlowup = 2;

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> manifest;
  std::optional<std::uint64_t> seed;
  bool force = false;
  /// norms subcommand
  std::filesystem::path snapshot;
  std::vector<double> q{2.0, 4.0, std::numeric_limits<double>::infinity()};
};

/// Missing or unreadable input file; the message names the file.
class MissingFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rebuilds a velocity history from a manifest written by `simulate`.
VelocityHistory load_history(const std::filesystem::path& manifest);

/// Writes snapshots/, manifest.json, energy.csv and config.yaml.
int cmd_simulate(const CommandOptions& opts, std::ostream& log, std::ostream& err);
/// Writes series.csv and summary.json.
int cmd_diagnose(const CommandOptions& opts, std::ostream& log, std::ostream& err);
/// Writes fk.jsonl and fk_summary.json.
int cmd_fk_verify(const CommandOptions& opts, std::ostream& log, std::ostream& err);
/// Prints a JSON object of norms of one snapshot file.
int cmd_norms(const CommandOptions& opts, std::ostream& log, std::ostream& err);
/// Writes fgt_report.json.
int cmd_fgt_report(const CommandOptions& opts, std::ostream& log, std::ostream& err);

}  // namespace nsreg::cli
