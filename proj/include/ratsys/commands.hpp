#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace ratsys::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kVerificationFailure = 2, kIoError = 3 };

struct CommandOptions {
  std::string config;
  std::string out;
  std::optional<int> trials;
  std::optional<long> horizon;
  std::optional<std::uint64_t> seed;
};

/// Writes the trajectory CSV to opts.out. A diverged run still writes the
/// partial CSV and exits with kVerificationFailure.
int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err);
/// Key-value classification report on `out`.
int cmd_classify(const CommandOptions& opts, std::ostream& out, std::ostream& err);
/// Pass/fail table; kOk iff every prediction holds.
int cmd_verify(const CommandOptions& opts, std::ostream& out, std::ostream& err);
/// Phase table <opts.out>/phase_table.csv, one row per grid cell.
int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace ratsys::cli
