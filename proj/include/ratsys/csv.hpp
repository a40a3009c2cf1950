#pragma once

// Trajectory CSV: header "n,v1,...,vm", one row per n = 1-k..last, values with
// 17 significant digits so that re-reading reproduces every double exactly.
// Lines starting with '#' are comments; a diverged run ends with
// "# diverged at n=<step>".

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ratsys/model.hpp"
#include "ratsys/simulator.hpp"

namespace ratsys {

std::string format_double(double x);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::optional<Diverged> diverged = std::nullopt);

struct CsvTrajectory {
  int m = 0;
  long first_n = 0;
  std::vector<long> n;
  std::vector<double> values;  // row-major, m per row
  std::optional<long> diverged_at;
};

/// Throws Error(kConfig) on malformed input.
CsvTrajectory read_trajectory_csv(std::istream& in);

}  // namespace ratsys
