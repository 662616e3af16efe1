#pragma once

#include <string>
#include <utility>
#include <vector>

#include "popdyn/solver.hpp"
#include "popdyn/threshold.hpp"

namespace popdyn::io {

/// Shortest decimal rendering with 15 significant digits.
std::string format_double(double v);

/// Trajectory rows "T,N" under a header line.
std::string trajectory_csv(const std::vector<std::pair<double, double>>& traj);

/// Snapshot rows "X,rho" for a state on its grid.
std::string snapshot_csv(const StateVector& state, const Grid& grid);

/// Scan trace rows "value,fate".
std::string scan_trace_csv(
    const std::vector<std::pair<double, Fate>>& trace);

/// Sweep table with header
/// axis_value,estimate,bracket_lo,bracket_hi,evaluations,status.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Writes a file atomically-ish (truncate + write + flush). Throws
/// std::runtime_error on failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace popdyn::io
