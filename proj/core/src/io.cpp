#include "popdyn/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace popdyn::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string trajectory_csv(
    const std::vector<std::pair<double, double>>& traj) {
  std::string out = "T,N\n";
  for (const auto& [t, n] : traj) {
    out += format_double(t);
    out += ',';
    out += format_double(n);
    out += '\n';
  }
  return out;
}

std::string snapshot_csv(const StateVector& state, const Grid& grid) {
  std::string out = "X,rho\n";
  const double half = 0.5 * grid.length();
  for (int i = 0; i <= grid.m; ++i) {
    out += format_double(-half + i * grid.h);
    out += ',';
    out += format_double(state.rho[i]);
    out += '\n';
  }
  return out;
}

std::string scan_trace_csv(
    const std::vector<std::pair<double, Fate>>& trace) {
  std::string out = "value,fate\n";
  for (const auto& [v, f] : trace) {
    out += format_double(v);
    out += ',';
    out += fate_name(f);
    out += '\n';
  }
  return out;
}

namespace {

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "axis_value,estimate,bracket_lo,bracket_hi,evaluations,status\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.point);
    out += ',';
    if (row.estimate) {
      out += format_double(row.estimate->estimate);
      out += ',';
      out += format_double(row.estimate->lower);
      out += ',';
      out += format_double(row.estimate->upper);
      out += ',';
      out += std::to_string(row.estimate->evaluations);
    } else {
      out += ",,,0";
    }
    out += ',';
    out += sanitize(row.status);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace popdyn::io
