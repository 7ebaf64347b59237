#pragma once

#include "strmac/config.hpp"
#include "strmac/simulation.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace strmac {

struct SweepPoint {
  double sinr_threshold_db = 0.0;
  double fd_fraction = 0.0;
  double rho = 0.75;
  double cs_range_sta_m = 40.0;
  Mitigation mitigation = Mitigation::None;
  double epsilon = 1.0;
};

/// Cartesian product of the axes; epsilon varies fastest, threshold slowest.
std::vector<SweepPoint> sweep_points(const ExperimentConfig& config);

/// The base configuration with the point's axis values applied.
SimConfig point_config(const ExperimentConfig& config, const SweepPoint& point);

struct ResultRow {
  std::size_t point_index = 0;
  SweepPoint point;
  std::uint64_t seed = 0;
  RunResult str;
  RunResult legacy;
  std::optional<RunResult> basic;
};

struct ExperimentOptions {
  unsigned jobs = 1;
  /// Called after each finished run with (finished, total); may be empty.
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Column names, comma separated, no trailing newline.
std::string csv_header();
std::string csv_row(const ResultRow& row);

/// Runs every (point, seed) pair and streams the CSV: a timestamp line, the
/// resolved configuration as comments, the header, rows in point-major
/// order, then `# complete`. Identical runs are shared between points (the
/// epsilon axis never triggers a run, the legacy arm ignores FD axes).
/// Rethrows the first run failure after flushing the finished prefix.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::ostream& csv,
                                      const ExperimentOptions& options = {});

std::optional<std::string_view> preset_text(std::string_view name);
std::vector<std::string_view> preset_names();
/// Parses a bundled preset; throws ConfigError for an unknown name.
ExperimentConfig load_preset(std::string_view name);

}  // namespace strmac
