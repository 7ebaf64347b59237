#pragma once

#include "strmac/mac.hpp"
#include "strmac/simulation.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strmac {

class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& message, std::size_t line);
  /// 1-based line of the offending entry, 0 when not tied to a line.
  [[nodiscard]] std::size_t line() const { return m_line; }

private:
  std::size_t m_line;
};

/// A sweep: every combination of the axis lists, each run for every seed.
struct ExperimentConfig {
  std::string name = "custom";
  SimConfig base;
  std::vector<double> sinr_threshold_db{0.0};
  std::vector<double> fd_fraction{1.0};
  std::vector<double> rho{0.75};
  std::vector<double> cs_range_sta_m{40.0};
  std::vector<Mitigation> mitigation{Mitigation::None};
  std::vector<double> epsilon{1.0};
  std::vector<std::uint64_t> seeds;
  /// Also run a legacy arm without RTS/CTS and report its throughput.
  bool basic_access_baseline = false;

  ExperimentConfig();
  /// Throws ConfigError (line 0) naming the offending field.
  void validate() const;
  [[nodiscard]] std::size_t point_count() const;
};

/// `key = value` lines; `#` starts a comment; lists are comma separated;
/// seeds also accept ranges such as `1-20`. Missing keys keep their defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Every key with its resolved value, one `key = value` per line, in a
/// fixed order. Parsing the result yields the same configuration.
std::string resolved_config(const ExperimentConfig& config);

/// Known keys in echo order.
std::vector<std::string_view> config_keys();

}  // namespace strmac
