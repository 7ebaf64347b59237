#include "strmac/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <type_traits>

namespace strmac {

ConfigError::ConfigError(const std::string& message, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), m_line(line)
{
}

ExperimentConfig::ExperimentConfig()
{
  for (std::uint64_t s = 1; s <= 20; ++s) {
    seeds.push_back(s);
  }
}

std::size_t ExperimentConfig::point_count() const
{
  return sinr_threshold_db.size() * fd_fraction.size() * rho.size() * cs_range_sta_m.size() * mitigation.size() *
         epsilon.size();
}

void ExperimentConfig::validate() const
{
  auto non_empty = [](const auto& list, const char* key) {
    if (list.empty()) {
      throw ConfigError(std::string(key) + ": sweep list must not be empty", 0);
    }
  };
  non_empty(sinr_threshold_db, "sinr_threshold_db");
  non_empty(fd_fraction, "fd_fraction");
  non_empty(rho, "rho");
  non_empty(cs_range_sta_m, "cs_range_sta_m");
  non_empty(mitigation, "mitigation");
  non_empty(epsilon, "epsilon");
  non_empty(seeds, "seeds");
  for (const double f : fd_fraction) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw ConfigError("fd_fraction: values must lie in [0, 1]", 0);
    }
  }
  for (const double e : epsilon) {
    if (!(e >= 0.0 && e <= 1.0)) {
      throw ConfigError("epsilon: values must lie in [0, 1]", 0);
    }
  }
  for (const double r : rho) {
    if (!(r > 0.0 && r <= 1.0)) {
      throw ConfigError("rho: values must lie in (0, 1]", 0);
    }
  }
  for (const double c : cs_range_sta_m) {
    if (!(c > 0.0)) {
      throw ConfigError("cs_range_sta_m: values must be positive", 0);
    }
  }
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), 0);
  }
}

namespace {

std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) {
      break;
    }
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text, std::size_t line)
{
  T value{};
  const char* end = text.data() + text.size();
  std::from_chars_result r{};
  if constexpr (std::is_unsigned_v<T>) {
    if (!text.empty() && text.front() == '-') {
      throw ConfigError(std::string(key) + ": must not be negative, got '" + std::string(text) + "'", line);
    }
  }
  r = std::from_chars(text.data(), end, value);
  if (text.empty() || r.ec != std::errc{} || r.ptr != end) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'", line);
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text, std::size_t line)
{
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    return false;
  }
  throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(text) + "'", line);
}

std::string format(double v)
{
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <typename T>
std::string format(T v)
  requires std::is_integral_v<T>
{
  return std::to_string(v);
}

std::string format(bool v) { return v ? "true" : "false"; }

template <typename T>
std::string join(const std::vector<T>& list)
{
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    if constexpr (std::is_same_v<T, Mitigation>) {
      out += to_string(list[i]);
    } else {
      out += format(list[i]);
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_seeds(std::string_view key, std::string_view text, std::size_t line)
{
  std::vector<std::uint64_t> out;
  for (const std::string_view item : split_list(text)) {
    const auto dash = item.find('-', 1);
    if (dash == std::string_view::npos) {
      out.push_back(parse_number<std::uint64_t>(key, item, line));
      continue;
    }
    const auto lo = parse_number<std::uint64_t>(key, trim(item.substr(0, dash)), line);
    const auto hi = parse_number<std::uint64_t>(key, trim(item.substr(dash + 1)), line);
    if (hi < lo || hi - lo > 1'000'000) {
      throw ConfigError(std::string(key) + ": bad range '" + std::string(item) + "'", line);
    }
    for (std::uint64_t s = lo; s <= hi; ++s) {
      out.push_back(s);
    }
  }
  return out;
}

struct Field {
  std::string_view key;
  std::function<void(ExperimentConfig&, std::string_view, std::size_t)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T, typename Access>
Field scalar(std::string_view key, Access access)
{
  return Field{
      key,
      [key, access](ExperimentConfig& c, std::string_view v, std::size_t line) {
        if constexpr (std::is_same_v<T, bool>) {
          access(c) = parse_bool(key, v, line);
        } else {
          access(c) = parse_number<T>(key, v, line);
        }
      },
      [access](const ExperimentConfig& c) { return format(access(const_cast<ExperimentConfig&>(c))); },
  };
}

template <typename Access>
Field double_list(std::string_view key, Access access)
{
  return Field{
      key,
      [key, access](ExperimentConfig& c, std::string_view v, std::size_t line) {
        std::vector<double> list;
        for (const auto item : split_list(v)) {
          list.push_back(parse_number<double>(key, item, line));
        }
        access(c) = std::move(list);
      },
      [access](const ExperimentConfig& c) { return join(access(const_cast<ExperimentConfig&>(c))); },
  };
}

#define STRMAC_FIELD(T, key, expr) scalar<T>(key, [](ExperimentConfig& c) -> T& { return expr; })
#define STRMAC_LIST(key, expr) double_list(key, [](ExperimentConfig& c) -> std::vector<double>& { return expr; })

const std::vector<Field>& fields()
{
  static const std::vector<Field> table = {
      Field{"name", [](ExperimentConfig& c, std::string_view v, std::size_t) { c.name = std::string(v); },
            [](const ExperimentConfig& c) { return c.name; }},
      STRMAC_FIELD(Micros, "duration_us", c.base.duration_us),
      Field{"seeds",
            [](ExperimentConfig& c, std::string_view v, std::size_t line) { c.seeds = parse_seeds("seeds", v, line); },
            [](const ExperimentConfig& c) { return join(c.seeds); }},
      STRMAC_LIST("sinr_threshold_db", c.sinr_threshold_db),
      STRMAC_LIST("fd_fraction", c.fd_fraction),
      STRMAC_LIST("rho", c.rho),
      STRMAC_LIST("cs_range_sta_m", c.cs_range_sta_m),
      Field{"mitigation",
            [](ExperimentConfig& c, std::string_view v, std::size_t line) {
              std::vector<Mitigation> list;
              for (const auto item : split_list(v)) {
                const auto m = parse_mitigation(item);
                if (!m) {
                  throw ConfigError("mitigation: expected none, cts-fd-aware or fdti, got '" + std::string(item) + "'",
                                    line);
                }
                list.push_back(*m);
              }
              c.mitigation = std::move(list);
            },
            [](const ExperimentConfig& c) { return join(c.mitigation); }},
      STRMAC_LIST("epsilon", c.epsilon),
      STRMAC_FIELD(bool, "basic_access_baseline", c.basic_access_baseline),

      STRMAC_FIELD(bool, "str_enabled", c.base.mac.str_enabled),
      STRMAC_FIELD(bool, "use_rts", c.base.mac.use_rts),
      Field{"policy",
            [](ExperimentConfig& c, std::string_view v, std::size_t line) {
              const auto p = parse_policy(v);
              if (!p) {
                throw ConfigError(
                    "policy: expected prefer_bfd, prefer_ufd, alternate, bfd_only or ufd_only, got '" + std::string(v) +
                        "'",
                    line);
              }
              c.base.mac.policy = *p;
            },
            [](const ExperimentConfig& c) { return std::string(to_string(c.base.mac.policy)); }},
      STRMAC_FIELD(std::uint32_t, "probe_retries", c.base.mac.probe_retries),
      STRMAC_FIELD(Micros, "neighborhood_refresh_us", c.base.mac.neighborhood_refresh_us),

      STRMAC_FIELD(Micros, "sifs_us", c.base.timing.sifs_us),
      STRMAC_FIELD(Micros, "difs_us", c.base.timing.difs_us),
      STRMAC_FIELD(Micros, "slot_us", c.base.timing.slot_us),
      STRMAC_FIELD(std::uint64_t, "control_rate_bps", c.base.timing.control_rate_bps),
      STRMAC_FIELD(std::uint64_t, "data_rate_bps", c.base.timing.data_rate_bps),
      STRMAC_FIELD(std::uint32_t, "mac_header_bits", c.base.timing.mac_header_bits),
      STRMAC_FIELD(std::uint32_t, "phy_header_bits", c.base.timing.phy_header_bits),
      STRMAC_FIELD(std::uint32_t, "rts_bits", c.base.timing.rts_bits),
      STRMAC_FIELD(std::uint32_t, "cts_bits", c.base.timing.cts_bits),
      STRMAC_FIELD(std::uint32_t, "ack_bits", c.base.timing.ack_bits),
      STRMAC_FIELD(std::uint32_t, "payload_bits", c.base.timing.payload_bits),
      STRMAC_FIELD(std::uint32_t, "cw_min_slots", c.base.timing.cw_min_slots),
      STRMAC_FIELD(std::uint32_t, "cw_max_slots", c.base.timing.cw_max_slots),
      STRMAC_FIELD(std::uint32_t, "retry_limit", c.base.timing.retry_limit),
      Field{"mcs_rates_bps",
            [](ExperimentConfig& c, std::string_view v, std::size_t line) {
              std::vector<std::uint64_t> list;
              if (!v.empty()) {
                for (const auto item : split_list(v)) {
                  list.push_back(parse_number<std::uint64_t>("mcs_rates_bps", item, line));
                }
              }
              c.base.timing.mcs_rates_bps = std::move(list);
            },
            [](const ExperimentConfig& c) { return join(c.base.timing.mcs_rates_bps); }},
      STRMAC_FIELD(std::uint32_t, "fragment_step_bits", c.base.timing.fragment_step_bits),

      STRMAC_FIELD(double, "width_m", c.base.deployment.width_m),
      STRMAC_FIELD(double, "height_m", c.base.deployment.height_m),
      STRMAC_FIELD(double, "ap_density", c.base.deployment.ap_density),
      STRMAC_FIELD(double, "sta_density", c.base.deployment.sta_density),
      STRMAC_FIELD(bool, "ap_fd", c.base.deployment.ap_fd),

      STRMAC_FIELD(double, "tx_power_ap_dbm", c.base.channel.tx_power_ap_dbm),
      STRMAC_FIELD(double, "tx_power_sta_dbm", c.base.channel.tx_power_sta_dbm),
      STRMAC_FIELD(double, "path_loss_exponent", c.base.channel.path_loss_exponent),
      STRMAC_FIELD(double, "reference_loss_db", c.base.channel.reference_loss_db),
      STRMAC_FIELD(double, "noise_dbm", c.base.channel.noise_dbm),
      STRMAC_FIELD(bool, "rayleigh_fading", c.base.channel.rayleigh_fading),
      STRMAC_FIELD(double, "tx_range_ap_m", c.base.channel.tx_range_ap_m),
      STRMAC_FIELD(double, "tx_range_sta_m", c.base.channel.tx_range_sta_m),
      STRMAC_FIELD(double, "cs_range_ap_m", c.base.channel.cs_range_ap_m),
      STRMAC_FIELD(double, "rsi_delta_db", c.base.channel.rsi_delta_db),
      STRMAC_FIELD(double, "rsi_chi_db", c.base.channel.rsi_chi_db),
  };
  return table;
}

#undef STRMAC_FIELD
#undef STRMAC_LIST

}  // namespace

std::vector<std::string_view> config_keys()
{
  std::vector<std::string_view> keys;
  for (const Field& f : fields()) {
    keys.push_back(f.key);
  }
  return keys;
}

ExperimentConfig parse_config(std::string_view text)
{
  ExperimentConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", line_no);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Field* field = nullptr;
    for (const Field& f : fields()) {
      if (f.key == key) {
        field = &f;
        break;
      }
    }
    if (field == nullptr) {
      throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    }
    field->set(config, value, line_no);
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file " + path.string(), 0);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string resolved_config(const ExperimentConfig& config)
{
  std::string out;
  for (const Field& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(config);
    out += '\n';
  }
  return out;
}

}  // namespace strmac
