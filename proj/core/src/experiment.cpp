#include "strmac/experiment.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <ctime>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

namespace strmac {

std::vector<SweepPoint> sweep_points(const ExperimentConfig& c)
{
  std::vector<SweepPoint> out;
  out.reserve(c.point_count());
  for (const double th : c.sinr_threshold_db) {
    for (const double fd : c.fd_fraction) {
      for (const double rho : c.rho) {
        for (const double cs : c.cs_range_sta_m) {
          for (const Mitigation m : c.mitigation) {
            for (const double eps : c.epsilon) {
              out.push_back(SweepPoint{th, fd, rho, cs, m, eps});
            }
          }
        }
      }
    }
  }
  return out;
}

SimConfig point_config(const ExperimentConfig& config, const SweepPoint& point)
{
  SimConfig s = config.base;
  s.channel.sinr_threshold_db = point.sinr_threshold_db;
  s.channel.rho = point.rho;
  s.channel.cs_range_sta_m = point.cs_range_sta_m;
  s.deployment.fd_fraction = point.fd_fraction;
  s.mac.mitigation = point.mitigation;
  return s;
}

namespace {

std::string num(double v)
{
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string timestamp()
{
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

enum class Arm { Str, Legacy, Basic };

using RunKey = std::tuple<Arm, double, double, double, double, int, std::uint64_t>;

RunKey key_of(Arm arm, const SweepPoint& p, std::uint64_t seed)
{
  if (arm == Arm::Str) {
    return {arm, p.sinr_threshold_db, p.fd_fraction, p.rho, p.cs_range_sta_m, static_cast<int>(p.mitigation), seed};
  }
  return {arm, p.sinr_threshold_db, 0.0, 0.0, p.cs_range_sta_m, 0, seed};
}

}  // namespace

std::string csv_header()
{
  return "point,seed,sinr_threshold_db,fd_fraction,rho,cs_range_sta_m,mitigation,epsilon,"
         "throughput_legacy_bps,throughput_str_bps,str_gain,goodput_str_bps,goodput_gain,throughput_basic_bps,"
         "cui,cui_all_waits,exchanges_hd,exchanges_bfd,exchanges_ufd,retransmissions,drops,fd_induced_eifs";
}

std::string csv_row(const ResultRow& r)
{
  const double legacy = r.legacy.throughput_bps();
  const double str = r.str.throughput_bps();
  const double goodput = r.str.goodput_bps(r.point.epsilon);
  const auto gain = str_gain(str, legacy);
  const auto goodput_gain = str_gain(goodput, legacy);
  std::string s;
  s += std::to_string(r.point_index) + ',' + std::to_string(r.seed) + ',';
  s += num(r.point.sinr_threshold_db) + ',' + num(r.point.fd_fraction) + ',' + num(r.point.rho) + ',';
  s += num(r.point.cs_range_sta_m) + ',' + to_string(r.point.mitigation) + ',' + num(r.point.epsilon) + ',';
  s += num(legacy) + ',' + num(str) + ',' + (gain ? num(*gain) : "") + ',';
  s += num(goodput) + ',' + (goodput_gain ? num(*goodput_gain) : "") + ',';
  s += (r.basic ? num(r.basic->throughput_bps()) : "") + ',';
  s += num(r.str.cui) + ',' + num(r.str.cui_all) + ',';
  s += std::to_string(r.str.exchanges_hd) + ',' + std::to_string(r.str.exchanges_bfd) + ',' +
       std::to_string(r.str.exchanges_ufd) + ',';
  s += std::to_string(r.str.retransmissions) + ',' + std::to_string(r.str.drops) + ',' +
       std::to_string(r.str.fd_induced_eifs);
  return s;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::ostream& csv,
                                      const ExperimentOptions& options)
{
  config.validate();
  const std::vector<SweepPoint> points = sweep_points(config);

  struct Task {
    Arm arm;
    SimConfig sim;
    std::uint64_t seed;
    RunResult result;
    bool done = false;
  };
  std::vector<Task> tasks;
  std::map<RunKey, std::size_t> index;
  struct RowRefs {
    std::size_t str;
    std::size_t legacy;
    std::optional<std::size_t> basic;
  };
  std::vector<ResultRow> rows;
  std::vector<RowRefs> refs;

  auto task_for = [&](Arm arm, const SweepPoint& p, std::uint64_t seed) {
    const RunKey key = key_of(arm, p, seed);
    if (const auto it = index.find(key); it != index.end()) {
      return it->second;
    }
    SimConfig sim = point_config(config, p);
    if (arm != Arm::Str) {
      sim = legacy_arm(sim);
      sim.mac.mitigation = Mitigation::None;
    }
    if (arm == Arm::Basic) {
      sim.mac.use_rts = false;
    }
    sim.validate();
    tasks.push_back(Task{arm, std::move(sim), seed, {}, false});
    index.emplace(key, tasks.size() - 1);
    return tasks.size() - 1;
  };

  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const std::uint64_t seed : config.seeds) {
      ResultRow row;
      row.point_index = i;
      row.point = points[i];
      row.seed = seed;
      RowRefs ref{task_for(Arm::Str, points[i], seed), task_for(Arm::Legacy, points[i], seed), std::nullopt};
      if (config.basic_access_baseline) {
        ref.basic = task_for(Arm::Basic, points[i], seed);
      }
      rows.push_back(std::move(row));
      refs.push_back(ref);
    }
  }

  csv << "# strmac " << config.name << " generated " << timestamp() << '\n';
  std::string echo = resolved_config(config);
  std::size_t pos = 0;
  while (pos < echo.size()) {
    const auto nl = echo.find('\n', pos);
    csv << "# " << echo.substr(pos, nl - pos) << '\n';
    pos = nl + 1;
  }
  csv << csv_header() << '\n';
  csv.flush();

  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::size_t finished = 0;
  std::size_t written = 0;

  auto row_ready = [&](std::size_t r) {
    return tasks[refs[r].str].done && tasks[refs[r].legacy].done && (!refs[r].basic || tasks[*refs[r].basic].done);
  };
  auto flush_rows = [&] {
    while (written < rows.size() && row_ready(written)) {
      ResultRow& row = rows[written];
      row.str = tasks[refs[written].str].result;
      row.legacy = tasks[refs[written].legacy].result;
      if (refs[written].basic) {
        row.basic = tasks[*refs[written].basic].result;
      }
      csv << csv_row(row) << '\n';
      ++written;
    }
    csv.flush();
  };

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) {
        return;
      }
      try {
        RunResult result = run_simulation(tasks[t].sim, tasks[t].seed);
        const std::lock_guard lock(mutex);
        tasks[t].result = std::move(result);
        tasks[t].done = true;
        ++finished;
        flush_rows();
        if (options.progress) {
          options.progress(finished, tasks.size());
        }
      } catch (...) {
        const std::lock_guard lock(mutex);
        if (!error) {
          error = std::current_exception();
        }
        failed.store(true);
      }
    }
  };

  const unsigned jobs = std::max(1U, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  csv << "# complete\n";
  csv.flush();
  return rows;
}

ExperimentConfig load_preset(std::string_view name)
{
  const auto text = preset_text(name);
  if (!text) {
    throw ConfigError("unknown preset '" + std::string(name) + "'", 0);
  }
  return parse_config(*text);
}

}  // namespace strmac
