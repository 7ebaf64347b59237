// strsim: run STR MAC experiment sweeps and write CSV results.
#include "strmac/config.hpp"
#include "strmac/experiment.hpp"
#include "strmac/simulation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace {

class FileTrace final : public strmac::TraceSink {
public:
  explicit FileTrace(std::ostream& os) : m_os(os) {}
  void line(std::string_view text) override { m_os << text << '\n'; }

private:
  std::ostream& m_os;
};

int run(int argc, char** argv)
{
  CLI::App app{"STR MAC simulator: paired STR/legacy sweeps written as CSV"};
  std::string config_path;
  std::string preset;
  std::string out_path;
  std::string trace_path;
  std::string deployment_path;
  std::optional<std::uint64_t> seeds;
  std::optional<strmac::Micros> duration;
  unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  bool print_config = false;
  bool list_presets = false;
  bool quiet = false;

  auto* cfg_opt = app.add_option("--config", config_path, "Experiment config file (key = value)")->check(CLI::ExistingFile);
  app.add_option("--preset", preset, "Bundled experiment: fig4a, fig4b, fig4c, fig4d")->excludes(cfg_opt);
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  app.add_option("--seeds", seeds, "Use seeds 1..N instead of the configured list")->check(CLI::PositiveNumber);
  app.add_option("--duration-us", duration, "Override the simulated duration per run")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  app.add_option("--trace", trace_path, "Write the event trace of the first STR run to this file");
  app.add_option("--dump-deployment", deployment_path, "Write the first run's deployment as CSV");
  app.add_flag("--print-config", print_config, "Print the resolved configuration and exit");
  app.add_flag("--list-presets", list_presets, "List bundled presets and exit");
  app.add_flag("-q,--quiet", quiet, "No progress output");
  CLI11_PARSE(app, argc, argv);

  if (list_presets) {
    for (const auto name : strmac::preset_names()) {
      std::cout << name << '\n';
    }
    return 0;
  }

  strmac::ExperimentConfig config;
  if (!preset.empty()) {
    config = strmac::load_preset(preset);
  } else if (!config_path.empty()) {
    config = strmac::load_config(config_path);
  }
  if (seeds) {
    config.seeds.clear();
    for (std::uint64_t s = 1; s <= *seeds; ++s) {
      config.seeds.push_back(s);
    }
  }
  if (duration) {
    config.base.duration_us = *duration;
  }
  config.validate();

  if (print_config) {
    std::cout << strmac::resolved_config(config);
    return 0;
  }

  const auto points = strmac::sweep_points(config);
  const strmac::SimConfig first = strmac::point_config(config, points.front());
  const std::uint64_t first_seed = config.seeds.front();
  if (!deployment_path.empty()) {
    std::ofstream os(deployment_path);
    if (!os) {
      throw std::runtime_error("cannot write " + deployment_path);
    }
    strmac::write_deployment_csv(os, strmac::make_deployment(first, first_seed));
  }
  if (!trace_path.empty()) {
    std::ofstream os(trace_path);
    if (!os) {
      throw std::runtime_error("cannot write " + trace_path);
    }
    FileTrace sink(os);
    strmac::run_simulation(first, first_seed, nullptr, &sink);
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      throw std::runtime_error("cannot write " + out_path);
    }
  }
  std::ostream& csv = out_path.empty() ? std::cout : file;

  strmac::ExperimentOptions options;
  options.jobs = jobs;
  if (!quiet) {
    options.progress = [](std::size_t done, std::size_t total) {
      std::cerr << "\rruns " << done << '/' << total << std::flush;
      if (done == total) {
        std::cerr << '\n';
      }
    };
  }
  strmac::run_experiment(config, csv, options);
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  try {
    return run(argc, argv);
  } catch (const strmac::ConfigError& e) {
    std::cerr << "strsim: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "strsim: " << e.what() << '\n';
    return 1;
  }
}
