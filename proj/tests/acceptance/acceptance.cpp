// Acceptance report: one PASS/FAIL line per criterion C1..C7.
#include "dcf_oracle.hpp"
#include "test_support.hpp"

#include "strmac/experiment.hpp"
#include "strmac/frames.hpp"
#include "strmac/rng.hpp"
#include "strmac/timing.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace strmac;
using namespace strmac::test;

namespace {

// Pinned tolerances.
constexpr double kC1Low = 1.7;
constexpr double kC1High = 2.05;
constexpr double kMonotoneSlack = 0.02;
constexpr int kAllowedInversions = 1;
constexpr double kC3Low = 1.6;
constexpr double kC3High = 2.05;
constexpr double kC4Low = 1.8;
constexpr double kC4High = 2.0;
constexpr double kAffineTolerance = 1e-9;
constexpr double kBasicShortfall = 0.05;
constexpr double kBasicShortfallTolerance = 0.03;
constexpr double kFdtiCuiFloor = 0.95;
constexpr std::uint64_t kInvariantEvents = 1'000'000;
constexpr Micros kD0 = 829;
constexpr Micros kD1 = 579;
constexpr Micros kEifs = 300;

struct Budget {
  std::uint64_t seeds;
  Micros duration_us;
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v, int digits = 3)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string budget_text(const Budget& b)
{
  return std::to_string(b.seeds) + " seeds x " + fmt(static_cast<double>(b.duration_us) / 1e6, 1) + " s";
}

void note(Outcome& o, bool ok, const std::string& text)
{
  o.pass = o.pass && ok;
  if (!o.detail.empty()) {
    o.detail += "; ";
  }
  o.detail += (ok ? "" : "[x] ") + text;
}

std::vector<ResultRow> sweep(std::string text, const Budget& b)
{
  text += "\nseeds = 1-" + std::to_string(b.seeds) + "\nduration_us = " + std::to_string(b.duration_us) + "\n";
  const ExperimentConfig config = parse_config(text);
  std::ostringstream sink;
  return run_experiment(config, sink);
}

struct PointMeans {
  SweepPoint point;
  double str = 0;
  double legacy = 0;
  double basic = 0;
  double goodput = 0;
  double cui = 0;
  std::size_t n = 0;

  [[nodiscard]] double gain() const { return legacy > 0 ? str / legacy : 0.0; }
  [[nodiscard]] double goodput_gain() const { return legacy > 0 ? goodput / legacy : 0.0; }
};

std::vector<PointMeans> seed_means(const std::vector<ResultRow>& rows)
{
  std::map<std::size_t, PointMeans> by_point;
  for (const ResultRow& r : rows) {
    PointMeans& m = by_point[r.point_index];
    m.point = r.point;
    m.str += r.str.throughput_bps();
    m.legacy += r.legacy.throughput_bps();
    m.goodput += r.str.goodput_bps(r.point.epsilon);
    m.basic += r.basic ? r.basic->throughput_bps() : 0.0;
    m.cui += r.str.cui;
    ++m.n;
  }
  std::vector<PointMeans> out;
  for (auto& [index, m] : by_point) {
    const auto n = static_cast<double>(m.n);
    m.str /= n;
    m.legacy /= n;
    m.goodput /= n;
    m.basic /= n;
    m.cui /= n;
    out.push_back(m);
  }
  return out;
}

/// Monotone in the given direction, allowing a bounded number of small inversions.
bool monotone(const std::vector<double>& v, bool increasing)
{
  int inversions = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double a = v[i];
    const double b = v[i + 1];
    if (increasing ? b < a : b > a) {
      ++inversions;
      if (std::abs(b - a) > kMonotoneSlack * std::abs(a)) {
        return false;
      }
    }
  }
  return inversions <= kAllowedInversions;
}

bool pointwise_leq(const std::vector<double>& low, const std::vector<double>& high)
{
  int exceptions = 0;
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (low[i] > high[i]) {
      ++exceptions;
      if (low[i] - high[i] > kMonotoneSlack * high[i]) {
        return false;
      }
    }
  }
  return exceptions <= kAllowedInversions;
}

std::string list(const std::vector<double>& v)
{
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i > 0 ? " " : "") + fmt(v[i]);
  }
  return s + "]";
}

Outcome c1(const Budget& b)
{
  const auto m = seed_means(sweep("policy = bfd_only\nfd_fraction = 1\nrho = 0.75\nsinr_threshold_db = 0", b));
  const double g = m.at(0).gain();
  Outcome o;
  note(o, g >= kC1Low && g <= kC1High,
       "BFD gain " + fmt(g) + " in [" + fmt(kC1Low, 2) + ", " + fmt(kC1High, 2) + "]");
  return o;
}

Outcome c2(const Budget& b)
{
  const auto thr = seed_means(
      sweep("policy = bfd_only\nfd_fraction = 1\nrho = 0.75, 0.6\nsinr_threshold_db = 0, 2, 4, 6, 8, 10", b));
  std::vector<double> g75;
  std::vector<double> g60;
  for (const PointMeans& p : thr) {
    (p.point.rho == 0.75 ? g75 : g60).push_back(p.gain());
  }
  const auto fd = seed_means(sweep("policy = bfd_only\nfd_fraction = 0.25, 0.5, 1\nrho = 0.75\nsinr_threshold_db = 0", b));
  std::vector<double> gfd;
  for (const PointMeans& p : fd) {
    gfd.push_back(p.gain());
  }
  Outcome o;
  note(o, monotone(g75, false) && monotone(g60, false),
       "non-increasing in threshold rho .75 " + list(g75) + " rho .6 " + list(g60));
  note(o, pointwise_leq(g60, g75), "rho .6 <= rho .75 pointwise");
  note(o, monotone(gfd, true), "non-decreasing in fd_fraction {.25 .5 1} " + list(gfd));
  return o;
}

Outcome c3(const Budget& b)
{
  const auto m = seed_means(
      sweep("policy = ufd_only\nfd_fraction = 0\nsinr_threshold_db = 0\ncs_range_sta_m = 20, 40, 60", b));
  std::vector<double> g;
  for (const PointMeans& p : m) {
    g.push_back(p.gain());
  }
  Outcome o;
  note(o, g[0] >= kC3Low && g[0] <= kC3High,
       "UFD gain at cs 20 m " + fmt(g[0]) + " in [" + fmt(kC3Low, 2) + ", " + fmt(kC3High, 2) + "]");
  note(o, monotone(g, false) && g.front() > g.back(), "decreasing over cs {20 40 60} m " + list(g));
  return o;
}

Outcome c4(const Budget& b)
{
  const auto m = seed_means(sweep("policy = ufd_only\nfd_fraction = 0\nsinr_threshold_db = 5\ncs_range_sta_m = 40\n"
                                  "epsilon = 0.6, 0.8, 1.0\nbasic_access_baseline = true",
                                  b));
  std::vector<double> g;
  for (const PointMeans& p : m) {
    g.push_back(p.goodput_gain());
  }
  const PointMeans& top = m.back();
  Outcome o;
  note(o, g[2] >= kC4Low && g[2] <= kC4High,
       "goodput gain at eps 1 " + fmt(g[2]) + " in [" + fmt(kC4Low, 2) + ", " + fmt(kC4High, 2) + "]");
  const double step1 = g[1] - g[0];
  const double step2 = g[2] - g[1];
  note(o, step1 > 0 && step2 > 0 && std::abs(step2 - step1) <= kAffineTolerance * g[2],
       "affine increasing in eps " + list(g));
  const double shortfall = top.basic > 0 ? 1.0 - top.goodput / top.basic : 0.0;
  note(o, std::abs(shortfall - kBasicShortfall) <= kBasicShortfallTolerance,
       "shortfall vs no-RTS legacy " + fmt(100 * shortfall, 1) + "% (target " + fmt(100 * kBasicShortfall, 0) +
           " +/- " + fmt(100 * kBasicShortfallTolerance, 0) + " pp)");
  return o;
}

Outcome c5(const Budget& b)
{
  const auto m = seed_means(sweep("policy = prefer_bfd\nsinr_threshold_db = 0\nfd_fraction = 0.25, 0.5, 0.75, 1\n"
                                  "mitigation = none, cts-fd-aware, fdti",
                                  b));
  std::map<Mitigation, std::vector<double>> cui;
  for (const PointMeans& p : m) {
    cui[p.point.mitigation].push_back(p.cui);
  }
  const auto& none = cui[Mitigation::None];
  const auto& aware = cui[Mitigation::CtsFdAware];
  const auto& fdti = cui[Mitigation::Fdti];
  Outcome o;
  note(o, *std::min_element(fdti.begin(), fdti.end()) >= kFdtiCuiFloor,
       "fdti CUI " + list(fdti) + " >= " + fmt(kFdtiCuiFloor, 2));
  note(o, none.back() < aware.back() && aware.back() < fdti.back(),
       "at fd 1: none " + fmt(none.back()) + " < aware " + fmt(aware.back()) + " < fdti " + fmt(fdti.back()));
  bool lowest = true;
  for (std::size_t i = 0; i < none.size(); ++i) {
    lowest = lowest && none[i] <= aware[i] && none[i] <= fdti[i];
  }
  note(o, lowest, "none lowest at every density " + list(none));
  return o;
}

std::vector<std::string> mac_trace(const SimConfig& config, const Deployment& dep, std::uint64_t seed)
{
  VectorTrace trace;
  run_on_deployment(config, dep, seed, nullptr, &trace);
  return trace.lines;
}

std::vector<std::string> dcf_trace(const SimConfig& config, const Deployment& dep, std::uint64_t seed)
{
  Deployment hd = dep;
  for (const NodeInfo& n : hd.nodes()) {
    hd.set_duplex(n.id, Duplex::Half);
  }
  const Channel channel(hd, config.channel);
  Simulator sim(channel, seed);
  VectorTrace trace;
  sim.attach(oracle::make_dcf_macs(sim, config.timing));
  sim.set_trace(&trace);
  sim.run(config.duration_us);
  return trace.lines;
}

Outcome c6()
{
  Outcome o;

  // Random multi-cell runs across policies and mitigations until enough events.
  std::uint64_t events = 0;
  std::uint64_t violations = 0;
  std::uint64_t fd = 0;
  std::uint64_t ufd = 0;
  const StrPolicy policies[] = {StrPolicy::Alternate, StrPolicy::PreferBfd, StrPolicy::PreferUfd};
  const Mitigation mitigations[] = {Mitigation::None, Mitigation::CtsFdAware, Mitigation::Fdti};
  for (std::uint64_t seed = 1; events < kInvariantEvents; ++seed) {
    SimConfig c;
    c.deployment.width_m = 400;
    c.deployment.height_m = 400;
    c.deployment.fd_fraction = 0.5;
    c.mac.policy = policies[seed % 3];
    c.mac.mitigation = mitigations[(seed / 3) % 3];
    c.duration_us = 1'000'000;
    const Deployment dep = make_deployment(c, seed);
    const Channel channel(dep, c.channel);
    InvariantObserver inv(channel);
    const RunResult r = run_on_deployment(c, dep, seed, &inv);
    events += r.engine.events;
    violations += inv.violations.size();
    fd += inv.fd_exchanges;
    ufd += inv.ufd_exchanges;
    for (const auto& v : inv.violations) {
      std::cerr << "C6 seed " << seed << ": " << v << '\n';
    }
  }
  note(o, violations == 0 && ufd > 0,
       std::to_string(violations) + " invariant violations over " + std::to_string(events) + " events (" +
           std::to_string(fd) + " FD exchanges, " + std::to_string(ufd) + " UFD)");

  // FD exchanges never time out spuriously; the desk topology has no
  // hidden STAs and so no timeouts at all.
  std::uint64_t spurious = 0;
  std::uint64_t checked = 0;
  const struct {
    StrPolicy policy;
    Deployment dep;
  } loss_free[] = {
      {StrPolicy::BfdOnly, desk_topology(true)},
      {StrPolicy::UfdOnly,
       fixed_deployment({{Role::Ap, 400, 400, true}, {Role::Sta, 375, 400}, {Role::Sta, 425, 400}})},
      {StrPolicy::Alternate,
       fixed_deployment({{Role::Ap, 400, 400, true}, {Role::Sta, 375, 400, true}, {Role::Sta, 425, 400, true}})},
  };
  for (const auto& lf : loss_free) {
    SimConfig c;
    c.channel = clean_channel();
    c.mac.policy = lf.policy;
    c.duration_us = 2'000'000;
    const Channel channel(lf.dep, c.channel);
    InvariantObserver inv(channel);
    run_on_deployment(c, lf.dep, 1, &inv);
    spurious += inv.spurious_timeouts + inv.violations.size();
    if (lf.policy == StrPolicy::BfdOnly) {
      spurious += inv.ack_timeouts;
    }
    checked += inv.fd_exchanges;
  }
  note(o, spurious == 0 && checked > 0,
       std::to_string(spurious) + " spurious timeouts in " + std::to_string(checked) + " FD exchanges (none at all on the desk)");

  // Frame encoding: one-bit CTS-FD and legacy agnosticism.
  Rng rng(2024);
  bool frames_ok = true;
  for (int i = 0; i < 10'000; ++i) {
    const auto dur = static_cast<std::uint32_t>(rng.below(kMaxDurationUs + 1));
    const NodeId a{static_cast<std::uint32_t>(rng.below(4096))};
    const NodeId z{static_cast<std::uint32_t>(rng.below(4096))};
    const Frame cts = make_cts(a, z, dur);
    frames_ok = frames_ok && hamming_distance(encode(cts), encode(make_cts_fd(z, dur, a))) == 1;
    frames_ok = frames_ok && decode_legacy(encode(make_cts_fd(z, dur, a))) == cts;
    frames_ok = frames_ok && decode_legacy(encode(make_fdti(a))).kind() == FrameKind::Ack;
    frames_ok = frames_ok && !decode_legacy(encode(make_beacon(a, true))).capability.fd_capable();
  }
  note(o, frames_ok, "CTS/CTS-FD hamming 1 and legacy decoding over 10000 frames");

  // No FD capability anywhere: the STR MAC reproduces plain DCF exactly.
  std::size_t lines = 0;
  bool golden = true;
  for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    SimConfig c;
    c.deployment.width_m = 200;
    c.deployment.height_m = 200;
    c.deployment.fd_fraction = 0.0;
    c.deployment.ap_fd = false;
    c.duration_us = 500'000;
    const Deployment dep = make_deployment(c, seed);
    const auto got = mac_trace(c, dep, seed);
    golden = golden && got == dcf_trace(c, dep, seed);
    lines += got.size();
  }
  note(o, golden, "lambda_f = 0 trace equals DCF golden trace (" + std::to_string(lines) + " lines)");
  return o;
}

Outcome c7()
{
  const TimingParams p;
  // Brute force from raw sizes and rates.
  auto ceil_div = [](std::uint64_t a, std::uint64_t b) { return static_cast<Micros>((a + b - 1) / b); };
  const Micros cts = ceil_div(std::uint64_t{p.cts_bits} * 1'000'000, p.control_rate_bps);
  const Micros ack = ceil_div(std::uint64_t{p.ack_bits} * 1'000'000, p.control_rate_bps);
  const Micros data = ceil_div(std::uint64_t{p.phy_header_bits} * 1'000'000, p.control_rate_bps) +
                      ceil_div((std::uint64_t{p.mac_header_bits} + p.payload_bits) * 1'000'000, p.data_rate_bps);
  const Micros d0 = 3 * p.sifs_us + cts + data + ack;
  const Micros d1 = d0 - cts - p.sifs_us;
  const Micros ei = p.sifs_us + ack + p.difs_us;

  Outcome o;
  note(o, d0 == kD0 && d1 == kD1 && ei == kEifs,
       "brute force D0 " + std::to_string(d0) + " D1 " + std::to_string(d1) + " EIFS " + std::to_string(ei));
  note(o, rts_duration(p) == kD0 && cts_duration(p, kD0) == kD1 && eifs(p) == kEifs, "timing module agrees");

  struct Recorder : InvariantObserver {
    using InvariantObserver::InvariantObserver;
    void on_fd_exchange(const FdExchangeRecord& r) override
    {
      InvariantObserver::on_fd_exchange(r);
      ok = ok && r.d0 == kD0 && r.d1 == kD1 && r.t5 - r.t1 == kD0 && r.t4 - r.t1 == kD1;
    }
    void on_tx_start(NodeId node, const Frame& f, Micros start, Micros end, Micros nav) override
    {
      InvariantObserver::on_tx_start(node, f, start, end, nav);
      if (f.kind() == FrameKind::Rts) {
        ok = ok && f.duration_us == kD0;
      }
      if (f.kind() == FrameKind::Cts && f.control.fd_flag) {
        ok = ok && f.duration_us == kD1;
      }
    }
    bool ok = true;
  };
  SimConfig c;
  c.channel = clean_channel();
  c.mac.policy = StrPolicy::BfdOnly;
  c.duration_us = 1'000'000;
  const Deployment dep = desk_topology(true);
  const Channel channel(dep, c.channel);
  Recorder rec(channel);
  run_on_deployment(c, dep, 1, &rec);
  bool waits_ok = true;
  for (const auto& [ifs, count] : rec.waits) {
    waits_ok = waits_ok && (ifs == p.difs_us || ifs == kEifs);
  }
  note(o, rec.ok && rec.fd_exchanges > 0 && waits_ok && rec.violations.empty(),
       "desk run: " + std::to_string(rec.fd_exchanges) + " BFD exchanges with D0, D1, t5-t1 exact");
  return o;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Acceptance report for criteria C1..C7"};
  bool full = false;
  bool strict = false;
  std::vector<std::string> only;
  std::string report_path;
  app.add_flag("--full", full, "Full budget: 20 seeds x 5 s per sweep point");
  app.add_flag("--strict", strict, "Exit non-zero when any criterion fails");
  app.add_option("--only", only, "Run only these criteria, e.g. C1 C7");
  app.add_option("--report", report_path, "Also write the report to this file");
  CLI11_PARSE(app, argc, argv);

  const Budget full_budget{20, 5'000'000};
  const struct {
    const char* id;
    std::function<Outcome()> run;
    Budget budget;
  } criteria[] = {
      {"C1", [&] { return c1(full ? full_budget : Budget{4, 1'000'000}); }, full ? full_budget : Budget{4, 1'000'000}},
      {"C2", [&] { return c2(full ? full_budget : Budget{3, 500'000}); }, full ? full_budget : Budget{3, 500'000}},
      {"C3", [&] { return c3(full ? full_budget : Budget{3, 1'000'000}); }, full ? full_budget : Budget{3, 1'000'000}},
      {"C4", [&] { return c4(full ? full_budget : Budget{3, 1'000'000}); }, full ? full_budget : Budget{3, 1'000'000}},
      {"C5", [&] { return c5(full ? full_budget : Budget{3, 500'000}); }, full ? full_budget : Budget{3, 500'000}},
      {"C6", [] { return c6(); }, Budget{0, 0}},
      {"C7", [] { return c7(); }, Budget{0, 0}},
  };

  std::ofstream report;
  if (!report_path.empty()) {
    report.open(report_path);
  }
  auto emit = [&](const std::string& line) {
    std::cout << line << std::endl;
    if (report) {
      report << line << std::endl;
    }
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += o.pass ? 0 : 1;
    std::string line = std::string(c.id) + (o.pass ? " PASS  " : " FAIL  ") + o.detail;
    if (c.budget.seeds > 0) {
      line += " (" + budget_text(c.budget) + ")";
    }
    emit(line + " [" + fmt(secs, 1) + " s]");
  }
  emit(failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed");
  return strict && failures > 0 ? 1 : 0;
}
