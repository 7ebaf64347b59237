#include "strmac/channel.hpp"
#include "strmac/rng.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace strmac;
using strmac::test::fixed_deployment;

TEST_SUITE("channel")
{
  TEST_CASE("mean AP count of the default deployment is lambda * area")
  {
    const DeploymentParams p;
    CHECK(p.ap_density * p.width_m * p.height_m == doctest::Approx(96.0));
  }

  TEST_CASE("empirical AP count over 1000 seeds within 3 sigma of 96")
  {
    DeploymentParams p;
    p.sta_density = 0.0;
    const ChannelParams c;
    double sum = 0.0;
    const int seeds = 1000;
    for (int s = 1; s <= seeds; ++s) {
      sum += static_cast<double>(generate_deployment(p, c, static_cast<std::uint64_t>(s)).ap_count());
    }
    const double mean = sum / seeds;
    const double sigma = std::sqrt(96.0 / seeds);
    CHECK(std::abs(mean - 96.0) <= 3.0 * sigma);
  }

  TEST_CASE("zero STA density gives an AP-only deployment")
  {
    DeploymentParams p;
    p.sta_density = 0.0;
    const Deployment d = generate_deployment(p, ChannelParams{}, 3);
    CHECK(d.stas().empty());
    CHECK(d.ap_count() > 0);
  }

  TEST_CASE("deployment is deterministic and FD labels never move nodes")
  {
    DeploymentParams a;
    a.width_m = a.height_m = 200;
    DeploymentParams b = a;
    b.fd_fraction = 0.7;
    const Deployment da = generate_deployment(a, ChannelParams{}, 11);
    const Deployment db = generate_deployment(b, ChannelParams{}, 11);
    REQUIRE(da.size() == db.size());
    std::size_t fd = 0;
    for (std::size_t i = 0; i < da.size(); ++i) {
      const NodeId id{static_cast<std::uint32_t>(i)};
      CHECK(da.node(id).pos == db.node(id).pos);
      CHECK(da.node(id).ap == db.node(id).ap);
      CHECK_FALSE((!da.node(id).is_ap() && da.node(id).is_fd()));
      fd += (!db.node(id).is_ap() && db.node(id).is_fd()) ? 1 : 0;
    }
    const double share = static_cast<double>(fd) / static_cast<double>(db.stas().size());
    CHECK(share == doctest::Approx(0.7).epsilon(0.1));
  }

  TEST_CASE("association: single AP, nearest AP, brute-force argmax")
  {
    const Deployment one = fixed_deployment({{Role::Ap, 0, 0}, {Role::Sta, 500, 500}, {Role::Sta, 10, 10}});
    CHECK(one.node(NodeId{1}).ap == NodeId{0});
    CHECK(one.node(NodeId{2}).ap == NodeId{0});

    const Deployment two =
        fixed_deployment({{Role::Ap, 0, 0}, {Role::Ap, 100, 0}, {Role::Sta, 30, 0}, {Role::Sta, 70, 5}});
    CHECK(two.node(NodeId{2}).ap == NodeId{0});
    CHECK(two.node(NodeId{3}).ap == NodeId{1});

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      DeploymentParams p;
      p.width_m = p.height_m = 300;
      p.ap_density = 3.0 / (300.0 * 300.0);
      const Deployment d = generate_deployment(p, ChannelParams{}, rng());
      for (const NodeInfo& sta : d.stas()) {
        double best = -1;
        for (const NodeInfo& ap : d.aps()) {
          const double dist = distance(ap.pos, sta.pos);
          if (best < 0 || dist < best) {
            best = dist;
          }
        }
        CHECK(distance(d.node(sta.ap).pos, sta.pos) == doctest::Approx(best));
      }
    }
  }

  TEST_CASE("received power")
  {
    ChannelParams p;
    CHECK(rx_power_dbm(p, 40, 1.0) == doctest::Approx(40 - 46.7));
    CHECK(rx_power_dbm(p, 40, 0.3) == doctest::Approx(40 - 46.7));
    p.path_loss_exponent = 4.0;
    CHECK(rx_power_dbm(p, 40, 10) - rx_power_dbm(p, 40, 20) == doctest::Approx(40.0 * std::log10(2.0)));
    CHECK(rx_power_dbm(p, 40, 10) - rx_power_dbm(p, 40, 20) == doctest::Approx(12.04).epsilon(0.001));
    CHECK(rx_power_dbm(p, 40, 10, 0.0) == kPowerFloorDbm);
    CHECK(rx_power_dbm(p, 40, 10, 10.0) - rx_power_dbm(p, 40, 10) == doctest::Approx(10.0));
  }

  TEST_CASE("residual self-interference")
  {
    ChannelParams p;
    CHECK(rsi_power_dbm(p, 40) == doctest::Approx(-95 + 0.25 * 135 - 51));
    CHECK(rsi_power_dbm(p, 40) == doctest::Approx(-112.25));
    p.rho = 0.6;
    CHECK(rsi_power_dbm(p, 40) == doctest::Approx(-92.0));
    p.rho = 1.0;
    CHECK(rsi_power_dbm(p, 40) == doctest::Approx(-146.0));
    p.rho = 0.75;
    CHECK(rsi_power_dbm(p, -1e9) < -1e8);
    for (double tx = 0; tx < 50; tx += 5) {
      CHECK(rsi_power_dbm(p, tx + 1) > rsi_power_dbm(p, tx));
    }
    for (double rho = 0.1; rho < 1.0; rho += 0.1) {
      ChannelParams a = p;
      ChannelParams b = p;
      a.rho = rho;
      b.rho = rho + 0.05;
      CHECK(rsi_power_dbm(b, 40) < rsi_power_dbm(a, 40));
    }
  }

  TEST_CASE("SINR success")
  {
    ChannelParams p;
    p.sinr_threshold_db = 5;
    CHECK(reception_succeeds(p, -90.0, {}));
    CHECK_FALSE(reception_succeeds(p, -90.1, {}));
    const double equal[] = {-60.0};
    p.sinr_threshold_db = 0;
    CHECK_FALSE(reception_succeeds(p, -60.0, equal));
    CHECK(reception_succeeds(p, -80.0, {}, std::nullopt));
    CHECK_FALSE(reception_succeeds(p, -80.0, {}, -79.0));
  }

  TEST_CASE("equal-power interferer inside 20 m fails at threshold >= 0 dB")
  {
    ChannelParams p;
    const double s = rx_power_dbm(p, 30, 15);
    const double i[] = {rx_power_dbm(p, 30, 15)};
    for (double th = 0; th <= 10; th += 2) {
      p.sinr_threshold_db = th;
      CHECK_FALSE(reception_succeeds(p, s, i));
    }
  }

  TEST_CASE("carrier sense: inclusive range boundary, association link, empty set")
  {
    const ChannelParams p;
    const Deployment d = fixed_deployment(
        {{Role::Ap, 0, 0}, {Role::Ap, 400, 0}, {Role::Sta, 40, 0}, {Role::Sta, 80, 0}, {Role::Sta, 80.5, 0},
         {Role::Sta, 190, 0}});
    const Channel ch(d, p);
    const NodeId ap0{0}, sta_a{2}, sta_b{3}, sta_c{4}, far{5};
    CHECK(ch.senses(sta_b, sta_a));
    CHECK_FALSE(ch.senses(sta_c, sta_a));
    CHECK(ch.senses(sta_b, ap0));
    CHECK_FALSE(ch.senses(sta_c, NodeId{1}));
    REQUIRE(d.node(far).ap == ap0);
    CHECK(ch.senses(far, ap0));
    CHECK(ch.senses(ap0, far));
    CHECK_FALSE(ch.carrier_sensed_busy(sta_a, {}));
    const NodeId active[] = {sta_a};
    CHECK(ch.carrier_sensed_busy(sta_b, active));
    CHECK_FALSE(ch.carrier_sensed_busy(far, active));
  }

  TEST_CASE("listener sets equal a brute-force distance filter on a 50-node instance")
  {
    DeploymentParams dp;
    dp.width_m = dp.height_m = 150;
    dp.ap_density = 3.0 / (150.0 * 150.0);
    dp.sta_density = 47.0 / (150.0 * 150.0);
    const ChannelParams p;
    const Deployment d = generate_deployment(dp, p, 17);
    const Channel ch(d, p);
    for (const NodeInfo& t : d.nodes()) {
      std::vector<std::pair<NodeId, bool>> expect;
      for (const NodeInfo& l : d.nodes()) {
        if (l.id == t.id) {
          continue;
        }
        const double dist = distance(t.pos, l.pos);
        const bool link = (!t.is_ap() && t.ap == l.id) || (!l.is_ap() && l.ap == t.id);
        if (link || dist <= p.cs_range_m(t.role)) {
          expect.emplace_back(l.id, dist <= p.tx_range_m(t.role));
        }
      }
      const auto got = ch.listeners(t.id);
      REQUIRE(got.size() == expect.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].node == expect[i].first);
        CHECK(got[i].decodes == expect[i].second);
      }
    }
    for (const NodeInfo& s : d.stas()) {
      std::vector<NodeId> expect;
      for (const NodeInfo& o : d.stas()) {
        if (o.id != s.id && distance(s.pos, o.pos) <= p.cs_range_sta_m) {
          expect.push_back(o.id);
        }
      }
      CHECK(ch.interference_neighbors(s.id) == expect);
    }
  }

  TEST_CASE("mean received power table matches the link budget")
  {
    const ChannelParams p;
    const Deployment d = fixed_deployment({{Role::Ap, 0, 0}, {Role::Sta, 30, 40}});
    const Channel ch(d, p);
    CHECK(mw_to_dbm(ch.mean_rx_mw(NodeId{0}, NodeId{1})) == doctest::Approx(rx_power_dbm(p, 40, 50)).epsilon(1e-6));
    CHECK(mw_to_dbm(ch.mean_rx_mw(NodeId{1}, NodeId{0})) == doctest::Approx(rx_power_dbm(p, 30, 50)).epsilon(1e-6));
    CHECK(ch.distance(NodeId{0}, NodeId{1}) == doctest::Approx(50));
  }

  TEST_CASE("deployment CSV round trip")
  {
    DeploymentParams dp;
    dp.width_m = dp.height_m = 120;
    dp.fd_fraction = 0.5;
    const Deployment d = generate_deployment(dp, ChannelParams{}, 4);
    std::stringstream ss;
    write_deployment_csv(ss, d);
    const Deployment back = read_deployment_csv(ss, 120, 120);
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      const NodeId id{static_cast<std::uint32_t>(i)};
      CHECK(back.node(id).role == d.node(id).role);
      CHECK(back.node(id).duplex == d.node(id).duplex);
      CHECK(back.node(id).ap == d.node(id).ap);
      CHECK(back.node(id).pos.x == doctest::Approx(d.node(id).pos.x));
    }
    std::stringstream bad("id,kind,x,y,fd_capable,associated_ap\n0,toaster,1,1,0,0\n");
    CHECK_THROWS_AS(read_deployment_csv(bad), DeploymentIoError);
  }

  TEST_CASE("parameter validation")
  {
    ChannelParams c;
    c.rho = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    DeploymentParams d;
    d.fd_fraction = 1.5;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  }
}
