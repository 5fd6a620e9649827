// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csbc/qsim/gates.hpp"
#include "csbc/relativistic/relativistic.hpp"

using namespace csbc;
using namespace csbc::relativistic;
using protocol::Bit;

namespace {

SiteConfig compact() {
  SiteConfig cfg;
  cfg.positions = {{Site::A, {0.0}},  {Site::B, {1.0}},   {Site::A1, {30.0}},
                   {Site::B1, {31.0}}, {Site::A2, {400.0}}, {Site::B2, {401.0}}};
  return cfg;
}

RelEvent msg(Site from, double sent, Site to, double arrive) {
  RelEvent e;
  e.site = to;
  e.time = arrive;
  e.kind = RelKind::msg;
  e.from = from;
  e.sent_at = sent;
  return e;
}

}  // namespace

TEST_CASE("geometry validation") {
  CHECK_NOTHROW(SiteConfig::default_line().validate());
  CHECK_NOTHROW(compact().validate());
  CHECK(SiteConfig::default_line().distance(Site::A, Site::A2) == 10000.0);

  auto missing = SiteConfig::default_line();
  missing.positions.erase(Site::B1);
  CHECK_THROWS_AS(missing.validate(), GeometryError);

  auto wide = SiteConfig::default_line();
  wide.positions[Site::B2] = {10005.0};
  CHECK_THROWS_AS(wide.validate(), GeometryError);

  auto close = SiteConfig::default_line();
  close.positions[Site::A2] = {900.0};
  close.positions[Site::B2] = {901.0};
  CHECK_THROWS_AS(close.validate(), GeometryError);

  auto mixed_dim = SiteConfig::default_line();
  mixed_dim.positions[Site::A] = {0.0, 0.0};
  CHECK_THROWS_AS(mixed_dim.validate(), GeometryError);

  CHECK_THROWS_AS(parse_site("C"), std::invalid_argument);
  const auto round = site_config_from_json(to_json(SiteConfig::default_line()));
  CHECK(round.positions == SiteConfig::default_line().positions);

  auto planar = SiteConfig::default_line();
  for (auto& [s, x] : planar.positions) x = {x[0] * 0.6, x[0] * 0.8};
  CHECK_NOTHROW(planar.validate());
  CHECK(planar.distance(Site::A, Site::A2) == doctest::Approx(10000.0));
}

TEST_CASE("honest receiver is never detected") {
  const auto cfg = SiteConfig::default_line();
  for (Bit bit : {Bit::Zero, Bit::One}) {
    for (Bit coin : {Bit::Zero, Bit::One}) {
      CHECK(rel_detection_exact(cfg, bit, default_commit_states(), RelBStrategy::honest(),
                                CoinSource::fixed(coin)) == 0.0);
      const auto t = run_rel_protocol(cfg, bit, default_commit_states(), RelBStrategy::honest(),
                                      CoinSource::fixed(coin), 1);
      CHECK(t.causality_ok);
      CHECK(!t.detection);
      CHECK(t.coin == coin);
      CHECK(causality_check(t.events, cfg).empty());
    }
  }
}

TEST_CASE("measuring receiver") {
  const auto cfg = SiteConfig::default_line();
  const auto states = default_commit_states();
  // Z outcome either way, then the |+> test fails with probability 1/2.
  const auto z = RelBStrategy::measure(0.0);
  CHECK(std::abs(rel_detection_exact(cfg, Bit::One, states, z, CoinSource::fixed(Bit::Zero)) - 0.5) < 1e-12);
  CHECK(std::abs(rel_detection_exact(cfg, Bit::One, states, z, CoinSource::fixed(Bit::One)) - 0.5) < 1e-12);
  CHECK(rel_detection_exact(cfg, Bit::Zero, states, z, CoinSource::fixed(Bit::Zero)) < 1e-12);
  CHECK(std::abs(rel_detection_exact(cfg, Bit::One, states, z, CoinSource::fair()) - 0.5) < 1e-12);

  for (double angle : {0.3, 1.0, 2.0}) {
    const auto b = RelBStrategy::measure(angle);
    for (Bit bit : {Bit::Zero, Bit::One}) {
      const double p = rel_detection_exact(cfg, bit, states, b, CoinSource::fixed(Bit::Zero));
      CHECK(p > 0.0);
      CHECK(p == doctest::Approx(rel_detection_exact(cfg, bit, states, b, CoinSource::fixed(Bit::One))));
    }
  }
}

TEST_CASE("message flow") {
  const auto cfg = SiteConfig::default_line();
  const auto t0 = run_rel_protocol(cfg, Bit::Zero, default_commit_states(), RelBStrategy::honest(),
                                   CoinSource::fixed(Bit::Zero), 1);
  std::vector<RelKind> kinds;
  for (const auto& e : t0.events) {
    if (e.kind != RelKind::msg) kinds.push_back(e.kind);
  }
  CHECK(kinds == std::vector<RelKind>{RelKind::commit_sent, RelKind::reveal, RelKind::coin_fixed,
                                      RelKind::return_request, RelKind::state_returned, RelKind::test_done});
  for (const auto& e : t0.events) {
    if (e.kind == RelKind::test_done) {
      CHECK(e.site == Site::A);
      CHECK(e.time == doctest::Approx(502.0));
    }
  }

  const auto t1 = run_rel_protocol(cfg, Bit::Zero, default_commit_states(), RelBStrategy::honest(),
                                   CoinSource::fixed(Bit::One), 1);
  CHECK(t1.events.back().kind == RelKind::test_done);
  CHECK(t1.events.back().site == Site::B);
  // B holds the reveal only after A2 -> B2 -> B.
  CHECK(t1.events.back().time == doctest::Approx(1.0 + 9999.0 + 10000.0 - 9999.0));
  for (std::size_t i = 1; i < t1.events.size(); ++i) CHECK(t1.events[i].time >= t1.events[i - 1].time);

  CHECK_THROWS_AS(run_rel_protocol(cfg, Bit::Zero, {qsim::gates::ket0(), qsim::gates::ket1()},
                                   RelBStrategy::honest(), CoinSource::fair(), 1),
                  std::invalid_argument);
  RelTiming late;
  late.t_commit = -0.5;
  CHECK_THROWS_AS(run_rel_protocol(cfg, Bit::Zero, default_commit_states(), RelBStrategy::honest(),
                                   CoinSource::fair(), 1, late),
                  std::invalid_argument);
}

TEST_CASE("fair coin") {
  const auto cfg = SiteConfig::default_line();
  int ones = 0;
  const int n = 4000;
  for (int s = 0; s < n; ++s) {
    ones += protocol::to_int(run_rel_protocol(cfg, Bit::Zero, default_commit_states(), RelBStrategy::honest(),
                                              CoinSource::fair(), static_cast<qsim::Seed>(s))
                                 .coin);
  }
  CHECK(std::abs(ones / double(n) - 0.5) < 4 * std::sqrt(0.25 / n));
}

TEST_CASE("causality violations") {
  const auto cfg = SiteConfig::default_line();

  SUBCASE("superluminal message") {
    std::vector<RelEvent> ev{msg(Site::A2, 0.0, Site::A, 100.0)};
    const auto v = causality_check(ev, cfg);
    REQUIRE(v.size() == 1);
    CHECK(v[0].second == 0);
  }
  SUBCASE("coin fixed inside the reveal's light cone") {
    RelTiming t;
    t.t_ct = 20000.0;
    const auto tr = run_rel_protocol(cfg, Bit::Zero, default_commit_states(), RelBStrategy::honest(),
                                     CoinSource::fixed(Bit::Zero), 1, t);
    CHECK(!tr.causality_ok);
    REQUIRE(tr.violations.size() == 1);
    CHECK(tr.events[tr.violations[0].first].kind == RelKind::coin_fixed);
    CHECK(tr.events[tr.violations[0].second].kind == RelKind::reveal);
  }
  SUBCASE("shrinking d(A, A2) below t_ct") {
    const auto tr = run_rel_protocol(compact(), Bit::One, default_commit_states(), RelBStrategy::honest(),
                                     CoinSource::fixed(Bit::Zero), 1);
    CHECK(!tr.causality_ok);
    RelTiming t;
    t.t_ct = 399.0;
    CHECK(run_rel_protocol(compact(), Bit::One, default_commit_states(), RelBStrategy::honest(),
                           CoinSource::fixed(Bit::Zero), 1, t)
              .causality_ok);
  }
  SUBCASE("unordered events") {
    std::vector<RelEvent> ev{msg(Site::A, 0.0, Site::B, 5.0), msg(Site::A, 0.0, Site::B, 2.0)};
    CHECK_THROWS_AS(causality_check(ev, cfg), std::invalid_argument);
  }
  SUBCASE("light-speed delivery is allowed") {
    CHECK(causality_check({msg(Site::A, 0.0, Site::B, 1.0)}, cfg).empty());
  }
}

TEST_CASE("separation verification") {
  const auto claimed = SiteConfig::default_line();
  const auto truthful = verify_separations(claimed, simulate_echoes(claimed));
  CHECK(truthful.size() == 15);
  for (const auto& r : truthful) CHECK(r.pass);

  auto actual = claimed;
  actual.positions[Site::B2] = claimed.positions.at(Site::B);
  int failed = 0;
  for (const auto& r : verify_separations(claimed, simulate_echoes(actual))) {
    if (!r.pass) {
      ++failed;
      CHECK((r.a == Site::B2 || r.b == Site::B2));
    }
  }
  CHECK(failed > 0);

  // Delays only lengthen round trips.
  for (const auto& r : verify_separations(claimed, simulate_echoes(claimed, {{Site::B2, 50.0}}))) CHECK(r.pass);

  auto log = simulate_echoes(claimed);
  log.erase(log.begin());
  const auto rows = verify_separations(claimed, log);
  CHECK(!rows[0].present);
  CHECK(!rows[0].pass);
}

TEST_CASE("results are invariant under rescaling") {
  const auto cfg = SiteConfig::default_line();
  const auto angle = RelBStrategy::measure(0.8);
  for (double lambda : {0.01, 3.0, 1000.0}) {
    const auto scaled = cfg.scaled(lambda);
    const RelTiming timing = RelTiming{}.scaled(lambda);
    for (Bit coin : {Bit::Zero, Bit::One}) {
      CHECK(rel_detection_exact(scaled, Bit::One, default_commit_states(), angle, CoinSource::fixed(coin), timing) ==
            doctest::Approx(rel_detection_exact(cfg, Bit::One, default_commit_states(), angle, CoinSource::fixed(coin))));
      CHECK(run_rel_protocol(scaled, Bit::One, default_commit_states(), angle, CoinSource::fixed(coin), 3, timing)
                .causality_ok);
    }
    RelTiming bad = RelTiming{20000.0, -100.0}.scaled(lambda);
    CHECK(!run_rel_protocol(scaled, Bit::One, default_commit_states(), angle, CoinSource::fair(), 3, bad)
               .causality_ok);
  }
}
