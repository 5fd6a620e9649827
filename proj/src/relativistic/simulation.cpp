// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <functional>
#include <queue>

#include "csbc/qsim/gates.hpp"
#include "csbc/relativistic/relativistic.hpp"

namespace csbc::relativistic {

using protocol::Bit;

std::string_view name(RelKind k) noexcept {
  switch (k) {
    case RelKind::commit_sent: return "commit_sent";
    case RelKind::reveal: return "reveal";
    case RelKind::coin_fixed: return "coin_fixed";
    case RelKind::return_request: return "return_request";
    case RelKind::state_returned: return "state_returned";
    case RelKind::test_done: return "test_done";
    case RelKind::msg: return "msg";
  }
  return "?";
}

nlohmann::json to_json(const RelEvent& e) {
  nlohmann::json j{{"site", name(e.site)}, {"time", e.time}, {"kind", name(e.kind)}, {"detail", e.detail}};
  if (e.from) {
    j["from"] = name(*e.from);
    j["sent_at"] = e.sent_at;
  }
  return j;
}

nlohmann::json to_json(const RelTranscript& t) {
  auto events = nlohmann::json::array();
  for (const auto& e : t.events) events.push_back(to_json(e));
  auto violations = nlohmann::json::array();
  for (const auto& v : t.violations) {
    violations.push_back({{"first", v.first}, {"second", v.second}, {"what", v.what}});
  }
  return {{"events", std::move(events)},
          {"causality_ok", t.causality_ok},
          {"detection", t.detection},
          {"coin", protocol::to_int(t.coin)},
          {"violations", std::move(violations)}};
}

std::array<qsim::Vector, 2> default_commit_states() {
  return {qsim::gates::ket0(), qsim::gates::ket_plus()};
}

namespace {

constexpr double kCausalTol = 1e-9;

// Single logical timeline; ties break by scheduling order.
class Timeline {
 public:
  using Action = std::function<void()>;

  void at(RelEvent e, Action action = {}) {
    queue_.push({std::move(e), seq_++, std::move(action)});
  }

  void send(const SiteConfig& cfg, Site from, Site to, double now, std::string what, Action on_arrival) {
    RelEvent e;
    e.site = to;
    e.time = now + cfg.distance(from, to);
    e.kind = RelKind::msg;
    e.detail = std::move(what);
    e.from = from;
    e.sent_at = now;
    at(std::move(e), std::move(on_arrival));
  }

  void run(std::vector<RelEvent>& log) {
    while (!queue_.empty()) {
      Item item = queue_.top();
      queue_.pop();
      log.push_back(item.event);
      if (item.action) item.action();
    }
  }

 private:
  struct Item {
    RelEvent event;
    std::uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Item& x, const Item& y) const {
      if (x.event.time != y.event.time) return x.event.time > y.event.time;
      return x.seq > y.seq;
    }
  };
  std::priority_queue<Item, std::vector<Item>, Later> queue_;
  std::uint64_t seq_ = 0;
};

RelEvent local(Site site, double time, RelKind kind, std::string detail) {
  RelEvent e;
  e.site = site;
  e.time = time;
  e.kind = kind;
  e.detail = std::move(detail);
  return e;
}

bool test_state(const qsim::Vector& state, const qsim::Vector& target, qsim::Chance& chance,
                std::string_view label) {
  const double pass = qsim::clamp_prob(std::norm(target.normalized().dot(state)));
  const double probs[2] = {pass, 1.0 - pass};
  return chance.choose(label, probs) == 0;
}

}  // namespace

RelTranscript run_rel_protocol(const SiteConfig& cfg, Bit bit,
                               const std::array<qsim::Vector, 2>& commit_states,
                               const RelBStrategy& b, const CoinSource& coin, qsim::Chance& chance,
                               const RelTiming& timing) {
  cfg.validate();
  for (const auto& s : commit_states) {
    if (s.size() != 2 || s.norm() < 1e-12) throw std::invalid_argument("commit states must be qubits");
  }
  const double ov = std::abs(commit_states[0].normalized().dot(commit_states[1].normalized()));
  if (!(ov > 1e-12 && ov < 1.0 - 1e-12)) {
    throw std::invalid_argument("commit states must be non-orthogonal and distinct");
  }
  if (!(timing.t_commit + cfg.distance(Site::A, Site::B) <= 0.0)) {
    throw std::invalid_argument("the commitment must reach B before the reveal at t = 0");
  }

  RelTranscript t;
  Timeline tl;
  qsim::Vector state = commit_states[protocol::to_int(bit)].normalized();
  const qsim::Vector expected = state;
  bool b_knows_bit = false;
  bool b_keeps = false;
  bool b_tested = false;

  auto b_test = [&](double now) {
    if (b_tested || !b_knows_bit || !b_keeps) return;
    b_tested = true;
    const bool pass = test_state(state, expected, chance, "test.B");
    t.detection = t.detection || !pass;
    tl.at(local(Site::B, now, RelKind::test_done, pass ? "pass" : "fail"));
  };

  tl.at(local(Site::A, timing.t_commit, RelKind::commit_sent, "commit_state"), [&] {
    tl.send(cfg, Site::A, Site::B, timing.t_commit, "commit_state", [&] {
      if (b.kind == RelBStrategy::Kind::measure) {
        const auto basis = qsim::gates::plane_basis(b.angle);
        const double p0 = qsim::clamp_prob(std::norm(basis[0].dot(state)));
        const double probs[2] = {p0, 1.0 - p0};
        state = basis[chance.choose("measure.B", probs)];
      }
    });
  });

  tl.at(local(Site::A2, 0.0, RelKind::reveal, std::to_string(protocol::to_int(bit))), [&] {
    tl.send(cfg, Site::A2, Site::B2, 0.0, "reveal", [&] {
      const double now = cfg.distance(Site::A2, Site::B2);
      tl.send(cfg, Site::B2, Site::B, now, "reveal_relay", [&] {
        b_knows_bit = true;
        b_test(cfg.distance(Site::A2, Site::B2) + cfg.distance(Site::B2, Site::B));
      });
    });
  });

  tl.at(local(Site::A, timing.t_ct, RelKind::coin_fixed, "coin"), [&] {
    if (coin.kind == CoinSource::Kind::fixed) {
      t.coin = coin.value;
    } else {
      const double probs[2] = {0.5, 0.5};
      t.coin = protocol::to_bit(static_cast<int>(chance.choose("coin", probs)));
    }
    const double now = timing.t_ct;
    if (t.coin == Bit::Zero) {
      tl.at(local(Site::A, now, RelKind::return_request, "coin=0"), [&, now] {
        tl.send(cfg, Site::A, Site::B, now, "return_request", [&, now] {
          const double at_b = now + cfg.distance(Site::A, Site::B);
          tl.at(local(Site::B, at_b, RelKind::state_returned, "commit_state"), [&, at_b] {
            tl.send(cfg, Site::B, Site::A, at_b, "commit_state", [&, at_b] {
              const bool pass = test_state(state, expected, chance, "test.A");
              t.detection = t.detection || !pass;
              tl.at(local(Site::A, at_b + cfg.distance(Site::B, Site::A), RelKind::test_done,
                     pass ? "pass" : "fail"));
            });
          });
        });
      });
    } else {
      tl.send(cfg, Site::A, Site::B, now, "coin=1", [&, now] {
        b_keeps = true;
        b_test(now + cfg.distance(Site::A, Site::B));
      });
    }
  });

  tl.run(t.events);
  t.violations = causality_check(t.events, cfg);
  t.causality_ok = t.violations.empty();
  return t;
}

RelTranscript run_rel_protocol(const SiteConfig& cfg, Bit bit,
                               const std::array<qsim::Vector, 2>& commit_states,
                               const RelBStrategy& b, const CoinSource& coin, qsim::Seed seed,
                               const RelTiming& timing) {
  qsim::SampledChance chance{qsim::SeedStream(seed)};
  return run_rel_protocol(cfg, bit, commit_states, b, coin, chance, timing);
}

double rel_detection_exact(const SiteConfig& cfg, Bit bit,
                           const std::array<qsim::Vector, 2>& commit_states,
                           const RelBStrategy& b, const CoinSource& coin,
                           const RelTiming& timing) {
  double p = 0.0;
  bool detected = false;
  qsim::enumerate_branches(
      [&](qsim::Chance& chance) {
        detected = run_rel_protocol(cfg, bit, commit_states, b, coin, chance, timing).detection;
      },
      [&](const qsim::PathInfo& path) { p += detected ? path.probability : 0.0; });
  return p;
}

std::vector<Violation> causality_check(const std::vector<RelEvent>& events, const SiteConfig& cfg) {
  std::vector<Violation> out;
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].time < events[i - 1].time) {
      throw std::invalid_argument("events must be time-ordered");
    }
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.kind != RelKind::msg || !e.from) continue;
    const double d = cfg.distance(*e.from, e.site);
    if (e.time - e.sent_at < d - kCausalTol) {
      // Pair the delivery with the latest event at the sender at or before
      // the send time, or with itself when none was logged.
      std::size_t sender = i;
      for (std::size_t j = 0; j < i; ++j) {
        if (events[j].site == *e.from && events[j].time <= e.sent_at) sender = j;
      }
      out.push_back({sender, i,
                     "message " + std::string(name(*e.from)) + "->" + std::string(name(e.site)) +
                         " took " + std::to_string(e.time - e.sent_at) + " < distance " +
                         std::to_string(d)});
    }
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].kind != RelKind::coin_fixed) continue;
    for (std::size_t j = 0; j < events.size(); ++j) {
      if (events[j].kind != RelKind::reveal) continue;
      const double dx = cfg.distance(events[i].site, events[j].site);
      const double dt = std::abs(events[i].time - events[j].time);
      if (!(dx > dt)) {
        out.push_back({i, j, "coin_fixed and reveal are not spacelike separated (|dx| = " +
                                 std::to_string(dx) + ", |dt| = " + std::to_string(dt) + ")"});
      }
    }
  }
  return out;
}

}  // namespace csbc::relativistic
