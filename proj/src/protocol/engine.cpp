// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/protocol/engine.hpp"

#include <cmath>

#include "csbc/qsim/gates.hpp"

namespace csbc::protocol {

namespace {

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Role>) {
    return std::string(name(*v));
  } else if constexpr (std::is_same_v<T, Bit>) {
    return to_int(*v);
  } else {
    return *v;
  }
}

}  // namespace

nlohmann::json to_json(const Transcript& t) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : t.events) {
    events.push_back({{"stage", name(e.stage)},
                      {"actor", name(e.actor)},
                      {"kind", e.kind},
                      {"detail", e.detail}});
  }
  return {{"events", std::move(events)},
          {"challenge_by", opt(t.challenge_by)},
          {"declared_bit", opt(t.declared_bit)},
          {"game_loser", opt(t.game_loser)},
          {"a_detected", t.a_detected},
          {"b_detected", t.b_detected},
          {"aborted_by", opt(t.aborted_by)},
          {"abort_reason", t.abort_reason},
          {"b_info", opt(t.b_info)}};
}

double singlet_pass_probability(const qsim::StateVector& state, const qsim::QubitLabel& a_half,
                                const qsim::QubitLabel& b_half) {
  const auto rho = qsim::partial_trace(state, {a_half, b_half});
  return qsim::fidelity_pure(rho, qsim::StateVector({a_half, b_half}, qsim::gates::singlet()));
}

ChallengeResult singlet_challenge(Register& reg, const qsim::QubitLabel& a_half,
                                  const qsim::QubitLabel& b_half, qsim::Chance& chance,
                                  std::string_view label) {
  const auto outcome =
      reg.measure(qsim::gates::rank1_test(qsim::gates::singlet()), {a_half, b_half}, chance, label);
  return outcome == 0 ? ChallengeResult::pass : ChallengeResult::fail;
}

ProtocolRun::ProtocolRun(const StrategySpec& a, const StrategySpec& b, qsim::Chance& chance,
                         RunOptions options)
    : a_(a), b_(b), chance_(chance), options_(std::move(options)) {
  check_well_formed(a_, Role::A);
  check_well_formed(b_, Role::B);
}

Lab ProtocolRun::lab(Role r) {
  return Lab(view(r), reg_, chance_, &info_open_, &transcript_.b_info);
}

void ProtocolRun::enter(Stage s) {
  if (s == stage_ && started_) return;
  if (started_ && static_cast<int>(s) <= static_cast<int>(stage_)) {
    throw ProtocolError("stage " + std::string(name(s)) + " after " + std::string(name(stage_)));
  }
  if (started_ && static_cast<int>(s) != static_cast<int>(stage_) + 1) {
    throw ProtocolError("stage " + std::string(name(s)) + " skips a stage");
  }
  if (!started_ && s != Stage::Prelude) throw ProtocolError("protocol must start with the prelude");
  started_ = true;
  stage_ = s;
  view_a_.stage_ = s;
  view_b_.stage_ = s;
}

void ProtocolRun::record(Actor who, std::string kind, std::string detail) {
  transcript_.events.push_back({stage_, who, std::move(kind), std::move(detail)});
}

void ProtocolRun::send(Role from, Payload payload) {
  record(actor_of(from), "send", describe(payload));
  view(other(from)).received_.push_back({stage_, from, std::move(payload)});
}

void ProtocolRun::transfer(Role from, const qsim::QubitLabel& label) {
  auto& src = view(from);
  if (!src.holds(label)) {
    throw StrategyViolation(from, std::string(name(from)) + " cannot send qubit it does not hold: " +
                                      label.name());
  }
  src.held_.erase(label);
  view(other(from)).held_.insert(label);
  send(from, QubitTransfer{label});
}

bool ProtocolRun::guarded(Role who, const std::function<void()>& step) {
  if (halted_) return false;
  try {
    step();
    return !halted_;
  } catch (const StrategyViolation& e) {
    transcript_.aborted_by = e.who();
    transcript_.abort_reason = e.what();
  } catch (const qsim::Error& e) {
    transcript_.aborted_by = who;
    transcript_.abort_reason = e.what();
  }
  record(actor_of(*transcript_.aborted_by), "abort", transcript_.abort_reason);
  halted_ = true;
  return false;
}

void ProtocolRun::finish_stage() {
  if (options_.probe && !halted_) options_.probe(stage_, reg_.state());
}

void ProtocolRun::windows(Window w) {
  for (Role r : {Role::A, Role::B}) {
    const auto& cb = spec(r).callbacks.local_window;
    if (!cb) continue;
    guarded(r, [&] {
      Lab l = lab(r);
      cb(l, w);
    });
    if (halted_) return;
  }
}

void ProtocolRun::prelude() {
  enter(Stage::Prelude);
  guarded(Role::B, [&] {
    Lab l = lab(Role::B);
    b_.callbacks.prelude(l);
    if (!view_b_.holds(kSingletA) || !view_b_.holds(kSingletB)) {
      throw StrategyViolation(Role::B, "prelude must prepare singlet_A and singlet_B");
    }
    record(Actor::B, "prepare_singlet");
    transfer(Role::B, kSingletA);
  });
  windows(Window::AfterPrelude);
  finish_stage();
}

void ProtocolRun::commitment() {
  if (halted_) return;
  enter(Stage::Commitment);
  guarded(Role::A, [&] {
    Lab l = lab(Role::A);
    a_.callbacks.commit(l);
    if (!view_a_.holds(kCommitQubit)) {
      throw StrategyViolation(Role::A, "commitment must prepare qubit C");
    }
    record(Actor::A, "commit");
    transfer(Role::A, kCommitQubit);
  });
  windows(Window::AfterCommit);
  finish_stage();
}

void ProtocolRun::challenge(Role challenger) {
  const Role responder = other(challenger);
  transcript_.challenge_by = challenger;
  send(challenger, ChallengeNotice{});

  const qsim::QubitLabel own = challenger == Role::A ? kSingletA : kSingletB;
  if (!view(challenger).holds(own)) {
    throw StrategyViolation(challenger, "challenger no longer holds its singlet half");
  }
  Lab rl = lab(responder);
  const qsim::QubitLabel sent = spec(responder).callbacks.surrender_singlet(rl);
  transfer(responder, sent);

  const auto& a_half = challenger == Role::A ? own : sent;
  const auto& b_half = challenger == Role::A ? sent : own;
  const auto result = singlet_challenge(reg_, a_half, b_half, chance_,
                                        std::string("challenge.") + std::string(name(challenger)));
  const bool failed = result == ChallengeResult::fail;
  record(actor_of(challenger), "singlet_test", failed ? "fail" : "pass");
  if (!failed) return;

  (challenger == Role::A ? transcript_.a_detected : transcript_.b_detected) = true;
  const auto& keep_going = spec(challenger).callbacks.continue_after_detection;
  if (keep_going) {
    Lab cl = lab(challenger);
    if (!keep_going(cl)) {
      transcript_.aborted_by = challenger;
      transcript_.abort_reason = "stopped after detecting cheating";
      record(actor_of(challenger), "abort", transcript_.abort_reason);
      halted_ = true;
    }
  }
}

void ProtocolRun::unveiling() {
  if (halted_) return;
  enter(Stage::Unveiling);
  windows(Window::BeforeUnveil);

  guarded(Role::A, [&] {
    Lab l = lab(Role::A);
    const bool ch = a_.callbacks.challenge_option(l);
    record(Actor::A, "challenge_option", ch ? "challenge" : "decline");
    if (ch) challenge(Role::A);
  });

  guarded(Role::A, [&] {
    Lab l = lab(Role::A);
    const Bit d = a_.callbacks.declare_bit(l);
    transcript_.declared_bit = d;
    info_open_ = false;
    send(Role::A, ClassicalBit{"declared_bit", d});
  });

  if (!transcript_.challenge_by) {
    guarded(Role::B, [&] {
      Lab l = lab(Role::B);
      const bool ch = b_.callbacks.challenge_option(l);
      record(Actor::B, "challenge_option", ch ? "challenge" : "decline");
      if (ch) challenge(Role::B);
    });
  }
  windows(Window::AfterDeclare);
  finish_stage();
}

void ProtocolRun::play_game() {
  if (halted_) return;
  enter(Stage::Game);
  if (transcript_.challenge_by) {
    transcript_.game_loser = transcript_.challenge_by;
    record(Actor::Referee, "loser", std::string(name(*transcript_.game_loser)) + ":challenged");
    return;
  }
  Bit a_outcome = Bit::Zero;
  if (!guarded(Role::A, [&] {
        Lab l = lab(Role::A);
        a_outcome = a_.callbacks.game_measure(l);
        record(Actor::A, "measure_singlet", std::to_string(to_int(a_outcome)));
      })) {
    return;
  }
  guarded(Role::B, [&] {
    Lab l = lab(Role::B);
    const Bit report = b_.callbacks.game_report(l);
    send(Role::B, ClassicalBit{"game_report", report});
    const bool anti = a_outcome != report;
    if (!anti) transcript_.a_detected = true;
    record(Actor::A, "report_check", anti ? "pass" : "fail");
    transcript_.game_loser = report == Bit::One ? Role::A : Role::B;
    record(Actor::Referee, "loser", std::string(name(*transcript_.game_loser)));
  });
}

void ProtocolRun::loser_obligation() {
  if (halted_) return;
  if (stage_ != Stage::Game || !transcript_.game_loser) {
    throw ProtocolError("loser obligations require a decided game");
  }
  if (*transcript_.game_loser == Role::A) {
    guarded(Role::A, [&] {
      Lab l = lab(Role::A);
      const CommitSymbol r = a_.callbacks.name_symbol(l);
      send(Role::A, SymbolName{r});
      if (!transcript_.declared_bit || bit_of(r) != *transcript_.declared_bit) {
        transcript_.b_detected = true;
        record(Actor::B, "symbol_check", "inconsistent");
        return;
      }
      if (!view_b_.holds(kCommitQubit)) {
        record(Actor::B, "symbol_check", "skipped");
        return;
      }
      const auto outcome = reg_.measure(qsim::gates::rank1_test(symbol_state(r)), {kCommitQubit},
                                        chance_, "check.symbol");
      if (outcome != 0) transcript_.b_detected = true;
      record(Actor::B, "symbol_check", outcome == 0 ? "pass" : "fail");
    });
  } else {
    guarded(Role::B, [&] {
      Lab bl = lab(Role::B);
      const qsim::QubitLabel returned = b_.callbacks.return_qubit(bl);
      transfer(Role::B, returned);
      Lab al = lab(Role::A);
      const qsim::Vector expected = a_.callbacks.expected_return(al);
      if (expected.size() != 2 || std::abs(expected.norm() - 1.0) > qsim::kNormTol) {
        throw StrategyViolation(Role::A, "expected return state must be a normalized qubit");
      }
      const auto outcome =
          reg_.measure(qsim::gates::rank1_test(expected), {returned}, chance_, "check.return");
      if (outcome != 0) transcript_.a_detected = true;
      record(Actor::A, "return_check", outcome == 0 ? "pass" : "fail");
    });
  }
  finish_stage();
}

Transcript ProtocolRun::run() {
  prelude();
  commitment();
  unveiling();
  play_game();
  if (!halted_) loser_obligation();
  if (!halted_) {
    enter(Stage::Done);
    record(Actor::Referee, "complete");
  }
  return transcript_;
}

Transcript run_protocol(const StrategySpec& a, const StrategySpec& b, qsim::Chance& chance,
                        const RunOptions& options) {
  return ProtocolRun(a, b, chance, options).run();
}

Transcript run_protocol(const StrategySpec& a, const StrategySpec& b, qsim::Seed seed,
                        const RunOptions& options) {
  qsim::SampledChance chance{qsim::SeedStream(seed)};
  return run_protocol(a, b, chance, options);
}

}  // namespace csbc::protocol
