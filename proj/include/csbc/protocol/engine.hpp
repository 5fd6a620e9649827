// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csbc/protocol/party.hpp"

namespace csbc::protocol {

struct Event {
  Stage stage;
  Actor actor;
  std::string kind;
  std::string detail;

  friend bool operator==(const Event&, const Event&) = default;
};

struct Transcript {
  std::vector<Event> events;
  std::optional<Role> challenge_by;
  std::optional<Bit> declared_bit;
  std::optional<Role> game_loser;
  bool a_detected = false;
  bool b_detected = false;
  std::optional<Role> aborted_by;
  std::string abort_reason;
  /// B's pre-unveiling information record, if his strategy kept one.
  std::optional<std::int64_t> b_info;

  bool aborted() const noexcept { return aborted_by.has_value(); }
};

nlohmann::json to_json(const Transcript& t);

struct RunOptions {
  /// Called with the global state after each stage completes. Test and
  /// analysis hook only; strategies never see it.
  std::function<void(Stage, const qsim::StateVector&)> probe;
};

enum class ChallengeResult { pass, fail };

/// Probability that the pair (a_half, b_half) passes the singlet projector.
double singlet_pass_probability(const qsim::StateVector& state, const qsim::QubitLabel& a_half,
                                const qsim::QubitLabel& b_half);

/// Measures {|Ψ⁻⟩⟨Ψ⁻|, I - |Ψ⁻⟩⟨Ψ⁻|} on (a_half, b_half); the collapsed
/// state stays in the register.
ChallengeResult singlet_challenge(Register& reg, const qsim::QubitLabel& a_half,
                                  const qsim::QubitLabel& b_half, qsim::Chance& chance,
                                  std::string_view label);

class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One execution of the commitment protocol between two strategies.
///
/// Steps must be called in stage order (run() does so); each step records
/// its events in the transcript. A StrategyViolation inside a step ends the
/// run with aborted_by set to the offending party.
class ProtocolRun {
 public:
  ProtocolRun(const StrategySpec& a, const StrategySpec& b, qsim::Chance& chance,
              RunOptions options = {});

  Transcript run();

  void prelude();
  void commitment();
  void unveiling();
  void play_game();
  void loser_obligation();

  const Transcript& transcript() const noexcept { return transcript_; }
  const Register& reg() const noexcept { return reg_; }
  Stage stage() const noexcept { return stage_; }

 private:
  Lab lab(Role r);
  PartyView& view(Role r) { return r == Role::A ? view_a_ : view_b_; }
  const StrategySpec& spec(Role r) const { return r == Role::A ? a_ : b_; }

  void enter(Stage s);
  void record(Actor who, std::string kind, std::string detail = {});
  void send(Role from, Payload payload);
  void transfer(Role from, const qsim::QubitLabel& label);
  void windows(Window w);
  void challenge(Role challenger);
  bool guarded(Role who, const std::function<void()>& step);
  void finish_stage();

  const StrategySpec& a_;
  const StrategySpec& b_;
  qsim::Chance& chance_;
  RunOptions options_;

  Register reg_;
  PartyView view_a_{Role::A};
  PartyView view_b_{Role::B};
  Transcript transcript_;
  Stage stage_ = Stage::Prelude;
  bool started_ = false;
  bool info_open_ = true;
  bool halted_ = false;
};

Transcript run_protocol(const StrategySpec& a, const StrategySpec& b, qsim::Chance& chance,
                        const RunOptions& options = {});
Transcript run_protocol(const StrategySpec& a, const StrategySpec& b, qsim::Seed seed,
                        const RunOptions& options = {});

}  // namespace csbc::protocol
