// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csbc/protocol/types.hpp"
#include "csbc/qsim/chance.hpp"
#include "csbc/qsim/state.hpp"

namespace csbc::protocol {

/// Ancilla qubits a party may create beyond the protocol qubits.
inline constexpr std::size_t kCommitterAncillaBudget = 3;
inline constexpr std::size_t kReceiverAncillaBudget = 2;

/// A strategy broke a protocol rule; the run is aborted and attributed to it.
class StrategyViolation : public std::runtime_error {
 public:
  StrategyViolation(Role who, const std::string& what) : std::runtime_error(what), who_(who) {}
  Role who() const noexcept { return who_; }

 private:
  Role who_;
};

/// The global register of one run. Amplitudes live here only; parties
/// reach them through a Lab, never directly.
class Register {
 public:
  const qsim::StateVector& state() const noexcept { return state_; }

  void add(const qsim::StateVector& fresh);
  void apply(const qsim::Matrix& u, const qsim::Labels& targets);
  std::size_t measure(const std::vector<qsim::Matrix>& projectors, const qsim::Labels& targets,
                      qsim::Chance& chance, std::string_view label);
  std::size_t measure_kraus(const qsim::KrausSet& k, const qsim::Labels& targets,
                            qsim::Chance& chance, std::string_view label);

 private:
  std::size_t collapse(std::vector<qsim::Branch> branches, qsim::Chance& chance,
                       std::string_view label);

  qsim::StateVector state_;
};

/// What one party knows during a run: its own qubit labels, the messages it
/// received, the current stage, and scratch memory for its strategy.
class PartyView {
 public:
  explicit PartyView(Role role) : role_(role) {}

  Role role() const noexcept { return role_; }
  Stage stage() const noexcept { return stage_; }
  const std::set<qsim::QubitLabel>& held_qubits() const noexcept { return held_; }
  const std::vector<Message>& received_messages() const noexcept { return received_; }
  bool holds(const qsim::QubitLabel& l) const noexcept { return held_.contains(l); }

  std::map<std::string, std::int64_t>& memory() noexcept { return memory_; }
  const std::map<std::string, std::int64_t>& memory() const noexcept { return memory_; }

  std::size_t ancillas_created() const noexcept { return ancillas_; }

 private:
  friend class ProtocolRun;
  friend class Lab;

  Role role_;
  Stage stage_ = Stage::Prelude;
  std::set<qsim::QubitLabel> held_;
  std::vector<Message> received_;
  std::map<std::string, std::int64_t> memory_;
  std::size_t ancillas_ = 0;
};

/// A party's local laboratory: the operations a strategy may perform on the
/// qubits it holds. Any reference to a qubit outside the party's view raises
/// StrategyViolation.
class Lab {
 public:
  Lab(PartyView& view, Register& reg, qsim::Chance& chance, bool* info_open,
      std::optional<std::int64_t>* info_slot)
      : view_(view), reg_(reg), chance_(chance), info_open_(info_open), info_slot_(info_slot) {}

  const PartyView& view() const noexcept { return view_; }
  std::map<std::string, std::int64_t>& memory() noexcept { return view_.memory(); }
  Role role() const noexcept { return view_.role(); }

  /// Brings fresh qubits, prepared in `state`, into this party's lab.
  void prepare(const qsim::StateVector& state);
  void apply(const qsim::Matrix& u, const qsim::Labels& targets);
  std::size_t measure(const std::vector<qsim::Matrix>& projectors, const qsim::Labels& targets,
                      std::string_view label);
  std::size_t measure_kraus(const qsim::KrausSet& k, const qsim::Labels& targets,
                            std::string_view label);

  /// Classical randomness local to the party.
  std::size_t choose(std::string_view label, std::span<const double> probs);
  bool coin(std::string_view label, double p_true);

  /// Receiver's information record; must be set before the bit is declared.
  void record_info(std::int64_t outcome);

 private:
  void require_held(const qsim::Labels& targets) const;
  std::string tag(std::string_view label) const;

  PartyView& view_;
  Register& reg_;
  qsim::Chance& chance_;
  bool* info_open_;
  std::optional<std::int64_t>* info_slot_;
};

/// Local-operation windows between protocol steps.
enum class Window : std::uint8_t { AfterPrelude, AfterCommit, BeforeUnveil, AfterDeclare };

std::string_view name(Window w) noexcept;

/// Decision procedures invoked at each protocol decision point. Role A
/// needs commit, challenge_option, surrender_singlet, declare_bit,
/// game_measure, name_symbol and expected_return; role B needs prelude,
/// challenge_option, surrender_singlet, game_report and return_qubit.
struct Callbacks {
  std::function<void(Lab&)> prelude;
  std::function<void(Lab&)> commit;
  std::function<void(Lab&, Window)> local_window;
  std::function<bool(Lab&)> challenge_option;
  std::function<qsim::QubitLabel(Lab&)> surrender_singlet;
  std::function<Bit(Lab&)> declare_bit;
  std::function<Bit(Lab&)> game_measure;
  std::function<Bit(Lab&)> game_report;
  std::function<CommitSymbol(Lab&)> name_symbol;
  std::function<qsim::QubitLabel(Lab&)> return_qubit;
  std::function<qsim::Vector(Lab&)> expected_return;
  std::function<bool(Lab&)> continue_after_detection;
};

struct StrategySpec {
  Role role = Role::A;
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
  /// False when the strategy draws continuous randomness.
  bool enumerable = true;
  Callbacks callbacks;
};

/// Throws std::invalid_argument naming the first missing callback.
void check_well_formed(const StrategySpec& s, Role expected);

}  // namespace csbc::protocol
