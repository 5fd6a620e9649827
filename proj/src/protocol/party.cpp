// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/protocol/party.hpp"

#include <stdexcept>

namespace csbc::protocol {

void Register::add(const qsim::StateVector& fresh) { state_ = qsim::tensor(state_, fresh); }

void Register::apply(const qsim::Matrix& u, const qsim::Labels& targets) {
  state_ = qsim::apply_unitary(state_, u, targets);
}

std::size_t Register::collapse(std::vector<qsim::Branch> branches, qsim::Chance& chance,
                               std::string_view label) {
  std::vector<double> probs;
  probs.reserve(branches.size());
  for (const auto& b : branches) probs.push_back(b.probability);
  const std::size_t i = chance.choose(label, probs);
  state_ = std::move(*branches[i].post_state);
  return branches[i].index;
}

std::size_t Register::measure(const std::vector<qsim::Matrix>& projectors,
                              const qsim::Labels& targets, qsim::Chance& chance,
                              std::string_view label) {
  return collapse(qsim::projective_branches(state_, projectors, targets), chance, label);
}

std::size_t Register::measure_kraus(const qsim::KrausSet& k, const qsim::Labels& targets,
                                    qsim::Chance& chance, std::string_view label) {
  return collapse(qsim::kraus_branches(state_, k, targets), chance, label);
}

void Lab::require_held(const qsim::Labels& targets) const {
  for (const auto& l : targets) {
    if (!view_.holds(l)) {
      throw StrategyViolation(view_.role(), std::string(name(view_.role())) +
                                                " referenced qubit it does not hold: " + l.name());
    }
  }
}

std::string Lab::tag(std::string_view label) const {
  return std::string(name(view_.role())) + "." + std::string(label);
}

namespace {

bool is_protocol_label(Role r, const qsim::QubitLabel& l) {
  if (r == Role::A) return l == kCommitQubit;
  return l == kSingletA || l == kSingletB;
}

}  // namespace

void Lab::prepare(const qsim::StateVector& state) {
  std::size_t extra = 0;
  for (const auto& l : state.labels()) {
    if (reg_.state().has(l)) {
      throw StrategyViolation(view_.role(), "label already in use: " + l.name());
    }
    if (!is_protocol_label(view_.role(), l)) ++extra;
  }
  const std::size_t budget =
      view_.role() == Role::A ? kCommitterAncillaBudget : kReceiverAncillaBudget;
  if (view_.ancillas_ + extra > budget) {
    throw StrategyViolation(view_.role(), "ancilla budget exceeded");
  }
  try {
    reg_.add(state);
  } catch (const qsim::Error& e) {
    throw StrategyViolation(view_.role(), e.what());
  }
  view_.ancillas_ += extra;
  for (const auto& l : state.labels()) view_.held_.insert(l);
}

void Lab::apply(const qsim::Matrix& u, const qsim::Labels& targets) {
  require_held(targets);
  try {
    reg_.apply(u, targets);
  } catch (const qsim::Error& e) {
    throw StrategyViolation(view_.role(), e.what());
  }
}

std::size_t Lab::measure(const std::vector<qsim::Matrix>& projectors, const qsim::Labels& targets,
                         std::string_view label) {
  require_held(targets);
  try {
    return reg_.measure(projectors, targets, chance_, tag(label));
  } catch (const qsim::Error& e) {
    throw StrategyViolation(view_.role(), e.what());
  }
}

std::size_t Lab::measure_kraus(const qsim::KrausSet& k, const qsim::Labels& targets,
                               std::string_view label) {
  require_held(targets);
  try {
    return reg_.measure_kraus(k, targets, chance_, tag(label));
  } catch (const qsim::Error& e) {
    throw StrategyViolation(view_.role(), e.what());
  }
}

std::size_t Lab::choose(std::string_view label, std::span<const double> probs) {
  return chance_.choose(tag(label), probs);
}

bool Lab::coin(std::string_view label, double p_true) {
  if (p_true <= 0.0) return false;
  if (p_true >= 1.0) return true;
  const double probs[2] = {1.0 - p_true, p_true};
  return choose(label, probs) == 1;
}

void Lab::record_info(std::int64_t outcome) {
  if (view_.role() != Role::B) {
    throw StrategyViolation(view_.role(), "only the receiver keeps an information record");
  }
  if (info_open_ == nullptr || !*info_open_) {
    throw StrategyViolation(view_.role(), "information record after the bit was declared");
  }
  *info_slot_ = outcome;
}

std::string_view name(Window w) noexcept {
  switch (w) {
    case Window::AfterPrelude: return "after_prelude";
    case Window::AfterCommit: return "after_commit";
    case Window::BeforeUnveil: return "before_unveil";
    case Window::AfterDeclare: return "after_declare";
  }
  return "?";
}

void check_well_formed(const StrategySpec& s, Role expected) {
  if (s.role != expected) {
    throw std::invalid_argument("strategy '" + s.kind + "' has role " + std::string(name(s.role)) +
                                ", expected " + std::string(name(expected)));
  }
  const auto& c = s.callbacks;
  auto need = [&](bool present, const char* what) {
    if (!present) {
      throw std::invalid_argument("strategy '" + s.kind + "' lacks callback " + what);
    }
  };
  need(bool(c.challenge_option), "challenge_option");
  need(bool(c.surrender_singlet), "surrender_singlet");
  if (expected == Role::A) {
    need(bool(c.commit), "commit");
    need(bool(c.declare_bit), "declare_bit");
    need(bool(c.game_measure), "game_measure");
    need(bool(c.name_symbol), "name_symbol");
    need(bool(c.expected_return), "expected_return");
  } else {
    need(bool(c.prelude), "prelude");
    need(bool(c.game_report), "game_report");
    need(bool(c.return_qubit), "return_qubit");
  }
}

}  // namespace csbc::protocol
