// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/protocol/types.hpp"

#include "csbc/qsim/gates.hpp"

namespace csbc::protocol {

qsim::Vector symbol_state(CommitSymbol r) {
  switch (r) {
    case CommitSymbol::S0: return qsim::gates::ket0();
    case CommitSymbol::S1: return qsim::gates::ket1();
    case CommitSymbol::Splus: return qsim::gates::ket_plus();
    case CommitSymbol::Sminus: return qsim::gates::ket_minus();
  }
  return qsim::gates::ket0();
}

std::pair<CommitSymbol, CommitSymbol> symbols_for(Bit b) noexcept {
  return b == Bit::Zero ? std::pair{CommitSymbol::S0, CommitSymbol::Sminus}
                        : std::pair{CommitSymbol::S1, CommitSymbol::Splus};
}

std::string_view name(Role r) noexcept { return r == Role::A ? "A" : "B"; }

std::string_view name(Actor a) noexcept {
  switch (a) {
    case Actor::A: return "A";
    case Actor::B: return "B";
    case Actor::Referee: return "Referee";
  }
  return "?";
}

std::string_view name(Stage s) noexcept {
  switch (s) {
    case Stage::Prelude: return "Prelude";
    case Stage::Commitment: return "Commitment";
    case Stage::Unveiling: return "Unveiling";
    case Stage::Game: return "Game";
    case Stage::Done: return "Done";
  }
  return "?";
}

std::string_view name(CommitSymbol r) noexcept {
  switch (r) {
    case CommitSymbol::S0: return "S0";
    case CommitSymbol::S1: return "S1";
    case CommitSymbol::Splus: return "Splus";
    case CommitSymbol::Sminus: return "Sminus";
  }
  return "?";
}

std::optional<CommitSymbol> parse_symbol(std::string_view s) noexcept {
  for (auto r : {CommitSymbol::S0, CommitSymbol::S1, CommitSymbol::Splus, CommitSymbol::Sminus}) {
    if (name(r) == s) return r;
  }
  return std::nullopt;
}

std::optional<Role> parse_role(std::string_view s) noexcept {
  if (s == "A") return Role::A;
  if (s == "B") return Role::B;
  return std::nullopt;
}

std::string describe(const Payload& p) {
  struct Visitor {
    std::string operator()(const QubitTransfer& q) const { return "qubit:" + q.label.name(); }
    std::string operator()(const ClassicalBit& b) const {
      return b.what + ":" + std::to_string(to_int(b.value));
    }
    std::string operator()(const SymbolName& s) const {
      return "symbol:" + std::string(name(s.symbol));
    }
    std::string operator()(const ChallengeNotice&) const { return "challenge"; }
  };
  return std::visit(Visitor{}, p);
}

}  // namespace csbc::protocol
