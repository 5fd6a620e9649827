// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "csbc/qsim/types.hpp"

namespace csbc::protocol {

enum class Role : std::uint8_t { A, B };
enum class Actor : std::uint8_t { A, B, Referee };
enum class Stage : std::uint8_t { Prelude, Commitment, Unveiling, Game, Done };
enum class Bit : std::uint8_t { Zero = 0, One = 1 };

/// The four encoding states of the commitment qubit.
enum class CommitSymbol : std::uint8_t { S0, S1, Splus, Sminus };

inline constexpr Bit to_bit(int v) noexcept { return v ? Bit::One : Bit::Zero; }
inline constexpr int to_int(Bit b) noexcept { return static_cast<int>(b); }
inline constexpr Bit flip(Bit b) noexcept { return b == Bit::Zero ? Bit::One : Bit::Zero; }
inline constexpr Role other(Role r) noexcept { return r == Role::A ? Role::B : Role::A; }
inline constexpr Actor actor_of(Role r) noexcept { return r == Role::A ? Actor::A : Actor::B; }

/// bit(S0) = bit(Sminus) = 0, bit(S1) = bit(Splus) = 1.
inline constexpr Bit bit_of(CommitSymbol r) noexcept {
  return (r == CommitSymbol::S0 || r == CommitSymbol::Sminus) ? Bit::Zero : Bit::One;
}

qsim::Vector symbol_state(CommitSymbol r);

/// The two symbols encoding `b`, in the order {computational, diagonal}.
std::pair<CommitSymbol, CommitSymbol> symbols_for(Bit b) noexcept;

std::string_view name(Role r) noexcept;
std::string_view name(Actor a) noexcept;
std::string_view name(Stage s) noexcept;
std::string_view name(CommitSymbol r) noexcept;

std::optional<CommitSymbol> parse_symbol(std::string_view s) noexcept;
std::optional<Role> parse_role(std::string_view s) noexcept;

// Fixed labels of the protocol-mandated qubits.
inline const qsim::QubitLabel kSingletA{"singlet_A"};
inline const qsim::QubitLabel kSingletB{"singlet_B"};
inline const qsim::QubitLabel kCommitQubit{"C"};

struct QubitTransfer {
  qsim::QubitLabel label;
};
struct ClassicalBit {
  std::string what;
  Bit value;
};
struct SymbolName {
  CommitSymbol symbol;
};
struct ChallengeNotice {};

using Payload = std::variant<QubitTransfer, ClassicalBit, SymbolName, ChallengeNotice>;

struct Message {
  Stage stage;
  Role from;
  Payload payload;
};

std::string describe(const Payload& p);

}  // namespace csbc::protocol
