// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "csbc/strategies/strategies.hpp"

namespace csbc::strategies {

/// One deviating strategy paired with an honest opponent.
struct CheatCase {
  std::string name;
  StrategySpec committer;
  StrategySpec receiver;
  /// The party whose detection probability must be positive.
  Role honest_role = Role::A;
};

/// Every non-honest strategy shipped with the library, each against an
/// honest counterpart.
std::vector<CheatCase> cheating_library();

}  // namespace csbc::strategies
