// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csbc/strategies/strategies.hpp"

namespace csbc::strategies {

/// A strategy parameter is missing, mistyped or out of range. `key` is the
/// dotted path of the offending field relative to the strategy record.
class ParamError : public std::invalid_argument {
 public:
  ParamError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Builds a strategy from its config name and parameter record, e.g.
/// ("measuring_receiver", {"basis": "Z"}).
StrategySpec make_strategy(const std::string& kind, const nlohmann::json& params);

std::vector<std::string> strategy_kinds();

/// Parameter helpers shared with the config layer.
EntangledCommitment commitment_from_json(const nlohmann::json& params);
AncillaAttack attack_from_json(const nlohmann::json& params);
/// True for integers >= 0, whichever way the JSON library stored them.
inline bool is_non_negative_integer(const nlohmann::json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

/// "Z", "X" or an angle in the X-Z plane.
double basis_angle_from_json(const nlohmann::json& v, const std::string& key);

}  // namespace csbc::strategies
