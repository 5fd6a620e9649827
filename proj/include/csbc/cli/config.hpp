// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "csbc/qsim/chance.hpp"

namespace csbc::cli {

/// Malformed experiment config; `field` is the dotted path of the culprit.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class ExperimentKind { run, mc, exact, info, lemma1, sweep, rel, punveil_check };
std::string_view name(ExperimentKind k) noexcept;

enum class OutputFormat { json, csv };
std::string_view name(OutputFormat f) noexcept;
OutputFormat parse_format(const std::string& s);

struct StrategyRef {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();

  bool operator==(const StrategyRef&) const = default;
};

struct OutputSpec {
  /// Empty: standard output.
  std::string path;
  OutputFormat format = OutputFormat::json;

  bool operator==(const OutputSpec&) const = default;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::run;
  std::optional<StrategyRef> committer;
  std::optional<StrategyRef> receiver;
  std::uint64_t n_trials = 1;
  std::uint64_t master_seed = 0;
  std::uint64_t max_branches = qsim::kDefaultMaxBranches;
  OutputSpec output;
  /// Kind-specific parameters.
  nlohmann::json params = nlohmann::json::object();

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(const std::string& text);
nlohmann::json to_json(const ExperimentConfig& c);

}  // namespace csbc::cli
