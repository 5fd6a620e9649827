// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/cli/config.hpp"

#include <array>
#include <utility>

#include "csbc/strategies/registry.hpp"

namespace csbc::cli {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 8> kKinds{{
    {ExperimentKind::run, "run"},
    {ExperimentKind::mc, "mc"},
    {ExperimentKind::exact, "exact"},
    {ExperimentKind::info, "info"},
    {ExperimentKind::lemma1, "lemma1"},
    {ExperimentKind::sweep, "sweep"},
    {ExperimentKind::rel, "rel"},
    {ExperimentKind::punveil_check, "punveil-check"},
}};

std::uint64_t count_field(const json& j, const char* key, std::uint64_t fallback, std::uint64_t min) {
  if (!j.contains(key)) return fallback;
  if (!strategies::is_non_negative_integer(j[key])) throw ConfigError(key, "must be a non-negative integer");
  const auto v = j[key].get<std::uint64_t>();
  if (v < min) throw ConfigError(key, "must be at least " + std::to_string(min));
  return v;
}

StrategyRef strategy_field(const json& j, const std::string& key) {
  const json& s = j[key];
  if (!s.is_object()) throw ConfigError(key, "must be an object with kind and params");
  for (const auto& [k, v] : s.items()) {
    if (k != "kind" && k != "params") throw ConfigError(key + "." + k, "unknown field");
  }
  if (!s.contains("kind") || !s["kind"].is_string()) throw ConfigError(key + ".kind", "must be a string");
  StrategyRef ref{s["kind"].get<std::string>(), json::object()};
  if (s.contains("params")) {
    if (!s["params"].is_object()) throw ConfigError(key + ".params", "must be an object");
    ref.params = s["params"];
  }
  return ref;
}

}  // namespace

std::string_view name(ExperimentKind k) noexcept {
  for (const auto& [kind, n] : kKinds) {
    if (kind == k) return n;
  }
  return "?";
}

std::string_view name(OutputFormat f) noexcept { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ConfigError("output.format", "must be json or csv");
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    static constexpr std::array<std::string_view, 8> known{
        "kind", "committer", "receiver", "n_trials", "master_seed", "max_branches", "output", "params"};
    bool ok = false;
    for (auto n : known) ok = ok || n == k;
    if (!ok) throw ConfigError(k, "unknown field");
  }

  ExperimentConfig c;
  if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError("kind", "must be a string");
  const auto kind = j["kind"].get<std::string>();
  bool found = false;
  for (const auto& [k, n] : kKinds) {
    if (n == kind) {
      c.kind = k;
      found = true;
    }
  }
  if (!found) throw ConfigError("kind", "unknown experiment kind '" + kind + "'");

  if (j.contains("committer")) c.committer = strategy_field(j, "committer");
  if (j.contains("receiver")) c.receiver = strategy_field(j, "receiver");
  c.n_trials = count_field(j, "n_trials", 1, 1);
  c.master_seed = count_field(j, "master_seed", 0, 0);
  c.max_branches = count_field(j, "max_branches", qsim::kDefaultMaxBranches, 1);

  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) throw ConfigError("output", "must be an object");
    for (const auto& [k, v] : o.items()) {
      if (k != "path" && k != "format") throw ConfigError("output." + k, "unknown field");
    }
    if (o.contains("path")) {
      if (!o["path"].is_string()) throw ConfigError("output.path", "must be a string");
      c.output.path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      if (!o["format"].is_string()) throw ConfigError("output.format", "must be json or csv");
      c.output.format = parse_format(o["format"].get<std::string>());
    }
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ConfigError("params", "must be an object");
    c.params = j["params"];
  }

  auto need = [&](const std::optional<StrategyRef>& s, const char* field) {
    if (!s) throw ConfigError(field, std::string("required for kind ") + std::string(name(c.kind)));
  };
  switch (c.kind) {
    case ExperimentKind::run:
    case ExperimentKind::mc:
    case ExperimentKind::exact:
      need(c.committer, "committer");
      need(c.receiver, "receiver");
      break;
    case ExperimentKind::info:
      need(c.receiver, "receiver");
      break;
    case ExperimentKind::punveil_check:
      need(c.committer, "committer");
      if (c.committer->kind != "entangled_committer") {
        throw ConfigError("committer.kind", "punveil-check needs an entangled_committer");
      }
      break;
    default:
      break;
  }
  return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  json j{{"kind", name(c.kind)},
         {"n_trials", c.n_trials},
         {"master_seed", c.master_seed},
         {"max_branches", c.max_branches},
         {"output", {{"path", c.output.path}, {"format", name(c.output.format)}}},
         {"params", c.params}};
  if (c.committer) j["committer"] = {{"kind", c.committer->kind}, {"params", c.committer->params}};
  if (c.receiver) j["receiver"] = {{"kind", c.receiver->kind}, {"params", c.receiver->params}};
  return j;
}

}  // namespace csbc::cli
