// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csbc/qsim/rng.hpp"

namespace csbc::qsim {

/// Source of every random decision in a simulated run.
///
/// Protocol code never draws random numbers directly; each measurement or
/// coin flip asks a Chance to pick an outcome. SampledChance draws from a
/// seed stream (Monte Carlo). ScriptedChance replays a fixed choice prefix so
/// that enumerate_branches() can visit every outcome path exactly once.
class Chance {
 public:
  virtual ~Chance() = default;

  /// Returns an index i with probs[i] > kImpossible.
  virtual std::size_t choose(std::string_view label, std::span<const double> probs) = 0;

  /// Continuous draws cannot be enumerated; ScriptedChance throws.
  virtual double uniform(std::string_view label) = 0;
};

class SampledChance final : public Chance {
 public:
  explicit SampledChance(SeedStream stream) : stream_(stream) {}

  std::size_t choose(std::string_view label, std::span<const double> probs) override;
  double uniform(std::string_view label) override;

 private:
  SeedStream stream_;
};

class NotEnumerable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BranchLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChoiceStep {
  std::string label;
  std::size_t choice = 0;
  double probability = 1.0;
};

class ScriptedChance final : public Chance {
 public:
  explicit ScriptedChance(std::vector<std::size_t> prefix) : prefix_(std::move(prefix)) {}

  std::size_t choose(std::string_view label, std::span<const double> probs) override;
  double uniform(std::string_view label) override;

  const std::vector<ChoiceStep>& steps() const noexcept { return steps_; }
  /// Alternative choices seen past the prefix, as (step index, option).
  const std::vector<std::pair<std::size_t, std::size_t>>& alternatives() const noexcept {
    return alternatives_;
  }

 private:
  std::vector<std::size_t> prefix_;
  std::vector<ChoiceStep> steps_;
  std::vector<std::pair<std::size_t, std::size_t>> alternatives_;
};

inline constexpr std::size_t kDefaultMaxBranches = 1'000'000;

struct PathInfo {
  std::vector<ChoiceStep> steps;
  double probability = 1.0;

  /// "label=choice; label=choice; ..."
  std::string describe() const;
};

/// Runs `body` once per outcome path, depth first, and hands each finished
/// path to `leaf`. Throws BranchLimitExceeded past `max_branches` paths.
void enumerate_branches(const std::function<void(Chance&)>& body,
                        const std::function<void(const PathInfo&)>& leaf,
                        std::size_t max_branches = kDefaultMaxBranches);

}  // namespace csbc::qsim
