// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csbc/protocol/engine.hpp"

namespace csbc::analysis {

using protocol::StrategySpec;

/// Probability with its standard error (zero in exact mode).
struct Estimate {
  double p = 0.0;
  double stderr_ = 0.0;
};

/// stderr = sqrt(p(1-p)/n).
Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n);

enum class Mode { montecarlo, exact };
std::string_view name(Mode m) noexcept;

struct BranchRow {
  std::string description;
  double probability = 0.0;
  bool a_detected = false;
  bool b_detected = false;
  bool aborted = false;

  /// "none", "A", "B" or "A+B".
  std::string detected_by() const;
};

struct DetectionReport {
  Mode mode = Mode::montecarlo;
  std::uint64_t n_trials = 0;
  Estimate p_a_detect;
  Estimate p_b_detect;
  Estimate p_a_loses;
  Estimate p_aborted;
  Estimate p_declared_one;
  /// Exact mode only.
  std::optional<std::vector<BranchRow>> branch_table;
};

nlohmann::json to_json(const DetectionReport& r);

/// n seeded runs; trial i uses SeedStream(seed).derive(i). Work is split
/// into contiguous chunks over `threads` workers (0 = hardware threads);
/// the result does not depend on the thread count.
DetectionReport detection_mc(const StrategySpec& a, const StrategySpec& b, std::uint64_t n,
                             qsim::Seed seed, unsigned threads = 0);

/// Walks every outcome path of one run. Throws qsim::NotEnumerable when a
/// strategy is not enumerable and qsim::BranchLimitExceeded past the cap.
DetectionReport detection_exact(const StrategySpec& a, const StrategySpec& b,
                                std::size_t max_branches = qsim::kDefaultMaxBranches);

/// Leaf callback for custom exact statistics.
using BranchVisitor = std::function<void(const protocol::Transcript&, const qsim::PathInfo&)>;
void for_each_branch(const StrategySpec& a, const StrategySpec& b, const BranchVisitor& visit,
                     std::size_t max_branches = qsim::kDefaultMaxBranches);

}  // namespace csbc::analysis
