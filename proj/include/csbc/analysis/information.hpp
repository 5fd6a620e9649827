// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "csbc/analysis/detection.hpp"
#include "csbc/strategies/strategies.hpp"

namespace csbc::analysis {

double binary_entropy(double p);

struct PUnveil {
  double p0 = 0.0;
  double p1 = 0.0;
  /// Tr(ρσ) − ½ before clamping.
  double raw_p0 = 0.0;
};

/// p0 = Tr(ρ_C σ) − ½ with σ = |0⟩⟨0| + |−⟩⟨−|.
PUnveil p_unveil(const qsim::DensityMatrix& rho_c);

struct PUnveilCheck {
  double expected_p0 = 0.0;
  double empirical_p0 = 0.0;
  double stderr_ = 0.0;
  std::uint64_t n = 0;
  bool consistent = false;
};

/// Runs the commitment against an honest receiver n times and compares the
/// declared-0 frequency with p_unveil of its reduced state (4 standard
/// errors; exact equality when the expected value is 0 or 1).
PUnveilCheck verify_punveil_vs_protocol(const strategies::EntangledCommitment& ec, std::uint64_t n,
                                        qsim::Seed seed, unsigned threads = 0);

nlohmann::json to_json(const PUnveilCheck& c);

struct InfoGainReport {
  double mutual_information = 0.0;
  /// P(outcome | bit); the key is empty for runs where nothing was recorded.
  std::map<std::optional<std::int64_t>, std::array<double, 2>> conditional;
  double prior_one = 0.5;
};

/// Mutual information between the receiver's pre-unveiling record and the
/// bit of an honest committer, computed by exact enumeration.
InfoGainReport info_gain(const protocol::StrategySpec& receiver, double prior_one = 0.5,
                         std::size_t max_branches = qsim::kDefaultMaxBranches);

nlohmann::json to_json(const InfoGainReport& r);

struct NoInfoReport {
  double max_overlap_excess = 0.0;
  double outcome_tv_distance = 0.0;
  std::vector<std::array<double, 2>> outcome_given_bit;
};

/// Evaluates the states η_r^i = (⟨i| ⊗ I) U1 |0⟩|r⟩ left in the C slot for
/// every readout outcome i. The excess for a pair (S0, Sminus) or
/// (S1, Splus) is how far the overlap of the normalized return states rises
/// above 1/√2 = |⟨0|−⟩|; pairs with an impossible branch are skipped.
NoInfoReport no_information_check(const strategies::AncillaAttack& attack);

nlohmann::json to_json(const NoInfoReport& r);

struct TradeoffRow {
  double theta = 0.0;
  double info_bits = 0.0;
  double p_a_detect = 0.0;
  double p_b_detect = 0.0;
};

/// partial_swap(θ) ancilla receiver against honest_committer(0), exact.
std::vector<TradeoffRow> tradeoff_sweep(const std::vector<double>& grid,
                                        std::size_t max_branches = qsim::kDefaultMaxBranches);

nlohmann::json to_json(const std::vector<TradeoffRow>& rows);

}  // namespace csbc::analysis
