// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "csbc/qsim/state.hpp"

namespace csbc::analysis {

inline constexpr double kFactorTol = 1e-8;

struct Lemma1Witness {
  std::size_t index = 0;
  /// E_i − I ⊗ E'_i.
  qsim::Matrix block;
  double norm = 0.0;
};

struct Lemma1Verdict {
  bool factored = false;
  bool singlet_preserved = false;
  std::optional<std::vector<qsim::Matrix>> factors;
  std::optional<Lemma1Witness> witness;
  double max_reconstruction_error = 0.0;
};

/// Checks whether each E_i, acting on (singlet slot ⊗ ancilla) with the slot
/// as the first factor, leaves |Ψ⁻⟩ intact on every ancilla basis state,
/// and extracts E'_i = (E_00 + E_11)/2 from the slot blocks.
Lemma1Verdict lemma1_factor(const qsim::KrausSet& k, std::size_t singlet_slot_dim,
                            std::size_t ancilla_dim);

nlohmann::json to_json(const Lemma1Verdict& v);

}  // namespace csbc::analysis
