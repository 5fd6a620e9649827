// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/strategies/library.hpp"

#include <numbers>

namespace csbc::strategies {

std::vector<CheatCase> cheating_library() {
  constexpr double kPi = std::numbers::pi;
  qsim::SeedStream rng(20260101);
  auto challenging_a = honest_committer(Bit::Zero, 1.0);
  std::vector<CheatCase> out;
  out.push_back({"bit_flip_committer", bit_flip_committer(), honest_receiver(), Role::B});
  out.push_back({"measuring_receiver_Z", honest_committer(Bit::Zero), measuring_receiver(0.0), Role::A});
  out.push_back({"measuring_receiver_X", honest_committer(Bit::One), measuring_receiver(kPi / 2), Role::A});
  out.push_back({"measuring_receiver_breidbart", honest_committer(Bit::Zero), measuring_receiver(kPi / 4),
                 Role::A});
  out.push_back({"ancilla_receiver_swap", honest_committer(Bit::Zero), ancilla_receiver(AncillaAttack::swap()),
                 Role::A});
  out.push_back({"ancilla_receiver_partial_swap", honest_committer(Bit::Zero),
                 ancilla_receiver(AncillaAttack::partial_swap(0.3)), Role::A});
  out.push_back({"ancilla_receiver_challenge_on_1", honest_committer(Bit::Zero),
                 ancilla_receiver(AncillaAttack::swap(), {1}), Role::A});
  out.push_back({"ancilla_receiver_haar", honest_committer(Bit::Zero),
                 ancilla_receiver(AncillaAttack::haar(2, rng)), Role::A});
  out.push_back({"lying_game_receiver", honest_committer(Bit::Zero), lying_game_receiver(), Role::A});
  out.push_back({"singlet_tampering_B_measure", challenging_a,
                 singlet_tampering_party(Role::B, {TamperOp::Kind::measure, 0.0}), Role::A});
  out.push_back({"singlet_tampering_B_substitute", challenging_a,
                 singlet_tampering_party(Role::B, {TamperOp::Kind::substitute, 0.0}), Role::A});
  out.push_back({"singlet_tampering_A_measure",
                 singlet_tampering_party(Role::A, {TamperOp::Kind::measure, 0.0}), honest_receiver(1.0),
                 Role::B});
  return out;
}

}  // namespace csbc::strategies
