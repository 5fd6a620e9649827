// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "csbc/protocol/party.hpp"

namespace csbc::strategies {

using protocol::Bit;
using protocol::CommitSymbol;
using protocol::Role;
using protocol::StrategySpec;

/// Tolerance for the orthogonality of the collapse branches.
inline constexpr double kBranchOrthoTol = 1e-9;

/// A committer's entangled preparation Σ_r |α_r⟩|r⟩ together with the
/// unitary she applies to her ancilla before reading the declared bit off
/// its first qubit.
///
/// Construction rejects commitments she could not unveil without risk: after
/// the unitary, each declared-bit branch must have the form
/// |u⟩|0⟩ + |u⊥⟩|−⟩ (bit 0) or |v⟩|1⟩ + |v⊥⟩|+⟩ (bit 1) with ⟨u|u⊥⟩ = 0, so
/// that a measurement on the remaining ancilla collapses C onto one encoding
/// state.
class EntangledCommitment {
 public:
  /// alpha in symbol order S0, S1, Splus, Sminus; each of dimension 2^m with
  /// 1 <= m <= 3.
  EntangledCommitment(std::array<qsim::Vector, 4> alpha, qsim::Matrix unveil_unitary);

  /// Deterministic commitment to one encoding state.
  static EntangledCommitment classical(CommitSymbol r);

  /// Valid commitment built in unveiled form and rotated by `rotation` (a
  /// unitary on two ancilla qubits): weights are (S0, Sminus, S1, Splus),
  /// `a0` and `a1` the remaining-ancilla directions of the two branches.
  static EntangledCommitment canonical(std::array<double, 4> weights, const qsim::Vector& a0,
                                       const qsim::Vector& a1, const qsim::Matrix& rotation);

  const std::array<qsim::Vector, 4>& alpha() const noexcept { return alpha_; }
  const qsim::Matrix& unveil_unitary() const noexcept { return unveil_; }
  std::size_t ancilla_qubits() const noexcept { return ancilla_qubits_; }
  qsim::Labels ancilla_labels() const;

  /// Σ_r |α_r⟩|r⟩ on (ancilla..., C).
  qsim::StateVector joint_state() const;
  qsim::DensityMatrix reduced_c() const;

  struct Collapse {
    qsim::Vector first;   // coefficient of |0⟩ (k=0) or |1⟩ (k=1)
    qsim::Vector second;  // coefficient of |−⟩ (k=0) or |+⟩ (k=1)
  };
  /// Decomposition of the declared-bit-k branch over the remaining ancilla.
  const Collapse& collapse(Bit k) const noexcept { return collapse_[protocol::to_int(k)]; }

  /// Probability of declaring k, read off the branch norms.
  double declare_probability(Bit k) const;

  /// Random valid commitment on two ancilla qubits: Dirichlet weights,
  /// random branch directions, Haar rotation.
  static EntangledCommitment random(qsim::SeedStream& rng);

 private:
  std::array<qsim::Vector, 4> alpha_;
  qsim::Matrix unveil_;
  std::size_t ancilla_qubits_ = 0;
  std::array<Collapse, 2> collapse_;
};

/// B's coupling of C to an ancilla |0…0⟩ (U1 on ancilla ⊗ C) followed by a
/// projective readout of the ancilla in the orthonormal basis given by the
/// columns of `readout`.
class AncillaAttack {
 public:
  AncillaAttack(std::size_t ancilla_dim, qsim::Matrix u1, qsim::Matrix readout);
  AncillaAttack(std::size_t ancilla_dim, qsim::Matrix u1);

  static AncillaAttack identity(std::size_t ancilla_dim = 2);
  static AncillaAttack swap();
  static AncillaAttack partial_swap(double theta);
  /// Haar-random U1 and readout basis.
  static AncillaAttack haar(std::size_t ancilla_dim, qsim::SeedStream& rng);

  std::size_t ancilla_dim() const noexcept { return dim_; }
  std::size_t ancilla_qubits() const noexcept;
  qsim::Labels ancilla_labels() const;
  const qsim::Matrix& u1() const noexcept { return u1_; }
  const qsim::Matrix& readout() const noexcept { return readout_; }

  std::vector<qsim::Matrix> readout_projectors() const;

 private:
  std::size_t dim_;
  qsim::Matrix u1_;
  qsim::Matrix readout_;
};

struct TamperOp {
  enum class Kind { measure, rotate, substitute };
  Kind kind = Kind::measure;
  /// Basis angle for measure, rotation angle for rotate.
  double angle = 0.0;
};

StrategySpec honest_committer(Bit bit, double challenge_probability = 0.0);
StrategySpec entangled_committer(EntangledCommitment ec, double challenge_probability = 0.0);
StrategySpec bit_flip_committer();

StrategySpec honest_receiver(double challenge_probability = 0.0);
/// Measures C in the X-Z plane basis at `basis_angle` right after commitment.
StrategySpec measuring_receiver(double basis_angle);
/// challenge_outcomes: readout outcomes on which B challenges the singlet.
StrategySpec ancilla_receiver(AncillaAttack attack, std::set<std::int64_t> challenge_outcomes = {});
StrategySpec lying_game_receiver();

/// Honest party of `role` that applies `op` to its own singlet half in the
/// commitment window. A `rotate` op is undone before any challenge point.
StrategySpec singlet_tampering_party(Role role, TamperOp op, Bit bit = Bit::Zero,
                                     double challenge_probability = 0.0);

}  // namespace csbc::strategies
