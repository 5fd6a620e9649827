// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "csbc/qsim/rng.hpp"
#include "csbc/qsim/types.hpp"

namespace csbc::qsim {

/// Pure state over an ordered list of qubit labels.
///
/// Amplitudes are big-endian over the label list: labels[0] is the most
/// significant bit of the basis index. Construction normalizes; every public
/// operation returns a new normalized value.
class StateVector {
 public:
  /// The empty register (zero qubits, amplitude 1).
  StateVector();
  StateVector(Labels labels, Vector amps);

  const Labels& labels() const noexcept { return labels_; }
  const Vector& amps() const noexcept { return amps_; }
  std::size_t num_qubits() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }

  bool has(const QubitLabel& label) const noexcept;
  std::size_t position(const QubitLabel& label) const;

 private:
  Labels labels_;
  Vector amps_;
};

class DensityMatrix {
 public:
  DensityMatrix(Labels labels, Matrix mat);

  const Labels& labels() const noexcept { return labels_; }
  const Matrix& mat() const noexcept { return mat_; }
  std::size_t num_qubits() const noexcept { return labels_.size(); }

  double purity() const;

 private:
  Labels labels_;
  Matrix mat_;
};

enum class KrausMode { complete, subnormalized };

/// Generalized measurement {E_i}; validated against its completeness mode.
class KrausSet {
 public:
  KrausSet(std::vector<Matrix> ops, KrausMode mode = KrausMode::complete);

  const std::vector<Matrix>& ops() const noexcept { return ops_; }
  KrausMode mode() const noexcept { return mode_; }
  std::size_t dim() const noexcept;

 private:
  std::vector<Matrix> ops_;
  KrausMode mode_;
};

struct MeasurementOutcome {
  std::size_t index = 0;
  double probability = 0.0;
  StateVector post_state;
};

/// One possible outcome of a measurement; post_state is empty when the
/// outcome is impossible.
struct Branch {
  std::size_t index = 0;
  double probability = 0.0;
  std::optional<StateVector> post_state;
};

StateVector make_state(Labels labels, Vector amps);
StateVector basis_state(Labels labels, std::size_t index);

StateVector tensor(const StateVector& s1, const StateVector& s2);

/// Reorders the register so that its labels appear in `order`.
StateVector permute(const StateVector& s, const Labels& order);

StateVector apply_unitary(const StateVector& s, const Matrix& u, const Labels& targets);

/// op applied to the target subspace, identity elsewhere; no normalization.
Vector apply_operator(const StateVector& s, const Matrix& op, const Labels& targets);

DensityMatrix to_density(const StateVector& s);
DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep);
DensityMatrix partial_trace(const StateVector& s, const Labels& keep);

/// Weighted mixture of density matrices on the same labels.
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& parts);

double fidelity_pure(const DensityMatrix& rho, const StateVector& psi);
double overlap(const StateVector& a, const StateVector& b);

/// ⟨a|b⟩ for states on identical label lists.
Complex inner(const StateVector& a, const StateVector& b);

void validate_projectors(const std::vector<Matrix>& projectors, std::size_t dim);

std::vector<Branch> projective_branches(const StateVector& s,
                                        const std::vector<Matrix>& projectors,
                                        const Labels& targets);
std::vector<Branch> kraus_branches(const StateVector& s, const KrausSet& k,
                                   const Labels& targets);

MeasurementOutcome measure_projective(const StateVector& s,
                                      const std::vector<Matrix>& projectors,
                                      const Labels& targets, SeedStream& rng);
MeasurementOutcome measure_kraus(const StateVector& s, const KrausSet& k,
                                 const Labels& targets, SeedStream& rng);

/// Index drawn from a discrete distribution; impossible entries are never
/// returned.
std::size_t sample_index(const std::vector<double>& probs, SeedStream& rng);

bool is_unitary(const Matrix& u, double tol = kCompletenessTol);

/// Haar-random unitary via QR of a complex Ginibre matrix with the phases
/// of R's diagonal folded back into Q.
Matrix haar_unitary(std::size_t dim, SeedStream& rng);

}  // namespace csbc::qsim
