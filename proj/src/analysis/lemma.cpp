// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/analysis/lemma.hpp"

#include <algorithm>

#include "csbc/qsim/gates.hpp"
#include "csbc/qsim/serialize.hpp"

namespace csbc::analysis {

namespace {

// Residual of (E ⊗ I_B) acting on |Ψ⁻⟩ ⊗ |j⟩ outside span{|Ψ⁻⟩} ⊗ ancilla,
// maximized over ancilla basis states j. Qubit order: slot, B half, ancilla.
double singlet_residual(const qsim::Matrix& e, std::size_t m) {
  const auto dm = static_cast<Eigen::Index>(m);
  const qsim::Vector singlet = qsim::gates::singlet();  // over (slot, B)
  // E on (slot, ancilla) embedded in (slot, B, ancilla).
  qsim::Matrix big = qsim::Matrix::Zero(4 * dm, 4 * dm);
  for (Eigen::Index s = 0; s < 2; ++s) {
    for (Eigen::Index t = 0; t < 2; ++t) {
      const qsim::Matrix blk = e.block(s * dm, t * dm, dm, dm);
      for (Eigen::Index b = 0; b < 2; ++b) big.block((2 * s + b) * dm, (2 * t + b) * dm, dm, dm) = blk;
    }
  }
  const qsim::Matrix keep = qsim::gates::kron(qsim::gates::projector(singlet), qsim::Matrix::Identity(dm, dm));
  double worst = 0.0;
  for (Eigen::Index j = 0; j < dm; ++j) {
    const qsim::Vector in = qsim::gates::kron(singlet, qsim::Vector::Unit(dm, j));
    const qsim::Vector out = big * in;
    worst = std::max(worst, (out - keep * out).norm());
  }
  return worst;
}

}  // namespace

Lemma1Verdict lemma1_factor(const qsim::KrausSet& k, std::size_t singlet_slot_dim,
                            std::size_t ancilla_dim) {
  if (singlet_slot_dim != 2) throw qsim::Error("the singlet slot must be a qubit");
  if (ancilla_dim == 0 || k.dim() != 2 * ancilla_dim) {
    throw qsim::Error("Kraus operators must act on slot (x) ancilla of dimension " +
                      std::to_string(2 * ancilla_dim));
  }
  const auto m = static_cast<Eigen::Index>(ancilla_dim);
  Lemma1Verdict v;
  v.singlet_preserved = true;
  std::vector<qsim::Matrix> factors;
  double worst_residual = -1.0;
  for (std::size_t i = 0; i < k.ops().size(); ++i) {
    const qsim::Matrix& e = k.ops()[i];
    const qsim::Matrix ep = 0.5 * (e.block(0, 0, m, m) + e.block(m, m, m, m));
    const qsim::Matrix deviation = e - qsim::gates::kron(qsim::Matrix::Identity(2, 2), ep);
    const double err = deviation.norm();
    v.max_reconstruction_error = std::max(v.max_reconstruction_error, err);
    factors.push_back(ep);

    const double residual = singlet_residual(e, ancilla_dim);
    if (residual >= kFactorTol) {
      v.singlet_preserved = false;
      if (residual > worst_residual) {
        worst_residual = residual;
        v.witness = Lemma1Witness{i, deviation, err};
      }
    }
  }
  v.factored = v.singlet_preserved && v.max_reconstruction_error < kFactorTol;
  if (v.factored) v.factors = std::move(factors);
  return v;
}

nlohmann::json to_json(const Lemma1Verdict& v) {
  nlohmann::json j{{"factored", v.factored},
                   {"singlet_preserved", v.singlet_preserved},
                   {"max_reconstruction_error", v.max_reconstruction_error}};
  if (v.factors) {
    auto fs = nlohmann::json::array();
    for (const auto& f : *v.factors) fs.push_back(qsim::to_json(f));
    j["factors"] = std::move(fs);
  } else {
    j["factors"] = nullptr;
  }
  if (v.witness) {
    j["witness"] = {{"index", v.witness->index},
                    {"block", qsim::to_json(v.witness->block)},
                    {"norm", v.witness->norm}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace csbc::analysis
