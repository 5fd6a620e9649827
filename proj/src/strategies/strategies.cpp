// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/strategies/strategies.hpp"

#include <cmath>
#include <numbers>

#include "csbc/qsim/gates.hpp"
#include "csbc/qsim/serialize.hpp"

namespace csbc::strategies {

namespace gates = qsim::gates;
using protocol::kCommitQubit;
using protocol::kSingletA;
using protocol::kSingletB;
using protocol::Lab;
using protocol::Window;

namespace {

Bit measure_z(Lab& lab, const qsim::QubitLabel& q, std::string_view label) {
  return protocol::to_bit(static_cast<int>(lab.measure(gates::plane_projectors(0.0), {q}, label)));
}

bool maybe_challenge(Lab& lab, double p) { return lab.coin("challenge", p); }

std::size_t log2_exact(std::size_t d) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  return (std::size_t{1} << n) == d ? n : static_cast<std::size_t>(-1);
}

constexpr std::int64_t kNoSymbol = -1;

CommitSymbol stored_symbol(Lab& lab) {
  return static_cast<CommitSymbol>(lab.memory().at("symbol"));
}

}  // namespace

// ---------------------------------------------------------------- committers

StrategySpec honest_committer(Bit bit, double challenge_probability) {
  StrategySpec s;
  s.role = Role::A;
  s.kind = "honest_committer";
  s.params = {{"bit", protocol::to_int(bit)}, {"challenge_probability", challenge_probability}};
  auto& c = s.callbacks;
  c.commit = [bit](Lab& lab) {
    const auto [computational, diagonal] = protocol::symbols_for(bit);
    const bool use_diagonal = lab.coin("encoding", 0.5);
    const CommitSymbol r = use_diagonal ? diagonal : computational;
    lab.memory()["symbol"] = static_cast<std::int64_t>(r);
    lab.prepare(qsim::StateVector({kCommitQubit}, protocol::symbol_state(r)));
  };
  c.challenge_option = [challenge_probability](Lab& lab) {
    return maybe_challenge(lab, challenge_probability);
  };
  c.surrender_singlet = [](Lab&) { return kSingletA; };
  c.declare_bit = [bit](Lab&) { return bit; };
  c.game_measure = [](Lab& lab) { return measure_z(lab, kSingletA, "game"); };
  c.name_symbol = [](Lab& lab) { return stored_symbol(lab); };
  c.expected_return = [](Lab& lab) { return protocol::symbol_state(stored_symbol(lab)); };
  return s;
}

StrategySpec bit_flip_committer() {
  StrategySpec s = honest_committer(Bit::Zero);
  s.kind = "bit_flip_committer";
  s.params = nlohmann::json::object();
  s.callbacks.declare_bit = [](Lab&) { return Bit::One; };
  s.callbacks.name_symbol = [](Lab& lab) {
    return stored_symbol(lab) == CommitSymbol::S0 ? CommitSymbol::S1 : CommitSymbol::Splus;
  };
  return s;
}

EntangledCommitment::EntangledCommitment(std::array<qsim::Vector, 4> alpha,
                                         qsim::Matrix unveil_unitary)
    : alpha_(std::move(alpha)), unveil_(std::move(unveil_unitary)) {
  const auto dim = static_cast<std::size_t>(alpha_[0].size());
  ancilla_qubits_ = log2_exact(dim);
  if (ancilla_qubits_ < 1 || ancilla_qubits_ > protocol::kCommitterAncillaBudget) {
    throw std::invalid_argument("entangled commitment needs 1 to 3 ancilla qubits");
  }
  for (const auto& a : alpha_) {
    if (static_cast<std::size_t>(a.size()) != dim) {
      throw std::invalid_argument("ancilla states differ in dimension");
    }
  }
  if (static_cast<std::size_t>(unveil_.rows()) != dim || !qsim::is_unitary(unveil_)) {
    throw std::invalid_argument("unveil_unitary must be a unitary on the ancilla");
  }
  // Raw joint vector; StateVector would silently normalize.
  qsim::Vector psi = qsim::Vector::Zero(static_cast<Eigen::Index>(2 * dim));
  for (std::size_t r = 0; r < 4; ++r) {
    const qsim::Vector c = protocol::symbol_state(static_cast<CommitSymbol>(r));
    for (std::size_t j = 0; j < dim; ++j) {
      psi(static_cast<Eigen::Index>(2 * j)) += alpha_[r](static_cast<Eigen::Index>(j)) * c(0);
      psi(static_cast<Eigen::Index>(2 * j + 1)) += alpha_[r](static_cast<Eigen::Index>(j)) * c(1);
    }
  }
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("committed state must have unit norm");
  }

  const qsim::StateVector joint = joint_state();
  const qsim::Vector rotated = qsim::apply_operator(joint, unveil_, ancilla_labels());
  const std::size_t half = dim / 2;  // remaining-ancilla dimension
  for (int k = 0; k < 2; ++k) {
    qsim::Vector x(static_cast<Eigen::Index>(half));
    qsim::Vector y(static_cast<Eigen::Index>(half));
    for (std::size_t j = 0; j < half; ++j) {
      const std::size_t base = (static_cast<std::size_t>(k) * half + j) * 2;
      x(static_cast<Eigen::Index>(j)) = rotated(static_cast<Eigen::Index>(base));
      y(static_cast<Eigen::Index>(j)) = rotated(static_cast<Eigen::Index>(base + 1));
    }
    Collapse col;
    if (k == 0) {
      // x|0⟩ + y|1⟩ = (x + y)|0⟩ − √2 y|−⟩
      col.first = x + y;
      col.second = -std::numbers::sqrt2 * y;
    } else {
      // x|0⟩ + y|1⟩ = (y − x)|1⟩ + √2 x|+⟩
      col.first = y - x;
      col.second = std::numbers::sqrt2 * x;
    }
    if (std::abs(col.first.dot(col.second)) > kBranchOrthoTol) {
      throw std::invalid_argument("declared-bit-" + std::to_string(k) +
                                  " branch cannot be collapsed onto one encoding state");
    }
    collapse_[static_cast<std::size_t>(k)] = std::move(col);
  }
}

EntangledCommitment EntangledCommitment::classical(CommitSymbol r) {
  std::array<qsim::Vector, 4> alpha;
  for (auto& a : alpha) a = qsim::Vector::Zero(2);
  alpha[static_cast<std::size_t>(r)](protocol::to_int(protocol::bit_of(r))) = 1.0;
  return EntangledCommitment(std::move(alpha), gates::identity(2));
}

EntangledCommitment EntangledCommitment::canonical(std::array<double, 4> weights,
                                                   const qsim::Vector& a0, const qsim::Vector& a1,
                                                   const qsim::Matrix& rotation) {
  auto perp = [](const qsim::Vector& v) {
    qsim::Vector p(2);
    p << -std::conj(v(1)), std::conj(v(0));
    return p;
  };
  const qsim::Vector n0 = a0.normalized();
  const qsim::Vector n1 = a1.normalized();
  // Ancilla (A'', A') vectors per symbol before rotation.
  auto anc = [](int k, const qsim::Vector& dir) {
    qsim::Vector v = qsim::Vector::Zero(4);
    v.segment(2 * k, 2) = dir;
    return v;
  };
  const qsim::Matrix back = rotation.adjoint();
  std::array<qsim::Vector, 4> alpha;
  alpha[static_cast<std::size_t>(CommitSymbol::S0)] = back * (std::sqrt(weights[0]) * anc(0, n0));
  alpha[static_cast<std::size_t>(CommitSymbol::Sminus)] =
      back * (std::sqrt(weights[1]) * anc(0, perp(n0)));
  alpha[static_cast<std::size_t>(CommitSymbol::S1)] = back * (std::sqrt(weights[2]) * anc(1, n1));
  alpha[static_cast<std::size_t>(CommitSymbol::Splus)] =
      back * (std::sqrt(weights[3]) * anc(1, perp(n1)));
  return EntangledCommitment(std::move(alpha), rotation);
}

EntangledCommitment EntangledCommitment::random(qsim::SeedStream& rng) {
  std::array<double, 4> w{};
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : w) x /= total;
  auto direction = [&rng] {
    qsim::Vector v(2);
    for (Eigen::Index i = 0; i < 2; ++i) v(i) = {rng.normal(), rng.normal()};
    return qsim::Vector(v.normalized());
  };
  const qsim::Vector a0 = direction();
  const qsim::Vector a1 = direction();
  return canonical(w, a0, a1, qsim::haar_unitary(4, rng));
}

qsim::Labels EntangledCommitment::ancilla_labels() const {
  qsim::Labels out;
  for (std::size_t i = 0; i < ancilla_qubits_; ++i) {
    out.emplace_back("ancilla_A" + std::to_string(i));
  }
  return out;
}

qsim::StateVector EntangledCommitment::joint_state() const {
  const auto dim = static_cast<std::size_t>(alpha_[0].size());
  qsim::Vector psi = qsim::Vector::Zero(static_cast<Eigen::Index>(2 * dim));
  for (std::size_t r = 0; r < 4; ++r) {
    const qsim::Vector c = protocol::symbol_state(static_cast<CommitSymbol>(r));
    for (std::size_t j = 0; j < dim; ++j) {
      psi(static_cast<Eigen::Index>(2 * j)) += alpha_[r](static_cast<Eigen::Index>(j)) * c(0);
      psi(static_cast<Eigen::Index>(2 * j + 1)) += alpha_[r](static_cast<Eigen::Index>(j)) * c(1);
    }
  }
  qsim::Labels ls = ancilla_labels();
  ls.push_back(kCommitQubit);
  return qsim::StateVector(std::move(ls), std::move(psi));
}

qsim::DensityMatrix EntangledCommitment::reduced_c() const {
  return qsim::partial_trace(joint_state(), {kCommitQubit});
}

double EntangledCommitment::declare_probability(Bit k) const {
  // |u|²·‖|0⟩‖² + |u⊥|²·‖|−⟩‖², cross term vanishes by orthogonality
  const auto& c = collapse(k);
  return qsim::clamp_prob(c.first.squaredNorm() + c.second.squaredNorm());
}

namespace {

// Measures the remaining ancilla to learn which encoding state C collapsed
// onto in the declared branch k.
CommitSymbol resolve_entangled_symbol(Lab& lab, const EntangledCommitment& ec) {
  auto& mem = lab.memory();
  if (auto it = mem.find("symbol"); it != mem.end() && it->second != kNoSymbol) {
    return static_cast<CommitSymbol>(it->second);
  }
  const Bit k = protocol::to_bit(static_cast<int>(mem.at("k")));
  const auto [first_sym, second_sym] = k == Bit::Zero
                                           ? std::pair{CommitSymbol::S0, CommitSymbol::Sminus}
                                           : std::pair{CommitSymbol::S1, CommitSymbol::Splus};
  const auto& col = ec.collapse(k);
  CommitSymbol result = first_sym;
  if (ec.ancilla_qubits() == 1) {
    result = col.first.norm() >= col.second.norm() ? first_sym : second_sym;
  } else {
    const qsim::Labels all = ec.ancilla_labels();
    const qsim::Labels rest(all.begin() + 1, all.end());
    const auto d = col.first.size();
    std::vector<qsim::Matrix> projectors;
    std::vector<CommitSymbol> meaning;
    qsim::Matrix used = qsim::Matrix::Zero(d, d);
    qsim::Vector f_hat = qsim::Vector::Zero(d);
    if (col.first.norm() > 1e-12) {
      f_hat = col.first.normalized();
      projectors.push_back(gates::projector(f_hat));
      meaning.push_back(first_sym);
      used += projectors.back();
    }
    qsim::Vector s = col.second - f_hat * f_hat.dot(col.second);
    if (s.norm() > 1e-12) {
      projectors.push_back(gates::projector(s.normalized()));
      meaning.push_back(second_sym);
      used += projectors.back();
    }
    const qsim::Matrix remainder = qsim::Matrix::Identity(d, d) - used;
    if (remainder.norm() > 1e-9) {
      projectors.push_back(remainder);
      meaning.push_back(first_sym);
    }
    const std::size_t outcome = lab.measure(projectors, rest, "collapse");
    result = meaning[outcome];
  }
  mem["symbol"] = static_cast<std::int64_t>(result);
  return result;
}

}  // namespace

StrategySpec entangled_committer(EntangledCommitment ec, double challenge_probability) {
  StrategySpec s = honest_committer(Bit::Zero, challenge_probability);
  s.kind = "entangled_committer";
  nlohmann::json alpha = nlohmann::json::array();
  for (const auto& a : ec.alpha()) alpha.push_back(qsim::to_json(a));
  s.params = {{"alpha", std::move(alpha)},
              {"unveil_unitary", qsim::to_json(ec.unveil_unitary())},
              {"challenge_probability", challenge_probability}};
  auto shared = std::make_shared<const EntangledCommitment>(std::move(ec));
  auto& c = s.callbacks;
  c.commit = [shared](Lab& lab) {
    lab.memory()["symbol"] = kNoSymbol;
    lab.prepare(shared->joint_state());
  };
  c.declare_bit = [shared](Lab& lab) {
    const qsim::Labels anc = shared->ancilla_labels();
    lab.apply(shared->unveil_unitary(), anc);
    const Bit k = measure_z(lab, anc.front(), "unveil");
    lab.memory()["k"] = protocol::to_int(k);
    return k;
  };
  c.name_symbol = [shared](Lab& lab) { return resolve_entangled_symbol(lab, *shared); };
  c.expected_return = [shared](Lab& lab) {
    return protocol::symbol_state(resolve_entangled_symbol(lab, *shared));
  };
  return s;
}

// ----------------------------------------------------------------- receivers

StrategySpec honest_receiver(double challenge_probability) {
  StrategySpec s;
  s.role = Role::B;
  s.kind = "honest_receiver";
  s.params = {{"challenge_probability", challenge_probability}};
  auto& c = s.callbacks;
  c.prelude = [](Lab& lab) {
    lab.prepare(qsim::StateVector({kSingletA, kSingletB}, gates::singlet()));
  };
  c.challenge_option = [challenge_probability](Lab& lab) {
    return maybe_challenge(lab, challenge_probability);
  };
  c.surrender_singlet = [](Lab&) { return kSingletB; };
  c.game_report = [](Lab& lab) { return measure_z(lab, kSingletB, "game"); };
  c.return_qubit = [](Lab&) { return kCommitQubit; };
  return s;
}

StrategySpec measuring_receiver(double basis_angle) {
  StrategySpec s = honest_receiver();
  s.kind = "measuring_receiver";
  s.params = {{"basis_angle", basis_angle}};
  s.callbacks.local_window = [basis_angle](Lab& lab, Window w) {
    if (w != Window::AfterCommit) return;
    const auto k = lab.measure(gates::plane_projectors(basis_angle), {kCommitQubit}, "measure_C");
    lab.record_info(static_cast<std::int64_t>(k));
  };
  return s;
}

AncillaAttack::AncillaAttack(std::size_t ancilla_dim, qsim::Matrix u1, qsim::Matrix readout)
    : dim_(ancilla_dim), u1_(std::move(u1)), readout_(std::move(readout)) {
  if (dim_ != 1 && dim_ != 2 && dim_ != 4) {
    throw std::invalid_argument("ancilla_dim must be 1, 2 or 4");
  }
  if (static_cast<std::size_t>(u1_.rows()) != 2 * dim_ || !qsim::is_unitary(u1_)) {
    throw std::invalid_argument("U1 must be a unitary on ancilla (x) C");
  }
  if (static_cast<std::size_t>(readout_.rows()) != dim_ || !qsim::is_unitary(readout_)) {
    throw std::invalid_argument("readout must be an orthonormal basis of the ancilla");
  }
}

AncillaAttack::AncillaAttack(std::size_t ancilla_dim, qsim::Matrix u1)
    : AncillaAttack(ancilla_dim, std::move(u1), gates::identity(ancilla_dim)) {}

AncillaAttack AncillaAttack::identity(std::size_t ancilla_dim) {
  return AncillaAttack(ancilla_dim, gates::identity(2 * ancilla_dim));
}

AncillaAttack AncillaAttack::swap() { return AncillaAttack(2, gates::swap()); }

AncillaAttack AncillaAttack::partial_swap(double theta) {
  return AncillaAttack(2, gates::partial_swap(theta));
}

AncillaAttack AncillaAttack::haar(std::size_t ancilla_dim, qsim::SeedStream& rng) {
  qsim::Matrix u1 = qsim::haar_unitary(2 * ancilla_dim, rng);
  qsim::Matrix readout = qsim::haar_unitary(ancilla_dim, rng);
  return AncillaAttack(ancilla_dim, std::move(u1), std::move(readout));
}

std::size_t AncillaAttack::ancilla_qubits() const noexcept { return dim_ == 1 ? 0 : (dim_ == 2 ? 1 : 2); }

qsim::Labels AncillaAttack::ancilla_labels() const {
  qsim::Labels out;
  for (std::size_t i = 0; i < ancilla_qubits(); ++i) out.emplace_back("ancilla_B" + std::to_string(i));
  return out;
}

std::vector<qsim::Matrix> AncillaAttack::readout_projectors() const {
  std::vector<qsim::Matrix> out;
  for (Eigen::Index i = 0; i < readout_.cols(); ++i) out.push_back(gates::projector(readout_.col(i)));
  return out;
}

StrategySpec ancilla_receiver(AncillaAttack attack, std::set<std::int64_t> challenge_outcomes) {
  StrategySpec s = honest_receiver();
  s.kind = "ancilla_receiver";
  s.params = {{"ancilla_dim", attack.ancilla_dim()},
              {"u1", qsim::to_json(attack.u1())},
              {"readout", qsim::to_json(attack.readout())},
              {"challenge_outcomes", challenge_outcomes}};
  auto shared = std::make_shared<const AncillaAttack>(std::move(attack));
  s.callbacks.local_window = [shared](Lab& lab, Window w) {
    if (w != Window::AfterCommit) return;
    const qsim::Labels anc = shared->ancilla_labels();
    std::int64_t outcome = 0;
    if (anc.empty()) {
      lab.apply(shared->u1(), {kCommitQubit});
    } else {
      lab.prepare(qsim::basis_state(anc, 0));
      qsim::Labels targets = anc;
      targets.push_back(kCommitQubit);
      lab.apply(shared->u1(), targets);
      outcome = static_cast<std::int64_t>(lab.measure(shared->readout_projectors(), anc, "readout"));
    }
    lab.memory()["readout"] = outcome;
    lab.record_info(outcome);
  };
  s.callbacks.challenge_option = [outcomes = std::move(challenge_outcomes)](Lab& lab) {
    return outcomes.contains(lab.memory().at("readout"));
  };
  return s;
}

StrategySpec lying_game_receiver() {
  StrategySpec s = honest_receiver();
  s.kind = "lying_game_receiver";
  s.params = nlohmann::json::object();
  s.callbacks.game_report = [](Lab& lab) { return protocol::flip(measure_z(lab, kSingletB, "game")); };
  return s;
}

// ------------------------------------------------------------------ tampering

StrategySpec singlet_tampering_party(Role role, TamperOp op, Bit bit, double challenge_probability) {
  StrategySpec s = role == Role::A ? honest_committer(bit, challenge_probability)
                                   : honest_receiver(challenge_probability);
  s.kind = "singlet_tampering_party";
  const char* op_name = op.kind == TamperOp::Kind::measure
                            ? "measure"
                            : (op.kind == TamperOp::Kind::rotate ? "rotate" : "substitute");
  s.params = {{"role", std::string(protocol::name(role))},
              {"op", op_name},
              {"angle", op.angle},
              {"bit", protocol::to_int(bit)},
              {"challenge_probability", challenge_probability}};
  const qsim::QubitLabel own = role == Role::A ? kSingletA : kSingletB;
  switch (op.kind) {
    case TamperOp::Kind::measure:
      s.callbacks.local_window = [own, angle = op.angle](Lab& lab, Window w) {
        if (w == Window::AfterCommit) lab.measure(gates::plane_projectors(angle), {own}, "tamper");
      };
      break;
    case TamperOp::Kind::rotate:
      s.callbacks.local_window = [own, angle = op.angle](Lab& lab, Window w) {
        if (w == Window::AfterCommit) lab.apply(gates::ry(angle), {own});
        if (w == Window::BeforeUnveil) lab.apply(gates::ry(-angle), {own});
      };
      break;
    case TamperOp::Kind::substitute: {
      const qsim::QubitLabel fresh(role == Role::A ? "substitute_A" : "substitute_B");
      s.callbacks.surrender_singlet = [fresh](Lab& lab) {
        lab.prepare(qsim::basis_state({fresh}, 0));
        return fresh;
      };
      break;
    }
  }
  return s;
}

}  // namespace csbc::strategies
