// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/qsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace csbc::qsim {

Labels labels(std::initializer_list<const char*> names) {
  Labels out;
  out.reserve(names.size());
  for (const char* n : names) out.emplace_back(n);
  return out;
}

double SeedStream::normal() noexcept {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

std::size_t pow2(std::size_t n) { return std::size_t{1} << n; }

void check_distinct(const Labels& ls, const char* what) {
  std::set<QubitLabel> seen(ls.begin(), ls.end());
  if (seen.size() != ls.size()) {
    throw Error(std::string(what) + ": duplicate qubit label");
  }
}

std::string join(const Labels& ls) {
  std::string out;
  for (const auto& l : ls) {
    if (!out.empty()) out += ",";
    out += l.name();
  }
  return out;
}

// Bit offsets of `subset` inside a register laid out as `all`, big-endian
// over both lists. offsets[t] is the register index contribution of
// sub-index t.
std::vector<std::size_t> sub_offsets(const Labels& all, const Labels& subset) {
  const std::size_t n = all.size();
  const std::size_t k = subset.size();
  std::vector<std::size_t> shifts(k);
  for (std::size_t j = 0; j < k; ++j) {
    auto it = std::find(all.begin(), all.end(), subset[j]);
    if (it == all.end()) throw Error("unknown qubit label: " + subset[j].name());
    shifts[j] = n - 1 - static_cast<std::size_t>(it - all.begin());
  }
  std::vector<std::size_t> offsets(pow2(k), 0);
  for (std::size_t t = 0; t < offsets.size(); ++t) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((t >> (k - 1 - j)) & 1U) off |= std::size_t{1} << shifts[j];
    }
    offsets[t] = off;
  }
  return offsets;
}

Labels complement(const Labels& all, const Labels& subset) {
  Labels rest;
  for (const auto& l : all) {
    if (std::find(subset.begin(), subset.end(), l) == subset.end()) rest.push_back(l);
  }
  return rest;
}

}  // namespace

StateVector::StateVector() : amps_(Vector::Ones(1)) {}

StateVector::StateVector(Labels labels, Vector amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
  if (labels_.size() > kMaxQubits) {
    throw Error("register exceeds " + std::to_string(kMaxQubits) + " qubits");
  }
  check_distinct(labels_, "StateVector");
  if (static_cast<std::size_t>(amps_.size()) != pow2(labels_.size())) {
    throw Error("amplitude vector length " + std::to_string(amps_.size()) +
                " does not match 2^" + std::to_string(labels_.size()));
  }
  const double norm = amps_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw Error("state vector has zero norm");
  amps_ /= norm;
}

bool StateVector::has(const QubitLabel& label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t StateVector::position(const QubitLabel& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error("unknown qubit label: " + label.name());
  return static_cast<std::size_t>(it - labels_.begin());
}

DensityMatrix::DensityMatrix(Labels labels, Matrix mat)
    : labels_(std::move(labels)), mat_(std::move(mat)) {
  check_distinct(labels_, "DensityMatrix");
  const auto dim = static_cast<Eigen::Index>(pow2(labels_.size()));
  if (mat_.rows() != dim || mat_.cols() != dim) {
    throw Error("density matrix dimension does not match 2^" +
                std::to_string(labels_.size()));
  }
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw Error("density matrix is not Hermitian");
  }
  if (std::abs(mat_.trace() - Complex(1.0)) > kNormTol) {
    throw Error("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw Error("density matrix is not positive semidefinite");
  }
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

KrausSet::KrausSet(std::vector<Matrix> ops, KrausMode mode) : ops_(std::move(ops)), mode_(mode) {
  if (ops_.empty()) throw Error("Kraus set is empty");
  const auto d = ops_.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : ops_) {
    if (e.rows() != d || e.cols() != d) throw Error("Kraus operators differ in dimension");
    sum += e.adjoint() * e;
  }
  const Matrix id = Matrix::Identity(d, d);
  if (mode_ == KrausMode::complete) {
    if ((sum - id).norm() > kCompletenessTol) {
      throw Error("Kraus set violates completeness");
    }
  } else {
    const Matrix gap = id - sum;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gap + gap.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kCompletenessTol) {
      throw Error("subnormalized Kraus set exceeds identity");
    }
  }
}

std::size_t KrausSet::dim() const noexcept { return static_cast<std::size_t>(ops_.front().rows()); }

StateVector make_state(Labels labels, Vector amps) { return StateVector(std::move(labels), std::move(amps)); }

StateVector basis_state(Labels labels, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(pow2(labels.size())));
  if (index >= static_cast<std::size_t>(v.size())) throw Error("basis index out of range");
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(labels), std::move(v));
}

StateVector tensor(const StateVector& s1, const StateVector& s2) {
  for (const auto& l : s2.labels()) {
    if (s1.has(l)) throw Error("tensor: overlapping label " + l.name());
  }
  Labels ls = s1.labels();
  ls.insert(ls.end(), s2.labels().begin(), s2.labels().end());
  const auto d1 = s1.amps().size();
  const auto d2 = s2.amps().size();
  Vector out(d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i) {
    out.segment(i * d2, d2) = s1.amps()(i) * s2.amps();
  }
  return StateVector(std::move(ls), std::move(out));
}

StateVector permute(const StateVector& s, const Labels& order) {
  if (order.size() != s.num_qubits()) throw Error("permute: label count mismatch");
  check_distinct(order, "permute");
  const auto offsets = sub_offsets(s.labels(), order);
  Vector out(s.amps().size());
  for (std::size_t t = 0; t < offsets.size(); ++t) {
    out(static_cast<Eigen::Index>(t)) = s.amps()(static_cast<Eigen::Index>(offsets[t]));
  }
  return StateVector(order, std::move(out));
}

Vector apply_operator(const StateVector& s, const Matrix& op, const Labels& targets) {
  check_distinct(targets, "apply");
  const std::size_t sub = pow2(targets.size());
  if (static_cast<std::size_t>(op.rows()) != sub || static_cast<std::size_t>(op.cols()) != sub) {
    throw Error("operator dimension " + std::to_string(op.rows()) + " does not match targets [" +
                join(targets) + "]");
  }
  const auto offsets = sub_offsets(s.labels(), targets);
  std::size_t mask = 0;
  for (auto o : offsets) mask |= o;

  const Vector& in = s.amps();
  Vector out = Vector::Zero(in.size());
  Vector gathered(static_cast<Eigen::Index>(sub));
  for (std::size_t base = 0; base < s.dim(); ++base) {
    if (base & mask) continue;
    for (std::size_t t = 0; t < sub; ++t) {
      gathered(static_cast<Eigen::Index>(t)) = in(static_cast<Eigen::Index>(base + offsets[t]));
    }
    const Vector mapped = op * gathered;
    for (std::size_t t = 0; t < sub; ++t) {
      out(static_cast<Eigen::Index>(base + offsets[t])) = mapped(static_cast<Eigen::Index>(t));
    }
  }
  return out;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

StateVector apply_unitary(const StateVector& s, const Matrix& u, const Labels& targets) {
  if (!is_unitary(u)) throw Error("apply_unitary: matrix is not unitary");
  return StateVector(s.labels(), apply_operator(s, u, targets));
}

DensityMatrix to_density(const StateVector& s) {
  return DensityMatrix(s.labels(), s.amps() * s.amps().adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Labels& keep) {
  check_distinct(keep, "partial_trace");
  const Labels traced = complement(rho.labels(), keep);
  const auto keep_off = sub_offsets(rho.labels(), keep);
  const auto trace_off = sub_offsets(rho.labels(), traced);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (auto t : trace_off) {
        acc += rho.mat()(static_cast<Eigen::Index>(keep_off[r] + t),
                         static_cast<Eigen::Index>(keep_off[c] + t));
      }
      out(r, c) = acc;
    }
  }
  return DensityMatrix(keep, std::move(out));
}

DensityMatrix partial_trace(const StateVector& s, const Labels& keep) {
  check_distinct(keep, "partial_trace");
  const Labels traced = complement(s.labels(), keep);
  const auto keep_off = sub_offsets(s.labels(), keep);
  const auto trace_off = sub_offsets(s.labels(), traced);
  Matrix m(static_cast<Eigen::Index>(keep_off.size()), static_cast<Eigen::Index>(trace_off.size()));
  for (std::size_t r = 0; r < keep_off.size(); ++r) {
    for (std::size_t t = 0; t < trace_off.size(); ++t) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) =
          s.amps()(static_cast<Eigen::Index>(keep_off[r] + trace_off[t]));
    }
  }
  Matrix rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(keep, std::move(rho));
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& parts) {
  if (parts.empty()) throw Error("mix: no components");
  const Labels& ls = parts.front().second.labels();
  Matrix acc = Matrix::Zero(parts.front().second.mat().rows(), parts.front().second.mat().cols());
  for (const auto& [w, rho] : parts) {
    if (rho.labels() != ls) throw Error("mix: label mismatch");
    acc += w * rho.mat();
  }
  return DensityMatrix(ls, std::move(acc));
}

namespace {

// b reordered to a's label order; throws unless the label sets agree.
StateVector aligned(const Labels& target, const StateVector& b) {
  if (b.labels() == target) return b;
  std::set<QubitLabel> sa(target.begin(), target.end());
  std::set<QubitLabel> sb(b.labels().begin(), b.labels().end());
  if (sa != sb || target.size() != b.num_qubits()) {
    throw Error("label mismatch: [" + join(target) + "] vs [" + join(b.labels()) + "]");
  }
  return permute(b, target);
}

}  // namespace

double fidelity_pure(const DensityMatrix& rho, const StateVector& psi) {
  const StateVector p = aligned(rho.labels(), psi);
  return clamp_prob((p.amps().adjoint() * rho.mat() * p.amps())(0, 0).real());
}

Complex inner(const StateVector& a, const StateVector& b) {
  const StateVector bb = aligned(a.labels(), b);
  return a.amps().dot(bb.amps());
}

double overlap(const StateVector& a, const StateVector& b) { return clamp_prob(std::abs(inner(a, b))); }

void validate_projectors(const std::vector<Matrix>& projectors, std::size_t dim) {
  if (projectors.empty()) throw Error("empty projector set");
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const Matrix& p = projectors[i];
    if (p.rows() != d || p.cols() != d) throw Error("projector dimension mismatch");
    if ((p - p.adjoint()).norm() > kCompletenessTol) throw Error("projector is not Hermitian");
    if ((p * p - p).norm() > kCompletenessTol) throw Error("projector is not idempotent");
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if ((p * projectors[j]).norm() > kCompletenessTol) throw Error("projectors are not orthogonal");
    }
    sum += p;
  }
  if ((sum - Matrix::Identity(d, d)).norm() > kCompletenessTol) {
    throw Error("incomplete projector set");
  }
}

namespace {

std::vector<Branch> branches_of(const StateVector& s, const std::vector<Matrix>& ops,
                                const Labels& targets) {
  std::vector<Branch> out;
  out.reserve(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    Vector v = apply_operator(s, ops[i], targets);
    const double p = clamp_prob(v.squaredNorm());
    Branch b{i, p, std::nullopt};
    if (p > kImpossible) b.post_state = StateVector(s.labels(), std::move(v));
    out.push_back(std::move(b));
  }
  return out;
}

MeasurementOutcome sample(std::vector<Branch> branches, SeedStream& rng) {
  std::vector<double> probs;
  probs.reserve(branches.size());
  for (const auto& b : branches) probs.push_back(b.probability);
  const std::size_t i = sample_index(probs, rng);
  return {branches[i].index, branches[i].probability, std::move(*branches[i].post_state)};
}

}  // namespace

std::vector<Branch> projective_branches(const StateVector& s, const std::vector<Matrix>& projectors,
                                        const Labels& targets) {
  validate_projectors(projectors, pow2(targets.size()));
  return branches_of(s, projectors, targets);
}

std::vector<Branch> kraus_branches(const StateVector& s, const KrausSet& k, const Labels& targets) {
  if (k.mode() != KrausMode::complete) throw Error("measure_kraus requires a complete Kraus set");
  return branches_of(s, k.ops(), targets);
}

MeasurementOutcome measure_projective(const StateVector& s, const std::vector<Matrix>& projectors,
                                      const Labels& targets, SeedStream& rng) {
  return sample(projective_branches(s, projectors, targets), rng);
}

MeasurementOutcome measure_kraus(const StateVector& s, const KrausSet& k, const Labels& targets,
                                 SeedStream& rng) {
  return sample(kraus_branches(s, k, targets), rng);
}

std::size_t sample_index(const std::vector<double>& probs, SeedStream& rng) {
  double total = 0.0;
  std::size_t last = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > kImpossible) {
      total += probs[i];
      last = i;
    }
  }
  if (last == probs.size()) throw Error("no possible outcome to sample");
  const double u = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= kImpossible) continue;
    acc += probs[i];
    if (u < acc) return i;
  }
  return last;
}

Matrix haar_unitary(std::size_t dim, SeedStream& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix z(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(r, c) = Complex(re, im) / std::numbers::sqrt2;
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < d; ++c) {
    const Complex rc = r(c, c);
    const double mag = std::abs(rc);
    if (mag > 0.0) q.col(c) *= rc / mag;
  }
  return q;
}

}  // namespace csbc::qsim
