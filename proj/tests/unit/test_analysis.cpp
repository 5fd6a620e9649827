// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csbc/analysis/detection.hpp"
#include "csbc/analysis/information.hpp"
#include "csbc/analysis/lemma.hpp"
#include "csbc/qsim/gates.hpp"
#include "csbc/strategies/strategies.hpp"

using namespace csbc;
using namespace csbc::analysis;
using namespace csbc::strategies;
namespace g = csbc::qsim::gates;

namespace {

qsim::DensityMatrix qubit(const qsim::Matrix& m) { return qsim::DensityMatrix(qsim::labels({"C"}), m); }

qsim::Matrix kron_id(const qsim::Matrix& slot, std::size_t m) {
  return g::kron(slot, qsim::Matrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)));
}

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328));
}

TEST_CASE("p_unveil on encoding states") {
  CHECK(p_unveil(qubit(g::projector(g::ket0()))).p0 == doctest::Approx(1.0));
  CHECK(p_unveil(qubit(g::projector(g::ket_minus()))).p0 == doctest::Approx(1.0));
  CHECK(p_unveil(qubit(g::projector(g::ket1()))).p0 == doctest::Approx(0.0));
  CHECK(p_unveil(qubit(g::projector(g::ket_plus()))).p1 == doctest::Approx(1.0));
  const auto mixed = p_unveil(qubit(g::identity(2) / 2.0));
  CHECK(mixed.p0 == doctest::Approx(0.5));
  CHECK(mixed.p0 + mixed.p1 == doctest::Approx(1.0));
  // A Y eigenstate has Tr(ρσ) = 1 exactly.
  qsim::Vector y(2);
  y << 1.0 / std::sqrt(2.0), qsim::Complex(0, 1.0 / std::sqrt(2.0));
  CHECK(p_unveil(qubit(g::projector(y))).raw_p0 == doctest::Approx(0.5));
}

TEST_CASE("p_unveil matches the declare probability of valid commitments") {
  qsim::SeedStream rng(11);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto ec = EntangledCommitment::random(rng);
    const auto pu = p_unveil(ec.reduced_c());
    worst = std::max(worst, std::abs(pu.p0 - ec.declare_probability(Bit::Zero)));
    REQUIRE(pu.raw_p0 >= -1e-9);
    REQUIRE(pu.raw_p0 <= 1.0 + 1e-9);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("p_unveil check against protocol runs") {
  qsim::SeedStream rng(12);
  for (int i = 0; i < 3; ++i) {
    const auto check = verify_punveil_vs_protocol(EntangledCommitment::random(rng), 4000, 100 + i, 2);
    CHECK(check.consistent);
    CHECK(check.n == 4000);
  }
  const auto sure = verify_punveil_vs_protocol(EntangledCommitment::classical(CommitSymbol::Sminus), 500, 1, 1);
  CHECK(sure.expected_p0 == doctest::Approx(1.0));
  CHECK(sure.empirical_p0 == 1.0);
  CHECK(sure.consistent);
}

TEST_CASE("lemma factorization on constructed operators") {
  SUBCASE("ancilla-only operators factor") {
    qsim::SeedStream rng(4);
    const qsim::Matrix u = qsim::haar_unitary(2, rng);
    const qsim::KrausSet k({g::kron(g::identity(2), u * std::sqrt(0.3)), g::kron(g::identity(2), u * std::sqrt(0.7))});
    const auto v = lemma1_factor(k, 2, 2);
    CHECK(v.factored);
    CHECK(v.singlet_preserved);
    REQUIRE(v.factors);
    CHECK(((*v.factors)[0] - u * std::sqrt(0.3)).norm() < 1e-12);
    CHECK(!v.witness);
  }
  SUBCASE("a slot Z breaks the singlet") {
    const auto v = lemma1_factor(qsim::KrausSet({kron_id(g::pauli_z(), 2)}), 2, 2);
    CHECK(!v.factored);
    CHECK(!v.singlet_preserved);
    REQUIRE(v.witness);
    CHECK(v.witness->index == 0);
    CHECK(v.witness->norm == doctest::Approx(2.0));
    CHECK(!v.factors);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(lemma1_factor(qsim::KrausSet({g::identity(4)}), 3, 2), qsim::Error);
    CHECK_THROWS_AS(lemma1_factor(qsim::KrausSet({g::identity(4)}), 2, 4), qsim::Error);
  }
}

TEST_CASE("witness norm grows continuously with the slot admixture") {
  double last = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double th = 0.05 * i;
    const qsim::KrausSet k({std::cos(th) * kron_id(g::identity(2), 2), std::sin(th) * kron_id(g::pauli_x(), 2)});
    const auto v = lemma1_factor(k, 2, 2);
    if (i == 0) {
      CHECK(v.factored);
      last = 0.0;
      continue;
    }
    REQUIRE(v.witness);
    CHECK(v.witness->index == 1);
    CHECK(v.witness->norm == doctest::Approx(2.0 * std::sin(th)));
    CHECK(v.witness->norm > last);
    last = v.witness->norm;
  }
}

TEST_CASE("no-information check") {
  const auto id = no_information_check(AncillaAttack::identity());
  CHECK(id.max_overlap_excess == 0.0);
  CHECK(id.outcome_tv_distance < 1e-12);

  const auto sw = no_information_check(AncillaAttack::swap());
  CHECK(sw.max_overlap_excess == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)));
  CHECK(sw.outcome_tv_distance == doctest::Approx(0.5));
  REQUIRE(sw.outcome_given_bit.size() == 2);
  CHECK(sw.outcome_given_bit[0][0] == doctest::Approx(0.75));

  // Readout 1 post-selects both S1 and Splus onto |0> in the C slot, so the
  // excess saturates for any non-zero coupling while the TV distance grows.
  double last = 0.0;
  for (double th : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    const auto r = no_information_check(AncillaAttack::partial_swap(th));
    CHECK(r.max_overlap_excess == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)));
    CHECK(r.outcome_tv_distance > last);
    last = r.outcome_tv_distance;
  }
}

TEST_CASE("information needs disturbance") {
  qsim::SeedStream rng(21);
  for (int i = 0; i < 30; ++i) {
    const auto attack = AncillaAttack::haar(i % 2 ? 2 : 4, rng);
    const auto b = ancilla_receiver(attack);
    const auto nic = no_information_check(attack);
    const double info = info_gain(b).mutual_information;
    const auto det = detection_exact(honest_committer(Bit::Zero), b);
    if (nic.outcome_tv_distance > 1e-9) CHECK(nic.max_overlap_excess > 0.0);
    if (info > 1e-9) CHECK(det.p_a_detect.p + detection_exact(honest_committer(Bit::One), b).p_a_detect.p > 0.0);
  }
}

TEST_CASE("tradeoff sweep") {
  const auto rows = tradeoff_sweep({0.0, 0.2, 0.6, std::numbers::pi / 2});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].info_bits < 1e-12);
  CHECK(rows[0].p_a_detect < 1e-12);
  CHECK(std::abs(rows[3].info_bits - 0.18872187554086706) < 1e-12);
  CHECK(std::abs(rows[3].p_a_detect - 0.125) < 1e-12);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].info_bits > rows[i - 1].info_bits);
    CHECK(rows[i].p_a_detect > rows[i - 1].p_a_detect);
  }
}

TEST_CASE("info gain bookkeeping") {
  const auto rep = info_gain(measuring_receiver(0.0), 0.3);
  CHECK(rep.prior_one == 0.3);
  REQUIRE(rep.conditional.size() == 2);
  CHECK(rep.conditional.at(0)[0] == doctest::Approx(0.75));
  CHECK(rep.conditional.at(1)[1] == doctest::Approx(0.75));
  const auto none = info_gain(honest_receiver());
  CHECK(none.mutual_information == 0.0);
  CHECK(none.conditional.count(std::nullopt) == 1);
}

TEST_CASE("monte carlo agrees with exact enumeration") {
  const std::pair<StrategySpec, StrategySpec> pairs[] = {
      {honest_committer(Bit::Zero), measuring_receiver(0.0)},
      {bit_flip_committer(), honest_receiver()},
      {honest_committer(Bit::One, 0.5), ancilla_receiver(AncillaAttack::partial_swap(0.7), {1})},
  };
  for (const auto& [a, b] : pairs) {
    const auto ex = detection_exact(a, b);
    const auto mc = detection_mc(a, b, 20000, 99, 2);
    CHECK(mc.n_trials == 20000);
    for (auto [e, m] : {std::pair{ex.p_a_detect, mc.p_a_detect}, std::pair{ex.p_b_detect, mc.p_b_detect}}) {
      const double sigma = std::sqrt(std::max(e.p * (1 - e.p), 1e-12) / 20000);
      CHECK(std::abs(e.p - m.p) < 4 * sigma + 1e-12);
    }
  }
}

TEST_CASE("monte carlo is independent of thread count") {
  const auto a = honest_committer(Bit::Zero);
  const auto b = measuring_receiver(0.4);
  const auto r1 = to_json(detection_mc(a, b, 3001, 5, 1));
  CHECK(to_json(detection_mc(a, b, 3001, 5, 3)) == r1);
  CHECK(to_json(detection_mc(a, b, 3001, 5, 8)) == r1);
  CHECK(to_json(detection_mc(a, b, 3001, 6, 1)) != r1);
  CHECK(binomial_estimate(25, 100).stderr_ == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
}

TEST_CASE("exact mode limits") {
  auto b = honest_receiver();
  b.enumerable = false;
  CHECK_THROWS_AS(detection_exact(honest_committer(Bit::Zero), b), qsim::NotEnumerable);
  CHECK_THROWS_AS(detection_exact(honest_committer(Bit::Zero), measuring_receiver(0.0), 2),
                  qsim::BranchLimitExceeded);
  const auto r = detection_exact(honest_committer(Bit::Zero), measuring_receiver(0.0));
  REQUIRE(r.branch_table);
  double total = 0.0;
  for (const auto& row : *r.branch_table) total += row.probability;
  CHECK(total == doctest::Approx(1.0));
  CHECK(r.n_trials == r.branch_table->size());
}
