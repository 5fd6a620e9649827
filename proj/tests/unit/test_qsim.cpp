// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csbc/qsim/chance.hpp"
#include "csbc/qsim/gates.hpp"
#include "csbc/qsim/serialize.hpp"
#include "csbc/qsim/state.hpp"

using namespace csbc::qsim;
namespace g = csbc::qsim::gates;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Vector vec(std::initializer_list<Complex> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

StateVector random_state(const Labels& ls, SeedStream& rng) {
  Vector v(static_cast<Eigen::Index>(1u << ls.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {rng.normal(), rng.normal()};
  return StateVector(ls, v);
}

}  // namespace

TEST_CASE("rng known answers and stream derivation") {
  SeedStream s(0);
  CHECK(s.next_u64() == 0xE220A8397B1DCDAFULL);
  SeedStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(SeedStream(7).derive(3).key() == SeedStream(7).derive(3).key());
  CHECK(SeedStream(7).derive(3).key() != SeedStream(7).derive(4).key());
  SeedStream u(9);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    mean += x / 20000;
  }
  CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("make_state examples and errors") {
  const auto zero = make_state(labels({"q"}), vec({1, 0}));
  CHECK(std::abs(zero.amps()(0)) == doctest::Approx(1.0));
  const auto minus = make_state(labels({"q"}), vec({1, -1}));
  CHECK(overlap(StateVector(labels({"q"}), g::ket0()), minus) == doctest::Approx(kInvSqrt2));
  const auto singlet = make_state(labels({"a", "b"}), vec({0, 1, -1, 0}));
  CHECK(overlap(singlet, StateVector(labels({"a", "b"}), g::singlet())) == doctest::Approx(1.0));
  CHECK_THROWS_AS(make_state(labels({"q"}), vec({1, 0, 0})), Error);
  CHECK_THROWS_AS(make_state(labels({"q"}), vec({0, 0})), Error);
}

TEST_CASE("tensor") {
  const StateVector z(labels({"a"}), g::ket0()), o(labels({"b"}), g::ket1());
  const auto t = tensor(z, o);
  CHECK(std::abs(t.amps()(1) - 1.0) < 1e-12);
  CHECK(t.amps().norm() == doctest::Approx(1.0));
  const auto big = tensor(StateVector(labels({"a", "b"}), g::singlet()), StateVector(labels({"c"}), g::ket_minus()));
  CHECK(big.num_qubits() == 3);
  CHECK(big.amps().norm() == doctest::Approx(1.0));
  const auto pp = tensor(StateVector(labels({"a"}), g::ket_plus()), StateVector(labels({"b"}), g::ket_plus()));
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(std::abs(pp.amps()(i) - 0.5) < 1e-12);
  CHECK_THROWS_AS(tensor(z, z), Error);
}

TEST_CASE("apply_unitary") {
  const StateVector zero(labels({"q"}), g::ket0());
  const auto plus = apply_unitary(zero, g::hadamard(), labels({"q"}));
  CHECK(overlap(plus, StateVector(labels({"q"}), g::ket_plus())) == doctest::Approx(1.0));

  // Z on the first half: (|01> - |10>)/√2 -> (|01> + |10>)/√2, by hand.
  const StateVector singlet(labels({"a", "b"}), g::singlet());
  const auto out = apply_unitary(singlet, g::pauli_z(), labels({"a"}));
  const Vector psi_plus = vec({0, kInvSqrt2, kInvSqrt2, 0});
  CHECK((out.amps() - psi_plus).norm() < 1e-12);

  CHECK((apply_unitary(singlet, g::identity(4), labels({"a", "b"})).amps() - singlet.amps()).norm() < 1e-12);
  CHECK_THROWS_AS(apply_unitary(zero, 2.0 * g::identity(2), labels({"q"})), Error);
  CHECK_THROWS_AS(apply_unitary(zero, g::hadamard(), labels({"nope"})), Error);
}

TEST_CASE("apply_unitary respects big-endian order") {
  // X on the second label of |00> gives |01>, index 1.
  const StateVector s = basis_state(labels({"a", "b"}), 0);
  CHECK(std::abs(apply_unitary(s, g::pauli_x(), labels({"b"})).amps()(1) - 1.0) < 1e-12);
  // Target order matters: X⊗I applied on (b, a) flips b.
  const Matrix xi = g::kron(g::pauli_x(), g::identity(2));
  CHECK(std::abs(apply_unitary(s, xi, labels({"b", "a"})).amps()(1) - 1.0) < 1e-12);
}

TEST_CASE("norm preservation over random unitaries") {
  SeedStream rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_state(labels({"a", "b", "c"}), rng);
    const auto u = haar_unitary(4, rng);
    CHECK(is_unitary(u));
    CHECK(std::abs(apply_unitary(s, u, labels({"c", "a"})).amps().norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("partial_trace") {
  const StateVector singlet(labels({"a", "b"}), g::singlet());
  CHECK((partial_trace(singlet, labels({"a"})).mat() - 0.5 * g::identity(2)).norm() < 1e-12);
  const auto prod = tensor(StateVector(labels({"a"}), g::ket0()), StateVector(labels({"b"}), g::ket1()));
  CHECK((partial_trace(to_density(prod), labels({"a"})).mat() - g::projector(g::ket0())).norm() < 1e-12);
  // (|a0>|0> + |a1>|1>)/√2 with a0 = |+>, a1 = |->.
  Vector amps = (g::kron(g::ket_plus(), g::ket0()) + g::kron(g::ket_minus(), g::ket1())) * kInvSqrt2;
  const StateVector ent(labels({"A", "C"}), amps);
  CHECK((partial_trace(ent, labels({"C"})).mat() - 0.5 * g::identity(2)).norm() < 1e-12);
  CHECK_THROWS_AS(partial_trace(singlet, labels({"z"})), Error);
}

TEST_CASE("partial trace of random products and purity bounds") {
  SeedStream rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_state(labels({"a"}), rng);
    const auto b = random_state(labels({"b", "c"}), rng);
    const auto rho = partial_trace(tensor(a, b), labels({"a"}));
    CHECK((rho.mat() - to_density(a).mat()).cwiseAbs().maxCoeff() < 1e-9);
    const auto mixed = partial_trace(random_state(labels({"a", "b", "c"}), rng), labels({"a", "c"}));
    CHECK(mixed.purity() >= 0.25 - 1e-12);
    CHECK(mixed.purity() <= 1.0 + 1e-9);
  }
}

TEST_CASE("measure_projective") {
  SeedStream rng(1);
  const StateVector zero(labels({"q"}), g::ket0());
  const auto m = measure_projective(zero, g::plane_projectors(0.0), labels({"q"}), rng);
  CHECK(m.index == 0);
  CHECK(m.probability == doctest::Approx(1.0));

  const auto branches = projective_branches(StateVector(labels({"q"}), g::ket_minus()),
                                            g::plane_projectors(0.0), labels({"q"}));
  CHECK(branches[0].probability == doctest::Approx(0.5));
  CHECK(branches[1].probability == doctest::Approx(0.5));

  const auto t = projective_branches(StateVector(labels({"a", "b"}), g::singlet()), g::rank1_test(g::singlet()),
                                     labels({"a", "b"}));
  CHECK(t[0].probability == doctest::Approx(1.0));
  CHECK(!t[1].post_state.has_value());

  CHECK_THROWS_AS(measure_projective(zero, {g::projector(g::ket0())}, labels({"q"}), rng), Error);
}

TEST_CASE("measurement completeness over random states") {
  SeedStream rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_state(labels({"a", "b"}), rng);
    double total = 0.0;
    for (const auto& b : projective_branches(s, g::plane_projectors(rng.uniform() * 6.28), labels({"b"}))) {
      total += b.probability;
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
    const double eps = rng.uniform();
    const KrausSet k({std::sqrt(1 - eps) * g::identity(2), std::sqrt(eps) * g::pauli_y()});
    total = 0.0;
    for (const auto& b : kraus_branches(s, k, labels({"a"}))) total += b.probability;
    CHECK(std::abs(total - 1.0) < 1e-9);
  }
}

TEST_CASE("measure_kraus") {
  SeedStream rng(2);
  const StateVector plus(labels({"q"}), g::ket_plus());
  const auto same = measure_kraus(plus, KrausSet({g::identity(2)}), labels({"q"}), rng);
  CHECK(same.probability == doctest::Approx(1.0));
  CHECK(overlap(same.post_state, plus) == doctest::Approx(1.0));

  const auto zb = kraus_branches(StateVector(labels({"q"}), g::ket_minus()),
                                 KrausSet({g::projector(g::ket0()), g::projector(g::ket1())}), labels({"q"}));
  CHECK(zb[0].probability == doctest::Approx(0.5));

  const double eps = 0.25;
  const auto br = kraus_branches(plus, KrausSet({std::sqrt(1 - eps) * g::identity(2), std::sqrt(eps) * g::pauli_z()}),
                                 labels({"q"}));
  CHECK(br[1].probability == doctest::Approx(0.25));
  CHECK(overlap(*br[1].post_state, StateVector(labels({"q"}), g::ket_minus())) == doctest::Approx(1.0));

  CHECK_THROWS_AS(KrausSet({0.5 * g::identity(2)}), Error);
  CHECK_NOTHROW(KrausSet({0.5 * g::identity(2)}, KrausMode::subnormalized));
}

TEST_CASE("fidelity_pure and overlap") {
  const Labels ab = labels({"a", "b"});
  const StateVector singlet(ab, g::singlet());
  CHECK(fidelity_pure(to_density(singlet), singlet) == doctest::Approx(1.0));
  const auto dephased = mix({{0.5, to_density(basis_state(ab, 1))}, {0.5, to_density(basis_state(ab, 2))}});
  CHECK(fidelity_pure(dephased, singlet) == doctest::Approx(0.5));
  CHECK(fidelity_pure(to_density(StateVector(ab, g::psi_plus())), singlet) == doctest::Approx(0.0));
  CHECK_THROWS_AS(fidelity_pure(to_density(singlet), StateVector(labels({"x", "y"}), g::singlet())), Error);

  const Labels q = labels({"q"});
  CHECK(overlap(StateVector(q, g::ket0()), StateVector(q, g::ket_minus())) == doctest::Approx(kInvSqrt2));
  CHECK(overlap(StateVector(q, g::ket0()), StateVector(q, g::ket1())) == doctest::Approx(0.0));
  CHECK(overlap(singlet, singlet) == doctest::Approx(1.0));
}

TEST_CASE("fidelity equals rank-1 pass probability by sampling") {
  SeedStream rng(8);
  const Labels ab = labels({"a", "b"});
  const auto s = random_state(labels({"a", "b", "c"}), rng);
  const StateVector target(ab, g::singlet());
  const double f = fidelity_pure(partial_trace(s, ab), target);
  const int n = 100000;
  int pass = 0;
  for (int i = 0; i < n; ++i) pass += measure_projective(s, g::rank1_test(g::singlet()), ab, rng).index == 0;
  const double se = std::sqrt(f * (1 - f) / n);
  CHECK(std::abs(pass / static_cast<double>(n) - f) < 4 * se);
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(labels({"q"}), g::pauli_x()), Error);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(labels({"q"}), neg), Error);
}

TEST_CASE("haar unitaries are unitary and seed-reproducible") {
  SeedStream a(77), b(77);
  const auto u = haar_unitary(8, a);
  CHECK(is_unitary(u, 1e-10));
  CHECK((u - haar_unitary(8, b)).norm() == 0.0);
}

TEST_CASE("enumeration visits every path once") {
  std::vector<std::string> seen;
  double total = 0.0;
  enumerate_branches(
      [&](Chance& c) {
        const double p3[3] = {0.2, 0.0, 0.8};
        const double p2[2] = {0.5, 0.5};
        const auto x = c.choose("x", p3);
        if (x == 0) c.choose("y", p2);
      },
      [&](const PathInfo& p) {
        seen.push_back(p.describe());
        total += p.probability;
      });
  CHECK(seen == std::vector<std::string>{"x=0; y=0", "x=0; y=1", "x=2"});
  CHECK(total == doctest::Approx(1.0));
  CHECK_THROWS_AS(enumerate_branches([](Chance& c) { c.uniform("u"); }, [](const PathInfo&) {}), NotEnumerable);
  CHECK_THROWS_AS(enumerate_branches(
                      [](Chance& c) {
                        const double p[2] = {0.5, 0.5};
                        for (int i = 0; i < 5; ++i) c.choose("b", p);
                      },
                      [](const PathInfo&) {}, 10),
                  BranchLimitExceeded);
}

TEST_CASE("json round trip of matrices and states") {
  SeedStream rng(4);
  const auto u = haar_unitary(4, rng);
  CHECK((matrix_from_json(nlohmann::json::parse(to_json(u).dump())) - u).norm() == 0.0);
  const Vector v = g::singlet();
  CHECK((vector_from_json(to_json(v)) - v).norm() == 0.0);
  CHECK(complex_from_json(nlohmann::json(2.5)) == Complex(2.5, 0));
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[1,2],[3]]")), Error);
  CHECK(to_json(StateVector(labels({"q"}), g::ket0()))["labels"][0] == "q");
}
