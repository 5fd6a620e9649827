// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "csbc/analysis/detection.hpp"
#include "csbc/analysis/information.hpp"
#include "csbc/analysis/lemma.hpp"
#include "csbc/cli/commands.hpp"
#include "csbc/cli/config.hpp"
#include "csbc/qsim/gates.hpp"
#include "csbc/relativistic/relativistic.hpp"
#include "csbc/strategies/library.hpp"
#include "csbc/strategies/strategies.hpp"

namespace {

using namespace csbc;
using strategies::Bit;
namespace g = qsim::gates;

constexpr double kExactTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool within_sigma(double observed, double expected, std::uint64_t n, double k = 4.0) {
  const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
  return std::abs(observed - expected) <= k * sigma + kExactTol;
}

// -------------------------------------------------------------------------

Outcome honest_completeness() {
  Outcome o;
  constexpr std::uint64_t n = 100000;
  std::string loses;
  for (Bit bit : {Bit::Zero, Bit::One}) {
    const auto r = analysis::detection_mc(strategies::honest_committer(bit), strategies::honest_receiver(), n,
                                          20260 + protocol::to_int(bit), 0);
    const std::string b = "bit " + std::to_string(protocol::to_int(bit));
    o.require(r.p_a_detect.p == 0.0 && r.p_b_detect.p == 0.0, b + ": detections");
    o.require(r.p_aborted.p == 0.0, b + ": aborts");
    o.require(r.p_declared_one.p == protocol::to_int(bit), b + ": declared bit differs");
    o.require(within_sigma(r.p_a_loses.p, 0.5, n), b + ": loser frequency " + fmt(r.p_a_loses.p));
    loses += (loses.empty() ? "" : ", ") + fmt(r.p_a_loses.p);
  }
  if (o.pass) o.detail = "1e5 runs per bit, no detections or aborts, A-loses " + loses;
  return o;
}

Outcome unveil_formula() {
  Outcome o;
  qsim::SeedStream rng(2002);
  double worst_z = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto ec = strategies::EntangledCommitment::random(rng);
    const double expected = analysis::p_unveil(ec.reduced_c()).p0;
    const auto check = analysis::verify_punveil_vs_protocol(ec, 10000, 3000 + i, 0);
    o.require(std::abs(check.expected_p0 - expected) < 1e-12, "expected value mismatch");
    o.require(check.consistent && within_sigma(check.empirical_p0, expected, 10000),
              "commitment " + std::to_string(i) + ": " + fmt(check.empirical_p0) + " vs " + fmt(expected));
    if (check.stderr_ > 0) worst_z = std::max(worst_z, std::abs(check.empirical_p0 - expected) / check.stderr_);
  }
  if (o.pass) o.detail = "20 commitments at n = 1e4, max |z| " + fmt(worst_z);
  return o;
}

// Complete Kraus set {K_i} of `count` operators on dimension d from the
// columns of a Haar unitary on d*count.
std::vector<qsim::Matrix> random_channel(std::size_t d, std::size_t count, qsim::SeedStream& rng) {
  const qsim::Matrix u = qsim::haar_unitary(d * count, rng);
  std::vector<qsim::Matrix> ops;
  const auto dd = static_cast<Eigen::Index>(d);
  for (std::size_t i = 0; i < count; ++i) ops.push_back(u.block(static_cast<Eigen::Index>(i) * dd, 0, dd, dd));
  return ops;
}

Outcome lemma_checker() {
  Outcome o;
  qsim::SeedStream rng(3003);
  const std::size_t dims[] = {1, 2, 4};
  double worst_err = 0.0;
  double min_norm = 1e9;
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = dims[i % 3];
    const auto inner = random_channel(m, 1 + (i % 3), rng);
    std::vector<qsim::Matrix> ops;
    for (const auto& e : inner) ops.push_back(g::kron(g::identity(2), e));
    const auto v = analysis::lemma1_factor(qsim::KrausSet(ops), 2, m);
    o.require(v.factored && v.factors && !v.witness, "factored set " + std::to_string(i) + " not recovered");
    if (v.factors) {
      for (std::size_t k = 0; k < inner.size(); ++k) {
        worst_err = std::max(worst_err, ((*v.factors)[k] - inner[k]).norm());
      }
    }
    worst_err = std::max(worst_err, v.max_reconstruction_error);
  }
  o.require(worst_err < 1e-8, "reconstruction error " + fmt(worst_err));

  int flagged = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = dims[i % 3];
    // (1-ε) of an ancilla-only channel plus ε of a slot unitary W ⊗ U.
    std::vector<qsim::Matrix> ops;
    double slot_norm = 0.0;
    while (slot_norm <= 0.1) {
      ops.clear();
      const double eps = 0.05 + 0.9 * rng.uniform();
      for (const auto& e : random_channel(m, 2, rng)) ops.push_back(std::sqrt(1 - eps) * g::kron(g::identity(2), e));
      const qsim::Matrix w = qsim::haar_unitary(2, rng);
      const qsim::Matrix u = qsim::haar_unitary(m, rng);
      const qsim::Matrix extra = std::sqrt(eps) * g::kron(w, u);
      const auto dm = static_cast<Eigen::Index>(m);
      const qsim::Matrix ep = 0.5 * (extra.block(0, 0, dm, dm) + extra.block(dm, dm, dm, dm));
      slot_norm = (extra - g::kron(g::identity(2), ep)).norm();
      ops.push_back(extra);
    }
    min_norm = std::min(min_norm, slot_norm);
    const auto v = analysis::lemma1_factor(qsim::KrausSet(ops), 2, m);
    const bool ok = !v.factored && v.witness && v.witness->norm > 0.1;
    o.require(ok, "perturbed set " + std::to_string(i) + " not flagged");
    flagged += ok ? 1 : 0;
  }
  if (o.pass) {
    o.detail = "100 factored (max error " + fmt(worst_err) + "), " + std::to_string(flagged) +
               "/100 perturbed flagged (min slot norm " + fmt(min_norm) + ")";
  }
  return o;
}

Outcome no_information_sweep() {
  Outcome o;
  qsim::SeedStream rng(4004);
  const std::size_t dims[] = {1, 2, 4};
  int informative = 0, counterexamples = 0;
  for (int i = 0; i < 200; ++i) {
    const auto attack = strategies::AncillaAttack::haar(dims[i % 3], rng);
    const auto r = analysis::no_information_check(attack);
    if (r.outcome_tv_distance > 1e-6) {
      ++informative;
      if (!(r.max_overlap_excess > 0.0)) ++counterexamples;
    }
  }
  o.require(counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
  o.detail += "200 Haar attacks, " + std::to_string(informative) + " informative, " +
              std::to_string(counterexamples) + " counterexamples";
  return o;
}

Outcome canonical_numbers() {
  Outcome o;
  using namespace strategies;
  struct Case {
    std::string name;
    StrategySpec a, b;
    bool a_side;
    double expected;
  };
  const std::vector<Case> cases{
      {"Z-measuring receiver", honest_committer(Bit::Zero), measuring_receiver(0.0), true, 0.125},
      {"bit-flip committer", bit_flip_committer(), honest_receiver(), false, 0.5},
      {"lying game report", honest_committer(Bit::Zero), lying_game_receiver(), true, 1.0},
      {"singlet dephasing", honest_committer(Bit::Zero, 1.0),
       singlet_tampering_party(Role::B, {TamperOp::Kind::measure, 0.0}), true, 0.5},
  };
  constexpr std::uint64_t n = 100000;
  std::uint64_t seed = 5005;
  for (const auto& c : cases) {
    const auto ex = analysis::detection_exact(c.a, c.b);
    const double p = c.a_side ? ex.p_a_detect.p : ex.p_b_detect.p;
    o.require(std::abs(p - c.expected) < kExactTol, c.name + " exact " + fmt(p));
    const auto mc = analysis::detection_mc(c.a, c.b, n, seed++, 0);
    const double q = c.a_side ? mc.p_a_detect.p : mc.p_b_detect.p;
    o.require(within_sigma(q, c.expected, n), c.name + " MC " + fmt(q));
  }
  const double info = analysis::info_gain(measuring_receiver(0.0)).mutual_information;
  const double expected_info = 1.0 - analysis::binary_entropy(0.25);
  o.require(std::abs(info - expected_info) < kExactTol, "information " + fmt(info));
  o.require(std::abs(info - 0.18872187554086706) < kExactTol, "information oracle " + fmt(info));
  if (o.pass) o.detail = "1/8, 1 - H(1/4) = " + fmt(info) + ", 1/2, 1, 1/2; MC at 1e5 within 4 sigma";
  return o;
}

Outcome cheat_sensitivity() {
  Outcome o;
  const auto lib = strategies::cheating_library();
  double smallest = 1.0;
  for (const auto& c : lib) {
    const auto r = analysis::detection_exact(c.committer, c.receiver);
    const double p = c.honest_role == strategies::Role::A ? r.p_a_detect.p : r.p_b_detect.p;
    o.require(p > 0.0, c.name + " undetected");
    smallest = std::min(smallest, p);
  }
  if (o.pass) o.detail = std::to_string(lib.size()) + " strategies, min detection " + fmt(smallest);
  return o;
}

Outcome relativistic_module() {
  Outcome o;
  namespace rel = relativistic;
  const auto cfg = rel::SiteConfig::default_line();
  const auto states = rel::default_commit_states();
  for (Bit coin : {Bit::Zero, Bit::One}) {
    const auto t = rel::run_rel_protocol(cfg, Bit::One, states, rel::RelBStrategy::honest(),
                                         rel::CoinSource::fixed(coin), 6006);
    o.require(t.causality_ok && rel::causality_check(t.events, cfg).empty(), "default geometry violates causality");
    for (Bit bit : {Bit::Zero, Bit::One}) {
      const double p = rel::rel_detection_exact(cfg, bit, states, rel::RelBStrategy::honest(), rel::CoinSource::fixed(coin));
      o.require(p == 0.0, "honest B detected");
    }
  }

  rel::SiteConfig near;
  near.positions = {{rel::Site::A, {0.0}},   {rel::Site::B, {1.0}},    {rel::Site::A1, {30.0}},
                    {rel::Site::B1, {31.0}}, {rel::Site::A2, {400.0}}, {rel::Site::B2, {401.0}}};
  near.validate();
  const auto flipped = rel::run_rel_protocol(near, Bit::One, states, rel::RelBStrategy::honest(),
                                             rel::CoinSource::fixed(Bit::Zero), 6007);
  o.require(!flipped.causality_ok, "d(A,A2) = 400 < t_ct = 500 not flagged");

  // Z outcome |0> or |1> with probability 1/2 each; both fail the |+> test half the time.
  const double p = rel::rel_detection_exact(cfg, Bit::One, states, rel::RelBStrategy::measure(0.0),
                                            rel::CoinSource::fixed(Bit::Zero));
  o.require(std::abs(p - 0.5) < kExactTol, "measuring B detection " + fmt(p));
  if (o.pass) o.detail = "default geometry consistent, near A2 flagged, honest 0, measuring B " + fmt(p);
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome reproducibility() {
  Outcome o;
  const std::filesystem::path root(CSBC_SOURCE_DIR);
  const std::pair<const char*, const char*> goldens[] = {
      {"exact_measuring_z.json", "exact_measuring_z.csv"},
      {"sweep_weak_coupling.json", "sweep_weak_coupling.csv"},
      {"rel_default.json", "rel_default.json"},
  };
  for (const auto& [config, golden] : goldens) {
    const auto cfg = cli::parse_config_text(slurp(root / "configs" / config));
    const std::string first = cli::run_experiment(cfg, 1);
    o.require(first == cli::run_experiment(cfg, 1), std::string(config) + " differs across runs");
    o.require(first == cli::run_experiment(cfg, 4), std::string(config) + " differs across thread counts");
    o.require(first == slurp(root / "tests" / "golden" / golden), std::string(config) + " differs from golden");
  }
  // Monte Carlo is where the thread count could leak in.
  const auto mc = cli::parse_config_text(slurp(root / "configs" / "mc_measuring_z.json"));
  const std::string one = cli::run_experiment(mc, 1);
  o.require(one == cli::run_experiment(mc, 3) && one == cli::run_experiment(mc, 8), "mc differs across thread counts");
  if (o.pass) o.detail = "3 golden configs byte-identical (threads 1, 4), mc identical (threads 1, 3, 8)";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"honest completeness", honest_completeness},
      {"unveiling-probability formula", unveil_formula},
      {"lemma 1 checker", lemma_checker},
      {"no-information sweep", no_information_sweep},
      {"canonical attack numbers", canonical_numbers},
      {"cheat sensitivity", cheat_sensitivity},
      {"relativistic module", relativistic_module},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
