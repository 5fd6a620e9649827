// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/analysis/detection.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace csbc::analysis {

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) return {};
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

std::string_view name(Mode m) noexcept { return m == Mode::exact ? "exact" : "montecarlo"; }

std::string BranchRow::detected_by() const {
  if (a_detected && b_detected) return "A+B";
  if (a_detected) return "A";
  if (b_detected) return "B";
  return "none";
}

namespace {

nlohmann::json estimate_json(const Estimate& e) { return {{"p", e.p}, {"stderr", e.stderr_}}; }

struct Counts {
  std::uint64_t a_detect = 0;
  std::uint64_t b_detect = 0;
  std::uint64_t a_loses = 0;
  std::uint64_t aborted = 0;
  std::uint64_t declared_one = 0;

  void add(const protocol::Transcript& t) {
    a_detect += t.a_detected;
    b_detect += t.b_detected;
    a_loses += t.game_loser == protocol::Role::A;
    aborted += t.aborted();
    declared_one += t.declared_bit == protocol::Bit::One;
  }

  Counts& operator+=(const Counts& o) {
    a_detect += o.a_detect;
    b_detect += o.b_detect;
    a_loses += o.a_loses;
    aborted += o.aborted;
    declared_one += o.declared_one;
    return *this;
  }
};

}  // namespace

nlohmann::json to_json(const DetectionReport& r) {
  nlohmann::json j{{"mode", name(r.mode)},
                   {"n_trials", r.n_trials},
                   {"p_a_detect", estimate_json(r.p_a_detect)},
                   {"p_b_detect", estimate_json(r.p_b_detect)},
                   {"p_a_loses", estimate_json(r.p_a_loses)},
                   {"p_aborted", estimate_json(r.p_aborted)},
                   {"p_declared_one", estimate_json(r.p_declared_one)}};
  if (r.branch_table) {
    auto rows = nlohmann::json::array();
    for (const auto& b : *r.branch_table) {
      rows.push_back({{"branch", b.description},
                      {"probability", b.probability},
                      {"detected_by", b.detected_by()},
                      {"aborted", b.aborted}});
    }
    j["branch_table"] = std::move(rows);
  }
  return j;
}

DetectionReport detection_mc(const StrategySpec& a, const StrategySpec& b, std::uint64_t n,
                             qsim::Seed seed, unsigned threads) {
  if (n == 0) throw std::invalid_argument("n_trials must be at least 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
  const qsim::SeedStream master(seed);

  std::vector<Counts> partial(threads);
  auto work = [&](unsigned w) {
    const std::uint64_t lo = n * w / threads;
    const std::uint64_t hi = n * (w + 1) / threads;
    for (std::uint64_t i = lo; i < hi; ++i) {
      qsim::SampledChance chance(master.derive(i));
      partial[w].add(protocol::run_protocol(a, b, chance));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  Counts total;
  for (const auto& c : partial) total += c;

  DetectionReport r;
  r.mode = Mode::montecarlo;
  r.n_trials = n;
  r.p_a_detect = binomial_estimate(total.a_detect, n);
  r.p_b_detect = binomial_estimate(total.b_detect, n);
  r.p_a_loses = binomial_estimate(total.a_loses, n);
  r.p_aborted = binomial_estimate(total.aborted, n);
  r.p_declared_one = binomial_estimate(total.declared_one, n);
  return r;
}

void for_each_branch(const StrategySpec& a, const StrategySpec& b, const BranchVisitor& visit,
                     std::size_t max_branches) {
  for (const auto* s : {&a, &b}) {
    if (!s->enumerable) {
      throw qsim::NotEnumerable("strategy '" + s->kind + "' draws continuous randomness");
    }
  }
  protocol::Transcript last;
  qsim::enumerate_branches(
      [&](qsim::Chance& chance) { last = protocol::run_protocol(a, b, chance); },
      [&](const qsim::PathInfo& path) { visit(last, path); }, max_branches);
}

DetectionReport detection_exact(const StrategySpec& a, const StrategySpec& b,
                                std::size_t max_branches) {
  DetectionReport r;
  r.mode = Mode::exact;
  r.branch_table.emplace();
  double pa = 0, pb = 0, lose = 0, ab = 0, one = 0;
  for_each_branch(
      a, b,
      [&](const protocol::Transcript& t, const qsim::PathInfo& path) {
        const double p = path.probability;
        pa += t.a_detected ? p : 0.0;
        pb += t.b_detected ? p : 0.0;
        lose += t.game_loser == protocol::Role::A ? p : 0.0;
        ab += t.aborted() ? p : 0.0;
        one += t.declared_bit == protocol::Bit::One ? p : 0.0;
        r.branch_table->push_back({path.describe(), p, t.a_detected, t.b_detected, t.aborted()});
      },
      max_branches);
  r.n_trials = r.branch_table->size();
  r.p_a_detect = {pa, 0.0};
  r.p_b_detect = {pb, 0.0};
  r.p_a_loses = {lose, 0.0};
  r.p_aborted = {ab, 0.0};
  r.p_declared_one = {one, 0.0};
  return r;
}

}  // namespace csbc::analysis
