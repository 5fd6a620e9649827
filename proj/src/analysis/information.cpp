// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/analysis/information.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "csbc/qsim/gates.hpp"
#include "csbc/strategies/strategies.hpp"

namespace csbc::analysis {

namespace gates = qsim::gates;
using protocol::Bit;
using protocol::CommitSymbol;

double binary_entropy(double p) {
  auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return term(p) + term(1.0 - p);
}

PUnveil p_unveil(const qsim::DensityMatrix& rho_c) {
  if (rho_c.mat().rows() != 2) throw qsim::Error("p_unveil needs a single-qubit density matrix");
  const qsim::Matrix sigma = gates::projector(gates::ket0()) + gates::projector(gates::ket_minus());
  PUnveil r;
  r.raw_p0 = (rho_c.mat() * sigma).trace().real() - 0.5;
  r.p0 = std::clamp(r.raw_p0, 0.0, 1.0);
  r.p1 = 1.0 - r.p0;
  return r;
}

PUnveilCheck verify_punveil_vs_protocol(const strategies::EntangledCommitment& ec, std::uint64_t n,
                                        qsim::Seed seed, unsigned threads) {
  PUnveilCheck c;
  c.n = n;
  c.expected_p0 = p_unveil(ec.reduced_c()).p0;
  const auto report = detection_mc(strategies::entangled_committer(ec), strategies::honest_receiver(),
                                   n, seed, threads);
  c.empirical_p0 = 1.0 - report.p_declared_one.p;
  const double p = c.expected_p0;
  c.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  c.consistent = std::abs(c.empirical_p0 - c.expected_p0) <= 4.0 * c.stderr_ + 1e-12;
  return c;
}

nlohmann::json to_json(const PUnveilCheck& c) {
  return {{"expected_p0", c.expected_p0},
          {"empirical_p0", c.empirical_p0},
          {"stderr", c.stderr_},
          {"n_trials", c.n},
          {"consistent", c.consistent}};
}

InfoGainReport info_gain(const protocol::StrategySpec& receiver, double prior_one,
                         std::size_t max_branches) {
  InfoGainReport r;
  r.prior_one = prior_one;
  for (Bit b : {Bit::Zero, Bit::One}) {
    const auto committer = strategies::honest_committer(b);
    for_each_branch(
        committer, receiver,
        [&](const protocol::Transcript& t, const qsim::PathInfo& path) {
          r.conditional[t.b_info][protocol::to_int(b)] += path.probability;
        },
        max_branches);
  }
  const double prior[2] = {1.0 - prior_one, prior_one};
  double mi = 0.0;
  for (const auto& [outcome, given] : r.conditional) {
    const double marginal = prior[0] * given[0] + prior[1] * given[1];
    for (int b = 0; b < 2; ++b) {
      const double joint = prior[b] * given[b];
      if (joint > 0.0 && marginal > 0.0) mi += joint * std::log2(given[b] / marginal);
    }
  }
  r.mutual_information = std::max(0.0, mi);
  return r;
}

nlohmann::json to_json(const InfoGainReport& r) {
  auto rows = nlohmann::json::array();
  for (const auto& [outcome, given] : r.conditional) {
    rows.push_back({{"outcome", outcome ? nlohmann::json(*outcome) : nlohmann::json(nullptr)},
                    {"p_given_bit0", given[0]},
                    {"p_given_bit1", given[1]}});
  }
  return {{"mutual_information_bits", r.mutual_information},
          {"prior_one", r.prior_one},
          {"conditional", std::move(rows)}};
}

NoInfoReport no_information_check(const strategies::AncillaAttack& attack) {
  const std::size_t dim = attack.ancilla_dim();
  const auto& u1 = attack.u1();
  const auto& readout = attack.readout();

  // eta[r][i]: unnormalized C-slot state for symbol r and outcome i.
  std::array<std::vector<qsim::Vector>, 4> eta;
  for (std::size_t r = 0; r < 4; ++r) {
    qsim::Vector in = qsim::Vector::Zero(static_cast<Eigen::Index>(2 * dim));
    in.head(2) = protocol::symbol_state(static_cast<CommitSymbol>(r));
    const qsim::Vector out = u1 * in;
    for (std::size_t i = 0; i < dim; ++i) {
      qsim::Vector e = qsim::Vector::Zero(2);
      for (std::size_t j = 0; j < dim; ++j) {
        e += std::conj(readout(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))) *
             out.segment(static_cast<Eigen::Index>(2 * j), 2);
      }
      eta[r].push_back(e);
    }
  }

  constexpr double kSkip = 1e-12;
  const double bound = 1.0 / std::numbers::sqrt2;
  const auto S0 = static_cast<std::size_t>(CommitSymbol::S0);
  const auto S1 = static_cast<std::size_t>(CommitSymbol::S1);
  const auto Sp = static_cast<std::size_t>(CommitSymbol::Splus);
  const auto Sm = static_cast<std::size_t>(CommitSymbol::Sminus);

  NoInfoReport rep;
  double tv = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double p0 = 0.5 * (eta[S0][i].squaredNorm() + eta[Sm][i].squaredNorm());
    const double p1 = 0.5 * (eta[S1][i].squaredNorm() + eta[Sp][i].squaredNorm());
    rep.outcome_given_bit.push_back({p0, p1});
    tv += std::abs(p0 - p1);
    for (const auto& [x, y] : {std::pair{S0, Sm}, std::pair{S1, Sp}}) {
      const double nx = eta[x][i].norm();
      const double ny = eta[y][i].norm();
      if (nx * nx < kSkip || ny * ny < kSkip) continue;
      const double achieved = std::abs(eta[x][i].dot(eta[y][i])) / (nx * ny);
      double excess = achieved - bound;
      if (excess < 1e-12) excess = 0.0;
      rep.max_overlap_excess = std::max(rep.max_overlap_excess, excess);
    }
  }
  rep.outcome_tv_distance = 0.5 * tv;
  return rep;
}

nlohmann::json to_json(const NoInfoReport& r) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r.outcome_given_bit.size(); ++i) {
    rows.push_back({{"outcome", i},
                    {"p_given_bit0", r.outcome_given_bit[i][0]},
                    {"p_given_bit1", r.outcome_given_bit[i][1]}});
  }
  return {{"max_overlap_excess", r.max_overlap_excess},
          {"outcome_tv_distance", r.outcome_tv_distance},
          {"outcomes", std::move(rows)}};
}

std::vector<TradeoffRow> tradeoff_sweep(const std::vector<double>& grid, std::size_t max_branches) {
  std::vector<TradeoffRow> rows;
  const auto honest = strategies::honest_committer(Bit::Zero);
  for (double theta : grid) {
    const auto receiver = strategies::ancilla_receiver(strategies::AncillaAttack::partial_swap(theta));
    const auto det = detection_exact(honest, receiver, max_branches);
    const auto info = info_gain(receiver, 0.5, max_branches);
    rows.push_back({theta, info.mutual_information, det.p_a_detect.p, det.p_b_detect.p});
  }
  return rows;
}

nlohmann::json to_json(const std::vector<TradeoffRow>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"theta", r.theta},
                   {"info_bits", r.info_bits},
                   {"p_a_detect", r.p_a_detect},
                   {"p_b_detect", r.p_b_detect}});
  }
  return out;
}

}  // namespace csbc::analysis
