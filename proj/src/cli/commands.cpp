// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "csbc/analysis/detection.hpp"
#include "csbc/analysis/information.hpp"
#include "csbc/analysis/lemma.hpp"
#include "csbc/qsim/gates.hpp"
#include "csbc/qsim/serialize.hpp"
#include "csbc/relativistic/relativistic.hpp"
#include "csbc/strategies/registry.hpp"

namespace csbc::cli {

namespace {

using nlohmann::json;

// --------------------------------------------------------------- csv output

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;

  std::string render() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << "\n";
    }
    return os.str();
  }
};

struct Report {
  json result;
  std::optional<Table> table;
};

const std::vector<std::string> kDetectionHeader{
    "committer", "committer_params", "receiver",   "receiver_params", "master_seed", "mode",
    "n_trials",  "p_a_detect",       "p_a_stderr", "p_b_detect",      "p_b_stderr",  "info_bits"};

// ---------------------------------------------------------------- builders

protocol::StrategySpec build(const StrategyRef& ref, const std::string& field) {
  try {
    return strategies::make_strategy(ref.kind, ref.params);
  } catch (const strategies::ParamError& e) {
    const std::string where = e.key() == "kind" ? field + ".kind" : field + ".params." + e.key();
    const std::string what = e.what();
    throw ConfigError(where, what.substr(what.find(": ") + 2));
  }
}

template <class F>
auto param_guard(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  } catch (const qsim::Error& e) {
    throw ConfigError(field, e.what());
  } catch (const json::exception& e) {
    throw ConfigError(field, e.what());
  }
}

double num_param(const json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_number()) throw ConfigError(std::string("params.") + key, "must be a number");
  return p[key].get<double>();
}

void check_params(const json& p, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("params." + k, "unknown parameter");
  }
}

json detection_row(const ExperimentConfig& c, const analysis::DetectionReport& r, const json& info) {
  return json::array({c.committer->kind, c.committer->params.dump(), c.receiver->kind,
                      c.receiver->params.dump(), c.master_seed, analysis::name(r.mode), r.n_trials,
                      r.p_a_detect.p, r.p_a_detect.stderr_, r.p_b_detect.p, r.p_b_detect.stderr_, info});
}

Table one_row(std::vector<std::string> header, const json& row) {
  Table t{std::move(header), {}};
  t.rows.emplace_back(row.begin(), row.end());
  return t;
}

// ------------------------------------------------------------------- kinds

Report do_run(const ExperimentConfig& c) {
  const auto a = build(*c.committer, "committer");
  const auto b = build(*c.receiver, "receiver");
  if (c.output.format == OutputFormat::csv) {
    throw ConfigError("output.format", "kind run only supports json");
  }
  const auto t = protocol::run_protocol(a, b, c.master_seed);
  return {{{"transcript", protocol::to_json(t)}}, std::nullopt};
}

Report do_mc(const ExperimentConfig& c, unsigned threads) {
  const auto a = build(*c.committer, "committer");
  const auto b = build(*c.receiver, "receiver");
  const auto r = analysis::detection_mc(a, b, c.n_trials, c.master_seed, threads);
  return {analysis::to_json(r), one_row(kDetectionHeader, detection_row(c, r, nullptr))};
}

Report do_exact(const ExperimentConfig& c) {
  const auto a = build(*c.committer, "committer");
  const auto b = build(*c.receiver, "receiver");
  const auto r = analysis::detection_exact(a, b, c.max_branches);
  return {analysis::to_json(r), one_row(kDetectionHeader, detection_row(c, r, nullptr))};
}

Report do_info(const ExperimentConfig& c) {
  check_params(c.params, {"prior_one"});
  const double prior = num_param(c.params, "prior_one", 0.5);
  if (!(prior >= 0.0 && prior <= 1.0)) throw ConfigError("params.prior_one", "must lie in [0, 1]");
  const auto b = build(*c.receiver, "receiver");
  const auto r = analysis::info_gain(b, prior, c.max_branches);
  json row = json::array({"honest_committer", "{}", c.receiver->kind, c.receiver->params.dump(),
                          c.master_seed, "exact", nullptr, nullptr, nullptr, nullptr, nullptr,
                          r.mutual_information});
  return {analysis::to_json(r), one_row(kDetectionHeader, row)};
}

qsim::KrausSet kraus_from_params(const json& p) {
  const std::string preset = p.value("preset", std::string());
  const auto m = static_cast<std::size_t>(num_param(p, "ancilla_dim", 2));
  const qsim::Matrix id_m = qsim::Matrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  if (preset == "slot_z") {
    return qsim::KrausSet({qsim::gates::kron(qsim::gates::pauli_z(), id_m)});
  }
  if (preset == "slot_x_mixture") {
    const double th = num_param(p, "theta", 0.3);
    return qsim::KrausSet({std::cos(th) * qsim::gates::kron(qsim::Matrix::Identity(2, 2), id_m),
                           std::sin(th) * qsim::gates::kron(qsim::gates::pauli_x(), id_m)});
  }
  if (preset == "ancilla_unitary") {
    if (!p.contains("seed") || !strategies::is_non_negative_integer(p["seed"])) {
      throw ConfigError("params.seed", "must be a non-negative integer");
    }
    qsim::SeedStream rng(p["seed"].get<std::uint64_t>());
    return qsim::KrausSet({qsim::gates::kron(qsim::Matrix::Identity(2, 2), qsim::haar_unitary(m, rng))});
  }
  if (!preset.empty()) throw ConfigError("params.preset", "must be slot_z, slot_x_mixture or ancilla_unitary");
  if (!p.contains("kraus") || !p["kraus"].is_array()) throw ConfigError("params.kraus", "must list matrices");
  std::vector<qsim::Matrix> ops;
  for (const auto& e : p["kraus"]) ops.push_back(qsim::matrix_from_json(e));
  const std::string mode = p.value("mode", std::string("complete"));
  if (mode != "complete" && mode != "subnormalized") {
    throw ConfigError("params.mode", "must be complete or subnormalized");
  }
  return qsim::KrausSet(std::move(ops), mode == "complete" ? qsim::KrausMode::complete
                                                           : qsim::KrausMode::subnormalized);
}

Report do_lemma1(const ExperimentConfig& c) {
  check_params(c.params, {"preset", "ancilla_dim", "theta", "seed", "kraus", "mode"});
  const auto k = param_guard("params", [&] { return kraus_from_params(c.params); });
  const auto m = static_cast<std::size_t>(num_param(c.params, "ancilla_dim", 2));
  const auto v = param_guard("params", [&] { return analysis::lemma1_factor(k, 2, m); });
  json row = json::array({c.master_seed, v.factored, v.singlet_preserved, v.max_reconstruction_error,
                          v.witness ? json(v.witness->index) : json(nullptr),
                          v.witness ? json(v.witness->norm) : json(nullptr)});
  return {analysis::to_json(v),
          one_row({"master_seed", "factored", "singlet_preserved", "max_reconstruction_error",
                   "witness_index", "witness_norm"},
                  row)};
}

Report do_sweep(const ExperimentConfig& c) {
  check_params(c.params, {"grid", "points", "theta_min", "theta_max"});
  std::vector<double> grid;
  if (c.params.contains("grid")) {
    if (!c.params["grid"].is_array()) throw ConfigError("params.grid", "must list angles");
    for (const auto& g : c.params["grid"]) {
      if (!g.is_number()) throw ConfigError("params.grid", "must list angles");
      grid.push_back(g.get<double>());
    }
  } else {
    const double points = num_param(c.params, "points", 16);
    const double lo = num_param(c.params, "theta_min", 0.0);
    const double hi = num_param(c.params, "theta_max", std::numbers::pi / 2);
    if (points < 2 || points != std::floor(points)) {
      throw ConfigError("params.points", "must be an integer >= 2");
    }
    const auto n = static_cast<std::size_t>(points);
    for (std::size_t i = 0; i < n; ++i) grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (points - 1));
  }
  const auto rows = analysis::tradeoff_sweep(grid, c.max_branches);
  Table t{{"master_seed", "theta", "info_bits", "p_a_detect", "p_b_detect"}, {}};
  for (const auto& r : rows) t.rows.push_back({c.master_seed, r.theta, r.info_bits, r.p_a_detect, r.p_b_detect});
  return {{{"family", "partial_swap"}, {"rows", analysis::to_json(rows)}}, std::move(t)};
}

Report do_rel(const ExperimentConfig& c) {
  namespace rel = relativistic;
  const json& p = c.params;
  check_params(p, {"geometry", "bit", "commit_states", "b_strategy", "coin", "t_ct", "t_commit"});
  const auto cfg = param_guard("params.geometry", [&] {
    auto g = p.contains("geometry") ? rel::site_config_from_json(p["geometry"]) : rel::SiteConfig::default_line();
    g.validate();
    return g;
  });
  const double bit_value = num_param(p, "bit", 0);
  if (bit_value != 0 && bit_value != 1) throw ConfigError("params.bit", "must be 0 or 1");
  const protocol::Bit bit = protocol::to_bit(static_cast<int>(bit_value));

  auto states = rel::default_commit_states();
  if (p.contains("commit_states")) {
    if (!p["commit_states"].is_array() || p["commit_states"].size() != 2) {
      throw ConfigError("params.commit_states", "must list two qubit states");
    }
    for (std::size_t i = 0; i < 2; ++i) {
      states[i] = param_guard("params.commit_states", [&] { return qsim::vector_from_json(p["commit_states"][i]); });
    }
  }

  rel::RelBStrategy b;
  std::string b_name = "honest";
  if (p.contains("b_strategy")) {
    const json& s = p["b_strategy"];
    b_name = s.value("kind", std::string("honest"));
    if (b_name == "measure") {
      b = rel::RelBStrategy::measure(param_guard("params.b_strategy.angle", [&] {
        return strategies::basis_angle_from_json(s.value("angle", json(0.0)), "angle");
      }));
    } else if (b_name != "honest") {
      throw ConfigError("params.b_strategy.kind", "must be honest or measure");
    }
  }

  rel::CoinSource coin;
  std::string coin_name = "fair";
  if (p.contains("coin")) {
    const json& s = p["coin"];
    coin_name = s.value("kind", std::string("fair"));
    if (coin_name == "fixed") {
      const int v = s.value("value", 0);
      if (v != 0 && v != 1) throw ConfigError("params.coin.value", "must be 0 or 1");
      coin = rel::CoinSource::fixed(protocol::to_bit(v));
    } else if (coin_name != "fair") {
      throw ConfigError("params.coin.kind", "must be fixed or fair");
    }
  }

  rel::RelTiming timing;
  timing.t_ct = num_param(p, "t_ct", timing.t_ct);
  timing.t_commit = num_param(p, "t_commit", timing.t_commit);

  const auto t = param_guard("params", [&] {
    return rel::run_rel_protocol(cfg, bit, states, b, coin, c.master_seed, timing);
  });
  const double exact = rel::rel_detection_exact(cfg, bit, states, b, coin, timing);
  const auto seps = rel::verify_separations(cfg, rel::simulate_echoes(cfg));
  bool seps_ok = true;
  for (const auto& s : seps) seps_ok = seps_ok && s.pass;

  json result{{"geometry", rel::to_json(cfg)},
              {"t_ct", timing.t_ct},
              {"t_commit", timing.t_commit},
              {"causality_ok", t.causality_ok},
              {"detection_probability", exact},
              {"separations_verified", seps_ok},
              {"transcript", rel::to_json(t)}};
  json row = json::array({c.master_seed, protocol::to_int(bit), coin_name, b_name, t.causality_ok,
                          t.detection, exact});
  return {result, one_row({"master_seed", "bit", "coin", "b_strategy", "causality_ok",
                           "detection_sampled", "detection_probability"},
                          row)};
}

Report do_punveil(const ExperimentConfig& c, unsigned threads) {
  json commitment = c.committer->params;
  commitment.erase("challenge_probability");
  const auto ec = [&] {
    try {
      return strategies::commitment_from_json(commitment);
    } catch (const strategies::ParamError& e) {
      throw ConfigError("committer.params." + e.key(), e.what());
    }
  }();
  const auto r = analysis::verify_punveil_vs_protocol(ec, c.n_trials, c.master_seed, threads);
  json row = json::array({c.committer->kind, c.committer->params.dump(), c.master_seed, c.n_trials,
                          r.expected_p0, r.empirical_p0, r.stderr_, r.consistent});
  return {analysis::to_json(r),
          one_row({"committer", "committer_params", "master_seed", "n_trials", "expected_p0",
                   "empirical_p0", "stderr", "consistent"},
                  row)};
}

Report dispatch(const ExperimentConfig& c, unsigned threads) {
  switch (c.kind) {
    case ExperimentKind::run: return do_run(c);
    case ExperimentKind::mc: return do_mc(c, threads);
    case ExperimentKind::exact: return do_exact(c);
    case ExperimentKind::info: return do_info(c);
    case ExperimentKind::lemma1: return do_lemma1(c);
    case ExperimentKind::sweep: return do_sweep(c);
    case ExperimentKind::rel: return do_rel(c);
    case ExperimentKind::punveil_check: return do_punveil(c, threads);
  }
  throw std::logic_error("unhandled experiment kind");
}

void configure_logging() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::stderr_color_mt("csbc");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("CSBC_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

std::string run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  Report r;
  try {
    r = dispatch(cfg, threads);
  } catch (const qsim::NotEnumerable& e) {
    throw CapabilityError(e.what());
  } catch (const qsim::BranchLimitExceeded& e) {
    throw CapabilityError(e.what());
  }
  if (cfg.output.format == OutputFormat::csv) {
    if (!r.table) throw ConfigError("output.format", "csv is not available for this kind");
    return r.table->render();
  }
  json echo = to_json(cfg);
  echo.erase("output");
  json out{{"experiment", name(cfg.kind)},
           {"master_seed", cfg.master_seed},
           {"config", std::move(echo)},
           {"result", std::move(r.result)}};
  return out.dump(2) + "\n";
}

int run_cli(int argc, char** argv) {
  configure_logging();
  CLI::App app{"csbc: cheat-sensitive quantum bit commitment experiments"};
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--out", out_path, "output path (default: config output.path, else stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "override master_seed");
  app.add_option("--threads", threads, "Monte Carlo workers (0 = all cores)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("--config", "cannot read " + config_path);
    std::stringstream text;
    text << in.rdbuf();
    ExperimentConfig cfg = parse_config_text(text.str());
    if (seed) cfg.master_seed = *seed;
    if (format) cfg.output.format = parse_format(*format);
    if (out_path) cfg.output.path = *out_path;
    spdlog::info("running {} (seed {}, threads {})", name(cfg.kind), cfg.master_seed, threads);

    const std::string output = run_experiment(cfg, threads);
    if (cfg.output.path.empty()) {
      std::cout << output;
    } else {
      std::ofstream out(cfg.output.path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + cfg.output.path);
      out << output;
      spdlog::info("wrote {}", cfg.output.path);
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "csbc: config error: " << e.what() << "\n";
    return kConfig;
  } catch (const CapabilityError& e) {
    std::cerr << "csbc: capability error: " << e.what() << "\n";
    return kCapability;
  } catch (const std::exception& e) {
    std::cerr << "csbc: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace csbc::cli
