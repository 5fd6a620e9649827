// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/strategies/registry.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "csbc/qsim/serialize.hpp"

namespace csbc::strategies {

namespace {

using nlohmann::json;
using Allowed = std::initializer_list<const char*>;

void check_keys(const json& params, Allowed allowed) {
  if (!params.is_object()) throw ParamError("params", "must be an object");
  for (const auto& [key, value] : params.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParamError(key, "unknown parameter");
  }
}

double number(const json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_number()) throw ParamError(key, "must be a number");
  return p[key].get<double>();
}

double probability(const json& p, const char* key) {
  const double v = number(p, key, 0.0);
  if (!(v >= 0.0 && v <= 1.0)) throw ParamError(key, "must lie in [0, 1]");
  return v;
}

Bit bit(const json& p, const char* key) {
  if (!p.contains(key)) return Bit::Zero;
  const json& v = p[key];
  if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
    throw ParamError(key, "must be 0 or 1");
  }
  return protocol::to_bit(v.get<int>());
}

template <class F>
auto wrap(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ParamError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParamError(key, e.what());
  }
}

qsim::Matrix matrix_param(const json& p, const char* key) {
  return wrap(key, [&] { return qsim::matrix_from_json(p.at(key)); });
}

qsim::Vector vector_param(const json& p, const char* key) {
  return wrap(key, [&] { return qsim::vector_from_json(p.at(key)); });
}

std::uint64_t seed_param(const json& p, const char* key) {
  if (!p.contains(key) || !is_non_negative_integer(p[key])) {
    throw ParamError(key, "must be a non-negative integer");
  }
  return p[key].get<std::uint64_t>();
}

StrategySpec make_honest_committer(const json& p) {
  check_keys(p, {"bit", "challenge_probability"});
  return honest_committer(bit(p, "bit"), probability(p, "challenge_probability"));
}

StrategySpec make_entangled_committer(const json& p) {
  check_keys(p, {"preset", "symbol", "weights", "a0", "a1", "rotation", "alpha", "unveil_unitary",
                 "seed", "challenge_probability"});
  json commitment = p;
  commitment.erase("challenge_probability");
  return entangled_committer(commitment_from_json(commitment),
                             probability(p, "challenge_probability"));
}

StrategySpec make_bit_flip_committer(const json& p) {
  check_keys(p, {});
  return bit_flip_committer();
}

StrategySpec make_honest_receiver(const json& p) {
  check_keys(p, {"challenge_probability"});
  return honest_receiver(probability(p, "challenge_probability"));
}

StrategySpec make_measuring_receiver(const json& p) {
  check_keys(p, {"basis", "basis_angle"});
  if (p.contains("basis")) return measuring_receiver(basis_angle_from_json(p["basis"], "basis"));
  if (p.contains("basis_angle")) {
    return measuring_receiver(basis_angle_from_json(p["basis_angle"], "basis_angle"));
  }
  throw ParamError("basis", "required");
}

StrategySpec make_ancilla_receiver(const json& p) {
  check_keys(p, {"coupling", "theta", "ancilla_dim", "u1", "readout", "seed", "challenge_outcomes"});
  std::set<std::int64_t> outcomes;
  if (p.contains("challenge_outcomes")) {
    const json& v = p["challenge_outcomes"];
    if (!v.is_array()) throw ParamError("challenge_outcomes", "must be an array of integers");
    for (const auto& o : v) {
      if (!o.is_number_integer()) throw ParamError("challenge_outcomes", "must be integers");
      outcomes.insert(o.get<std::int64_t>());
    }
  }
  json attack = p;
  attack.erase("challenge_outcomes");
  return ancilla_receiver(attack_from_json(attack), std::move(outcomes));
}

StrategySpec make_lying_game_receiver(const json& p) {
  check_keys(p, {});
  return lying_game_receiver();
}

StrategySpec make_singlet_tampering(const json& p) {
  check_keys(p, {"role", "op", "angle", "bit", "challenge_probability"});
  if (!p.contains("role") || !p["role"].is_string()) throw ParamError("role", "must be \"A\" or \"B\"");
  const auto role = protocol::parse_role(p["role"].get<std::string>());
  if (!role) throw ParamError("role", "must be \"A\" or \"B\"");
  TamperOp op;
  const std::string kind = p.value("op", std::string("measure"));
  if (kind == "measure") {
    op.kind = TamperOp::Kind::measure;
  } else if (kind == "rotate") {
    op.kind = TamperOp::Kind::rotate;
  } else if (kind == "substitute") {
    op.kind = TamperOp::Kind::substitute;
  } else {
    throw ParamError("op", "must be measure, rotate or substitute");
  }
  op.angle = p.contains("angle") ? basis_angle_from_json(p["angle"], "angle") : 0.0;
  return singlet_tampering_party(*role, op, bit(p, "bit"), probability(p, "challenge_probability"));
}

const std::map<std::string, std::function<StrategySpec(const json&)>, std::less<>>& factories() {
  static const std::map<std::string, std::function<StrategySpec(const json&)>, std::less<>> table{
      {"honest_committer", make_honest_committer},
      {"entangled_committer", make_entangled_committer},
      {"bit_flip_committer", make_bit_flip_committer},
      {"honest_receiver", make_honest_receiver},
      {"measuring_receiver", make_measuring_receiver},
      {"ancilla_receiver", make_ancilla_receiver},
      {"lying_game_receiver", make_lying_game_receiver},
      {"singlet_tampering_party", make_singlet_tampering},
  };
  return table;
}

}  // namespace

double basis_angle_from_json(const json& v, const std::string& key) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "Z") return 0.0;
    if (s == "X") return std::numbers::pi / 2;
    throw ParamError(key, "must be \"Z\", \"X\" or an angle");
  }
  if (!v.is_number() || !std::isfinite(v.get<double>())) {
    throw ParamError(key, "must be \"Z\", \"X\" or an angle");
  }
  return v.get<double>();
}

EntangledCommitment commitment_from_json(const json& p) {
  if (p.contains("alpha")) {
    const json& a = p["alpha"];
    if (!a.is_array() || a.size() != 4) throw ParamError("alpha", "must list four ancilla vectors");
    std::array<qsim::Vector, 4> alpha;
    for (std::size_t r = 0; r < 4; ++r) {
      alpha[r] = wrap("alpha", [&] { return qsim::vector_from_json(a[r]); });
    }
    const qsim::Matrix u = p.contains("unveil_unitary")
                               ? matrix_param(p, "unveil_unitary")
                               : qsim::Matrix::Identity(alpha[0].size(), alpha[0].size());
    return wrap("alpha", [&] { return EntangledCommitment(alpha, u); });
  }
  const std::string preset = p.value("preset", std::string(p.contains("weights") ? "canonical" : ""));
  if (preset == "classical") {
    if (!p.contains("symbol") || !p["symbol"].is_string()) throw ParamError("symbol", "required");
    const auto r = protocol::parse_symbol(p["symbol"].get<std::string>());
    if (!r) throw ParamError("symbol", "must be S0, S1, Splus or Sminus");
    return EntangledCommitment::classical(*r);
  }
  if (preset == "maximally_mixed") {
    return EntangledCommitment::canonical({0.25, 0.25, 0.25, 0.25}, qsim::Vector::Unit(2, 0),
                                          qsim::Vector::Unit(2, 1), qsim::Matrix::Identity(4, 4));
  }
  if (preset == "random") {
    qsim::SeedStream rng(seed_param(p, "seed"));
    return EntangledCommitment::random(rng);
  }
  if (preset == "canonical") {
    if (!p.contains("weights") || !p["weights"].is_array() || p["weights"].size() != 4) {
      throw ParamError("weights", "must list four weights (S0, Sminus, S1, Splus)");
    }
    std::array<double, 4> w{};
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!p["weights"][i].is_number() || p["weights"][i].get<double>() < 0.0) {
        throw ParamError("weights", "must be non-negative numbers");
      }
      w[i] = p["weights"][i].get<double>();
      total += w[i];
    }
    if (std::abs(total - 1.0) > 1e-9) throw ParamError("weights", "must sum to 1");
    const qsim::Vector a0 = p.contains("a0") ? vector_param(p, "a0") : qsim::Vector::Unit(2, 0);
    const qsim::Vector a1 = p.contains("a1") ? vector_param(p, "a1") : qsim::Vector::Unit(2, 0);
    const qsim::Matrix rot =
        p.contains("rotation") ? matrix_param(p, "rotation") : qsim::Matrix::Identity(4, 4);
    for (const auto& [key, v] : {std::pair{"a0", &a0}, std::pair{"a1", &a1}}) {
      if (v->size() != 2 || v->norm() < 1e-12) throw ParamError(key, "must be a non-zero 2-vector");
    }
    return wrap("rotation", [&] { return EntangledCommitment::canonical(w, a0, a1, rot); });
  }
  throw ParamError("preset", "must be classical, maximally_mixed, random or canonical, or give alpha");
}

AncillaAttack attack_from_json(const json& p) {
  const std::string coupling = p.value("coupling", std::string(p.contains("u1") ? "custom" : ""));
  if (coupling == "identity") {
    const double dim = number(p, "ancilla_dim", 2);
    return wrap("ancilla_dim", [&] { return AncillaAttack::identity(static_cast<std::size_t>(dim)); });
  }
  if (coupling == "swap") return AncillaAttack::swap();
  if (coupling == "partial_swap") {
    if (!p.contains("theta")) throw ParamError("theta", "required");
    return AncillaAttack::partial_swap(basis_angle_from_json(p["theta"], "theta"));
  }
  if (coupling == "haar") {
    qsim::SeedStream rng(seed_param(p, "seed"));
    const double dim = number(p, "ancilla_dim", 2);
    return wrap("ancilla_dim", [&] { return AncillaAttack::haar(static_cast<std::size_t>(dim), rng); });
  }
  if (coupling == "custom") {
    const qsim::Matrix u1 = matrix_param(p, "u1");
    const auto dim = static_cast<std::size_t>(number(p, "ancilla_dim", static_cast<double>(u1.rows()) / 2));
    if (p.contains("readout")) {
      const qsim::Matrix ro = matrix_param(p, "readout");
      return wrap("u1", [&] { return AncillaAttack(dim, u1, ro); });
    }
    return wrap("u1", [&] { return AncillaAttack(dim, u1); });
  }
  throw ParamError("coupling", "must be identity, swap, partial_swap, haar or custom");
}

StrategySpec make_strategy(const std::string& kind, const json& params) {
  const auto& table = factories();
  const auto it = table.find(kind);
  if (it == table.end()) throw ParamError("kind", "unknown strategy kind '" + kind + "'");
  return it->second(params.is_null() ? json::object() : params);
}

std::vector<std::string> strategy_kinds() {
  std::vector<std::string> out;
  for (const auto& [k, f] : factories()) out.push_back(k);
  return out;
}

}  // namespace csbc::strategies
