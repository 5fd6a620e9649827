// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csbc/analysis/detection.hpp"
#include "csbc/analysis/information.hpp"
#include "csbc/cli/commands.hpp"
#include "csbc/cli/config.hpp"
#include "csbc/strategies/registry.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw csbc::cli::ConfigError(what, std::string("invalid JSON: ") + e.what());
  }
}

csbc::protocol::StrategySpec strategy(const std::string& text, const char* what) {
  const json j = parse(text, what);
  try {
    return csbc::strategies::make_strategy(j.value("kind", std::string()), j.value("params", json::object()));
  } catch (const csbc::strategies::ParamError& e) {
    throw csbc::cli::ConfigError(std::string(what) + "." + (e.key() == "kind" ? "kind" : "params." + e.key()),
                                 e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_csbc, m) {
  m.doc() = "Cheat-sensitive quantum bit commitment simulator";

  py::register_exception<csbc::cli::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<csbc::cli::CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);

  m.def(
      "run_experiment",
      [](const std::string& config, unsigned threads) {
        const auto cfg = csbc::cli::parse_config_text(config);
        py::gil_scoped_release release;
        return csbc::cli::run_experiment(cfg, threads);
      },
      py::arg("config"), py::arg("threads") = 0, "Runs a JSON experiment config; returns the report text.");

  m.def(
      "normalize_config",
      [](const std::string& config) { return csbc::cli::to_json(csbc::cli::parse_config_text(config)).dump(); },
      py::arg("config"));

  m.def("strategy_kinds", &csbc::strategies::strategy_kinds);

  m.def(
      "detection_exact",
      [](const std::string& committer, const std::string& receiver, std::size_t max_branches) {
        const auto a = strategy(committer, "committer");
        const auto b = strategy(receiver, "receiver");
        try {
          return csbc::analysis::to_json(csbc::analysis::detection_exact(a, b, max_branches)).dump();
        } catch (const csbc::qsim::NotEnumerable& e) {
          throw csbc::cli::CapabilityError(e.what());
        } catch (const csbc::qsim::BranchLimitExceeded& e) {
          throw csbc::cli::CapabilityError(e.what());
        }
      },
      py::arg("committer"), py::arg("receiver"), py::arg("max_branches") = csbc::qsim::kDefaultMaxBranches);

  m.def(
      "p_unveil",
      [](const csbc::qsim::Matrix& rho) {
        const auto r = csbc::analysis::p_unveil(csbc::qsim::DensityMatrix(csbc::qsim::labels({"C"}), rho));
        return py::make_tuple(r.p0, r.p1);
      },
      py::arg("rho"), "(p0, p1) for a 2x2 density matrix of the commitment qubit.");

  m.def("binary_entropy", &csbc::analysis::binary_entropy, py::arg("p"));
}
