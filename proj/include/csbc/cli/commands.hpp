// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "csbc/cli/config.hpp"

namespace csbc::cli {

/// Exit-code contract of the csbc tool.
enum ExitCode : int { kOk = 0, kInternal = 1, kConfig = 2, kCapability = 3 };

/// Raised for requests a valid config cannot be served with (enumerating a
/// non-enumerable strategy, exceeding the branch cap).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one experiment and renders its report in the configured format.
/// threads = 0 uses every hardware thread; the text does not depend on it.
std::string run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

/// Entry point of the command-line tool.
int run_cli(int argc, char** argv);

}  // namespace csbc::cli
