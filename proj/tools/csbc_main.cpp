// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/cli/commands.hpp"

int main(int argc, char** argv) { return csbc::cli::run_cli(argc, argv); }
