// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "qrke/experiments.hpp"

namespace qrke {

struct CliParse {
  ExperimentSpec spec;
  bool help = false;
  std::string help_text;
};

// Grammar: qrke-lab <reproduce|attack|kex|bench> [subcommand] --flags.
// Throws ParameterError on usage problems (exit code 2 at the tool level).
CliParse parse_cli(const std::vector<std::string>& args);

}  // namespace qrke
