// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <vector>

#include "qrke/cli.hpp"
#include "qrke/errors.hpp"
#include "qrke/experiments.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    qrke::CliParse parsed = qrke::parse_cli(args);
    if (parsed.help) {
      std::cout << parsed.help_text;
      return 0;
    }
    qrke::ExperimentResult result = qrke::run_experiment(parsed.spec);
    std::cout << (parsed.spec.structured ? result.report.to_structured()
                                         : result.report.to_text());
    return result.exit_code;
  } catch (const qrke::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qrke::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
