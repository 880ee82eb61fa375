// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>

#include "qrke/precision.hpp"
#include "qrke/report.hpp"

namespace qrke {

enum class ExperimentKind {
  reproduce_named,
  attack_diophantine,
  attack_contfrac,
  attack_float_sieve,
  attack_int_sieve,
  kex,
  bench_sieve,
};

// Fully determines one run. Named reproductions fix every parameter
// themselves (only chunks/format/export flags pass through); custom kinds
// take everything from the fields below.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::reproduce_named;
  std::string name;

  int digits = 0;  // 0 = kind default
  std::string x_text;
  std::string tr_text;          // attack target; empty = derived from r
  std::optional<BigInt> r;      // forced secret (enables oracle columns)
  std::optional<BigInt> r_lo;
  std::optional<BigInt> r_hi;
  int m = 9;
  int match_digits = 9;
  std::optional<BigInt> comp;
  std::optional<BigInt> modulus;
  unsigned long seed = 1;
  int chunks = 1;
  bool structured = false;
  bool export_secrets = false;
};

struct ExperimentResult {
  RunReport report;
  int exit_code = 0;
};

inline constexpr std::array<const char*, 5> kNamedExperiments = {
    "sec3-diophantine", "sec3-contfrac", "sec5-float-sieve", "sec5-int-sieve",
    "kex-demo"};

// Exit codes: 0 ran and matched expectations, 1 ran but no recovery
// (legitimate attack outcome), 2 usage error, 3 internal inconsistency.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace qrke
