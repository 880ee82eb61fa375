// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrke/cli.hpp"

#include <regex>
#include <string>

#include <CLI11.hpp>

namespace qrke {

namespace {

BigInt parse_plain_integer(const std::string& s, const char* what) {
  static const std::regex kPlain("[0-9]+");
  if (!std::regex_match(s, kPlain)) {
    throw ParameterError(std::string(what) + ": malformed integer '" + s + "'");
  }
  return BigInt(s);
}

// Range endpoints additionally accept the shorthand <mantissa>e<exponent>,
// e.g. 1e8.
BigInt parse_range_number(const std::string& s) {
  static const std::regex kPlain("[0-9]+");
  static const std::regex kSci("([0-9]+)e([0-9]{1,4})");
  std::smatch m;
  if (std::regex_match(s, kPlain)) return BigInt(s);
  if (std::regex_match(s, m, kSci)) {
    BigInt base(m[1].str());
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, std::stoul(m[2].str()));
    return base * scale;
  }
  throw ParameterError("--r-range: malformed number '" + s + "'");
}

void apply_r_range(ExperimentSpec& spec, const std::string& text) {
  size_t colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw ParameterError("--r-range: expected LO:HI, got '" + text + "'");
  }
  spec.r_lo = parse_range_number(text.substr(0, colon));
  spec.r_hi = parse_range_number(text.substr(colon + 1));
  if (*spec.r_lo >= *spec.r_hi) {
    throw ParameterError("--r-range: need LO < HI");
  }
}

struct RawOptions {
  std::string experiment;
  int digits = 0;
  std::string x;
  std::string r;
  std::string tr;
  std::string r_range;
  int m = 9;
  int match_digits = 9;
  std::string comp;
  std::string modulus;
  unsigned long seed = 1;
  int chunks = 1;
  std::string format = "text";
  bool export_secrets = false;
};

void add_common_flags(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--digits", raw.digits, "decimal precision of the run");
  cmd->add_option("--format", raw.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));
}

void add_instance_flags(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--x", raw.x, "public parameter x (plain decimal)");
  cmd->add_option("--tr", raw.tr, "target public value T_r(x) (plain decimal)");
  cmd->add_option("--r", raw.r,
                  "known secret, enables oracle columns and derives --tr");
  cmd->add_option("--r-range", raw.r_range, "secret search window LO:HI");
}

}  // namespace

CliParse parse_cli(const std::vector<std::string>& args) {
  RawOptions raw;
  CLI::App app{"Chebyshev key exchange and its cryptanalysis workbench"};
  app.name("qrke-lab");
  app.require_subcommand(1);

  CLI::App* reproduce =
      app.add_subcommand("reproduce", "run a named reference experiment");
  reproduce
      ->add_option("--experiment", raw.experiment, "experiment name")
      ->required();
  reproduce->add_option("--chunks", raw.chunks, "sieve worker threads");
  reproduce->add_option("--seed", raw.seed, "keygen seed (kex-demo)");
  reproduce->add_flag("--insecure-export-secrets", raw.export_secrets,
                      "print secret values");
  add_common_flags(reproduce, raw);

  CLI::App* attack = app.add_subcommand("attack", "run one attack");
  attack->require_subcommand(1);
  CLI::App* dio = attack->add_subcommand("diophantine", "scaled-equation scan");
  dio->add_option("--m", raw.m, "scaling digits of the equation");
  CLI::App* cf = attack->add_subcommand("contfrac", "convergent-ladder scan");
  CLI::App* fs = attack->add_subcommand("sieve", "floating-point sieve");
  fs->add_option("--match-digits", raw.match_digits,
                 "fractional digits that must cancel");
  fs->add_option("--chunks", raw.chunks, "sieve worker threads");
  CLI::App* is = attack->add_subcommand("int-sieve", "modular-integer sieve");
  is->add_option("--modulus", raw.modulus, "scale modulus M (plain integer)");
  is->add_option("--comp", raw.comp, "hit threshold (plain integer)");
  is->add_option("--chunks", raw.chunks, "sieve worker threads");
  for (CLI::App* cmd : {dio, cf, fs, is}) {
    add_instance_flags(cmd, raw);
    add_common_flags(cmd, raw);
  }

  CLI::App* kex = app.add_subcommand("kex", "run a two-party key exchange");
  kex->add_option("--x", raw.x, "public parameter x (plain decimal)");
  kex->add_option("--r-range", raw.r_range, "secret range LO:HI");
  kex->add_option("--seed", raw.seed, "keygen seed");
  kex->add_flag("--insecure-export-secrets", raw.export_secrets,
                "print secret values");
  add_common_flags(kex, raw);

  CLI::App* bench = app.add_subcommand("bench", "measure attack throughput");
  bench->require_subcommand(1);
  CLI::App* bs = bench->add_subcommand("sieve", "float vs integer sieve");
  bs->add_option("--match-digits", raw.match_digits,
                 "fractional digits that must cancel");
  bs->add_option("--modulus", raw.modulus, "scale modulus M (plain integer)");
  add_instance_flags(bs, raw);
  add_common_flags(bs, raw);

  CliParse out;
  std::vector<std::string> cli_args(args.rbegin(), args.rend());
  try {
    app.parse(cli_args);
  } catch (const CLI::Success&) {
    out.help = true;
    CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty()) {
      deepest = deepest->get_subcommands().front();
    }
    out.help_text = deepest->help();
    return out;
  } catch (const CLI::ParseError& e) {
    throw ParameterError(std::string("usage: ") + e.what());
  }

  ExperimentSpec& spec = out.spec;
  spec.digits = raw.digits;
  spec.x_text = raw.x;
  spec.tr_text = raw.tr;
  spec.m = raw.m;
  spec.match_digits = raw.match_digits;
  spec.seed = raw.seed;
  spec.chunks = raw.chunks;
  spec.structured = raw.format == "structured";
  spec.export_secrets = raw.export_secrets;
  if (!raw.r.empty()) spec.r = parse_plain_integer(raw.r, "--r");
  if (!raw.r_range.empty()) apply_r_range(spec, raw.r_range);
  if (!raw.comp.empty()) spec.comp = parse_plain_integer(raw.comp, "--comp");
  if (!raw.modulus.empty()) {
    spec.modulus = parse_plain_integer(raw.modulus, "--modulus");
  }

  if (reproduce->parsed()) {
    spec.kind = ExperimentKind::reproduce_named;
    spec.name = raw.experiment;
  } else if (attack->parsed()) {
    if (dio->parsed()) spec.kind = ExperimentKind::attack_diophantine;
    if (cf->parsed()) spec.kind = ExperimentKind::attack_contfrac;
    if (fs->parsed()) spec.kind = ExperimentKind::attack_float_sieve;
    if (is->parsed()) spec.kind = ExperimentKind::attack_int_sieve;
  } else if (kex->parsed()) {
    spec.kind = ExperimentKind::kex;
  } else if (bench->parsed()) {
    spec.kind = ExperimentKind::bench_sieve;
  }
  return out;
}

}  // namespace qrke
