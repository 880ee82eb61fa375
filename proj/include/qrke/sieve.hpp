// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "qrke/diophantine.hpp"
#include "qrke/precision.hpp"

namespace qrke {

// Brute-force sieve over k: a hit is a k for which sign*d + k*e is within
// half a unit in the (match_digits - 1)-th fractional digit of an integer,
// i.e. |frac distance| < 0.5 * 10^(1 - match_digits). Both sign branches are
// always tested.
struct FloatSieveConfig {
  Real d;
  Real e;
  BigInt k_lo;
  BigInt k_hi;
  int match_digits = 9;
  PrecisionContext ctx;
  int chunks = 1;

  // When set, hits are verified against tr as they are found (in ascending
  // k order) and the sieve stops after the first verified one: the attack
  // has succeeded and the remaining range is of no interest.
  struct StopRule {
    Real x;
    Real tr;
  };
  std::optional<StopRule> stop_after_verified;
};

// Modular-integer variant over the scaled fractional parts di = frac(d)*M,
// ei = frac(e)*M: a hit is a k with (off + k*ei) mod M < comp or
// M - ((off + k*ei) mod M) < comp, off in {di, M - di}. d_floor/e_floor
// carry the integer parts so hits can be mapped back to secret candidates.
struct IntSieveConfig {
  BigInt di;
  BigInt ei;
  BigInt M;
  BigInt comp;
  BigInt k_lo;
  BigInt k_hi;
  BigInt d_floor = 0;
  BigInt e_floor = 0;
  int chunks = 1;
};

struct SieveHit {
  BigInt k;
  int sign_branch = +1;
  BigInt r_candidate;
  Real fractional_residual;  // distance of sign*d + k*e to the nearest integer
  std::optional<BigInt> residual_units;  // integer sieve: min(s, M - s)
  bool verified = false;
};

// Smallest k interval guaranteed to contain every k whose sign*d + k*e
// lands in [r_lo, r_hi]: k_lo = floor((r_lo - d)/e), k_hi = ceil((r_hi + d)/e).
std::pair<BigInt, BigInt> k_range_for_r_range(const BigInt& r_lo,
                                              const BigInt& r_hi,
                                              const AttackReals& reals);

// Ascending-k hit list. The inner loop accumulates fractional parts
// incrementally (acc <- acc + frac(e)) and re-anchors with a full
// multiplication every 10^6 steps.
std::vector<SieveHit> float_sieve(const FloatSieveConfig& cfg);

// Ascending-k hit list by pure modular addition.
std::vector<SieveHit> int_sieve(const IntSieveConfig& cfg);

// Sets each hit's verified flag by comparing T_{r_candidate}(x) against tr
// on the leading ctx.digits/2 digits.
std::vector<SieveHit> verify_hits(const std::vector<SieveHit>& hits,
                                  const Real& x, const Real& tr,
                                  const PrecisionContext& ctx);

struct BenchReport {
  double elapsed_ms_float = 0;
  double elapsed_ms_int = 0;
  double ratio = 0;  // float time / int time
  double throughput_float = 0;  // k per second
  double throughput_int = 0;
  BigInt k_count;
  std::vector<SieveHit> hits;  // the (identical) hit list, from the int run
  bool below_measurement_threshold = false;
};

// Runs both variants single-threaded over the same k range and requires
// identical hit k-sets; throws InternalError on mismatch.
BenchReport sieve_benchmark(const FloatSieveConfig& float_cfg,
                            const IntSieveConfig& int_cfg);

struct ExtrapolatedCost {
  double log10_years = 0;
  std::string text;
};

// Cost of sieving a secret near 10^magnitude at the measured throughput,
// per the O(r * n) work model.
ExtrapolatedCost extrapolate_cost(double throughput_k_per_sec, int magnitude,
                                  double e_value);

}  // namespace qrke
