// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "qrke/precision.hpp"

namespace qrke {

// The arccos-derived constants behind every attack:
// d = arccos(y)/arccos(x), e = 2*pi/arccos(x). The true secret satisfies
// r = sign*d + k*e for some sign in {+1, -1} and integer k.
struct AttackReals {
  Real d;
  Real e;
  PrecisionContext ctx;
};

AttackReals derive_attack_reals(const Real& x, const Real& y,
                                const PrecisionContext& ctx,
                                bool force_trivial = false);

// One scaled integer equation a*n + b*k = c in normal form a = -10^m.
// d_bump/e_bump in {0, 1} select among the equally legal floor roundings;
// sign_branch is the sign in front of d.
struct DiophEquation {
  BigInt a;
  BigInt b;
  BigInt c;
  int m = 0;
  int sign_branch = +1;
  int d_bump = 0;
  int e_bump = 0;
};

// The eight variants (two signs x two d roundings x two e roundings),
// in a fixed order: sign +1 then -1, d_bump 0 then 1, e_bump 0 then 1.
std::vector<DiophEquation> enumerate_equations(const AttackReals& reals, int m);

struct ExtGcdResult {
  BigInt g;
  BigInt u;
  BigInt v;  // a*u + b*v = g
};

ExtGcdResult ext_gcd(const BigInt& a, const BigInt& b);

// Solution family k(z) = k0 + z*k_step, n(z) = n0 + z*n_step. k0 is the
// least-absolute-value representative of its residue class mod k_step.
struct DiophFamily {
  BigInt k0;
  BigInt n0;
  BigInt k_step;
  BigInt n_step;
};

// Empty when gcd(a, b) does not divide c.
std::optional<DiophFamily> solve_diophantine(const DiophEquation& eq);

struct CandidateReport {
  BigInt candidate_r;
  BigInt source_z;  // family parameter z (or ladder index for CF candidates)
  Real residual;    // |tr - T_candidate(x)|
  bool verified = false;
  std::optional<BigInt> signed_diff;  // true r - candidate, oracle mode only
};

enum class ScanMode { attack, oracle };

struct ScanResult {
  std::vector<CandidateReport> candidates;
  BigInt z_lo;
  BigInt z_hi;  // window width = z_hi - z_lo
  BigInt n_min;
  BigInt n_max;
  int verified_count = 0;
  std::optional<CandidateReport> best_below;  // oracle mode only
  std::optional<CandidateReport> best_above;
};

// Walks the family members bracketing [r_lo, r_hi]: z from
// floor((r_lo - n0)/n_step) to floor((r_hi - n0)/n_step), so the first
// candidate sits at or just below r_lo. Every candidate is verified against
// tr at ctx.digits/2 leading digits; oracle mode additionally records
// signed differences against r_true.
ScanResult scan_family(const DiophFamily& fam, const DiophEquation& eq,
                       const BigInt& r_lo, const BigInt& r_hi, const Real& x,
                       const Real& tr, ScanMode mode,
                       const std::optional<BigInt>& r_true,
                       const PrecisionContext& ctx);

// Shared verification rule: candidate passes iff |T_candidate(x) - tr|
// is below 10^-(ctx.digits/2).
bool candidate_verifies(const BigInt& candidate_r, const Real& x, const Real& tr,
                        const PrecisionContext& ctx, Real* residual_out = nullptr);

}  // namespace qrke
