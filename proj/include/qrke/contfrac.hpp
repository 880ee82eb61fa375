// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qrke/precision.hpp"

namespace qrke {

// One row of the intermediate-fraction ladder of an expansion. For the
// quotient block i, the rows are m*p_{i-1} + p_{i-2} for m = 1..a_i; the row
// with m = a_i is the principal convergent c_i.
struct CFLadderRow {
  int block = 0;
  BigInt m_sub;
  bool principal = false;
  BigInt p;
  BigInt q;
};

struct CFExpansion {
  std::vector<BigInt> quotients;                       // a_0, a_1, ...
  std::vector<std::pair<BigInt, BigInt>> convergents;  // principal (p_i, q_i)
  std::vector<CFLadderRow> ladder;  // all intermediate fractions, in order
};

// Quotients are trusted only while q_i stays below 10^(ctx.digits/2);
// expansion stops there, at max_terms, or when the remainder vanishes.
// The ladder is capped at a fixed row count to keep pathological inputs
// (one enormous quotient) bounded.
CFExpansion cf_expand(const Real& v, int max_terms, const PrecisionContext& ctx);

struct CFCandidate {
  int ladder_index = 0;
  int block = 0;
  BigInt m_sub;
  bool principal = false;
  int sign_branch = +1;  // which branch of r = sign*d + k*e fed the estimate
  BigInt p;
  BigInt q;
  Real estimate;     // p * frac(sign*d)
  BigInt candidate_r;  // nearest integer to the estimate
  Real residual;
  bool verified = false;
  std::optional<Real> dr;         // r_true - estimate, oracle mode
  std::optional<Real> dr_over_r;  // dr / r_true
  std::optional<Real> r_over_estimate;
};

// Walks the ladder of e and emits every row whose estimate p*frac(+d) or
// p*frac(-d) lands in [r_lo, r_hi]; both sign branches are tried for each
// row. Each candidate is verified against tr; when r_true is given the
// oracle difference columns are filled in.
std::vector<CFCandidate> cf_candidates(const Real& d, const Real& e,
                                       const BigInt& r_lo, const BigInt& r_hi,
                                       const Real& x, const Real& tr,
                                       const std::optional<BigInt>& r_true,
                                       const PrecisionContext& ctx);

}  // namespace qrke
