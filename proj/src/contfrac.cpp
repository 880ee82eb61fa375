// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrke/contfrac.hpp"

#include "qrke/diophantine.hpp"

namespace qrke {

namespace {
constexpr size_t kMaxLadderRows = 200000;
}

CFExpansion cf_expand(const Real& v, int max_terms, const PrecisionContext& ctx) {
  if (v.sign() <= 0) throw ParameterError("cf_expand: value must be positive");
  if (max_terms < 1) throw ParameterError("cf_expand: max_terms must be >= 1");

  BigInt q_trust;
  mpz_ui_pow_ui(q_trust.get_mpz_t(), 10, static_cast<unsigned long>(ctx.digits / 2));

  CFExpansion exp;
  Real x = v;  // carries v's precision through the remainder chain
  BigInt p_prev2(0), q_prev2(1);  // p_{-1} = 1, q_{-1} = 0 seeds, shifted below
  BigInt p_prev1(1), q_prev1(0);

  for (int i = 0; i < max_terms; ++i) {
    BigInt a = floor_to_bigint(x);
    if (i > 0 && a < 1) break;  // remainder underflowed to a nonpositive digit
    BigInt p = a * p_prev1 + p_prev2;
    BigInt q = a * q_prev1 + q_prev2;
    if (i > 0 && q >= q_trust) break;

    exp.quotients.push_back(a);
    if (i == 0) {
      CFLadderRow row;
      row.block = 0;
      row.m_sub = a;
      row.principal = true;
      row.p = p;
      row.q = q;
      exp.ladder.push_back(row);
    } else {
      for (BigInt m = 1; m <= a; ++m) {
        if (exp.ladder.size() >= kMaxLadderRows) break;
        CFLadderRow row;
        row.block = i;
        row.m_sub = m;
        row.principal = (m == a);
        row.p = m * p_prev1 + p_prev2;
        row.q = m * q_prev1 + q_prev2;
        exp.ladder.push_back(row);
      }
    }
    exp.convergents.emplace_back(p, q);

    Real frac = x - Real::from_bigint(a, x.prec());
    if (frac.is_zero()) break;
    x = Real::from_long(1, x.prec()) / frac;

    p_prev2 = p_prev1;
    q_prev2 = q_prev1;
    p_prev1 = p;
    q_prev1 = q;
  }
  return exp;
}

std::vector<CFCandidate> cf_candidates(const Real& d, const Real& e,
                                       const BigInt& r_lo, const BigInt& r_hi,
                                       const Real& x, const Real& tr,
                                       const std::optional<BigInt>& r_true,
                                       const PrecisionContext& ctx) {
  if (r_lo >= r_hi) throw ParameterError("cf_candidates: need r_lo < r_hi");
  CFExpansion exp = cf_expand(e, 256, ctx);
  Real frac_by_sign[2] = {frac_part(d), frac_part(-d)};
  Real lo = Real::from_bigint(r_lo, frac_by_sign[0].prec());
  Real hi = Real::from_bigint(r_hi, frac_by_sign[0].prec());

  std::vector<CFCandidate> out;
  bool branch_done[2] = {false, false};
  for (size_t idx = 0; idx < exp.ladder.size(); ++idx) {
    const CFLadderRow& row = exp.ladder[idx];
    for (int b = 0; b < 2; ++b) {
      if (branch_done[b]) continue;
      const Real& fd = frac_by_sign[b];
      Real estimate = Real::from_bigint(row.p, fd.prec()) * fd;
      if (estimate > hi) {  // estimates grow with p within a branch
        branch_done[b] = true;
        continue;
      }
      if (estimate < lo) continue;
      CFCandidate cand;
      cand.ladder_index = static_cast<int>(idx);
      cand.block = row.block;
      cand.m_sub = row.m_sub;
      cand.principal = row.principal;
      cand.sign_branch = (b == 0) ? +1 : -1;
      cand.p = row.p;
      cand.q = row.q;
      cand.estimate = estimate;
      cand.candidate_r = round_to_bigint(estimate);
      cand.verified = candidate_verifies(cand.candidate_r, x, tr, ctx, &cand.residual);
      if (r_true.has_value()) {
        Real rt = Real::from_bigint(*r_true, fd.prec());
        cand.dr = rt - estimate;
        cand.dr_over_r = *cand.dr / rt;
        cand.r_over_estimate = rt / estimate;
      }
      out.push_back(cand);
    }
    if (branch_done[0] && branch_done[1]) break;
  }
  return out;
}

}  // namespace qrke
