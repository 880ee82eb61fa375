// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrke/diophantine.hpp"

#include "qrke/chebyshev.hpp"

namespace qrke {

AttackReals derive_attack_reals(const Real& x, const Real& y,
                                const PrecisionContext& ctx,
                                bool force_trivial) {
  if (x.cmp_long(1) >= 0 || x.cmp_long(-1) <= 0) {
    throw DomainError("derive_attack_reals: need |x| < 1");
  }
  if (y.cmp_long(1) > 0 || y.cmp_long(-1) < 0) {
    throw DomainError("derive_attack_reals: need |y| <= 1");
  }
  if (!force_trivial && is_trivial_angle(x)) {
    throw DegenerateParameterError(
        "derive_attack_reals: x is a trivial angle; pass force_trivial to "
        "proceed anyway");
  }
  mpfr_prec_t wbits = bits_for_digits(ctx.working_digits());
  Real theta(wbits);
  mpfr_acos(theta.raw(), x.raw(), MPFR_RNDN);
  Real ay(wbits);
  mpfr_acos(ay.raw(), y.raw(), MPFR_RNDN);
  Real d = ay / theta;
  Real two_pi = Real::pi(wbits) + Real::pi(wbits);
  Real e = two_pi / theta;
  return AttackReals{d, e, ctx};
}

std::vector<DiophEquation> enumerate_equations(const AttackReals& reals, int m) {
  if (m < 1) throw ParameterError("enumerate_equations: m must be >= 1");
  BigInt M;
  mpz_ui_pow_ui(M.get_mpz_t(), 10, static_cast<unsigned long>(m));
  BigInt D = floor_scaled(reals.d, m);
  BigInt E = floor_scaled(reals.e, m);
  std::vector<DiophEquation> eqs;
  eqs.reserve(8);
  for (int sign : {+1, -1}) {
    for (int db : {0, 1}) {
      for (int eb : {0, 1}) {
        DiophEquation eq;
        eq.a = -M;
        eq.b = E + eb;
        eq.c = -sign * (D + db);
        eq.m = m;
        eq.sign_branch = sign;
        eq.d_bump = db;
        eq.e_bump = eb;
        eqs.push_back(eq);
      }
    }
  }
  return eqs;
}

ExtGcdResult ext_gcd(const BigInt& a, const BigInt& b) {
  if (a == 0 && b == 0) throw ParameterError("ext_gcd: both inputs zero");
  ExtGcdResult r;
  mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

std::optional<DiophFamily> solve_diophantine(const DiophEquation& eq) {
  if (eq.a == 0) {
    throw ParameterError("solve_diophantine: normal form needs a nonzero n coefficient");
  }
  ExtGcdResult bez = ext_gcd(eq.a, eq.b);
  if (!mpz_divisible_p(eq.c.get_mpz_t(), bez.g.get_mpz_t())) {
    return std::nullopt;
  }
  BigInt scale = eq.c / bez.g;
  BigInt k_part = bez.v * scale;
  BigInt k_step = ::abs(eq.a) / bez.g;
  BigInt n_step = ::abs(eq.b) / bez.g;

  DiophFamily fam;
  fam.k_step = k_step;
  fam.n_step = n_step;
  // Least-absolute-value representative of k_part mod k_step.
  BigInt k0 = k_part;
  if (k_step != 0) {
    mpz_mod(k0.get_mpz_t(), k_part.get_mpz_t(), k_step.get_mpz_t());
    if (2 * k0 > k_step) k0 -= k_step;
  }
  fam.k0 = k0;
  BigInt num = eq.c - eq.b * k0;
  if (!mpz_divisible_p(num.get_mpz_t(), eq.a.get_mpz_t())) {
    throw InternalError("solve_diophantine: canonicalization broke divisibility");
  }
  fam.n0 = num / eq.a;
  // fam moves along z with n(z) increasing; flip the step pair if the
  // raw signs run the other way.
  BigInt check = eq.a * (fam.n0 + fam.n_step) + eq.b * (fam.k0 + fam.k_step);
  if (check != eq.c) {
    fam.k_step = -fam.k_step;
    check = eq.a * (fam.n0 + fam.n_step) + eq.b * (fam.k0 + fam.k_step);
    if (check != eq.c) {
      throw InternalError("solve_diophantine: no consistent step orientation");
    }
  }
  return fam;
}

bool candidate_verifies(const BigInt& candidate_r, const Real& x, const Real& tr,
                        const PrecisionContext& ctx, Real* residual_out) {
  if (candidate_r <= 0) {
    if (residual_out) *residual_out = Real::from_long(1, 64);
    return false;
  }
  Real yc = t_cos_eval(candidate_r, x, ctx);
  Real residual = (yc - tr).abs();
  bool ok = residual < Real::pow10(-(ctx.digits / 2), 64);
  if (residual_out) *residual_out = residual;
  return ok;
}

ScanResult scan_family(const DiophFamily& fam, const DiophEquation& eq,
                       const BigInt& r_lo, const BigInt& r_hi, const Real& x,
                       const Real& tr, ScanMode mode,
                       const std::optional<BigInt>& r_true,
                       const PrecisionContext& ctx) {
  (void)eq;
  if (r_lo >= r_hi) throw ParameterError("scan_family: need r_lo < r_hi");
  if (fam.n_step == 0) throw ParameterError("scan_family: n_step is zero");
  if (mode == ScanMode::oracle && !r_true.has_value()) {
    throw ParameterError("scan_family: oracle mode needs r_true");
  }

  ScanResult res;
  BigInt z_lo, z_hi;
  BigInt lo_num = r_lo - fam.n0;
  BigInt hi_num = r_hi - fam.n0;
  mpz_fdiv_q(z_lo.get_mpz_t(), lo_num.get_mpz_t(), fam.n_step.get_mpz_t());
  mpz_fdiv_q(z_hi.get_mpz_t(), hi_num.get_mpz_t(), fam.n_step.get_mpz_t());
  if (z_hi < z_lo) return res;
  res.z_lo = z_lo;
  res.z_hi = z_hi;

  for (BigInt z = z_lo; z <= z_hi; ++z) {
    BigInt n = fam.n0 + z * fam.n_step;
    CandidateReport rep;
    rep.candidate_r = ::abs(n);
    rep.source_z = z;
    rep.verified = candidate_verifies(rep.candidate_r, x, tr, ctx, &rep.residual);
    if (rep.verified) res.verified_count++;
    if (mode == ScanMode::oracle) {
      rep.signed_diff = *r_true - rep.candidate_r;
    }
    if (res.candidates.empty()) {
      res.n_min = rep.candidate_r;
      res.n_max = rep.candidate_r;
    } else {
      if (rep.candidate_r < res.n_min) res.n_min = rep.candidate_r;
      if (rep.candidate_r > res.n_max) res.n_max = rep.candidate_r;
    }
    res.candidates.push_back(rep);
  }

  if (mode == ScanMode::oracle) {
    for (const CandidateReport& rep : res.candidates) {
      if (rep.candidate_r <= *r_true) {
        if (!res.best_below || rep.candidate_r > res.best_below->candidate_r) {
          res.best_below = rep;
        }
      } else {
        if (!res.best_above || rep.candidate_r < res.best_above->candidate_r) {
          res.best_above = rep;
        }
      }
    }
  }
  return res;
}

}  // namespace qrke
