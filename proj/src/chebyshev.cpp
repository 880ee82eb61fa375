// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrke/chebyshev.hpp"

#include <cmath>

namespace qrke {

namespace {

void check_x_domain(const Real& x) {
  if (x.cmp_long(1) > 0 || x.cmp_long(-1) < 0) {
    throw DomainError("Chebyshev argument outside [-1, 1]");
  }
}

}  // namespace

void validate_params(const KexParams& p) {
  check_x_domain(p.x);
  if (p.x.cmp_long(1) == 0 || p.x.cmp_long(-1) == 0) {
    throw DegenerateParameterError("kex params: |x| = 1 is degenerate");
  }
  if (is_trivial_angle(p.x)) {
    throw DegenerateParameterError(
        "kex params: x is a trivial angle (arccos(x) rational in pi)");
  }
  if (p.r_min < 2) throw ParameterError("kex params: r_min must be >= 2");
  if (p.r_max <= p.r_min) throw ParameterError("kex params: r_max must exceed r_min");
  int need = decimal_length(p.r_max) + 40;
  if (p.ctx.digits < need) {
    throw ParameterError("kex params: context digits " +
                         std::to_string(p.ctx.digits) + " below required " +
                         std::to_string(need));
  }
}

Real t_cos_eval(const BigInt& r, const Real& x, const PrecisionContext& ctx,
                int working_digits_override) {
  if (r < 0) throw ParameterError("t_cos_eval: r must be nonnegative");
  check_x_domain(x);
  int need = ctx.digits + decimal_length(r);
  int work = working_digits_override > 0 ? working_digits_override
                                         : need + ctx.guard;
  if (work < need) {
    throw PrecisionError("t_cos_eval: working precision " + std::to_string(work) +
                         " digits below required " + std::to_string(need));
  }
  mpfr_prec_t wbits = bits_for_digits(work);
  Real theta(wbits);
  mpfr_acos(theta.raw(), x.raw(), MPFR_RNDN);
  Real angle(wbits);
  mpfr_mul_z(angle.raw(), theta.raw(), r.get_mpz_t(), MPFR_RNDN);
  Real y(bits_for_digits(ctx.working_digits()));
  mpfr_cos(y.raw(), angle.raw(), MPFR_RNDN);
  return y;
}

Real t_ladder_eval(const BigInt& r, const Real& x, const PrecisionContext& ctx) {
  if (r < 0) throw ParameterError("t_ladder_eval: r must be nonnegative");
  check_x_domain(x);
  mpfr_prec_t out_bits = bits_for_digits(ctx.working_digits());
  if (r == 0) return Real::from_long(1, out_bits);

  // Each ladder step can grow the absolute error by a factor of about 4,
  // i.e. ~0.61 decimal digits per bit of r.
  size_t rbits = mpz_sizeinbase(r.get_mpz_t(), 2);
  int work = ctx.working_digits() +
             static_cast<int>(std::ceil(0.7 * static_cast<double>(rbits))) + 10;
  mpfr_prec_t wbits = bits_for_digits(work);

  Real lo = Real::from_long(1, wbits);  // T_a, a = 0
  Real hi(wbits);                       // T_{a+1}
  mpfr_set(hi.raw(), x.raw(), MPFR_RNDN);
  Real t1(wbits), t2(wbits);

  for (size_t i = rbits; i-- > 0;) {
    int bit = mpz_tstbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(i));
    // t1 = 2 lo hi - x = T_{2a+1}
    mpfr_mul(t1.raw(), lo.raw(), hi.raw(), MPFR_RNDN);
    mpfr_mul_2ui(t1.raw(), t1.raw(), 1, MPFR_RNDN);
    mpfr_sub(t1.raw(), t1.raw(), x.raw(), MPFR_RNDN);
    if (bit) {
      // t2 = 2 hi^2 - 1 = T_{2a+2}
      mpfr_sqr(t2.raw(), hi.raw(), MPFR_RNDN);
      mpfr_mul_2ui(t2.raw(), t2.raw(), 1, MPFR_RNDN);
      mpfr_sub_ui(t2.raw(), t2.raw(), 1, MPFR_RNDN);
      mpfr_swap(lo.raw(), t1.raw());
      mpfr_swap(hi.raw(), t2.raw());
    } else {
      // t2 = 2 lo^2 - 1 = T_{2a}
      mpfr_sqr(t2.raw(), lo.raw(), MPFR_RNDN);
      mpfr_mul_2ui(t2.raw(), t2.raw(), 1, MPFR_RNDN);
      mpfr_sub_ui(t2.raw(), t2.raw(), 1, MPFR_RNDN);
      mpfr_swap(lo.raw(), t2.raw());
      mpfr_swap(hi.raw(), t1.raw());
    }
  }
  Real out(out_bits);
  mpfr_set(out.raw(), lo.raw(), MPFR_RNDN);
  return out;
}

KexInstance kex_keygen(const KexParams& p, unsigned long seed) {
  validate_params(p);
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(seed);
  BigInt span = p.r_max - p.r_min + 1;
  BigInt r = p.r_min + rng.get_z_range(span);
  Real y = t_cos_eval(r, p.x, p.ctx);
  return KexInstance{p, r, y};
}

KexInstance kex_instance_with_secret(const Real& x, const BigInt& r,
                                     const PrecisionContext& ctx) {
  check_x_domain(x);
  if (is_trivial_angle(x)) {
    throw DegenerateParameterError("kex instance: x is a trivial angle");
  }
  if (r < 2) throw ParameterError("kex instance: r must be >= 2");
  BigInt r_max = r > 2 ? r : BigInt(3);
  KexParams params{x, BigInt(2), r_max, ctx};
  Real y = t_cos_eval(r, x, ctx);
  return KexInstance{params, r, y};
}

Real kex_shared(const BigInt& my_r, const Real& their_y,
                const PrecisionContext& ctx) {
  if (their_y.cmp_long(1) > 0 || their_y.cmp_long(-1) < 0) {
    throw DomainError("kex_shared: public value outside [-1, 1]");
  }
  return t_cos_eval(my_r, their_y, ctx);
}

std::string serialize_instance(const KexInstance& inst,
                               bool insecure_export_secrets) {
  std::string out;
  if (insecure_export_secrets) {
    out += "r = " + inst.r.get_str() + "\n";
  }
  out += "x = " + inst.params.x.to_decimal(inst.params.ctx.digits) + "\n";
  out += "y = " + inst.y.to_decimal(inst.params.ctx.digits) + "\n";
  out += "digits = " + std::to_string(inst.params.ctx.digits) + "\n";
  return out;
}

}  // namespace qrke
