// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "qrke/errors.hpp"

namespace qrke {

using BigInt = mpz_class;

// Decimal digit budget for a computation. `digits` is the externally
// guaranteed precision, `guard` the extra working digits carried internally.
struct PrecisionContext {
  int digits = 0;
  int guard = 20;

  int working_digits() const { return digits + guard; }
};

PrecisionContext make_context(int digits);

// Binary precision needed to honour `digits` decimal digits.
mpfr_prec_t bits_for_digits(int digits);

// Immutable arbitrary-precision real. Each value carries its own precision;
// arithmetic results use the wider of the operand precisions.
class Real {
 public:
  Real();
  explicit Real(mpfr_prec_t bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real from_decimal(const std::string& text, mpfr_prec_t bits);
  static Real from_long(long v, mpfr_prec_t bits);
  static Real from_bigint(const BigInt& v, mpfr_prec_t bits);
  static Real pi(mpfr_prec_t bits);
  static Real pow10(long k, mpfr_prec_t bits);

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Real operator-() const;
  Real abs() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  // In-place accumulation at this value's own precision (sieve inner loops).
  void add_assign(const Real& o);
  void sub_assign(const Real& o);

  friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Real& a, const Real& b) { return cmp(a, b) != 0; }

  int cmp_long(long v) const { return mpfr_cmp_si(v_, v); }

  // Plain positional decimal rendering with `sig_digits` significant digits;
  // never scientific notation.
  std::string to_decimal(int sig_digits) const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  mpfr_t v_;
};

// Principal-value arccos on [-1, 1], accurate to ctx.digits.
Real arccos(const Real& x, const PrecisionContext& ctx);
// Cosine with internal argument reduction; theta may be large if it carries
// enough precision of its own.
Real cos_of(const Real& theta, const PrecisionContext& ctx);
Real pi_value(const PrecisionContext& ctx);

// floor(a * 10^m) with floor toward minus infinity.
BigInt floor_scaled(const Real& a, int m);
// a - floor(a), in [0, 1).
Real frac_part(const Real& a);
BigInt floor_to_bigint(const Real& a);
BigInt round_to_bigint(const Real& a);

// True iff x is one of {0, 1/2, -1/2, 1, -1}: the only values in [-1, 1]
// whose arccos is a rational multiple of pi (Niven), i.e. the degenerate
// key-exchange parameters.
bool is_trivial_angle(const Real& x);

// Parses a plain decimal string ("-0.25", "123", "6.30711"); no scientific
// notation. Parsed at ctx working precision.
Real parse_real(const std::string& text, const PrecisionContext& ctx);

// Exact count of decimal digits of |v| (1 for v = 0).
int decimal_length(const BigInt& v);

}  // namespace qrke
