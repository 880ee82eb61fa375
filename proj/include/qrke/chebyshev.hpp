// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "qrke/precision.hpp"

namespace qrke {

struct KexParams {
  Real x;
  BigInt r_min;
  BigInt r_max;
  PrecisionContext ctx;
};

// Throws on trivial x, bad ranges, or a digit budget below
// decimal_length(r_max) + 40.
void validate_params(const KexParams& p);

struct KexInstance {
  KexParams params;
  BigInt r;
  Real y;  // T_r(x)
};

// T_r(x) = cos(r * arccos(x)). Internally evaluates with
// ctx.digits + decimal_length(r) + ctx.guard working digits; a positive
// working_digits_override below ctx.digits + decimal_length(r) is rejected.
Real t_cos_eval(const BigInt& r, const Real& x, const PrecisionContext& ctx,
                int working_digits_override = 0);

// T_r(x) by the product recurrence T_{m+n} = 2 T_m T_n - T_{m-n}, binary
// pair ladder, no trigonometric calls. Independent oracle for t_cos_eval.
Real t_ladder_eval(const BigInt& r, const Real& x, const PrecisionContext& ctx);

// Deterministic-under-seed uniform secret in [r_min, r_max].
KexInstance kex_keygen(const KexParams& p, unsigned long seed);

// Instance with a caller-chosen secret (reproduction runs). Skips the
// r-range digit policy of validate_params; t_cos_eval still boosts its own
// working precision, so y is accurate to ctx.digits.
KexInstance kex_instance_with_secret(const Real& x, const BigInt& r,
                                     const PrecisionContext& ctx);

Real kex_shared(const BigInt& my_r, const Real& their_y,
                const PrecisionContext& ctx);

// Key-value text record: r (only when insecure_export_secrets), x, y, digits.
std::string serialize_instance(const KexInstance& inst,
                               bool insecure_export_secrets);

}  // namespace qrke
