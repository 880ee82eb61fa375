// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <gmpxx.h>

#include <string>

#include "expected_values.hpp"
#include "qrke/chebyshev.hpp"

using namespace qrke;
namespace tv = qrke::testval;

namespace {

bool close_digits(const Real& a, const Real& b, int digits) {
  Real tol = Real::pow10(-digits, a.prec());
  return (a - b).abs() < tol;
}

Real ref_x(const PrecisionContext& ctx) { return parse_real(tv::kX, ctx); }

}  // namespace

TEST_CASE("t_cos_eval degree 0 and 1") {
  PrecisionContext ctx = make_context(50);
  Real x = ref_x(ctx);
  CHECK(t_cos_eval(BigInt(0), x, ctx) == Real::from_long(1, 64));
  CHECK(close_digits(t_cos_eval(BigInt(1), x, ctx), x, ctx.digits - 1));
}

TEST_CASE("t_cos_eval reproduces the reference public value") {
  PrecisionContext ctx = make_context(100);
  Real y = t_cos_eval(BigInt(tv::kR3), ref_x(ctx), ctx);
  CHECK(y.to_decimal(100) == tv::kTr3);
}

TEST_CASE("t_cos_eval rejects negative degree and bad x") {
  PrecisionContext ctx = make_context(40);
  CHECK_THROWS_AS(t_cos_eval(BigInt(-1), ref_x(ctx), ctx), ParameterError);
  CHECK_THROWS_AS(
      t_cos_eval(BigInt(3), parse_real("1.25", ctx), ctx), DomainError);
}

TEST_CASE("t_cos_eval working-precision override floor") {
  PrecisionContext ctx = make_context(40);
  Real x = ref_x(ctx);
  BigInt r(tv::kR5);  // 9 digits, so the floor is 49 working digits
  CHECK_THROWS_AS(t_cos_eval(r, x, ctx, 45), PrecisionError);
  Real ok = t_cos_eval(r, x, ctx, 60);
  CHECK(close_digits(ok, t_cos_eval(r, x, ctx), ctx.digits - 2));
}

TEST_CASE("t_ladder_eval closed-form checks") {
  PrecisionContext ctx = make_context(50);
  // T_2(1/2) = -1/2, exact in binary arithmetic.
  Real half = parse_real("0.5", ctx);
  CHECK(t_ladder_eval(BigInt(2), half, ctx) == parse_real("-0.5", ctx));
  // T_3(3/10) = 4*(3/10)^3 - 3*(3/10) = -0.792.
  Real got = t_ladder_eval(BigInt(3), parse_real("0.3", ctx), ctx);
  CHECK(close_digits(got, parse_real("-0.792", ctx), ctx.digits - 3));
  CHECK(t_ladder_eval(BigInt(0), half, ctx) == Real::from_long(1, 64));
  CHECK(t_ladder_eval(BigInt(1), half, ctx) == half);
}

TEST_CASE("cosine route and ladder route agree on a large degree") {
  PrecisionContext ctx = make_context(60);
  Real x = ref_x(ctx);
  BigInt r(1000003);
  Real a = t_cos_eval(r, x, ctx);
  Real b = t_ladder_eval(r, x, ctx);
  CHECK(close_digits(a, b, ctx.digits - 10));
}

TEST_CASE("semigroup identity T_r(T_s(x)) = T_rs(x)") {
  PrecisionContext ctx = make_context(50);
  Real x = ref_x(ctx);

  Real inner = t_cos_eval(BigInt(5), x, ctx);
  Real lhs = t_cos_eval(BigInt(3), inner, ctx);
  Real rhs = t_cos_eval(BigInt(15), x, ctx);
  CHECK(close_digits(lhs, rhs, ctx.digits - 10));

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(20260817UL);
  for (int i = 0; i < 100; ++i) {
    BigInt r = 2 + rng.get_z_range(BigInt(1000000));
    BigInt s = 2 + rng.get_z_range(BigInt(1000000));
    Real ys = t_cos_eval(s, x, ctx);
    Real composed = t_cos_eval(r, ys, ctx);
    Real direct = t_cos_eval(r * s, x, ctx);
    CHECK(close_digits(composed, direct, ctx.digits - 10));
  }
}

TEST_CASE("values stay inside [-1, 1] up to rounding slack") {
  PrecisionContext ctx = make_context(40);
  Real slack = Real::pow10(-(ctx.digits - 5), 64);
  Real bound = Real::from_long(1, 64) + slack;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(7UL);
  for (const char* xt : {"-0.93", "-0.2", "0.123", tv::kX, "0.87"}) {
    Real x = parse_real(xt, ctx);
    for (int i = 0; i < 20; ++i) {
      BigInt r = rng.get_z_range(BigInt("100000000000"));
      CHECK(t_cos_eval(r, x, ctx).abs() < bound);
    }
  }
}

TEST_CASE("validate_params rejects degenerate and underpowered setups") {
  PrecisionContext ctx = make_context(60);
  KexParams good{ref_x(ctx), BigInt(100000000), BigInt(1000000000), ctx};
  CHECK_NOTHROW(validate_params(good));

  KexParams trivial = good;
  trivial.x = parse_real("0.5", ctx);
  CHECK_THROWS_AS(validate_params(trivial), DegenerateParameterError);
  trivial.x = parse_real("-1", ctx);
  CHECK_THROWS_AS(validate_params(trivial), DegenerateParameterError);

  KexParams outside = good;
  outside.x = parse_real("1.5", ctx);
  CHECK_THROWS_AS(validate_params(outside), DomainError);

  KexParams low = good;
  low.r_min = 1;
  CHECK_THROWS_AS(validate_params(low), ParameterError);

  KexParams flipped = good;
  flipped.r_max = flipped.r_min;
  CHECK_THROWS_AS(validate_params(flipped), ParameterError);

  KexParams tight = good;
  tight.ctx = make_context(45);  // needs 10 + 40
  CHECK_THROWS_AS(validate_params(tight), ParameterError);
}

TEST_CASE("kex_keygen is deterministic under the seed") {
  PrecisionContext ctx = make_context(60);
  KexParams p{ref_x(ctx), BigInt(100000000), BigInt(1000000000), ctx};
  KexInstance a = kex_keygen(p, 42);
  KexInstance b = kex_keygen(p, 42);
  KexInstance c = kex_keygen(p, 43);
  CHECK(a.r == b.r);
  CHECK(a.y == b.y);
  CHECK(a.r != c.r);
  CHECK(a.r >= p.r_min);
  CHECK(a.r <= p.r_max);
  CHECK(close_digits(a.y, t_cos_eval(a.r, p.x, ctx), ctx.digits - 2));
}

TEST_CASE("kex_keygen covers a wide range with enough digits") {
  PrecisionContext ctx = make_context(60);
  KexParams p{ref_x(ctx), BigInt("1000000000000"), BigInt("10000000000000"),
              ctx};
  KexInstance inst = kex_keygen(p, 9001);
  CHECK(inst.r >= p.r_min);
  CHECK(inst.r <= p.r_max);
  CHECK(inst.y.abs() <= Real::from_long(1, 64));
}

TEST_CASE("kex_instance_with_secret pins the published sieve secret") {
  PrecisionContext ctx = make_context(40);
  KexInstance inst = kex_instance_with_secret(ref_x(ctx), BigInt(tv::kR5), ctx);
  CHECK(inst.r == BigInt(tv::kR5));
  Real ladder = t_ladder_eval(inst.r, inst.params.x, ctx);
  CHECK(close_digits(inst.y, ladder, ctx.digits - 10));
}

TEST_CASE("kex_shared agreement across evaluation orders") {
  PrecisionContext ctx = make_context(50);
  Real x = ref_x(ctx);

  // r = 1 hands back the peer value unchanged.
  Real y = t_cos_eval(BigInt(17), x, ctx);
  CHECK(close_digits(kex_shared(BigInt(1), y, ctx), y, ctx.digits - 2));

  // T_2(T_2(1/2)) = T_2(-1/2) = -1/2.
  Real half = parse_real("0.5", ctx);
  Real inner = t_cos_eval(BigInt(2), half, ctx);
  CHECK(close_digits(kex_shared(BigInt(2), inner, ctx),
                     parse_real("-0.5", ctx), ctx.digits - 2));

  Real ya = t_cos_eval(BigInt(3), x, ctx);
  Real yb = t_cos_eval(BigInt(5), x, ctx);
  Real shared_a = kex_shared(BigInt(3), yb, ctx);
  Real shared_b = kex_shared(BigInt(5), ya, ctx);
  Real direct = t_cos_eval(BigInt(15), x, ctx);
  CHECK(close_digits(shared_a, shared_b, ctx.digits - 5));
  CHECK(close_digits(shared_a, direct, ctx.digits - 5));

  CHECK_THROWS_AS(kex_shared(BigInt(3), parse_real("1.5", ctx), ctx),
                  DomainError);
}

TEST_CASE("serialize_instance gates the secret behind the export flag") {
  PrecisionContext ctx = make_context(50);
  KexInstance inst = kex_instance_with_secret(ref_x(ctx), BigInt(12345), ctx);
  std::string closed = serialize_instance(inst, false);
  std::string open = serialize_instance(inst, true);
  CHECK(closed.find("r = ") == std::string::npos);
  CHECK(open.find("r = 12345") != std::string::npos);
  for (const std::string& s : {closed, open}) {
    CHECK(s.find("x = ") != std::string::npos);
    CHECK(s.find("y = ") != std::string::npos);
    CHECK(s.find("digits = 50") != std::string::npos);
  }
}
