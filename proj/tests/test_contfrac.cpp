// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <vector>

#include "expected_values.hpp"
#include "qrke/chebyshev.hpp"
#include "qrke/contfrac.hpp"
#include "qrke/diophantine.hpp"

using namespace qrke;
namespace tv = qrke::testval;

namespace {

AttackReals reference_reals(int digits, const char* tr_text) {
  PrecisionContext ctx = make_context(digits);
  Real x = parse_real(tv::kX, ctx);
  Real tr = parse_real(tr_text, ctx);
  return derive_attack_reals(x, tr, ctx);
}

}  // namespace

TEST_CASE("cf_expand on a terminating rational") {
  PrecisionContext ctx = make_context(30);
  CFExpansion exp = cf_expand(parse_real("2.5", ctx), 10, ctx);
  REQUIRE(exp.quotients.size() == 2);
  CHECK(exp.quotients[0] == 2);
  CHECK(exp.quotients[1] == 2);
  REQUIRE(exp.convergents.size() == 2);
  CHECK(exp.convergents[0].first == 2);
  CHECK(exp.convergents[0].second == 1);
  CHECK(exp.convergents[1].first == 5);
  CHECK(exp.convergents[1].second == 2);
}

TEST_CASE("cf_expand input validation") {
  PrecisionContext ctx = make_context(30);
  CHECK_THROWS_AS(cf_expand(parse_real("0", ctx), 10, ctx), ParameterError);
  CHECK_THROWS_AS(cf_expand(parse_real("-1.5", ctx), 10, ctx), ParameterError);
  CHECK_THROWS_AS(cf_expand(parse_real("2.5", ctx), 0, ctx), ParameterError);
}

TEST_CASE("cf_expand of e starts at 6 and obeys the recurrence") {
  AttackReals reals = reference_reals(100, tv::kTr3);
  PrecisionContext ctx = make_context(100);
  CFExpansion exp = cf_expand(reals.e, 256, ctx);

  REQUIRE(exp.quotients.size() >= 3);
  CHECK(exp.quotients[0] == 6);
  CHECK(exp.convergents[0].first == 6);
  CHECK(exp.convergents[0].second == 1);

  // p_i = a_i p_{i-1} + p_{i-2}, q_i likewise (seeds 1/0 and a_0/1).
  for (size_t i = 2; i < exp.convergents.size(); ++i) {
    const BigInt& a = exp.quotients[i];
    CHECK(exp.convergents[i].first ==
          a * exp.convergents[i - 1].first + exp.convergents[i - 2].first);
    CHECK(exp.convergents[i].second ==
          a * exp.convergents[i - 1].second + exp.convergents[i - 2].second);
  }
}

TEST_CASE("folding the quotients back reproduces the last convergent") {
  AttackReals reals = reference_reals(100, tv::kTr3);
  PrecisionContext ctx = make_context(100);
  CFExpansion exp = cf_expand(reals.e, 256, ctx);
  REQUIRE(exp.quotients.size() >= 2);

  mpq_class acc(exp.quotients.back());
  for (size_t i = exp.quotients.size() - 1; i-- > 0;) {
    acc = mpq_class(exp.quotients[i]) + 1 / acc;
    acc.canonicalize();
  }
  CHECK(acc.get_num() == exp.convergents.back().first);
  CHECK(acc.get_den() == exp.convergents.back().second);
}

TEST_CASE("principal convergents are best approximations of e") {
  AttackReals reals = reference_reals(100, tv::kTr3);
  PrecisionContext ctx = make_context(100);
  CFExpansion exp = cf_expand(reals.e, 256, ctx);

  BigInt q_trust;
  mpz_ui_pow_ui(q_trust.get_mpz_t(), 10, 50);

  for (size_t i = 0; i < exp.convergents.size(); ++i) {
    const BigInt& p = exp.convergents[i].first;
    const BigInt& q = exp.convergents[i].second;
    CHECK(q < q_trust);

    mpfr_prec_t bits = reals.e.prec();
    Real approx = Real::from_bigint(p, bits) / Real::from_bigint(q, bits);
    Real err = (reals.e - approx).abs();
    Real qq = Real::from_bigint(q * q, bits);
    CHECK(err * qq < Real::from_long(1, 64));

    if (i + 1 < exp.convergents.size()) {
      const BigInt& qn = exp.convergents[i + 1].second;
      Real bound = Real::from_long(1, bits) / Real::from_bigint(q * qn, bits);
      CHECK(err < bound);
    }
  }
}

TEST_CASE("the ladder interleaves intermediate fractions") {
  AttackReals reals = reference_reals(100, tv::kTr3);
  PrecisionContext ctx = make_context(100);
  CFExpansion exp = cf_expand(reals.e, 256, ctx);

  // Strictly increasing numerators, block consistency, principal rows
  // matching the convergent list.
  BigInt last_p(0);
  size_t principal_seen = 0;
  for (const CFLadderRow& row : exp.ladder) {
    CHECK(row.p > last_p);
    last_p = row.p;
    if (row.principal) {
      CHECK(exp.convergents[principal_seen].first == row.p);
      CHECK(exp.convergents[principal_seen].second == row.q);
      principal_seen++;
    }
  }
  CHECK(principal_seen == exp.convergents.size());

  bool found = false;
  for (const CFLadderRow& row : exp.ladder) {
    if (row.p == BigInt(tv::kCfP) && row.q == BigInt(tv::kCfQ)) found = true;
  }
  CHECK(found);
}

TEST_CASE("a huge quotient cannot blow up the ladder") {
  PrecisionContext ctx = make_context(30);
  CFExpansion exp = cf_expand(parse_real("1.000001", ctx), 10, ctx);
  REQUIRE(exp.quotients.size() >= 2);
  CHECK(exp.quotients[0] == 1);
  CHECK(exp.quotients[1] >= 999999);
  CHECK(exp.quotients[1] <= 1000000);
  CHECK(exp.ladder.size() <= 200000);
}

TEST_CASE("expansion stops once denominators exhaust the digit budget") {
  PrecisionContext ctx = make_context(30);
  // 1 + 1e-30 at 30 digits: the second quotient would be ~1e30, far past
  // the trusted-denominator bound 10^15, so expansion ends after a_0.
  Real v = Real::from_long(1, bits_for_digits(ctx.working_digits())) +
           Real::pow10(-30, bits_for_digits(ctx.working_digits()));
  CFExpansion exp = cf_expand(v, 50, ctx);
  CHECK(exp.quotients.size() == 1);
  CHECK(exp.quotients[0] == 1);
}

TEST_CASE("cf_candidates reproduces the published estimates") {
  PrecisionContext ctx = make_context(100);
  Real x = parse_real(tv::kX, ctx);

  SUBCASE("first secret") {
    Real tr = parse_real(tv::kTr3, ctx);
    AttackReals reals = derive_attack_reals(x, tr, ctx);
    BigInt r_true(tv::kR3);
    std::vector<CFCandidate> cands =
        cf_candidates(reals.d, reals.e, BigInt("100000000000"),
                      BigInt("1000000000000"), x, tr, r_true, ctx);
    REQUIRE_FALSE(cands.empty());

    bool found = false;
    for (const CFCandidate& c : cands) {
      CHECK_FALSE(c.verified);
      if (c.p == BigInt(tv::kCfP) && c.q == BigInt(tv::kCfQ) &&
          c.sign_branch == +1) {
        found = true;
        CHECK(std::fabs(c.estimate.to_double() - tv::kCfEst1) < 1e-3);
        CHECK(std::fabs(c.dr->to_double() - tv::kCfDr1) < 1e-3);
        CHECK(std::fabs(c.dr_over_r->to_double() - tv::kCfDrOverR1) < 1e-12);
      }
    }
    CHECK(found);
  }

  SUBCASE("second secret") {
    Real tr = t_cos_eval(BigInt(tv::kR3b), x, ctx);
    AttackReals reals = derive_attack_reals(x, tr, ctx);
    BigInt r_true(tv::kR3b);
    std::vector<CFCandidate> cands =
        cf_candidates(reals.d, reals.e, BigInt("100000000000"),
                      BigInt("10000000000000"), x, tr, r_true, ctx);

    bool found2 = false, found3 = false;
    for (const CFCandidate& c : cands) {
      CHECK_FALSE(c.verified);
      if (c.sign_branch != +1) continue;
      double est = c.estimate.to_double();
      if (std::fabs(est - tv::kCfEst2) < 1e-3) {
        found2 = true;
        CHECK(std::fabs(c.dr->to_double() - tv::kCfDr2) < 1e-3);
        CHECK(std::fabs(c.dr_over_r->to_double() - tv::kCfDrOverR2) < 1e-12);
      }
      if (std::fabs(est - tv::kCfEst3) < 1e-2) {
        found3 = true;
        CHECK(std::fabs(c.dr->to_double() - tv::kCfDr3) < 1e-2);
        CHECK(std::fabs(c.dr_over_r->to_double() - tv::kCfDrOverR3) < 1e-12);
      }
    }
    CHECK(found2);
    CHECK(found3);
  }
}

TEST_CASE("cf_candidates emits both sign branches inside the window") {
  AttackReals reals = reference_reals(100, tv::kTr3);
  PrecisionContext ctx = make_context(100);
  Real x = parse_real(tv::kX, ctx);
  Real tr = parse_real(tv::kTr3, ctx);
  std::vector<CFCandidate> cands =
      cf_candidates(reals.d, reals.e, BigInt("100000000000"),
                    BigInt("1000000000000"), x, tr, std::nullopt, ctx);

  int plus = 0, minus = 0;
  Real lo = Real::from_bigint(BigInt("100000000000"), 64);
  Real hi = Real::from_bigint(BigInt("1000000000000"), 64);
  for (const CFCandidate& c : cands) {
    (c.sign_branch > 0 ? plus : minus)++;
    CHECK(c.estimate >= lo);
    CHECK(c.estimate <= hi);
    CHECK(c.candidate_r == round_to_bigint(c.estimate));
    CHECK_FALSE(c.dr.has_value());
  }
  CHECK(plus > 0);
  CHECK(minus > 0);
}

TEST_CASE("cf_candidates window handling") {
  AttackReals reals = reference_reals(100, tv::kTr3);
  PrecisionContext ctx = make_context(100);
  Real x = parse_real(tv::kX, ctx);
  Real tr = parse_real(tv::kTr3, ctx);

  // A tiny window keeps only the early ladder rows whose scaled fractional
  // parts land inside it; every emitted estimate must respect the bounds.
  std::vector<CFCandidate> tiny = cf_candidates(
      reals.d, reals.e, BigInt(1), BigInt(2), x, tr, std::nullopt, ctx);
  CHECK(tiny.size() > 0);
  Real lo = Real::from_long(1, reals.d.prec());
  Real hi = Real::from_long(2, reals.d.prec());
  for (const CFCandidate& c : tiny) {
    CHECK(c.estimate >= lo);
    CHECK(c.estimate <= hi);
    CHECK(c.candidate_r == round_to_bigint(c.estimate));
    CHECK_FALSE(c.verified);
  }
  CHECK_THROWS_AS(cf_candidates(reals.d, reals.e, BigInt(10), BigInt(10), x,
                                tr, std::nullopt, ctx),
                  ParameterError);
}

TEST_CASE("estimates from the ladder do not verify on random instances") {
  PrecisionContext ctx = make_context(150);
  Real x = parse_real(tv::kX, ctx);
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(987654UL);
  BigInt lo("100000000000"), hi("10000000000000");
  int rows = 0;
  for (int trial = 0; trial < 20; ++trial) {
    BigInt r = lo + rng.get_z_range(hi - lo);
    Real tr = t_cos_eval(r, x, ctx);
    AttackReals reals = derive_attack_reals(x, tr, ctx);
    std::vector<CFCandidate> cands =
        cf_candidates(reals.d, reals.e, lo, hi, x, tr, r, ctx);
    for (const CFCandidate& c : cands) {
      rows++;
      if (c.verified) CHECK(c.candidate_r == r);
      CHECK_FALSE(c.verified);
    }
  }
  CHECK(rows > 20);  // the property must have actually exercised rows
}
