// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrke/sieve.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "qrke/chebyshev.hpp"

namespace qrke {

namespace {

constexpr unsigned long kReanchorPeriod = 1000000;

bool fits_u64(const BigInt& v) {
  return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 63;
}

unsigned long long to_u64(const BigInt& v) {
  unsigned long long out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

unsigned __int128 to_u128(const BigInt& v) {
  unsigned __int128 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

// frac(sign*d + k*e) computed by one full multiplication.
Real direct_frac(const Real& d, const Real& e, int sign, const BigInt& k,
                 mpfr_prec_t bits) {
  Real v(bits);
  mpfr_mul_z(v.raw(), e.raw(), k.get_mpz_t(), MPFR_RNDN);
  if (sign > 0) {
    mpfr_add(v.raw(), v.raw(), d.raw(), MPFR_RNDN);
  } else {
    mpfr_sub(v.raw(), v.raw(), d.raw(), MPFR_RNDN);
  }
  return frac_part(v);
}

BigInt direct_candidate(const Real& d, const Real& e, int sign, const BigInt& k,
                        mpfr_prec_t bits) {
  Real v(bits);
  mpfr_mul_z(v.raw(), e.raw(), k.get_mpz_t(), MPFR_RNDN);
  if (sign > 0) {
    mpfr_add(v.raw(), v.raw(), d.raw(), MPFR_RNDN);
  } else {
    mpfr_sub(v.raw(), v.raw(), d.raw(), MPFR_RNDN);
  }
  return round_to_bigint(v);
}

struct ChunkSpan {
  BigInt start;
  unsigned long long count = 0;
};

std::vector<ChunkSpan> split_range(const BigInt& k_lo, const BigInt& k_hi,
                                   int chunks) {
  BigInt total = k_hi - k_lo + 1;
  if (!fits_u64(total)) {
    throw ParameterError("sieve: k range too wide for this build");
  }
  unsigned long long n = to_u64(total);
  int c = chunks < 1 ? 1 : chunks;
  if (static_cast<unsigned long long>(c) > n) c = static_cast<int>(n);
  std::vector<ChunkSpan> spans;
  unsigned long long base = n / c, extra = n % c;
  BigInt cursor = k_lo;
  for (int i = 0; i < c; ++i) {
    unsigned long long cnt = base + (static_cast<unsigned long long>(i) < extra);
    spans.push_back(ChunkSpan{cursor, cnt});
    cursor += BigInt(static_cast<unsigned long>(cnt));
  }
  return spans;
}

void float_sieve_chunk(const FloatSieveConfig& cfg, const Real& ef,
                       const Real& tol, const Real& one_minus_tol,
                       mpfr_prec_t wbits, const ChunkSpan& span,
                       bool stop_inline, std::vector<SieveHit>* out,
                       bool* stopped) {
  Real one = Real::from_long(1, wbits);
  Real acc_p = direct_frac(cfg.d, cfg.e, +1, span.start, wbits);
  Real acc_m = direct_frac(cfg.d, cfg.e, -1, span.start, wbits);
  BigInt k = span.start;
  for (unsigned long long i = 0; i < span.count; ++i) {
    for (int sign : {+1, -1}) {
      const Real& acc = sign > 0 ? acc_p : acc_m;
      if (acc < tol || acc > one_minus_tol) {
        SieveHit hit;
        hit.k = k;
        hit.sign_branch = sign;
        hit.r_candidate = direct_candidate(cfg.d, cfg.e, sign, k, wbits);
        hit.fractional_residual = acc < tol ? acc : one - acc;
        if (stop_inline) {
          hit.verified = candidate_verifies(hit.r_candidate,
                                            cfg.stop_after_verified->x,
                                            cfg.stop_after_verified->tr, cfg.ctx);
        }
        out->push_back(hit);
        if (stop_inline && hit.verified) {
          *stopped = true;
          return;
        }
      }
    }
    acc_p.add_assign(ef);
    if (acc_p >= one) acc_p.sub_assign(one);
    acc_m.add_assign(ef);
    if (acc_m >= one) acc_m.sub_assign(one);
    k += 1;
    if ((i + 1) % kReanchorPeriod == 0 && i + 1 < span.count) {
      acc_p = direct_frac(cfg.d, cfg.e, +1, k, wbits);
      acc_m = direct_frac(cfg.d, cfg.e, -1, k, wbits);
    }
  }
}

void int_sieve_chunk(const IntSieveConfig& cfg, const ChunkSpan& span,
                     std::vector<SieveHit>* out) {
  // Offsets and integer-part bases per sign branch.
  BigInt minus_off = cfg.di == 0 ? BigInt(0) : BigInt(cfg.M - cfg.di);
  BigInt plus_base = cfg.d_floor;
  BigInt minus_base = cfg.di == 0 ? BigInt(-cfg.d_floor) : BigInt(-cfg.d_floor - 1);

  auto record = [&](const BigInt& k, int sign, const BigInt& s) {
    const BigInt& off = sign > 0 ? cfg.di : minus_off;
    const BigInt& base = sign > 0 ? plus_base : minus_base;
    SieveHit hit;
    hit.k = k;
    hit.sign_branch = sign;
    BigInt t = off + k * cfg.ei;
    BigInt carry = t / cfg.M;
    BigInt round_up = (2 * s >= cfg.M) ? 1 : 0;
    hit.r_candidate = base + k * cfg.e_floor + carry + round_up;
    BigInt units = s < cfg.M - s ? s : cfg.M - s;
    hit.residual_units = units;
    hit.fractional_residual =
        Real::from_bigint(units, 96) / Real::from_bigint(cfg.M, 96);
    out->push_back(hit);
  };

  bool fast = mpz_sizeinbase(cfg.M.get_mpz_t(), 2) <= 119;
  BigInt sp0 = (cfg.di + span.start * cfg.ei) % cfg.M;
  BigInt sm0 = (minus_off + span.start * cfg.ei) % cfg.M;

  if (fast) {
    using u128 = unsigned __int128;
    u128 M = to_u128(cfg.M), ei = to_u128(cfg.ei), comp = to_u128(cfg.comp);
    u128 sp = to_u128(sp0), sm = to_u128(sm0);
    BigInt k = span.start;
    for (unsigned long long i = 0; i < span.count; ++i) {
      if (sp < comp || M - sp < comp) {
        BigInt s;
        mpz_import(s.get_mpz_t(), sizeof(u128) / sizeof(unsigned long long), -1,
                   sizeof(unsigned long long), 0, 0, &sp);
        record(k, +1, s);
      }
      if (sm < comp || M - sm < comp) {
        BigInt s;
        mpz_import(s.get_mpz_t(), sizeof(u128) / sizeof(unsigned long long), -1,
                   sizeof(unsigned long long), 0, 0, &sm);
        record(k, -1, s);
      }
      sp += ei;
      if (sp >= M) sp -= M;
      sm += ei;
      if (sm >= M) sm -= M;
      k += 1;
    }
  } else {
    BigInt sp = sp0, sm = sm0;
    BigInt k = span.start;
    for (unsigned long long i = 0; i < span.count; ++i) {
      if (sp < cfg.comp || cfg.M - sp < cfg.comp) record(k, +1, sp);
      if (sm < cfg.comp || cfg.M - sm < cfg.comp) record(k, -1, sm);
      sp += cfg.ei;
      if (sp >= cfg.M) sp -= cfg.M;
      sm += cfg.ei;
      if (sm >= cfg.M) sm -= cfg.M;
      k += 1;
    }
  }
}

}  // namespace

std::pair<BigInt, BigInt> k_range_for_r_range(const BigInt& r_lo,
                                              const BigInt& r_hi,
                                              const AttackReals& reals) {
  if (r_lo >= r_hi) throw ParameterError("k_range_for_r_range: need r_lo < r_hi");
  mpfr_prec_t bits = reals.d.prec();
  Real lo = (Real::from_bigint(r_lo, bits) - reals.d) / reals.e;
  Real hi = (Real::from_bigint(r_hi, bits) + reals.d) / reals.e;
  BigInt k_lo = floor_to_bigint(lo);
  Real hi_ceil(bits);
  mpfr_ceil(hi_ceil.raw(), hi.raw());
  BigInt k_hi;
  mpfr_get_z(k_hi.get_mpz_t(), hi_ceil.raw(), MPFR_RNDN);
  return {k_lo, k_hi};
}

std::vector<SieveHit> float_sieve(const FloatSieveConfig& cfg) {
  if (cfg.k_lo >= cfg.k_hi) throw ParameterError("float_sieve: need k_lo < k_hi");
  if (cfg.match_digits < 4) {
    throw ParameterError("float_sieve: match_digits must be >= 4");
  }
  int need = cfg.match_digits + decimal_length(cfg.k_hi) + 10;
  if (cfg.ctx.digits < need) {
    throw PrecisionError("float_sieve: context digits " +
                         std::to_string(cfg.ctx.digits) + " below required " +
                         std::to_string(need));
  }
  mpfr_prec_t wbits = bits_for_digits(cfg.ctx.working_digits());
  if (cfg.e.prec() > wbits) wbits = cfg.e.prec();

  Real ef(wbits);
  {
    Real f = frac_part(cfg.e);
    mpfr_set(ef.raw(), f.raw(), MPFR_RNDN);
  }
  Real tol = Real::pow10(1 - cfg.match_digits, wbits) /
             Real::from_long(2, wbits);
  Real one_minus_tol = Real::from_long(1, wbits) - tol;

  std::vector<ChunkSpan> spans = split_range(cfg.k_lo, cfg.k_hi, cfg.chunks);
  bool stop_inline = cfg.stop_after_verified.has_value();
  std::vector<std::vector<SieveHit>> results(spans.size());

  if (spans.size() == 1) {
    bool stopped = false;
    float_sieve_chunk(cfg, ef, tol, one_minus_tol, wbits, spans[0], stop_inline,
                      &results[0], &stopped);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(spans.size());
    for (size_t i = 0; i < spans.size(); ++i) {
      workers.emplace_back([&, i] {
        bool stopped = false;
        // Parallel chunks cannot stop early; the merged list is truncated
        // after the first verified hit below, which yields the same output.
        float_sieve_chunk(cfg, ef, tol, one_minus_tol, wbits, spans[i], false,
                          &results[i], &stopped);
      });
    }
    for (std::thread& w : workers) w.join();
  }

  std::vector<SieveHit> hits;
  for (std::vector<SieveHit>& part : results) {
    for (SieveHit& h : part) hits.push_back(std::move(h));
  }
  if (stop_inline && spans.size() > 1) {
    std::vector<SieveHit> cut;
    for (SieveHit& h : hits) {
      h.verified = candidate_verifies(h.r_candidate, cfg.stop_after_verified->x,
                                      cfg.stop_after_verified->tr, cfg.ctx);
      bool done = h.verified;
      cut.push_back(std::move(h));
      if (done) break;
    }
    hits = std::move(cut);
  }
  return hits;
}

std::vector<SieveHit> int_sieve(const IntSieveConfig& cfg) {
  if (cfg.M <= 0) throw ParameterError("int_sieve: M must be positive");
  if (cfg.di < 0 || cfg.di >= cfg.M) throw ParameterError("int_sieve: need 0 <= di < M");
  if (cfg.ei < 0 || cfg.ei >= cfg.M) throw ParameterError("int_sieve: need 0 <= ei < M");
  if (cfg.comp < 0 || cfg.comp >= cfg.M) {
    throw ParameterError("int_sieve: need 0 <= comp < M");
  }
  if (cfg.k_lo >= cfg.k_hi) throw ParameterError("int_sieve: need k_lo < k_hi");
  if (cfg.comp == 0) return {};

  std::vector<ChunkSpan> spans = split_range(cfg.k_lo, cfg.k_hi, cfg.chunks);
  std::vector<std::vector<SieveHit>> results(spans.size());
  if (spans.size() == 1) {
    int_sieve_chunk(cfg, spans[0], &results[0]);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(spans.size());
    for (size_t i = 0; i < spans.size(); ++i) {
      workers.emplace_back([&, i] { int_sieve_chunk(cfg, spans[i], &results[i]); });
    }
    for (std::thread& w : workers) w.join();
  }
  std::vector<SieveHit> hits;
  for (std::vector<SieveHit>& part : results) {
    for (SieveHit& h : part) hits.push_back(std::move(h));
  }
  return hits;
}

std::vector<SieveHit> verify_hits(const std::vector<SieveHit>& hits, const Real& x,
                                  const Real& tr, const PrecisionContext& ctx) {
  std::vector<SieveHit> out = hits;
  for (SieveHit& h : out) {
    h.verified = candidate_verifies(h.r_candidate, x, tr, ctx);
  }
  return out;
}

BenchReport sieve_benchmark(const FloatSieveConfig& float_cfg,
                            const IntSieveConfig& int_cfg) {
  if (float_cfg.k_lo != int_cfg.k_lo || float_cfg.k_hi != int_cfg.k_hi) {
    throw ParameterError("sieve_benchmark: variants must cover the same k range");
  }
  FloatSieveConfig fc = float_cfg;
  fc.chunks = 1;
  fc.stop_after_verified.reset();
  IntSieveConfig ic = int_cfg;
  ic.chunks = 1;

  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  std::vector<SieveHit> int_hits = int_sieve(ic);
  auto t1 = clock::now();
  std::vector<SieveHit> float_hits = float_sieve(fc);
  auto t2 = clock::now();

  bool same = int_hits.size() == float_hits.size();
  for (size_t i = 0; same && i < int_hits.size(); ++i) {
    same = int_hits[i].k == float_hits[i].k &&
           int_hits[i].sign_branch == float_hits[i].sign_branch;
  }
  if (!same) {
    throw InternalError(
        "sieve_benchmark: float and integer variants disagree on the hit set");
  }

  BenchReport rep;
  rep.elapsed_ms_int =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  rep.elapsed_ms_float =
      std::chrono::duration<double, std::milli>(t2 - t1).count();
  rep.ratio = rep.elapsed_ms_int > 0 ? rep.elapsed_ms_float / rep.elapsed_ms_int
                                     : 0;
  rep.k_count = float_cfg.k_hi - float_cfg.k_lo + 1;
  double count = rep.k_count.get_d();
  rep.throughput_float =
      rep.elapsed_ms_float > 0 ? count / (rep.elapsed_ms_float / 1000.0) : 0;
  rep.throughput_int =
      rep.elapsed_ms_int > 0 ? count / (rep.elapsed_ms_int / 1000.0) : 0;
  rep.hits = std::move(int_hits);
  rep.below_measurement_threshold =
      rep.elapsed_ms_float < 50.0 || rep.elapsed_ms_int < 50.0;
  return rep;
}

ExtrapolatedCost extrapolate_cost(double throughput_k_per_sec, int magnitude,
                                  double e_value) {
  if (throughput_k_per_sec <= 0 || e_value <= 0) {
    throw ParameterError("extrapolate_cost: need positive throughput and e");
  }
  double k_log10 = magnitude - std::log10(e_value);
  double seconds_log10 = k_log10 - std::log10(throughput_k_per_sec);
  double years_log10 = seconds_log10 - std::log10(31557600.0);
  ExtrapolatedCost cost;
  cost.log10_years = years_log10;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "sieving a secret near 10^%d at this throughput takes about "
                "10^%.0f years of single-core work",
                magnitude, years_log10);
  cost.text = buf;
  return cost;
}

}  // namespace qrke
