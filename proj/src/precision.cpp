// Copyright 2026 The qrke-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrke/precision.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace qrke {

namespace {
constexpr int kMinDigits = 10;
constexpr int kPrecSlackBits = 16;
}  // namespace

PrecisionContext make_context(int digits) {
  if (digits < kMinDigits) {
    throw ParameterError("make_context: digits must be at least 10, got " +
                         std::to_string(digits));
  }
  return PrecisionContext{digits};
}

mpfr_prec_t bits_for_digits(int digits) {
  if (digits < 1) throw ParameterError("bits_for_digits: digits must be positive");
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) +
         kPrecSlackBits;
}

Real::Real() {
  mpfr_init2(v_, MPFR_PREC_MIN > 16 ? MPFR_PREC_MIN : 16);
  mpfr_set_zero(v_, 1);
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN > 16 ? MPFR_PREC_MIN : 16);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_decimal(const std::string& text, mpfr_prec_t bits) {
  Real r(bits);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw ParameterError("not a decimal number: '" + text + "'");
  }
  return r;
}

Real Real::from_long(long v, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::from_bigint(const BigInt& v, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::pow10(long k, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_si(r.v_, 10, MPFR_RNDN);
  mpfr_pow_si(r.v_, r.v_, k, MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real Real::abs() const {
  Real r(prec());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {
mpfr_prec_t joint_prec(const Real& a, const Real& b) {
  return a.prec() > b.prec() ? a.prec() : b.prec();
}
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(joint_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(joint_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(joint_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  Real r(joint_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

void Real::add_assign(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); }
void Real::sub_assign(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); }

std::string Real::to_decimal(int sig_digits) const {
  if (sig_digits < 1) throw ParameterError("to_decimal: need at least 1 digit");
  if (is_zero()) return "0";
  size_t n = sig_digits < 2 ? 2 : static_cast<size_t>(sig_digits);
  mpfr_exp_t exp = 0;
  char* s = mpfr_get_str(nullptr, &exp, 10, n, v_, MPFR_RNDN);
  if (s == nullptr) throw InternalError("mpfr_get_str failed");
  std::string digits(s);
  mpfr_free_str(s);
  bool neg = !digits.empty() && digits[0] == '-';
  if (neg) digits.erase(0, 1);

  // value = 0.<digits> * 10^exp
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<size_t>(-exp), '0') + digits;
  } else if (static_cast<size_t>(exp) >= digits.size()) {
    out = digits + std::string(static_cast<size_t>(exp) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<size_t>(exp)) + "." +
          digits.substr(static_cast<size_t>(exp));
  }
  if (out.find('.') != std::string::npos) {
    size_t last = out.find_last_not_of('0');
    if (out[last] == '.') last--;
    out.erase(last + 1);
  }
  return neg ? "-" + out : out;
}

Real arccos(const Real& x, const PrecisionContext& ctx) {
  if (x.cmp_long(1) > 0 || x.cmp_long(-1) < 0) {
    throw DomainError("arccos: argument outside [-1, 1]");
  }
  Real r(bits_for_digits(ctx.working_digits()));
  mpfr_acos(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real cos_of(const Real& theta, const PrecisionContext& ctx) {
  if (!mpfr_number_p(theta.raw())) throw DomainError("cos_of: non-finite argument");
  Real r(bits_for_digits(ctx.working_digits()));
  mpfr_cos(r.raw(), theta.raw(), MPFR_RNDN);
  return r;
}

Real pi_value(const PrecisionContext& ctx) {
  return Real::pi(bits_for_digits(ctx.working_digits()));
}

BigInt floor_scaled(const Real& a, int m) {
  if (m < 0) throw ParameterError("floor_scaled: negative scale exponent");
  if (!mpfr_number_p(a.raw())) throw DomainError("floor_scaled: non-finite value");
  BigInt p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(m));
  // The product is exact at prec(a) + bits(10^m), so the subsequent floor
  // applies to the true value of a * 10^m.
  mpfr_prec_t prod_bits =
      a.prec() + static_cast<mpfr_prec_t>(mpz_sizeinbase(p10.get_mpz_t(), 2)) + 4;
  Real prod(prod_bits);
  mpfr_mul_z(prod.raw(), a.raw(), p10.get_mpz_t(), MPFR_RNDN);
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), prod.raw(), MPFR_RNDD);
  return out;
}

Real frac_part(const Real& a) {
  if (!mpfr_number_p(a.raw())) throw DomainError("frac_part: non-finite value");
  Real fl(a.prec());
  mpfr_floor(fl.raw(), a.raw());
  Real r(a.prec());
  mpfr_sub(r.raw(), a.raw(), fl.raw(), MPFR_RNDN);
  return r;
}

BigInt floor_to_bigint(const Real& a) {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), a.raw(), MPFR_RNDD);
  return out;
}

BigInt round_to_bigint(const Real& a) {
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), a.raw(), MPFR_RNDN);
  return out;
}

bool is_trivial_angle(const Real& x) {
  if (x.cmp_long(1) > 0 || x.cmp_long(-1) < 0) {
    throw DomainError("is_trivial_angle: argument outside [-1, 1]");
  }
  if (x.is_zero()) return true;
  if (x.cmp_long(1) == 0 || x.cmp_long(-1) == 0) return true;
  if (mpfr_cmp_d(x.raw(), 0.5) == 0 || mpfr_cmp_d(x.raw(), -0.5) == 0) return true;
  return false;
}

Real parse_real(const std::string& text, const PrecisionContext& ctx) {
  bool ok = !text.empty();
  size_t i = 0;
  if (ok && (text[0] == '+' || text[0] == '-')) i = 1;
  bool any_digit = false, seen_dot = false;
  for (size_t j = i; ok && j < text.size(); ++j) {
    char c = text[j];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      any_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      ok = false;
    }
  }
  if (!ok || !any_digit) {
    throw ParameterError("not a plain decimal number: '" + text + "'");
  }
  return Real::from_decimal(text, bits_for_digits(ctx.working_digits()));
}

int decimal_length(const BigInt& v) {
  if (v == 0) return 1;
  BigInt a = ::abs(v);
  return static_cast<int>(a.get_str().size());
}

}  // namespace qrke
