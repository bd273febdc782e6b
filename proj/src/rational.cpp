// Copyright 2026 The cakecut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cakecut/rational.hpp"

#include <cmath>
#include <regex>
#include <string>

#include "cakecut/errors.hpp"

namespace cakecut {

namespace {

mpz_class pow10(unsigned long exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
  return out;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw InputError("rational with zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(numerator)),
                     mpz_class(static_cast<long>(denominator)));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  static const std::regex kFraction(R"(^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$)");
  static const std::regex kDecimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kFraction)) {
    mpz_class num(m[1].str(), 10);
    mpz_class den(m[2].matched ? m[2].str() : std::string("1"), 10);
    if (den == 0) throw InputError("rational with zero denominator: '" + s + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }
  if (std::regex_match(s, m, kDecimal) && (m[2].length() > 0 || m[3].length() > 0)) {
    const std::string digits = m[2].str() + m[3].str();
    long exponent = -static_cast<long>(m[3].length());
    if (m[4].matched) {
      const long e = std::stol(m[4].str());
      if (e > 4000 || e < -4000) throw InputError("exponent out of range: '" + s + "'");
      exponent += e;
    }
    mpz_class mant(digits.empty() ? std::string("0") : digits, 10);
    if (m[1].str() == "-") mant = -mant;
    mpq_class q;
    if (exponent >= 0) {
      q = mpq_class(mant * pow10(static_cast<unsigned long>(exponent)));
    } else {
      q = mpq_class(mant, pow10(static_cast<unsigned long>(-exponent)));
    }
    q.canonicalize();
    return Rational(q);
  }
  throw InputError("not a rational number: '" + s + "'");
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (is_zero()) return "0";
  mpq_class q = ::abs(value_);
  // exponent = floor(log10(q)), adjusted exactly from a floating estimate.
  long exponent = static_cast<long>(std::floor(std::log10(q.get_d())));
  auto scaled_ge = [&](long e) {  // q >= 10^e
    return e >= 0 ? q >= mpq_class(pow10(static_cast<unsigned long>(e)))
                  : q >= mpq_class(mpz_class(1), pow10(static_cast<unsigned long>(-e)));
  };
  while (!scaled_ge(exponent)) --exponent;
  while (scaled_ge(exponent + 1)) ++exponent;

  // digits = round_half_up(q * 10^(significant - 1 - exponent))
  const long shift = significant - 1 - exponent;
  mpq_class scaled;
  if (shift >= 0) {
    scaled = q * mpq_class(pow10(static_cast<unsigned long>(shift)));
  } else {
    scaled = q / mpq_class(pow10(static_cast<unsigned long>(-shift)));
  }
  mpz_class digits = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  if (digits == pow10(static_cast<unsigned long>(significant))) {
    digits /= 10;
    ++exponent;
  }
  std::string body = digits.get_str();  // exactly `significant` digits
  std::string out;
  if (exponent >= significant || exponent < -6) {
    out = body.substr(0, 1);
    std::string frac = body.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(exponent);
  } else if (exponent >= 0) {
    const auto int_len = static_cast<std::size_t>(exponent + 1);
    out = body.substr(0, int_len);
    std::string frac = body.substr(int_len);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  } else {
    std::string frac = std::string(static_cast<std::size_t>(-exponent - 1), '0') + body;
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = "0." + frac;
  }
  return sign() < 0 ? "-" + out : out;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::int64_t ceil_to_int(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  if (!out.fits_slong_p()) throw ResourceLimit("integer overflow in ceil");
  return out.get_si();
}

}  // namespace cakecut
