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

#ifndef CAKECUT_RATIONAL_HPP_
#define CAKECUT_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace cakecut {

// Exact rational number in lowest terms with a positive denominator.
//
// Every length, cut position, value and envy in the library is carried as a
// Rational; conversion to decimal only happens when reporting.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);
  explicit Rational(mpq_class value);

  // Accepts "p/q", an integer, or a decimal literal such as "0.125" or
  // "-1.5e-3". Decimal literals are converted exactly. Throws InputError.
  static Rational parse(std::string_view text);

  // Always "p/q", including "0/1" and "3/1".
  std::string str() const;
  // Rounded to `significant` significant digits, trailing zeros removed.
  std::string decimal(int significant = 12) const;
  double to_double() const { return value_.get_d(); }

  std::string numerator() const { return value_.get_num().get_str(); }
  std::string denominator() const { return value_.get_den().get_str(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

Rational abs(const Rational& r);

// Smallest integer >= r.
std::int64_t ceil_to_int(const Rational& r);

}  // namespace cakecut

template <>
struct std::hash<cakecut::Rational> {
  std::size_t operator()(const cakecut::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};

#endif  // CAKECUT_RATIONAL_HPP_
