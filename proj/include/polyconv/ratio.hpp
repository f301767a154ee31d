// Copyright 2026 The polyconv Authors.
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

#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "polyconv/error.hpp"

namespace polyconv {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Values are kept in lowest terms with a positive denominator, so equality
/// is structural. Intermediate products are formed in 128 bits; a result that
/// does not fit back into 64 bits raises ErrorCode::kOverflow instead of
/// wrapping.
class Ratio {
 public:
  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t value) : num_(value) {}  // NOLINT: implicit
  Ratio(std::int64_t num, std::int64_t den) { assign(num, den); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Ratio operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    if (a.den_ == b.den_) return from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
    return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Ratio operator-(const Ratio& a, const Ratio& b) {
    if (a.den_ == b.den_) return from_wide(static_cast<__int128>(a.num_) - b.num_, a.den_);
    return from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.num_ == 0) throw Error(ErrorCode::kInvalidArgument, "division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_,
                     static_cast<__int128>(a.den_) * b.num_);
  }
  Ratio& operator+=(const Ratio& o) { return *this = *this + o; }
  Ratio& operator-=(const Ratio& o) { return *this = *this - o; }
  Ratio& operator*=(const Ratio& o) { return *this = *this * o; }
  Ratio& operator/=(const Ratio& o) { return *this = *this / o; }

  friend bool operator==(const Ratio& a, const Ratio& b) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const {
    std::string out = std::to_string(num_);
    if (den_ != 1) {
      out += '/';
      out += std::to_string(den_);
    }
    return out;
  }

  /// Accepts "p", "-p" or "p/q" with q > 0; surrounding whitespace is not
  /// allowed. Throws kInvalidArgument on anything else.
  static Ratio parse(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num_text = text.substr(0, slash);
    std::int64_t num = parse_int(num_text, text);
    std::int64_t den = 1;
    if (slash != std::string_view::npos) {
      den = parse_int(text.substr(slash + 1), text);
      if (den <= 0) throw Error(ErrorCode::kInvalidArgument, "non-positive denominator in '" + std::string(text) + "'");
    }
    return Ratio(num, den);
  }

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.to_string(); }

 private:
  static std::int64_t parse_int(std::string_view digits, std::string_view whole) {
    std::int64_t value = 0;
    const char* first = digits.data();
    const char* last = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (digits.empty() || ec != std::errc() || ptr != last) {
      throw Error(ErrorCode::kInvalidArgument, "not a rational number: '" + std::string(whole) + "'");
    }
    return value;
  }

  static __int128 gcd_wide(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Ratio from_wide(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const __int128 g = gcd_wide(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
    if (num > kMax || num < -kMax || den > kMax) {
      throw Error(ErrorCode::kOverflow, "rational arithmetic exceeds 64-bit range");
    }
    Ratio r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
    *this = from_wide(num, den);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace polyconv
