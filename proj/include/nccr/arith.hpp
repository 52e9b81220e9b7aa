// Copyright 2026 The nccr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <type_traits>

#include "nccr/error.hpp"

namespace nccr {

using Int = std::int64_t;

// Checked int64 arithmetic. Every overflow raises Error(kOverflow) instead of
// wrapping silently.
inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "add");
  return r;
}
inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "sub");
  return r;
}
inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "mul");
  return r;
}
inline Int narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorCode::kOverflow, "narrow");
  return static_cast<Int>(v);
}

inline Int floor_div(Int a, Int b) {
  if (b == 0) throw Error(ErrorCode::kBadArguments, "division by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }
// Non-negative remainder.
inline Int mod(Int a, Int m) { return sub(a, mul(floor_div(a, m), m)); }

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

// Extended gcd: returns g >= 0 with x*a + y*b = g.
inline Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = floor_div(old_r, r);
    Int tmp = sub(old_r, mul(q, r));
    old_r = r;
    r = tmp;
    tmp = sub(old_s, mul(q, s));
    old_s = s;
    s = tmp;
    tmp = sub(old_t, mul(q, t));
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

template <typename I>
struct WideOf {
  using type = I;
};
template <>
struct WideOf<std::int64_t> {
  using type = __int128;
};

// Exact fraction with positive denominator in lowest terms.
template <typename I>
class Rational {
 public:
  using Wide = typename WideOf<I>::type;

  Rational() = default;
  Rational(I n) : num_(n), den_(1) {}  // NOLINT
  Rational(I n, I d) { assign(Wide(n), Wide(d)); }

  I num() const { return num_; }
  I den() const { return den_; }

  I floor() const { return floor_div(num_, den_); }
  I ceil() const { return ceil_div(num_, den_); }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  double to_double() const { return double(num_) / double(den_); }

  Rational operator-() const { return from_wide(-Wide(num_), Wide(den_)); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_,
                     Wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_,
                     Wide(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorCode::kBadArguments, "division by zero");
    return from_wide(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return Wide(a.num_) * b.den_ <=> Wide(b.num_) * a.den_;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static Rational from_wide(Wide n, Wide d) {
    Rational r;
    r.assign(n, d);
    return r;
  }
  void assign(Wide n, Wide d) {
    if (d == 0) throw Error(ErrorCode::kBadArguments, "zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    Wide a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      Wide t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    if constexpr (std::is_same_v<Wide, __int128>) {
      num_ = narrow(n);
      den_ = narrow(d);
    } else {
      num_ = n;
      den_ = d;
    }
  }

  I num_ = 0;
  I den_ = 1;
};

using Q = Rational<Int>;

}  // namespace nccr
