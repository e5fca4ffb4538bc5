// Copyright 2026 The tropgon Authors
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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tropgon {

using Rational = mpq_class;

// Canonical "p/q" text, q > 0 and reduced. Integers keep the "/1".
std::string to_string(const Rational& q);

// Accepts "p/q" or a bare integer "p". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// Exact integer value of q, or throws Error if q is not an integer.
std::int64_t to_integer(const Rational& q);

bool is_integer(const Rational& q);

/// Rational extended by the two infinities.
///
/// Used for edge lengths and offsets on unbounded edges and for function
/// values at points at infinity. Arithmetic that would produce inf - inf
/// throws Error.
class ExtRational {
 public:
  enum class Kind : std::uint8_t { kMinusInf, kFinite, kPlusInf };

  ExtRational() = default;
  ExtRational(Rational v) : kind_(Kind::kFinite), value_(std::move(v)) {}  // NOLINT
  ExtRational(long v) : kind_(Kind::kFinite), value_(v) {}                // NOLINT
  ExtRational(int v) : kind_(Kind::kFinite), value_(v) {}                 // NOLINT

  static ExtRational plus_infinity() { return ExtRational(Kind::kPlusInf); }
  static ExtRational minus_infinity() { return ExtRational(Kind::kMinusInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  bool is_plus_infinity() const { return kind_ == Kind::kPlusInf; }
  bool is_minus_infinity() const { return kind_ == Kind::kMinusInf; }

  // Throws Error when not finite.
  const Rational& value() const;

  ExtRational operator-() const;
  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator-(const ExtRational& a, const ExtRational& b);
  // Multiplication by a nonzero integer (0 * inf is rejected).
  friend ExtRational operator*(std::int64_t k, const ExtRational& a);

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a,
                                          const ExtRational& b);

 private:
  explicit ExtRational(Kind k) : kind_(k) {}

  Kind kind_ = Kind::kFinite;
  Rational value_{0};
};

std::string to_string(const ExtRational& q);
// "inf", "+inf", "-inf" or a rational.
ExtRational parse_ext_rational(std::string_view text);

std::ostream& operator<<(std::ostream& os, const ExtRational& q);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace tropgon
