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

#include "tropgon/rational.hpp"

#include <ostream>

#include "tropgon/error.hpp"

namespace tropgon {
namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

bool is_signed_digits(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return is_digits(s);
}

}  // namespace

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_signed_digits(num) ||
      (slash != std::string_view::npos && !is_digits(den))) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (!n.empty() && n.front() == '+') n.erase(0, 1);
  Rational q;
  if (den.empty()) {
    q = Rational(mpz_class(n));
  } else {
    mpz_class d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    q = Rational(mpz_class(n), d);
  }
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::int64_t to_integer(const Rational& q) {
  if (!is_integer(q)) throw Error("expected an integer, got " + to_string(q));
  if (!q.get_num().fits_slong_p()) throw Error("integer out of range: " + to_string(q));
  return q.get_num().get_si();
}

const Rational& ExtRational::value() const {
  if (kind_ != Kind::kFinite) throw Error("infinite value used as a rational");
  return value_;
}

ExtRational ExtRational::operator-() const {
  switch (kind_) {
    case Kind::kMinusInf:
      return plus_infinity();
    case Kind::kPlusInf:
      return minus_infinity();
    case Kind::kFinite:
      break;
  }
  return ExtRational(Rational(-value_));
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.is_finite() && b.is_finite()) return ExtRational(Rational(a.value_ + b.value_));
  if (!a.is_finite() && !b.is_finite() && a.kind_ != b.kind_) {
    throw Error("undefined sum inf + -inf");
  }
  return a.is_finite() ? b : a;
}

ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }

ExtRational operator*(std::int64_t k, const ExtRational& a) {
  if (a.is_finite()) return ExtRational(Rational(a.value_ * k));
  if (k == 0) throw Error("undefined product 0 * inf");
  return k > 0 ? a : -a;
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (!a.is_finite()) return std::strong_ordering::equal;
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const ExtRational& q) {
  switch (q.kind()) {
    case ExtRational::Kind::kMinusInf:
      return "-inf";
    case ExtRational::Kind::kPlusInf:
      return "inf";
    case ExtRational::Kind::kFinite:
      break;
  }
  return to_string(q.value());
}

ExtRational parse_ext_rational(std::string_view text) {
  if (text == "inf" || text == "+inf") return ExtRational::plus_infinity();
  if (text == "-inf") return ExtRational::minus_infinity();
  return ExtRational(parse_rational(text));
}

std::ostream& operator<<(std::ostream& os, const ExtRational& q) {
  return os << to_string(q);
}

}  // namespace tropgon
