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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropgon/rational.hpp"

namespace tropgon {

/// An element of the max-plus semifield: a rational or -inf.
///
/// Tropical sum is max, tropical product is ordinary +. -inf is the
/// neutral element of the sum and absorbing for the product.
class TropScalar {
 public:
  TropScalar() = default;  // -inf
  TropScalar(Rational v) : value_(std::move(v)) {}  // NOLINT
  TropScalar(long v) : value_(Rational(v)) {}       // NOLINT
  TropScalar(int v) : value_(Rational(v)) {}        // NOLINT

  static TropScalar minus_infinity() { return {}; }

  bool is_finite() const { return value_.has_value(); }
  // Throws Error for -inf.
  const Rational& value() const;

  friend TropScalar operator+(const TropScalar& a, const TropScalar& b);  // max
  friend TropScalar operator*(const TropScalar& a, const TropScalar& b);  // +
  friend bool operator==(const TropScalar& a, const TropScalar& b) = default;
  friend bool operator<(const TropScalar& a, const TropScalar& b);

 private:
  std::optional<Rational> value_;
};

std::string to_string(const TropScalar& a);

/// A point of tropical projective space: n+1 coordinates, not all -inf,
/// modulo adding one finite constant to every finite coordinate.
///
/// Stored in canonical form: the first finite coordinate is 0.
class ProjPoint {
 public:
  // Throws Error when every coordinate is -inf or the list is empty.
  explicit ProjPoint(std::vector<TropScalar> coords);
  static ProjPoint from_finite(std::span<const Rational> coords);

  std::size_t size() const { return coords_.size(); }
  // Ambient projective dimension n.
  std::size_t dimension() const { return coords_.size() - 1; }
  const std::vector<TropScalar>& coords() const { return coords_; }
  const TropScalar& operator[](std::size_t i) const { return coords_[i]; }
  bool all_finite() const;
  // Finite coordinates as rationals; throws Error if one is -inf.
  std::vector<Rational> finite_coords() const;

  // Canonical forms are equal iff the points are projectively equal.
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) = default;
  friend bool operator<(const ProjPoint& a, const ProjPoint& b);

 private:
  std::vector<TropScalar> coords_;
};

std::string to_string(const ProjPoint& p);

// Coordinatewise max of coeff_i + point_i.
std::vector<TropScalar> trop_combine_points(
    std::span<const TropScalar> coeffs,
    std::span<const std::vector<TropScalar>> points);

// Throws Error on dimension mismatch.
bool proj_equal(const ProjPoint& p, const ProjPoint& q);

/// Breakpoints of the tropical line segment from x to y, starting at x and
/// ending at y. Consecutive breakpoints are joined by ordinary segments whose
/// direction is a positive multiple of a 0/1 vector; there are at most n of
/// them. A degenerate segment (x == y) is the single point x.
std::vector<ProjPoint> tropical_segment(const ProjPoint& x, const ProjPoint& y);

// max over i<j of |(x_i - y_i) - (x_j - y_j)|. Finite coordinates only.
Rational proj_distance(const ProjPoint& x, const ProjPoint& y);

}  // namespace tropgon
