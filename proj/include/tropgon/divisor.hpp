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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tropgon/curve.hpp"

namespace tropgon {

// Same object or structurally equal.
bool same_curve(const CurvePtr& a, const CurvePtr& b);

/// A finite integer combination of points of a curve. Zero coefficients are
/// never stored.
class Divisor {
 public:
  explicit Divisor(CurvePtr curve);
  Divisor(CurvePtr curve, const std::map<Point, std::int64_t>& entries);

  static Divisor point(CurvePtr curve, const Point& p, std::int64_t coefficient = 1);

  const CurvePtr& curve() const { return curve_; }
  const std::map<Point, std::int64_t>& entries() const { return entries_; }
  std::int64_t operator()(const Point& p) const;
  void add(const Point& p, std::int64_t c);

  std::int64_t degree() const;
  std::vector<Point> support() const;
  bool is_effective() const;
  bool is_zero() const { return entries_.empty(); }

  Divisor& operator+=(const Divisor& other);
  Divisor& operator-=(const Divisor& other);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(std::int64_t k, const Divisor& d);
  friend bool operator==(const Divisor& a, const Divisor& b);

 private:
  CurvePtr curve_;
  std::map<Point, std::int64_t> entries_;
};

// "<coef>*<edge>@<offset>" terms separated by spaces, in print order.
std::string to_string(const Divisor& d);

Divisor refine(const Divisor& d, const Refinement& r);
Divisor coarsen(const Divisor& d, const Refinement& r);

}  // namespace tropgon
