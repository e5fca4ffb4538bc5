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

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "tropgon/curve.hpp"
#include "tropgon/divisor.hpp"
#include "tropgon/edge_function.hpp"
#include "tropgon/trop_linalg.hpp"

namespace tropgon {

/// A rational function on a tropical curve: continuous, piecewise affine
/// with integer slopes and finitely many pieces, possibly +-inf at points at
/// infinity, or the constant -inf.
///
/// Stored as one EdgeFunction per edge, parametrized from the edge's `from`
/// end. Continuity at vertices is checked on construction and a mismatch is
/// an error.
class PLFunction {
 public:
  PLFunction(CurvePtr curve, std::vector<EdgeFunction> edges);

  static PLFunction minus_infinity(CurvePtr curve);
  static PLFunction constant(CurvePtr curve, const Rational& value);

  const CurvePtr& curve() const { return curve_; }
  bool is_minus_infinity() const { return minus_infinity_; }
  const EdgeFunction& on_edge(int e) const;
  const std::vector<EdgeFunction>& edge_functions() const { return edges_; }

  ExtRational operator()(const Point& x) const;
  // Slope along a half-edge, positive when f increases away from the base.
  std::int64_t outgoing_slope(const HalfEdge& h) const;

  // Supremum / infimum over the curve (limits at infinity included).
  ExtRational max_value() const;
  ExtRational min_value() const;

  PLFunction shifted(const Rational& c) const;
  PLFunction negated() const;
  friend PLFunction operator+(const PLFunction& a, const PLFunction& b);
  friend PLFunction operator-(const PLFunction& a, const PLFunction& b);
  friend bool operator==(const PLFunction& a, const PLFunction& b);

 private:
  PLFunction(CurvePtr curve, bool minus_infinity);

  CurvePtr curve_;
  std::vector<EdgeFunction> edges_;
  bool minus_infinity_ = false;
};

ExtRational evaluate(const PLFunction& f, const Point& x);

// Sum of outgoing slopes at x. Throws Error for the constant -inf.
std::int64_t order_at(const PLFunction& f, const Point& x);

// Every point with nonzero order. The degree is checked to be 0.
Divisor principal_divisor(const PLFunction& f);

// Vertices and interior slope changes: the only points where the order can
// be nonzero.
std::vector<Point> critical_points(const PLFunction& f);

// Pointwise max of coeffs[i] + fns[i]. Throws Error if every term is -inf.
PLFunction trop_combine(std::span<const TropScalar> coeffs, std::span<const PLFunction> fns);

// max(f, a); the constant 0 for a = +inf and f itself for a = -inf.
PLFunction truncate_below(const PLFunction& f, const ExtRational& a);

struct Segment {
  int edge = -1;
  Rational from;
  ExtRational to;
};

// Closure of the union of pieces with nonzero slope, one segment per maximal
// run on each edge.
std::vector<Segment> nonconstant_locus(const PLFunction& f);
bool contains(const Curve& c, std::span<const Segment> locus, const Point& x);

// Builds the function affine between consecutive knots on every edge (edge
// endpoints are always knots) from its values. Compact curves only; throws
// Error if a slope comes out non-integral or the values are discontinuous.
PLFunction interpolate(const CurvePtr& curve, const std::map<int, std::vector<Rational>>& knots,
                       const std::function<Rational(const Point&)>& value);

PLFunction refine(const PLFunction& f, const Refinement& r);
PLFunction coarsen(const PLFunction& f, const Refinement& r);

}  // namespace tropgon
