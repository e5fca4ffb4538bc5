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
#include <optional>
#include <vector>

#include "tropgon/rational.hpp"

namespace tropgon {

/// A continuous piecewise affine function with integer slopes on an interval
/// [0, L], L rational, or on [0, +inf).
///
/// On an unbounded domain the finite pieces are followed by a tail piece of
/// constant slope. The representation is canonical: adjacent pieces always
/// have different slopes, so equality is structural.
class EdgeFunction {
 public:
  struct Piece {
    std::int64_t slope = 0;
    Rational length;  // > 0
  };

  EdgeFunction() = default;
  // Bounded domain [0, sum of lengths].
  EdgeFunction(Rational start, std::vector<Piece> pieces);
  // Unbounded domain: finite pieces then `tail_slope` up to +inf.
  EdgeFunction(Rational start, std::vector<Piece> pieces, std::int64_t tail_slope);

  static EdgeFunction constant(Rational value, const ExtRational& length);
  static EdgeFunction affine(Rational start, std::int64_t slope, const ExtRational& length);

  const Rational& start() const { return start_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::optional<std::int64_t>& tail_slope() const { return tail_; }
  bool unbounded() const { return tail_.has_value(); }
  ExtRational length() const;
  // Length of the bounded part (all pieces before the tail).
  Rational finite_length() const;

  // t in [0, length]; at +inf the limit (+-inf unless the tail is flat).
  ExtRational value_at(const ExtRational& t) const;
  ExtRational end_value() const { return value_at(length()); }
  // Slope of the piece just right (resp. left) of t.
  std::int64_t slope_right(const Rational& t) const;
  std::int64_t slope_left(const ExtRational& t) const;
  // Interior offsets where the slope changes.
  std::vector<Rational> breakpoints() const;

  // Extremes over the finite points of the domain; the supremum/infimum
  // including the limit at +inf when unbounded.
  ExtRational max_value() const;
  ExtRational min_value() const;

  EdgeFunction shifted(const Rational& c) const;
  EdgeFunction negated() const;
  // Restriction to [lo, hi], re-based so that lo becomes 0.
  EdgeFunction restricted(const Rational& lo, const ExtRational& hi) const;
  // t -> f(L - t); bounded only.
  EdgeFunction reversed() const;
  // t -> f(k t) for k > 0: domain shrinks by k, slopes scale by k.
  EdgeFunction compressed(std::int64_t k) const;
  // t -> k f(t / k) for k > 0: domain and values stretch by k, slopes keep.
  EdgeFunction stretched(std::int64_t k) const;

  friend EdgeFunction max(const EdgeFunction& a, const EdgeFunction& b);
  friend EdgeFunction operator+(const EdgeFunction& a, const EdgeFunction& b);
  friend bool operator==(const EdgeFunction& a, const EdgeFunction& b);

 private:
  void canonicalize();

  Rational start_;
  std::vector<Piece> pieces_;
  std::optional<std::int64_t> tail_;
};

}  // namespace tropgon
