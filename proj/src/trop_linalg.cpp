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

#include "tropgon/trop_linalg.hpp"

#include <algorithm>

#include "tropgon/error.hpp"

namespace tropgon {

const Rational& TropScalar::value() const {
  if (!value_) throw Error("tropical -inf used as a rational");
  return *value_;
}

TropScalar operator+(const TropScalar& a, const TropScalar& b) {
  if (!a.value_) return b;
  if (!b.value_) return a;
  return *a.value_ < *b.value_ ? b : a;
}

TropScalar operator*(const TropScalar& a, const TropScalar& b) {
  if (!a.value_ || !b.value_) return {};
  return TropScalar(Rational(*a.value_ + *b.value_));
}

bool operator<(const TropScalar& a, const TropScalar& b) {
  if (!b.value_) return false;
  if (!a.value_) return true;
  return *a.value_ < *b.value_;
}

std::string to_string(const TropScalar& a) {
  return a.is_finite() ? to_string(a.value()) : std::string("-inf");
}

ProjPoint::ProjPoint(std::vector<TropScalar> coords) : coords_(std::move(coords)) {
  auto first = std::find_if(coords_.begin(), coords_.end(),
                            [](const TropScalar& c) { return c.is_finite(); });
  if (first == coords_.end()) {
    throw Error("projective point needs at least one finite coordinate");
  }
  const Rational shift = first->value();
  for (auto& c : coords_) {
    if (c.is_finite()) c = TropScalar(Rational(c.value() - shift));
  }
}

ProjPoint ProjPoint::from_finite(std::span<const Rational> coords) {
  return ProjPoint(std::vector<TropScalar>(coords.begin(), coords.end()));
}

bool ProjPoint::all_finite() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const TropScalar& c) { return c.is_finite(); });
}

std::vector<Rational> ProjPoint::finite_coords() const {
  std::vector<Rational> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.value());
  return out;
}

bool operator<(const ProjPoint& a, const ProjPoint& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(),
                                      b.coords_.begin(), b.coords_.end());
}

std::string to_string(const ProjPoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ":";
    s += to_string(p[i]);
  }
  return s + ")";
}

std::vector<TropScalar> trop_combine_points(
    std::span<const TropScalar> coeffs,
    std::span<const std::vector<TropScalar>> points) {
  if (coeffs.size() != points.size() || coeffs.empty()) {
    throw Error("trop_combine_points: coefficient/point count mismatch");
  }
  if (std::none_of(coeffs.begin(), coeffs.end(),
                   [](const TropScalar& a) { return a.is_finite(); })) {
    throw Error("trop_combine_points: all coefficients are -inf");
  }
  const std::size_t dim = points.front().size();
  std::vector<TropScalar> out(dim);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (points[k].size() != dim) throw Error("trop_combine_points: dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) out[i] = out[i] + coeffs[k] * points[k][i];
  }
  return out;
}

bool proj_equal(const ProjPoint& p, const ProjPoint& q) {
  if (p.size() != q.size()) throw Error("proj_equal: dimension mismatch");
  return p == q;
}

std::vector<ProjPoint> tropical_segment(const ProjPoint& x, const ProjPoint& y) {
  if (x.size() != y.size()) throw Error("tropical_segment: dimension mismatch");
  if (!x.all_finite() || !y.all_finite()) {
    throw Error("tropical_segment: -inf coordinates are not supported");
  }
  const auto xs = x.finite_coords();
  const auto ys = y.finite_coords();
  std::vector<Rational> lambdas;
  for (std::size_t i = 0; i < xs.size(); ++i) lambdas.push_back(ys[i] - xs[i]);
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  // lambda (.) x (+) y equals y at the smallest lambda and x at the largest;
  // sweeping downward walks from x to y.
  std::vector<ProjPoint> out;
  for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it) {
    std::vector<Rational> c(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) c[i] = std::max(Rational(*it + xs[i]), ys[i]);
    ProjPoint p = ProjPoint::from_finite(c);
    if (out.empty() || !(out.back() == p)) out.push_back(std::move(p));
  }
  return out;
}

Rational proj_distance(const ProjPoint& x, const ProjPoint& y) {
  if (x.size() != y.size()) throw Error("proj_distance: dimension mismatch");
  if (!x.all_finite() || !y.all_finite()) {
    throw Error("proj_distance: -inf coordinates are not supported");
  }
  // max_{i<j} |d_i - d_j| = max d - min d for d = x - y.
  Rational lo, hi;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational d = x[i].value() - y[i].value();
    if (i == 0 || d < lo) lo = d;
    if (i == 0 || d > hi) hi = d;
  }
  return hi - lo;
}

}  // namespace tropgon
