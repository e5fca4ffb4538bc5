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

#include "fixtures.hpp"

namespace tropgon::testing {
namespace {

std::optional<EdgeFunction> try_edge(std::mt19937& rng, const Rational& len, const Rational& a,
                                     const Rational& b) {
  std::uniform_int_distribution<int> slope(-3, 3);
  std::uniform_int_distribution<int> count(0, 3);
  std::uniform_int_distribution<long> frac(1, 15);
  std::vector<EdgeFunction::Piece> pieces;
  Rational used = 0;
  Rational value = a;
  const int m = count(rng);
  for (int i = 0; i < m; ++i) {
    Rational l = (len - used) * q(frac(rng), 32);
    std::int64_t s = slope(rng);
    pieces.push_back({s, l});
    used += l;
    value += s * l;
  }
  // Two closing pieces with slopes p != r covering the remaining length R
  // and reaching b: p x + r (R - x) = b - value.
  const Rational rest = len - used;
  const std::int64_t p = slope(rng);
  const std::int64_t r = slope(rng);
  if (p == r) {
    if (p * rest != b - value) return std::nullopt;
    pieces.push_back({p, rest});
  } else {
    Rational x = (b - value - r * rest) / Rational(p - r);
    if (x < 0 || x > rest) return std::nullopt;
    if (x > 0) pieces.push_back({p, x});
    if (rest - x > 0) pieces.push_back({r, Rational(rest - x)});
  }
  return EdgeFunction(a, std::move(pieces));
}

}  // namespace

PLFunction random_function(std::mt19937& rng, const CurvePtr& c) {
  for (;;) {
    std::vector<Rational> vals;
    for (int v = 0; v < c->vertex_count(); ++v) vals.push_back(random_rational(rng, -2, 2, 4));
    std::vector<EdgeFunction> edges;
    bool ok = true;
    for (const auto& e : c->edges()) {
      std::optional<EdgeFunction> f;
      for (int attempt = 0; attempt < 40 && !f; ++attempt) {
        f = try_edge(rng, e.length.value(), vals[e.from], vals[e.to]);
      }
      if (!f) {
        ok = false;
        break;
      }
      edges.push_back(*f);
    }
    if (ok) return PLFunction(c, std::move(edges));
  }
}

Divisor random_divisor(std::mt19937& rng, const CurvePtr& c, int terms) {
  std::uniform_int_distribution<int> coef(-2, 2);
  Divisor d(c);
  for (int i = 0; i < terms; ++i) d.add(random_point(rng, *c), coef(rng));
  return d;
}

}  // namespace tropgon::testing
