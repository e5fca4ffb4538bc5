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

#include <random>
#include <vector>

#include "tropgon/curve.hpp"
#include "tropgon/divisor.hpp"
#include "tropgon/harmonic.hpp"
#include "tropgon/linear_system.hpp"
#include "tropgon/pl_function.hpp"

namespace tropgon::testing {

inline Rational q(long p, long r = 1) {
  Rational out(p, r);
  out.canonicalize();
  return out;
}

struct EdgeSpec {
  Rational start;
  std::vector<EdgeFunction::Piece> pieces;
  std::optional<std::int64_t> tail;
};

inline PLFunction fn(const CurvePtr& c, const std::vector<EdgeSpec>& specs) {
  std::vector<EdgeFunction> edges;
  for (const auto& s : specs) {
    if (s.tail) {
      edges.emplace_back(s.start, s.pieces, *s.tail);
    } else {
      edges.emplace_back(s.start, s.pieces);
    }
  }
  return PLFunction(c, std::move(edges));
}

// Segment A --e1-- B of length 2.
inline CurvePtr seg2() { return make_curve({"A", "B"}, {{"e1", 0, 1, Rational(2)}}); }

// Circle of circumference 4: v0 --a-- v2 --b-- v0, both of length 2.
// Coordinate x in [0, 4): a@t is x = t, b@t is x = 2 + t.
inline CurvePtr circ4() {
  return make_curve({"v0", "v2"}, {{"a", 0, 1, Rational(2)}, {"b", 1, 0, Rational(2)}});
}

// Two vertices joined by three unit edges.
inline CurvePtr theta() {
  return make_curve({"u", "v"},
                    {{"e1", 0, 1, Rational(1)}, {"e2", 0, 1, Rational(1)}, {"e3", 0, 1, Rational(1)}});
}

// Three legs of length 1/2 at a common center.
inline CurvePtr star3() {
  return make_curve({"c", "l1", "l2", "l3"}, {{"e1", 0, 1, q(1, 2)},
                                              {"e2", 0, 2, q(1, 2)},
                                              {"e3", 0, 3, q(1, 2)}});
}

// Circle of circumference 2 with a tail of length 1 at x = 1/2.
// e1 covers x in [0, 1/2], e2 covers [1/2, 2] (e2@t is x = 1/2 + t).
inline CurvePtr tail_curve() {
  return make_curve({"v0", "w", "tip"}, {{"e1", 0, 1, q(1, 2)},
                                         {"e2", 1, 0, q(3, 2)},
                                         {"t", 1, 2, Rational(1)}});
}

// Point of the TAIL circle at coordinate x in [0, 2).
inline Point tail_circle_point(const Curve& c, const Rational& x) {
  if (x <= q(1, 2)) return c.point(0, ExtRational(x));
  return c.point(1, ExtRational(Rational(x - q(1, 2))));
}

// Point of CIRC4 at coordinate x in [0, 4).
inline Point circ4_point(const Curve& c, const Rational& x) {
  if (x <= 2) return c.point(0, ExtRational(x));
  return c.point(1, ExtRational(Rational(x - 2)));
}

// The constant 0, -min(x, 2-x) and max(-min(x, 2-x), -1/2) extended along
// the tail.
inline std::vector<PLFunction> tail_generators(const CurvePtr& c) {
  return {
      PLFunction::constant(c, 0),
      fn(c, {{0, {{-1, q(1, 2)}}}, {q(-1, 2), {{-1, q(1, 2)}, {1, q(1)}}}, {q(-1, 2), {{0, q(1)}}}}),
      fn(c, {{0, {{-1, q(1, 2)}}}, {q(-1, 2), {{0, q(1)}, {1, q(1, 2)}}}, {q(-1, 2), {{-1, q(1)}}}}),
  };
}

// Base (A), generators 0 and -t.
inline GenSystem seg2_system(const CurvePtr& c) {
  return GenSystem(Divisor::point(c, c->vertex_point(0)),
                   {PLFunction::constant(c, 0), fn(c, {{0, {{-1, q(2)}}}})});
}

// Base 2(0), generators 0 and -min(x, 4 - x): the fold onto [0, 2].
inline GenSystem circ4_fold_system(const CurvePtr& c) {
  return GenSystem(Divisor::point(c, c->vertex_point(0), 2),
                   {PLFunction::constant(c, 0), fn(c, {{0, {{-1, q(2)}}}, {-2, {{1, q(2)}}}})});
}

inline GenSystem tail_system(const CurvePtr& c) {
  return GenSystem(Divisor::point(c, c->vertex_point(0), 2), tail_generators(c));
}

// Base (u) + (v); generators 0 and, for each edge, -min(t, 1 - t) on that
// edge and 0 elsewhere. The pull-back of the complete system of the
// center of a three-leg star.
inline GenSystem theta_system(const CurvePtr& c) {
  std::vector<PLFunction> gens{PLFunction::constant(c, 0)};
  for (int k = 0; k < 3; ++k) {
    std::vector<EdgeSpec> specs(3, EdgeSpec{0, {{0, q(1)}}, std::nullopt});
    specs[k] = {0, {{-1, q(1, 2)}, {1, q(1, 2)}}, std::nullopt};
    gens.push_back(fn(c, specs));
  }
  return GenSystem(Divisor(c, {{c->vertex_point(0), 1}, {c->vertex_point(1), 1}}), std::move(gens));
}

// Base (center); generators the three leg functions.
inline GenSystem star3_system(const CurvePtr& c) {
  std::vector<PLFunction> gens;
  for (int k = 0; k < 3; ++k) {
    std::vector<EdgeSpec> specs(3, EdgeSpec{0, {{0, q(1, 2)}}, std::nullopt});
    specs[k] = {0, {{-1, q(1, 2)}}, std::nullopt};
    gens.push_back(fn(c, specs));
  }
  return GenSystem(Divisor::point(c, c->vertex_point(0)), std::move(gens));
}

// Circle of circumference 2 (a: v0 -> v1, b: v1 -> v0, both of length 1)
// with a tail s of length 1 at v0.
inline CurvePtr lollipop() {
  return make_curve({"v0", "v1", "tip"},
                    {{"a", 0, 1, Rational(1)}, {"b", 1, 0, Rational(1)}, {"s", 0, 2, Rational(1)}});
}

// Base 2(v0); generators 0, minus the circle distance to v0, and minus the
// distance along the tail. v0 is an indeterminacy point of multiplicity 2.
inline GenSystem lollipop_system(const CurvePtr& c) {
  return GenSystem(Divisor::point(c, c->vertex_point(0), 2),
                   {PLFunction::constant(c, 0), fn(c, {{0, {{-1, q(1)}}}, {-1, {{1, q(1)}}}, {0, {{0, q(1)}}}}),
                    fn(c, {{0, {{0, q(1)}}}, {0, {{0, q(1)}}}, {0, {{-1, q(1)}}}})});
}

// x -> min(x, 4 - x) from CIRC4 onto SEG2.
inline Morphism circ4_fold(const CurvePtr& circle, const CurvePtr& segment) {
  return Morphism(circle, segment, {{0, 0, 1}, {0, q(2), -1}});
}

// THETA subdivided at its edge midpoints; each edge folds onto one leg of
// STAR3, u and v going to the center.
struct ThetaQuotient {
  Refinement refined;
  Morphism map;
};

inline ThetaQuotient theta_quotient(const CurvePtr& theta_curve, const CurvePtr& star) {
  std::vector<Point> mids;
  for (int e = 0; e < 3; ++e) mids.push_back(theta_curve->point(e, ExtRational(q(1, 2))));
  Refinement r(theta_curve, mids);
  std::vector<EdgeMap> maps(r.fine()->edge_count());
  for (int e = 0; e < r.fine()->edge_count(); ++e) {
    const auto& piece = r.piece(e);
    maps[e] = piece.start == 0 ? EdgeMap{piece.coarse_edge, 0, 1} : EdgeMap{piece.coarse_edge, q(1, 2), -1};
  }
  Morphism m(r.fine(), star, std::move(maps));
  return {std::move(r), std::move(m)};
}

struct NamedSystem {
  std::string name;
  GenSystem system;
};

// Every fixture system satisfying rank = geomdim = 1.
inline std::vector<NamedSystem> star_fixtures() {
  return {{"SEG2", seg2_system(seg2())},
          {"CIRC4", circ4_fold_system(circ4())},
          {"TAIL", tail_system(tail_curve())},
          {"THETA", theta_system(theta())},
          {"STAR3", star3_system(star3())},
          {"LOLLIPOP", lollipop_system(lollipop())}};
}

// Uniform random rational with denominator `den` in [lo, hi].
inline Rational random_rational(std::mt19937& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  return q(d(rng), den);
}

// Random point on a compact curve.
inline Point random_point(std::mt19937& rng, const Curve& c, long den = 8) {
  std::uniform_int_distribution<int> pick(0, c.edge_count() - 1);
  const int e = pick(rng);
  const Rational& len = c.edge(e).length.value();
  const Rational scaled = len * den;
  const mpz_class top = scaled.get_num() / scaled.get_den();
  std::uniform_int_distribution<long> d(0, top.get_si());
  Rational t = q(d(rng), den);
  if (t > len) t = len;
  return c.point(e, ExtRational(t));
}

// Random continuous function on a compact curve: random vertex values
// chosen so every edge admits integer slopes in [-3, 3], with random
// rational breakpoints.
PLFunction random_function(std::mt19937& rng, const CurvePtr& c);

Divisor random_divisor(std::mt19937& rng, const CurvePtr& c, int terms);

}  // namespace tropgon::testing
