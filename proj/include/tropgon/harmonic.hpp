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
#include <span>
#include <string>
#include <vector>

#include "tropgon/curve.hpp"
#include "tropgon/divisor.hpp"
#include "tropgon/pl_function.hpp"

namespace tropgon {

/// Where one source edge goes: into a single target edge, affinely.
struct EdgeMap {
  int target_edge = -1;
  // Target offset of the image of the source edge's `from` end.
  Rational offset;
  // Signed slope in target units per source unit; 0 contracts the edge.
  std::int64_t slope = 0;

  friend bool operator==(const EdgeMap& a, const EdgeMap& b) = default;
};

/// A continuous map between tropical curves, affine with integer slope on
/// every source edge.
///
/// The source must already be subdivided so that each source edge lands in
/// one target edge. A contracted unbounded edge maps to a finite point; a
/// non-contracted one must run out along an unbounded target edge.
class Morphism {
 public:
  // Throws Error on a range violation or a discontinuity at a vertex.
  Morphism(CurvePtr source, CurvePtr target, std::vector<EdgeMap> maps);

  const CurvePtr& source() const { return source_; }
  const CurvePtr& target() const { return target_; }
  const EdgeMap& map(int source_edge) const { return maps_.at(source_edge); }
  const std::vector<EdgeMap>& maps() const { return maps_; }

  Point operator()(const Point& x) const;
  // Image germ of a source half-edge; nullopt when its edge is contracted.
  std::optional<HalfEdge> image(const HalfEdge& h) const;
  // |slope| along the half-edge.
  std::int64_t degree(const HalfEdge& h) const;

 private:
  CurvePtr source_;
  CurvePtr target_;
  std::vector<EdgeMap> maps_;
};

// The identity of a subdivided curve onto the original, slope 1 throughout.
Morphism refinement_map(const Refinement& r);
// m followed by the map from r.fine() (m's target) onto r.coarse().
Morphism coarsen_target(const Morphism& m, const Refinement& r);

struct MorphismReport {
  bool is_morphism = false;
  bool is_finite = false;
  std::string error;
};

// Never throws: construction problems are reported in `error`.
MorphismReport validate_morphism(const CurvePtr& source, const CurvePtr& target, const std::vector<EdgeMap>& maps);
MorphismReport validate_morphism(const Morphism& m);

struct LocalDegree {
  std::optional<std::int64_t> degree;
  // Sum of source degrees per target half-edge at the image point.
  std::vector<std::pair<HalfEdge, std::int64_t>> sums;
  std::string failure;
};

LocalDegree local_degree(const Morphism& m, const Point& x);

/// Points where harmonicity has to be checked: every source vertex and one
/// interior point per source edge.
std::vector<Point> harmonic_checkpoints(const Morphism& m);

/// Number of preimages, counted with local degree, of one point per target
/// edge; throws Error if the map is not harmonic or the counts differ.
std::int64_t global_degree(const Morphism& m);

// Compact curves only.
PLFunction push_function(const Morphism& m, const PLFunction& f);
PLFunction pull_function(const Morphism& m, const PLFunction& f);

// Source points over y with nonzero local degree, paired with that degree.
std::vector<std::pair<Point, std::int64_t>> fiber(const Morphism& m, const Point& y);

Divisor push_divisor(const Morphism& m, const Divisor& d);
Divisor pull_divisor(const Morphism& m, const Divisor& d);

/// A curve with trees grafted on, and the retraction back onto the original.
struct Modification {
  CurvePtr original;
  CurvePtr modified;
  Morphism retraction;
};

Modification modify(const CurvePtr& c, std::span<const GraftSpec> specs);

/// The retraction of a graft: slope 1 on host pieces, every tree edge
/// contracted to its host point.
Morphism retraction_of(const CurvePtr& original, const GraftResult& g);
const Morphism& retraction_of(const Modification& m);

struct Verification {
  bool passed = false;
  bool finite = false;
  std::int64_t degree = 0;
  // (checkpoint, local degree) in checkpoint order.
  std::vector<std::pair<Point, std::int64_t>> local;
  std::string failure;
};

/// Finite, harmonic at every checkpoint, and of constant global degree.
Verification verify_finite_harmonic(const Morphism& m);

}  // namespace tropgon
