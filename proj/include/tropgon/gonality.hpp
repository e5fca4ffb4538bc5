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
#include <string>
#include <vector>

#include "tropgon/harmonic.hpp"
#include "tropgon/linear_system.hpp"

namespace tropgon {

struct Indeterminacy {
  Point point;
  // D_p(p): the coefficient of p in the divisor of the system at p.
  std::int64_t multiplicity = 0;

  friend bool operator==(const Indeterminacy& a, const Indeterminacy& b) = default;
};

/// Points lying in the support of two different divisors of the system.
///
/// Throws Error when the system fails rank = geomdim = 1. Candidates are
/// the supports of D_Y over every node Y of the image tree.
std::vector<Indeterminacy> indeterminacy_set(const GenSystem& s);

/// phi on a subdivision of the curve, as a morphism onto the image tree.
/// The subdivision cuts at every cell endpoint, at `extra` and at every
/// preimage of a tree vertex, so each fine edge covers one tree edge.
struct ImageMap {
  Refinement refinement;
  Morphism map;
};

// s must be minimized and satisfy rank = geomdim = 1; `tree` is its image
// tree, possibly subdivided.
ImageMap image_map(const GenSystem& s, const ImageTree& tree, std::span<const Point> extra = {});

struct GraftTree {
  Point host;  // on the original curve
  std::int64_t level = 0;
  // Sub-curve of the subdivided image tree; null for a singleton.
  CurvePtr tree;
  Point attach;
};

struct GraftPlan {
  GenSystem minimized;
  // The image tree subdivided at the images of the indeterminacy points and
  // wherever the level sets of D_Y(p) end.
  ImageTree target;
  std::vector<Indeterminacy> indeterminacy;
  // T_{p,n} for every indeterminacy point p and 1 <= n <= D_p(p).
  std::vector<GraftTree> trees;
};

/// T_{p,n} = phi({x : D_x(p) >= n}), read off the image tree.
GraftPlan build_graft_trees(const GenSystem& s);

struct Certificate {
  std::int64_t degree = 0;
  std::vector<Indeterminacy> indeterminacy;
  // Lengths of the nontrivial grafted trees, in graft order.
  std::vector<Rational> graft_lengths;
  std::size_t singletons = 0;
  // Local degree of the witness map at each checkpoint of the modified curve.
  std::vector<std::pair<Point, std::int64_t>> checkpoints;
};

struct Witness {
  Modification modification;
  ImageTree target;
  Morphism map;  // modified curve -> target tree
  Certificate certificate;
};

/// The modification grafting every T_{p,n} onto the curve and the finite
/// harmonic morphism of degree deg(D) onto the image tree. The result is
/// verified before returning; any failure throws Error with the location.
Witness construct_witness(const GenSystem& s);

/// pi_*(phi^* |d|) for a witness (pi, phi) and a degree-one divisor d on the
/// target tree. The result is minimized and checked to satisfy
/// rank = geomdim = 1 with degree deg(phi).
GenSystem system_from_witness(const Modification& mod, const Morphism& map, const Divisor& d);

// Sum of edge lengths.
Rational total_length(const Curve& c);

/// Isometry-invariant encoding of a compact metric tree: vertices of
/// valency 2 are suppressed and the rooted encodings are minimized over all
/// roots.
std::string tree_canonical_form(const Curve& tree);
bool isometric_trees(const Curve& a, const Curve& b);

struct RoundTrip {
  bool passed = false;
  std::int64_t degree = 0;
  std::string report;
};

/// system -> witness -> system; passes when both systems consist of the
/// same divisors.
RoundTrip roundtrip_system(const GenSystem& s);

/// witness -> system -> witness; passes when the degrees agree and the
/// target trees are isometric.
RoundTrip roundtrip_witness(const Modification& mod, const Morphism& map);

// Text rendering with points written on the original and modified curves.
std::string to_string(const Certificate& c, const Curve& original, const Curve& modified);

}  // namespace tropgon
