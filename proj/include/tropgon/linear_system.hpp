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
#include "tropgon/trop_linalg.hpp"

namespace tropgon {

/// A finitely generated linear system: a base divisor D and generators
/// f_0..f_n of the semimodule L(D) restricted to the system.
///
/// Every generator satisfies D + div(f_i) >= 0. Only compact curves are
/// supported.
class GenSystem {
 public:
  // Throws Error on an empty generator list, a non-compact curve, a curve
  // mismatch or a generator outside L(D).
  GenSystem(Divisor base, std::vector<PLFunction> generators);

  const CurvePtr& curve() const { return base_.curve(); }
  const Divisor& base() const { return base_; }
  const std::vector<PLFunction>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  std::int64_t degree() const { return base_.degree(); }

 private:
  Divisor base_;
  std::vector<PLFunction> generators_;
};

struct Representation {
  // a_i = min over the curve of f - f_i.
  std::vector<TropScalar> coeffs;
  // Whether max_i (a_i + f_i) reproduces f.
  bool exact = false;
};

Representation maximal_representation(const PLFunction& f, const GenSystem& s);

/// Drops every generator that the remaining ones reproduce, scanning in
/// order, and shifts each survivor so that its maximum is 0.
GenSystem minimize_generators(const GenSystem& s);

// Number of minimal generators minus one.
int algdim(const GenSystem& s);

ProjPoint phi(const GenSystem& s, const Point& x);

/// Subdivision of the curve at every generator breakpoint and at the
/// support of the base divisor (plus optional extra points). Every
/// generator is affine on each fine edge.
struct CellDecomposition {
  Refinement refinement;
  // slopes[e][i]: slope of generator i along fine edge e, forward.
  std::vector<std::vector<std::int64_t>> slopes;

  // max - min of the slope vector: the stretch factor of phi on the cell.
  std::int64_t stretch(int fine_edge) const;
};

CellDecomposition cell_decomposition(const GenSystem& s, std::span<const Point> extra = {});

/// The image of phi as a metric tree, each vertex carrying its projective
/// coordinates. Edge lengths are projective distances between endpoints.
struct ImageTree {
  CurvePtr curve;
  std::vector<ProjPoint> coords;

  std::optional<int> vertex_at(const ProjPoint& p) const;
  // Coordinates of any point, interpolated along its edge.
  ProjPoint coords_of(const Point& p) const;
  // Point of the tree with coordinates p, if any.
  std::optional<Point> locate(const ProjPoint& p) const;
};

// Subdivides the tree at the given points, interpolating coordinates.
ImageTree refine(const ImageTree& t, std::span<const Point> cuts);

struct ImageResult {
  std::optional<ImageTree> tree;  // set iff geomdim == 1
  int geomdim = 0;
  std::string diagnostic;  // why the image fails to be a convex tree
};

/// Glues the cell images into a 1-complex, then checks that it is a tree
/// with at least one edge and that every leaf-to-leaf path is a tropical
/// segment (tropical convexity).
ImageResult build_image_tree(const GenSystem& s);

// D + div(max_i (f_i - f_i(x))).
Divisor divisor_at(const GenSystem& s, const Point& x);
// D + div(max_i (f_i - p_i)) for an image point p.
Divisor divisor_at_image(const GenSystem& s, const ProjPoint& p);
// Coefficient of x in divisor_at_image(s, p), from the slopes at x only.
std::int64_t divisor_coefficient(const GenSystem& s, const ProjPoint& p, const Point& x);
// divisor_at(s, x)(x).
std::int64_t self_coefficient(const GenSystem& s, const Point& x);

struct RankCertificate {
  bool passed = false;
  std::optional<Point> failing_point;
  std::int64_t failing_value = 0;
  // Points where D_x(x) was evaluated: cell endpoints, then one interior
  // point per cell.
  std::size_t checked = 0;
};

/// Checks D_x(x) >= 1 everywhere. D_x(x) is constant on each open cell, so
/// cell endpoints and one interior point per cell suffice.
RankCertificate check_rank_one(const GenSystem& s);

struct StarCheck {
  bool passed = false;
  std::string diagnostic;
  GenSystem minimized;
  RankCertificate rank;
  ImageResult image;
};

/// Rank test first, then the image tree, on the minimized system.
StarCheck check_star(const GenSystem& s);

/// All of L(D) for a degree-one divisor D on a compact tree: D is written as
/// (x0) + div(F), and L((x0)) is generated by 0 and, for each leaf end y,
/// t -> -d(proj of t onto [x0, y], x0). Result is minimized.
GenSystem tree_linear_system(const CurvePtr& tree, const Divisor& d);

// Same divisor class required. Generators become f - w where
// new_base = base + div(w).
GenSystem rebase(const GenSystem& s, const Divisor& new_base);

/// Whether two systems consist of the same divisors: the bases must be
/// linearly equivalent and, after rebasing, each generator set must
/// reproduce the other.
bool same_system(const GenSystem& a, const GenSystem& b);

}  // namespace tropgon
