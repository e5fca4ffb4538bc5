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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tropgon/rational.hpp"

namespace tropgon {

struct Edge {
  std::string id;
  int from = -1;
  int to = -1;
  // Positive rational, or +inf for an unbounded edge whose `to` end is a
  // point at infinity.
  ExtRational length;

  bool unbounded() const { return length.is_plus_infinity(); }
};

/// A point of a curve in canonical form: either a vertex, or an edge
/// together with an offset strictly inside (0, length).
struct Point {
  int vertex = -1;
  int edge = -1;
  Rational offset;

  bool is_vertex() const { return vertex >= 0; }

  friend bool operator==(const Point& a, const Point& b);
  friend bool operator<(const Point& a, const Point& b);
};

/// A direction germ at a point: leaving `base` along `edge`, towards
/// increasing offsets when `forward`.
struct HalfEdge {
  Point base;
  int edge = -1;
  bool forward = true;
  // Distance to the next vertex in this direction (+inf on an unbounded
  // edge heading to infinity).
  ExtRational germ;

  friend bool operator==(const HalfEdge& a, const HalfEdge& b) {
    return a.base == b.base && a.edge == b.edge && a.forward == b.forward;
  }
};

struct EdgeEnd {
  int edge;
  bool at_from;
};

struct CurveReport {
  bool valid = true;
  std::vector<std::string> errors;
  int betti = 0;
  std::vector<std::string> leaf_ends;  // vertex ids of valency 1
};

// Structural checks for raw curve data: resolvable endpoints, unique ids,
// positive lengths, connectivity and the shape of unbounded edges.
CurveReport validate_curve(const std::vector<std::string>& vertices,
                           const std::vector<Edge>& edges);

/// A tropical curve: a connected metric graph with rational edge lengths,
/// possibly with unbounded edges ending at points at infinity.
///
/// Immutable. Parallel edges and self-loops are allowed.
class Curve {
 public:
  // Throws Error with the first validation failure.
  Curve(std::vector<std::string> vertices, std::vector<Edge> edges);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& vertex_id(int v) const { return vertices_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& vertex_ids() const { return vertices_; }
  std::optional<int> find_vertex(std::string_view id) const;
  std::optional<int> find_edge(std::string_view id) const;
  int vertex_index(std::string_view id) const;  // throws Error
  int edge_index(std::string_view id) const;    // throws Error
  const std::vector<EdgeEnd>& incident(int v) const { return incident_.at(v); }

  bool is_at_infinity(int v) const { return at_infinity_.at(v); }
  bool is_at_infinity(const Point& p) const { return p.is_vertex() && is_at_infinity(p.vertex); }
  bool is_compact() const;
  int betti() const { return betti_; }

  Point vertex_point(int v) const;
  // Canonical point at `offset` along edge e; throws Error when out of range.
  Point point(int e, const ExtRational& offset) const;
  // Representative (edge, offset): for vertices the incident edge with the
  // smallest id.
  std::pair<int, ExtRational> locate(const Point& p) const;
  int valency(const Point& p) const;

  // "<edge>@<offset>" using locate().
  std::string format_point(const Point& p) const;
  // Accepts "<edge>@<offset>" (offset may be "inf") or a vertex id.
  Point parse_point(std::string_view text) const;

  // Same vertex ids, edge ids, endpoints and lengths.
  friend bool operator==(const Curve& a, const Curve& b);

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vertex_lookup_;
  std::unordered_map<std::string, int> edge_lookup_;
  std::vector<std::vector<EdgeEnd>> incident_;
  std::vector<bool> at_infinity_;
  int betti_ = 0;
};

using CurvePtr = std::shared_ptr<const Curve>;

CurvePtr make_curve(std::vector<std::string> vertices, std::vector<Edge> edges);

// Shortest-path distance; +inf when exactly one of the points (or two
// different ones) lies at infinity.
ExtRational distance(const Curve& c, const Point& x, const Point& y);

// One half-edge per direction at x; the list length is the valency.
std::vector<HalfEdge> half_edges(const Curve& c, const Point& x);

bool is_tree(const Curve& c);
// Valency-1 points, including points at infinity.
std::vector<Point> leaf_ends(const Curve& c);

// Ordering key used for printing: (edge id, offset) of locate().
bool print_order_less(const Curve& c, const Point& a, const Point& b);

/// A subdivision of a curve at finitely many points.
///
/// Every fine edge is an oriented sub-interval of one coarse edge. Coarse
/// vertices keep their ids; a cut at offset t of edge "e" becomes vertex
/// "e:k" and the pieces become "e.0", "e.1", ... in order of offset. Edges
/// without cuts keep their ids.
class Refinement {
 public:
  struct Piece {
    int coarse_edge = -1;
    Rational start;
    ExtRational length;
  };

  Refinement(CurvePtr coarse, std::span<const Point> cuts);
  // The trivial refinement.
  explicit Refinement(CurvePtr coarse);

  const CurvePtr& coarse() const { return coarse_; }
  const CurvePtr& fine() const { return fine_; }
  const Piece& piece(int fine_edge) const { return pieces_.at(fine_edge); }
  // Fine edges covering a coarse edge, in order of offset.
  const std::vector<int>& pieces_of(int coarse_edge) const { return by_coarse_.at(coarse_edge); }
  int fine_vertex(int coarse_vertex) const { return coarse_vertex; }

  Point to_fine(const Point& p) const;
  Point to_coarse(const Point& p) const;

 private:
  CurvePtr coarse_;
  CurvePtr fine_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<int>> by_coarse_;
  std::vector<Point> new_vertex_points_;  // coarse location of each cut vertex
};

struct GraftSpec {
  Point host;     // a finite point of the host curve
  CurvePtr tree;  // b1 = 0
  Point attach;   // point of `tree` identified with `host`
};

/// Result of grafting trees onto a curve.
///
/// The modified curve lists the refined host's vertices and edges first,
/// with the same indices as host.fine(). Tree k contributes vertices
/// "g<k>_<id>" and edges "g<k>_<id>" from its refinement at the attach point.
struct GraftResult {
  struct TreePart {
    Refinement tree;
    int attach_vertex = -1;  // vertex of tree.fine()
    int host_vertex = -1;    // vertex of the modified curve
    int vertex_offset = 0;
    int edge_offset = 0;
  };

  CurvePtr modified;
  Refinement host;
  std::vector<TreePart> trees;

  // Modified-curve index of vertex v / edge e of tree k's refinement.
  int tree_vertex(std::size_t k, int v) const;
  int tree_edge(std::size_t k, int e) const { return trees.at(k).edge_offset + e; }
  bool is_host_edge(int e) const { return e < host.fine()->edge_count(); }
};

GraftResult graft(const CurvePtr& c, std::span<const GraftSpec> specs);

}  // namespace tropgon
