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

#include "tropgon/linear_system.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropgon/equivalence.hpp"
#include "tropgon/error.hpp"

namespace tropgon {
namespace {

using Coords = std::vector<Rational>;

Representation represent(const PLFunction& f, std::span<const PLFunction> gens) {
  Representation out;
  for (const auto& g : gens) out.coeffs.emplace_back((f - g).min_value().value());
  out.exact = trop_combine(out.coeffs, gens) == f;
  return out;
}

Coords minus(const Coords& a, const Coords& b) {
  Coords out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// The lambda with b == lambda * a, if any (a nonzero).
std::optional<Rational> ratio(const Coords& a, const Coords& b) {
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) {
      if (b[i] != 0) return std::nullopt;
      continue;
    }
    Rational r = b[i] / a[i];
    if (lambda && *lambda != r) return std::nullopt;
    lambda = r;
  }
  return lambda;
}

// Parameters along [a, b] of the endpoints of its intersection with [c, d].
std::vector<Rational> shared_params(const Coords& a, const Coords& b, const Coords& c,
                                    const Coords& d) {
  const Coords d1 = minus(b, a);
  const Coords d2 = minus(d, c);
  const Coords ac = minus(c, a);
  if (ratio(d1, d2)) {
    const auto tc = ratio(d1, ac);
    if (!tc) return {};
    const Rational td = *tc + *ratio(d1, d2);
    const Rational lo = std::max(Rational(0), std::min(*tc, td));
    const Rational hi = std::min(Rational(1), std::max(*tc, td));
    if (lo > hi) return {};
    if (lo == hi) return {lo};
    return {lo, hi};
  }
  // t d1 - u d2 = ac: solve from two independent rows, then verify.
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const Rational det = -d1[i] * d2[j] + d2[i] * d1[j];
      if (det == 0) continue;
      const Rational t = (-ac[i] * d2[j] + d2[i] * ac[j]) / det;
      const Rational u = (d1[i] * ac[j] - ac[i] * d1[j]) / det;
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (t * d1[k] - u * d2[k] != ac[k]) return {};
      }
      if (t < 0 || t > 1 || u < 0 || u > 1) return {};
      return {t};
    }
  }
  return {};
}

Coords lerp(const Coords& a, const Coords& b, const Rational& t) {
  Coords out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + (b[i] - a[i]) * t;
  return out;
}

// Drops interior path nodes where the direction does not change.
std::vector<ProjPoint> corners(const std::vector<ProjPoint>& path) {
  std::vector<ProjPoint> out{path.front()};
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const Coords prev = out.back().finite_coords();
    const Coords here = path[i].finite_coords();
    const Coords next = path[i + 1].finite_coords();
    const auto lambda = ratio(minus(here, prev), minus(next, here));
    if (!lambda || *lambda <= 0) out.push_back(path[i]);
  }
  if (path.size() > 1) out.push_back(path.back());
  return out;
}

std::int64_t coefficient_with(const GenSystem& s, const std::vector<bool>& active, const Point& x) {
  std::int64_t total = s.base()(x);
  for (const auto& h : half_edges(*s.curve(), x)) {
    std::optional<std::int64_t> best;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!active[i]) continue;
      const std::int64_t slope = s.generators()[i].outgoing_slope(h);
      if (!best || slope > *best) best = slope;
    }
    total += *best;
  }
  return total;
}

}  // namespace

GenSystem::GenSystem(Divisor base, std::vector<PLFunction> generators)
    : base_(std::move(base)), generators_(std::move(generators)) {
  if (generators_.empty()) throw Error("a linear system needs at least one generator");
  if (!base_.curve()->is_compact()) throw Error("linear systems are supported on compact curves only");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const PLFunction& f = generators_[i];
    if (!same_curve(f.curve(), base_.curve())) throw Error("generator on a different curve");
    if (f.is_minus_infinity()) throw Error("generator " + std::to_string(i) + " is the constant -inf");
    if (!(base_ + principal_divisor(f)).is_effective()) {
      throw Error("generator " + std::to_string(i) + " is not in L(D)");
    }
  }
}

Representation maximal_representation(const PLFunction& f, const GenSystem& s) {
  if (!same_curve(f.curve(), s.curve())) throw Error("function and system live on different curves");
  return represent(f, s.generators());
}

GenSystem minimize_generators(const GenSystem& s) {
  std::vector<PLFunction> kept = s.generators();
  for (std::size_t i = 0; i < kept.size() && kept.size() > 1;) {
    std::vector<PLFunction> others;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j != i) others.push_back(kept[j]);
    }
    if (represent(kept[i], others).exact) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  for (auto& f : kept) f = f.shifted(-f.max_value().value());
  return GenSystem(s.base(), std::move(kept));
}

int algdim(const GenSystem& s) { return static_cast<int>(minimize_generators(s).size()) - 1; }

ProjPoint phi(const GenSystem& s, const Point& x) {
  std::vector<TropScalar> coords;
  for (const auto& f : s.generators()) {
    ExtRational v = f(x);
    coords.push_back(v.is_finite() ? TropScalar(v.value()) : TropScalar());
  }
  return ProjPoint(std::move(coords));
}

std::int64_t CellDecomposition::stretch(int fine_edge) const {
  const auto& v = slopes.at(fine_edge);
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

CellDecomposition cell_decomposition(const GenSystem& s, std::span<const Point> extra) {
  const Curve& c = *s.curve();
  std::vector<Point> cuts(extra.begin(), extra.end());
  for (const auto& p : s.base().support()) cuts.push_back(p);
  for (const auto& f : s.generators()) {
    for (int e = 0; e < c.edge_count(); ++e) {
      for (const auto& t : f.on_edge(e).breakpoints()) cuts.push_back(c.point(e, ExtRational(t)));
    }
  }
  Refinement r(s.curve(), cuts);
  std::vector<std::vector<std::int64_t>> slopes;
  for (int e = 0; e < r.fine()->edge_count(); ++e) {
    const auto& pc = r.piece(e);
    std::vector<std::int64_t> row;
    for (const auto& f : s.generators()) row.push_back(f.on_edge(pc.coarse_edge).slope_right(pc.start));
    slopes.push_back(std::move(row));
  }
  return {std::move(r), std::move(slopes)};
}

std::optional<int> ImageTree::vertex_at(const ProjPoint& p) const {
  for (std::size_t v = 0; v < coords.size(); ++v) {
    if (coords[v] == p) return static_cast<int>(v);
  }
  return std::nullopt;
}

ProjPoint ImageTree::coords_of(const Point& p) const {
  if (p.is_vertex()) return coords.at(p.vertex);
  const Edge& e = curve->edge(p.edge);
  return ProjPoint::from_finite(lerp(coords[e.from].finite_coords(), coords[e.to].finite_coords(),
                                     p.offset / e.length.value()));
}

std::optional<Point> ImageTree::locate(const ProjPoint& p) const {
  if (auto v = vertex_at(p)) return curve->vertex_point(*v);
  const Coords target = p.finite_coords();
  for (int e = 0; e < curve->edge_count(); ++e) {
    const Edge& edge = curve->edge(e);
    const Coords a = coords[edge.from].finite_coords();
    const auto t = ratio(minus(coords[edge.to].finite_coords(), a), minus(target, a));
    if (t && *t > 0 && *t < 1) return curve->point(e, ExtRational(Rational(*t * edge.length.value())));
  }
  return std::nullopt;
}

ImageTree refine(const ImageTree& t, std::span<const Point> cuts) {
  Refinement r(t.curve, cuts);
  ImageTree out{r.fine(), {}};
  for (int v = 0; v < r.fine()->vertex_count(); ++v) {
    out.coords.push_back(t.coords_of(r.to_coarse(r.fine()->vertex_point(v))));
  }
  return out;
}

ImageResult build_image_tree(const GenSystem& s) {
  const CellDecomposition cells = cell_decomposition(s);
  const Refinement& r = cells.refinement;
  const Curve& fine = *r.fine();
  std::vector<ProjPoint> at_vertex;
  for (int v = 0; v < fine.vertex_count(); ++v) {
    at_vertex.push_back(phi(s, r.to_coarse(fine.vertex_point(v))));
  }
  std::vector<std::pair<Coords, Coords>> segments;
  std::set<ProjPoint> nodes;
  for (int e = 0; e < fine.edge_count(); ++e) {
    const ProjPoint& a = at_vertex[fine.edge(e).from];
    const ProjPoint& b = at_vertex[fine.edge(e).to];
    nodes.insert(a);
    nodes.insert(b);
    if (a != b) segments.emplace_back(a.finite_coords(), b.finite_coords());
  }
  ImageResult out;
  if (segments.empty()) {
    out.geomdim = 0;
    out.diagnostic = "image of phi is the single point " + to_string(*nodes.begin()) + " (geomdim 0)";
    return out;
  }
  std::set<std::pair<ProjPoint, ProjPoint>> pieces;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& [a, b] = segments[i];
    std::set<Rational> params{Rational(0), Rational(1)};
    for (std::size_t j = 0; j < segments.size(); ++j) {
      if (j == i) continue;
      for (const auto& t : shared_params(a, b, segments[j].first, segments[j].second)) params.insert(t);
    }
    std::optional<ProjPoint> prev;
    for (const auto& t : params) {
      ProjPoint p = ProjPoint::from_finite(lerp(a, b, t));
      nodes.insert(p);
      if (prev) pieces.insert(std::minmax(*prev, p));
      prev = p;
    }
  }
  ImageTree tree;
  tree.coords.assign(nodes.begin(), nodes.end());
  std::map<ProjPoint, int> index;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < tree.coords.size(); ++v) {
    index[tree.coords[v]] = static_cast<int>(v);
    names.push_back("n" + std::to_string(v));
  }
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adjacent(nodes.size());
  for (const auto& [a, b] : pieces) {
    const int u = index[a], v = index[b];
    edges.push_back({"t" + std::to_string(edges.size()), u, v, ExtRational(proj_distance(a, b))});
    adjacent[u].push_back(v);
    adjacent[v].push_back(u);
  }
  out.geomdim = -1;
  if (edges.size() + 1 != nodes.size()) {
    out.diagnostic = "image of phi contains a cycle";
    return out;
  }
  tree.curve = make_curve(std::move(names), std::move(edges));

  std::vector<int> leaves;
  for (std::size_t v = 0; v < adjacent.size(); ++v) {
    if (adjacent[v].size() == 1) leaves.push_back(static_cast<int>(v));
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    std::vector<int> parent(nodes.size(), -1);
    std::vector<int> queue{leaves[i]};
    parent[leaves[i]] = leaves[i];
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (int w : adjacent[queue[k]]) {
        if (parent[w] < 0) {
          parent[w] = queue[k];
          queue.push_back(w);
        }
      }
    }
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      std::vector<ProjPoint> path;
      for (int v = leaves[j]; v != leaves[i]; v = parent[v]) path.push_back(tree.coords[v]);
      path.push_back(tree.coords[leaves[i]]);
      std::reverse(path.begin(), path.end());
      if (corners(path) != tropical_segment(path.front(), path.back())) {
        out.diagnostic = "image of phi is not tropically convex: the path from " + to_string(path.front()) +
                         " to " + to_string(path.back()) + " is not a tropical segment";
        return out;
      }
    }
  }
  out.geomdim = 1;
  out.tree = std::move(tree);
  return out;
}

Divisor divisor_at_image(const GenSystem& s, const ProjPoint& p) {
  if (p.size() != s.size()) throw Error("image point has the wrong dimension");
  std::vector<TropScalar> coeffs;
  for (const auto& c : p.coords()) {
    if (!c.is_finite()) throw Error("image point with -inf coordinates");
    coeffs.emplace_back(Rational(-c.value()));
  }
  return s.base() + principal_divisor(trop_combine(coeffs, s.generators()));
}

Divisor divisor_at(const GenSystem& s, const Point& x) { return divisor_at_image(s, phi(s, x)); }

std::int64_t divisor_coefficient(const GenSystem& s, const ProjPoint& p, const Point& x) {
  std::vector<Rational> gap;
  for (std::size_t i = 0; i < s.size(); ++i) gap.push_back(s.generators()[i](x).value() - p[i].value());
  const Rational best = *std::max_element(gap.begin(), gap.end());
  std::vector<bool> active(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) active[i] = gap[i] == best;
  return coefficient_with(s, active, x);
}

std::int64_t self_coefficient(const GenSystem& s, const Point& x) {
  return coefficient_with(s, std::vector<bool>(s.size(), true), x);
}

RankCertificate check_rank_one(const GenSystem& s) {
  const CellDecomposition cells = cell_decomposition(s);
  const Refinement& r = cells.refinement;
  const Curve& fine = *r.fine();
  RankCertificate cert;
  for (int v = 0; v < fine.vertex_count(); ++v) {
    const Point x = r.to_coarse(fine.vertex_point(v));
    ++cert.checked;
    const std::int64_t value = self_coefficient(s, x);
    if (value < 1) {
      cert.failing_point = x;
      cert.failing_value = value;
      return cert;
    }
  }
  for (int e = 0; e < fine.edge_count(); ++e) {
    ++cert.checked;
    const std::int64_t value = cells.stretch(e);
    if (value < 1) {
      const Rational half = fine.edge(e).length.value() / 2;
      cert.failing_point = r.to_coarse(fine.point(e, ExtRational(half)));
      cert.failing_value = value;
      return cert;
    }
  }
  cert.passed = true;
  return cert;
}

StarCheck check_star(const GenSystem& s) {
  StarCheck out{false, {}, minimize_generators(s), {}, {}};
  out.rank = check_rank_one(out.minimized);
  if (!out.rank.passed) {
    out.diagnostic = "rank test failed: D_x(x) = " + std::to_string(out.rank.failing_value) + " at " +
                     s.curve()->format_point(*out.rank.failing_point);
    return out;
  }
  out.image = build_image_tree(out.minimized);
  if (out.image.geomdim != 1) {
    out.diagnostic = out.image.diagnostic;
    return out;
  }
  out.passed = true;
  return out;
}

GenSystem tree_linear_system(const CurvePtr& tree, const Divisor& d) {
  const Curve& t = *tree;
  if (!is_tree(t)) throw Error("tree_linear_system needs a tree");
  if (!t.is_compact()) throw Error("tree_linear_system needs a compact tree");
  if (!same_curve(d.curve(), tree)) throw Error("divisor is not on the tree");
  if (d.degree() != 1) throw Error("tree_linear_system needs a divisor of degree 1");
  Point x0 = t.vertex_point(0);
  if (d.entries().size() == 1) x0 = d.entries().begin()->first;
  const auto eq = linearly_equivalent(d, Divisor::point(tree, x0));
  const PLFunction base_shift = *eq.witness;  // d = (x0) + div(base_shift)

  std::vector<PLFunction> gens{base_shift.negated()};
  for (const auto& y : leaf_ends(t)) {
    std::map<int, std::vector<Rational>> knots;
    for (const Point& p : {x0, y}) {
      if (!p.is_vertex()) knots[p.edge].push_back(p.offset);
    }
    const Rational reach = distance(t, x0, y).value();
    // -d(x0, proj_[x0,y](p)) as a Gromov product.
    auto value = [&](const Point& p) {
      return Rational(-(distance(t, x0, p).value() + reach - distance(t, p, y).value()) / 2);
    };
    gens.push_back(interpolate(tree, knots, value) - base_shift);
  }
  return minimize_generators(GenSystem(d, std::move(gens)));
}

GenSystem rebase(const GenSystem& s, const Divisor& new_base) {
  const auto eq = linearly_equivalent(new_base, s.base());
  if (!eq.equivalent) throw Error("new base divisor is not linearly equivalent to the old one");
  std::vector<PLFunction> gens;
  for (const auto& f : s.generators()) gens.push_back(f - *eq.witness);
  return GenSystem(new_base, std::move(gens));
}

bool same_system(const GenSystem& a, const GenSystem& b) {
  if (!same_curve(a.curve(), b.curve())) return false;
  if (!linearly_equivalent(b.base(), a.base()).equivalent) return false;
  const GenSystem moved = rebase(b, a.base());
  for (const auto& f : moved.generators()) {
    if (!represent(f, a.generators()).exact) return false;
  }
  for (const auto& f : a.generators()) {
    if (!represent(f, moved.generators()).exact) return false;
  }
  return true;
}

}  // namespace tropgon
