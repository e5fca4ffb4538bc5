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

#include "tropgon/gonality.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tropgon/error.hpp"

namespace tropgon {
namespace {

using Coords = std::vector<Rational>;

// lambda with y = a + lambda (b - a), if y lies on the line through a, b.
std::optional<Rational> line_parameter(const Coords& a, const Coords& b, const Coords& y) {
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational d = b[i] - a[i];
    const Rational w = y[i] - a[i];
    if (d == 0) {
      if (w != 0) return std::nullopt;
      continue;
    }
    const Rational r = w / d;
    if (lambda && *lambda != r) return std::nullopt;
    lambda = r;
  }
  return lambda;
}

const GenSystem& require_star(const StarCheck& st) {
  if (!st.passed) throw Error(st.diagnostic);
  return st.minimized;
}

std::vector<Indeterminacy> indeterminacy_of(const GenSystem& m, const ImageTree& t) {
  std::map<Point, std::int64_t> found;
  std::map<Point, Divisor> at_point;
  for (const auto& y : t.coords) {
    const Divisor dy = divisor_at_image(m, y);
    for (const auto& [p, c] : dy.entries()) {
      if (c <= 0 || found.count(p)) continue;
      auto it = at_point.find(p);
      if (it == at_point.end()) it = at_point.emplace(p, divisor_at(m, p)).first;
      if (!(it->second == dy)) found[p] = it->second(p);
    }
  }
  std::vector<Indeterminacy> out;
  for (const auto& [p, k] : found) out.push_back({p, k});
  return out;
}

// Points of the tree edges where the set of maximizers of f_i(p) - Y_i
// changes as Y runs along the edge.
std::vector<Point> level_cuts(const GenSystem& m, const ImageTree& t, const Point& p) {
  std::vector<Rational> at_p;
  for (const auto& f : m.generators()) at_p.push_back(f(p).value());
  std::vector<Point> out;
  const Curve& c = *t.curve;
  for (int e = 0; e < c.edge_count(); ++e) {
    const Coords a = t.coords[c.edge(e).from].finite_coords();
    const Coords b = t.coords[c.edge(e).to].finite_coords();
    const std::size_t n = a.size();
    std::vector<Rational> g0(n), slope(n);
    for (std::size_t i = 0; i < n; ++i) {
      g0[i] = at_p[i] - a[i];
      slope[i] = a[i] - b[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (slope[i] == slope[j]) continue;
        const Rational s = (g0[j] - g0[i]) / (slope[i] - slope[j]);
        if (s <= 0 || s >= 1) continue;
        Rational best = g0[0] + s * slope[0];
        for (std::size_t k = 1; k < n; ++k) best = std::max(best, Rational(g0[k] + s * slope[k]));
        if (g0[i] + s * slope[i] == best) out.push_back(c.point(e, ExtRational(Rational(s * c.edge(e).length.value()))));
      }
    }
  }
  return out;
}

// The connected union of closed edges with D_Y(p) >= n around the vertex at
// phi(p), as a curve keeping the tree's ids.
GraftTree level_tree(const GenSystem& m, const ImageTree& t, const Point& p, std::int64_t n) {
  const Curve& c = *t.curve;
  const auto root = t.vertex_at(phi(m, p));
  if (!root) throw std::logic_error("image of an indeterminacy point is not a tree vertex");
  std::vector<bool> keep(c.edge_count());
  for (int e = 0; e < c.edge_count(); ++e) {
    const ProjPoint mid = t.coords_of(c.point(e, ExtRational(Rational(c.edge(e).length.value() / 2))));
    keep[e] = divisor_coefficient(m, mid, p) >= n;
  }
  std::vector<int> seen_vertex(c.vertex_count(), 0);
  std::vector<bool> seen_edge(c.edge_count());
  std::vector<int> queue{*root};
  seen_vertex[*root] = 1;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& end : c.incident(queue[k])) {
      if (!keep[end.edge] || seen_edge[end.edge]) continue;
      seen_edge[end.edge] = true;
      const Edge& edge = c.edge(end.edge);
      const int other = end.at_from ? edge.to : edge.from;
      if (!seen_vertex[other]) {
        seen_vertex[other] = 1;
        queue.push_back(other);
      }
    }
  }
  GraftTree out{p, n, nullptr, {}};
  if (queue.size() == 1) return out;
  std::vector<int> index(c.vertex_count(), -1);
  std::vector<std::string> names;
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (!seen_vertex[v]) continue;
    index[v] = static_cast<int>(names.size());
    names.push_back(c.vertex_id(v));
  }
  std::vector<Edge> edges;
  for (int e = 0; e < c.edge_count(); ++e) {
    if (!seen_edge[e]) continue;
    const Edge& edge = c.edge(e);
    edges.push_back({edge.id, index[edge.from], index[edge.to], edge.length});
  }
  out.tree = make_curve(std::move(names), std::move(edges));
  out.attach = out.tree->vertex_point(index[*root]);
  return out;
}

std::string rooted_form(const std::vector<std::vector<std::pair<int, Rational>>>& adj, int v, int parent) {
  std::vector<std::string> parts;
  for (const auto& [w, len] : adj[v]) {
    if (w == parent) continue;
    parts.push_back(to_string(len) + rooted_form(adj, w, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& s : parts) out += s;
  return out + ")";
}

}  // namespace

std::vector<Indeterminacy> indeterminacy_set(const GenSystem& s) {
  const StarCheck st = check_star(s);
  return indeterminacy_of(require_star(st), *st.image.tree);
}

ImageMap image_map(const GenSystem& s, const ImageTree& tree, std::span<const Point> extra) {
  const CellDecomposition cells = cell_decomposition(s, extra);
  const Refinement& cellr = cells.refinement;
  const Curve& cf = *cellr.fine();
  std::vector<Point> cuts;
  for (int v = 0; v < cf.vertex_count(); ++v) cuts.push_back(cellr.to_coarse(cf.vertex_point(v)));
  for (int e = 0; e < cf.edge_count(); ++e) {
    const Edge& edge = cf.edge(e);
    const Coords a = phi(s, cellr.to_coarse(cf.vertex_point(edge.from))).finite_coords();
    const Coords b = phi(s, cellr.to_coarse(cf.vertex_point(edge.to))).finite_coords();
    for (const auto& y : tree.coords) {
      const auto lambda = line_parameter(a, b, y.finite_coords());
      if (lambda && *lambda > 0 && *lambda < 1) {
        cuts.push_back(cellr.to_coarse(cf.point(e, ExtRational(Rational(*lambda * edge.length.value())))));
      }
    }
  }
  Refinement r(s.curve(), cuts);
  const Curve& fine = *r.fine();
  const Curve& tc = *tree.curve;
  std::vector<EdgeMap> maps;
  for (int e = 0; e < fine.edge_count(); ++e) {
    const Edge& edge = fine.edge(e);
    const auto vp = tree.vertex_at(phi(s, r.to_coarse(fine.vertex_point(edge.from))));
    const auto vq = tree.vertex_at(phi(s, r.to_coarse(fine.vertex_point(edge.to))));
    if (!vp || !vq) throw std::logic_error("cell endpoint does not map to a tree vertex");
    if (*vp == *vq) throw std::logic_error("cell " + edge.id + " is contracted");
    int te = -1;
    for (int k = 0; k < tc.edge_count(); ++k) {
      const Edge& t = tc.edge(k);
      if ((t.from == *vp && t.to == *vq) || (t.from == *vq && t.to == *vp)) te = k;
    }
    if (te < 0) throw std::logic_error("cell " + edge.id + " does not cover a single tree edge");
    const Rational ratio = tc.edge(te).length.value() / edge.length.value();
    const std::int64_t k = to_integer(ratio);
    if (tc.edge(te).from == *vp) {
      maps.push_back({te, 0, k});
    } else {
      maps.push_back({te, tc.edge(te).length.value(), -k});
    }
  }
  Morphism m(r.fine(), tree.curve, std::move(maps));
  return {std::move(r), std::move(m)};
}

GraftPlan build_graft_trees(const GenSystem& s) {
  const StarCheck st = check_star(s);
  const GenSystem& m = require_star(st);
  const ImageTree& t = *st.image.tree;
  GraftPlan plan{m, t, indeterminacy_of(m, t), {}};
  std::vector<Point> cuts;
  for (const auto& ind : plan.indeterminacy) {
    const auto at = t.locate(phi(m, ind.point));
    if (!at) throw std::logic_error("indeterminacy point maps outside the image tree");
    cuts.push_back(*at);
    for (const auto& c : level_cuts(m, t, ind.point)) cuts.push_back(c);
  }
  plan.target = refine(t, cuts);
  for (const auto& ind : plan.indeterminacy) {
    for (std::int64_t n = 1; n <= ind.multiplicity; ++n) {
      plan.trees.push_back(level_tree(m, plan.target, ind.point, n));
    }
  }
  return plan;
}

Witness construct_witness(const GenSystem& s) {
  GraftPlan plan = build_graft_trees(s);
  const GenSystem& m = plan.minimized;
  std::vector<Point> hosts;
  for (const auto& ind : plan.indeterminacy) hosts.push_back(ind.point);
  ImageMap im = image_map(m, plan.target, hosts);
  const Refinement& r = im.refinement;

  std::vector<GraftSpec> specs;
  std::vector<const GraftTree*> grafted;
  Certificate cert;
  cert.indeterminacy = plan.indeterminacy;
  for (const auto& gt : plan.trees) {
    if (!gt.tree) {
      ++cert.singletons;
      continue;
    }
    specs.push_back({r.to_fine(gt.host), gt.tree, gt.attach});
    grafted.push_back(&gt);
    cert.graft_lengths.push_back(total_length(*gt.tree));
  }
  const GraftResult g = graft(r.fine(), specs);
  Morphism pi = coarsen_target(retraction_of(r.fine(), g), r);

  const Curve& target = *plan.target.curve;
  std::vector<EdgeMap> maps;
  const Curve& host = *g.host.fine();
  for (int e = 0; e < host.edge_count(); ++e) {
    const auto& piece = g.host.piece(e);
    const EdgeMap& em = im.map.map(piece.coarse_edge);
    maps.push_back({em.target_edge, Rational(em.offset + em.slope * piece.start), em.slope});
  }
  for (std::size_t k = 0; k < g.trees.size(); ++k) {
    const Refinement& tr = g.trees[k].tree;
    for (int e = 0; e < tr.fine()->edge_count(); ++e) {
      const auto& piece = tr.piece(e);
      const int te = target.edge_index(tr.coarse()->edge(piece.coarse_edge).id);
      if (g.tree_edge(k, e) != static_cast<int>(maps.size())) throw std::logic_error("graft edge order");
      maps.push_back({te, piece.start, 1});
    }
  }
  Morphism map(g.modified, plan.target.curve, std::move(maps));

  const Verification v = verify_finite_harmonic(map);
  if (!v.passed) throw Error("witness check failed: " + v.failure);
  if (v.degree != s.degree()) {
    throw Error("witness check failed: degree " + std::to_string(v.degree) + " but the system has degree " +
                std::to_string(s.degree()));
  }
  for (const auto& ind : plan.indeterminacy) {
    const Point at = g.host.to_fine(r.to_fine(ind.point));
    const LocalDegree ld = local_degree(map, at);
    if (ld.degree != ind.multiplicity) {
      throw Error("witness check failed: local degree at " + s.curve()->format_point(ind.point) + " is not " +
                  std::to_string(ind.multiplicity));
    }
  }
  if (global_degree(pi) != 1) throw Error("witness check failed: retraction does not have degree 1");
  cert.degree = v.degree;
  cert.checkpoints = v.local;
  Modification mod{s.curve(), g.modified, std::move(pi)};
  return {std::move(mod), std::move(plan.target), std::move(map), std::move(cert)};
}

GenSystem system_from_witness(const Modification& mod, const Morphism& map, const Divisor& d) {
  if (!same_curve(mod.modified, map.source())) throw Error("witness map does not start on the modified curve");
  if (!same_curve(mod.retraction.source(), mod.modified) || !same_curve(mod.retraction.target(), mod.original)) {
    throw Error("retraction does not match the modification");
  }
  if (!is_tree(*map.target())) throw Error("witness target is not a tree");
  if (!same_curve(d.curve(), map.target())) throw Error("divisor is not on the witness target");
  if (d.degree() != 1) throw Error("the divisor on the target tree must have degree 1");
  const Verification v = verify_finite_harmonic(map);
  if (!v.passed) throw Error("witness map: " + v.failure);
  if (global_degree(mod.retraction) != 1) throw Error("retraction does not have degree 1");
  if (mod.modified->betti() != mod.original->betti()) throw Error("modification changes the first Betti number");

  const Morphism& pi = mod.retraction;
  const Divisor base = push_divisor(pi, pull_divisor(map, d));
  std::vector<PLFunction> gens;
  const GenSystem complete = tree_linear_system(map.target(), d);
  for (const auto& f : complete.generators()) {
    gens.push_back(push_function(pi, pull_function(map, f)));
  }
  GenSystem out = minimize_generators(GenSystem(base, std::move(gens)));
  const StarCheck st = check_star(out);
  if (!st.passed) throw std::logic_error("system from witness fails rank = geomdim = 1: " + st.diagnostic);
  if (out.degree() != v.degree) throw std::logic_error("system from witness has the wrong degree");
  return out;
}

Rational total_length(const Curve& c) {
  Rational total = 0;
  for (const auto& e : c.edges()) total += e.length.value();
  return total;
}

std::string tree_canonical_form(const Curve& tree) {
  if (!is_tree(tree) || !tree.is_compact()) throw Error("canonical forms need a compact tree");
  const int n = tree.vertex_count();
  std::vector<std::vector<std::pair<int, Rational>>> raw(n);
  for (const auto& e : tree.edges()) {
    raw[e.from].emplace_back(e.to, e.length.value());
    raw[e.to].emplace_back(e.from, e.length.value());
  }
  std::vector<std::vector<std::pair<int, Rational>>> adj(n);
  std::vector<int> kept;
  for (int v = 0; v < n; ++v) {
    if (raw[v].size() == 2) continue;
    kept.push_back(v);
    for (auto [w, len] : raw[v]) {
      int prev = v;
      while (raw[w].size() == 2) {
        const auto& next = raw[w][0].first == prev ? raw[w][1] : raw[w][0];
        len += next.second;
        prev = w;
        w = next.first;
      }
      adj[v].emplace_back(w, len);
    }
  }
  std::string best;
  for (int root : kept) {
    std::string form = rooted_form(adj, root, -1);
    if (best.empty() || form < best) best = std::move(form);
  }
  return best;
}

bool isometric_trees(const Curve& a, const Curve& b) { return tree_canonical_form(a) == tree_canonical_form(b); }

RoundTrip roundtrip_system(const GenSystem& s) {
  const Witness w = construct_witness(s);
  const Divisor d = Divisor::point(w.target.curve, w.target.curve->vertex_point(0));
  const GenSystem back = system_from_witness(w.modification, w.map, d);
  RoundTrip out;
  out.degree = w.certificate.degree;
  out.passed = same_system(s, back);
  out.report = "degree " + std::to_string(out.degree) + "\n" + (out.passed ? "systems equivalent" : "systems differ");
  return out;
}

RoundTrip roundtrip_witness(const Modification& mod, const Morphism& map) {
  const Divisor d = Divisor::point(map.target(), map.target()->vertex_point(0));
  const GenSystem s = system_from_witness(mod, map, d);
  const Witness w = construct_witness(s);
  RoundTrip out;
  out.degree = global_degree(map);
  const bool same_degree = w.certificate.degree == out.degree;
  const bool same_tree = isometric_trees(*map.target(), *w.target.curve);
  out.passed = same_degree && same_tree;
  out.report = "degree " + std::to_string(out.degree) + " -> " + std::to_string(w.certificate.degree) + "\n" +
               (same_tree ? "target trees isometric" : "target trees differ") + "\n" +
               (out.passed ? "witnesses equivalent" : "witnesses differ");
  return out;
}

std::string to_string(const Certificate& c, const Curve& original, const Curve& modified) {
  std::ostringstream os;
  os << "degree " << c.degree << "\n";
  for (const auto& ind : c.indeterminacy) {
    os << "indeterminacy " << original.format_point(ind.point) << " multiplicity " << ind.multiplicity << "\n";
  }
  for (const auto& len : c.graft_lengths) os << "graft length " << to_string(len) << "\n";
  os << "singletons " << c.singletons << "\n";
  for (const auto& [x, k] : c.checkpoints) os << "harmonic " << modified.format_point(x) << " degree " << k << "\n";
  return os.str();
}

}  // namespace tropgon
