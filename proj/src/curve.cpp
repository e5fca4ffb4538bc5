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

#include "tropgon/curve.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "tropgon/error.hpp"

namespace tropgon {
namespace {

std::string unique_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += "'";
  return base;
}

}  // namespace

bool operator==(const Point& a, const Point& b) {
  if (a.vertex != b.vertex || a.edge != b.edge) return false;
  return a.is_vertex() || a.offset == b.offset;
}

bool operator<(const Point& a, const Point& b) {
  // Vertices sort before interior points.
  if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
  if (a.is_vertex()) return a.vertex < b.vertex;
  if (a.edge != b.edge) return a.edge < b.edge;
  return a.offset < b.offset;
}

CurveReport validate_curve(const std::vector<std::string>& vertices,
                           const std::vector<Edge>& edges) {
  CurveReport r;
  auto fail = [&r](std::string msg) {
    r.valid = false;
    r.errors.push_back(std::move(msg));
  };
  const int nv = static_cast<int>(vertices.size());
  std::set<std::string> seen;
  for (const auto& v : vertices) {
    if (v.empty()) fail("empty vertex id");
    if (!seen.insert(v).second) fail("duplicate vertex id " + v);
  }
  seen.clear();
  if (edges.empty()) fail("curve has no edges");
  std::vector<int> valency(nv, 0);
  for (const auto& e : edges) {
    if (e.id.empty()) fail("empty edge id");
    if (!seen.insert(e.id).second) fail("duplicate edge id " + e.id);
    if (e.from < 0 || e.from >= nv || e.to < 0 || e.to >= nv) {
      fail("edge " + e.id + " has an unknown endpoint");
      continue;
    }
    ++valency[e.from];
    ++valency[e.to];
    if (e.length.is_minus_infinity() ||
        (e.length.is_finite() && e.length.value() <= 0)) {
      fail("edge " + e.id + " has nonpositive length " + to_string(e.length));
    }
  }
  if (!r.valid) return r;

  for (const auto& e : edges) {
    if (!e.unbounded()) continue;
    if (e.from == e.to) {
      fail("unbounded edge " + e.id + " is a loop");
    } else if (valency[e.to] != 1) {
      fail("unbounded edge " + e.id + " ends at " + vertices[e.to] +
           " of valency " + std::to_string(valency[e.to]) + " (point at infinity needs valency 1)");
    }
  }
  for (const auto& e : edges) {
    if (!e.unbounded()) continue;
    for (const auto& f : edges) {
      if (f.unbounded() && f.to == e.from) {
        fail("unbounded edge " + e.id + " starts at a point at infinity");
      }
    }
  }

  std::vector<std::vector<int>> adj(nv);
  for (const auto& e : edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<bool> reached(nv, false);
  std::vector<int> stack{0};
  reached[0] = nv > 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!reached[w]) {
        reached[w] = true;
        stack.push_back(w);
      }
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (!reached[v]) {
      fail("curve is disconnected (vertex " + vertices[v] + " unreachable)");
      break;
    }
  }
  r.betti = static_cast<int>(edges.size()) - nv + 1;
  for (int v = 0; v < nv; ++v) {
    if (valency[v] == 1) r.leaf_ends.push_back(vertices[v]);
  }
  return r;
}

Curve::Curve(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  CurveReport report = validate_curve(vertices_, edges_);
  if (!report.valid) throw Error(report.errors.front());
  betti_ = report.betti;
  for (int v = 0; v < vertex_count(); ++v) vertex_lookup_.emplace(vertices_[v], v);
  incident_.assign(vertices_.size(), {});
  at_infinity_.assign(vertices_.size(), false);
  for (int e = 0; e < edge_count(); ++e) {
    edge_lookup_.emplace(edges_[e].id, e);
    incident_[edges_[e].from].push_back({e, true});
    incident_[edges_[e].to].push_back({e, false});
    if (edges_[e].unbounded()) at_infinity_[edges_[e].to] = true;
  }
}

CurvePtr make_curve(std::vector<std::string> vertices, std::vector<Edge> edges) {
  return std::make_shared<const Curve>(std::move(vertices), std::move(edges));
}

std::optional<int> Curve::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Curve::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

int Curve::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw Error("unknown vertex " + std::string(id));
}

int Curve::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw Error("unknown edge " + std::string(id));
}

bool Curve::is_compact() const {
  return std::none_of(edges_.begin(), edges_.end(),
                      [](const Edge& e) { return e.unbounded(); });
}

Point Curve::vertex_point(int v) const {
  if (v < 0 || v >= vertex_count()) throw Error("vertex index out of range");
  Point p;
  p.vertex = v;
  return p;
}

Point Curve::point(int e, const ExtRational& offset) const {
  if (e < 0 || e >= edge_count()) throw Error("edge index out of range");
  const Edge& ed = edges_[e];
  if (offset == ExtRational(0)) return vertex_point(ed.from);
  if (offset == ed.length) return vertex_point(ed.to);
  if (!offset.is_finite() || offset.value() < 0 || ExtRational(offset) > ed.length) {
    throw Error("offset " + to_string(offset) + " outside edge " + ed.id);
  }
  Point p;
  p.edge = e;
  p.offset = offset.value();
  return p;
}

std::pair<int, ExtRational> Curve::locate(const Point& p) const {
  if (!p.is_vertex()) return {p.edge, ExtRational(p.offset)};
  const EdgeEnd* best = nullptr;
  for (const auto& end : incident_.at(p.vertex)) {
    if (best == nullptr || edges_[end.edge].id < edges_[best->edge].id ||
        (end.edge == best->edge && end.at_from)) {
      best = &end;
    }
  }
  if (best->at_from) return {best->edge, ExtRational(0)};
  return {best->edge, edges_[best->edge].length};
}

int Curve::valency(const Point& p) const {
  return p.is_vertex() ? static_cast<int>(incident_.at(p.vertex).size()) : 2;
}

std::string Curve::format_point(const Point& p) const {
  auto [e, off] = locate(p);
  return edges_[e].id + "@" + to_string(off);
}

Point Curve::parse_point(std::string_view text) const {
  auto at = text.find('@');
  if (at == std::string_view::npos) {
    auto v = find_vertex(text);
    if (!v) throw ParseError("unknown point '" + std::string(text) + "'");
    return vertex_point(*v);
  }
  auto e = find_edge(text.substr(0, at));
  if (!e) throw ParseError("unknown edge in point '" + std::string(text) + "'");
  ExtRational off = parse_ext_rational(text.substr(at + 1));
  try {
    return point(*e, off);
  } catch (const Error& err) {
    throw ParseError(err.what());
  }
}

bool operator==(const Curve& a, const Curve& b) {
  if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.id != y.id || x.from != y.from || x.to != y.to || !(x.length == y.length)) return false;
  }
  return true;
}

ExtRational distance(const Curve& c, const Point& x, const Point& y) {
  if (x == y) return ExtRational(0);
  if (c.is_at_infinity(x) || c.is_at_infinity(y)) return ExtRational::plus_infinity();

  const int nv = c.vertex_count();
  std::vector<ExtRational> dist(nv, ExtRational::plus_infinity());
  using Item = std::pair<Rational, int>;
  auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
  auto seed = [&](int v, const ExtRational& d) {
    if (d.is_finite() && d < dist[v]) {
      dist[v] = d;
      queue.emplace(d.value(), v);
    }
  };
  if (x.is_vertex()) {
    seed(x.vertex, ExtRational(0));
  } else {
    const Edge& e = c.edge(x.edge);
    seed(e.from, ExtRational(x.offset));
    seed(e.to, e.length - ExtRational(x.offset));
  }
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (ExtRational(d) > dist[v]) continue;
    for (const auto& end : c.incident(v)) {
      const Edge& e = c.edge(end.edge);
      if (e.unbounded()) continue;
      int w = end.at_from ? e.to : e.from;
      seed(w, ExtRational(Rational(d + e.length.value())));
    }
  }
  if (y.is_vertex()) return dist[y.vertex];
  const Edge& e = c.edge(y.edge);
  ExtRational best = dist[e.from] + ExtRational(y.offset);
  if (!e.unbounded()) best = std::min(best, dist[e.to] + (e.length - ExtRational(y.offset)));
  if (!x.is_vertex() && x.edge == y.edge) {
    Rational direct = abs(x.offset - y.offset);
    best = std::min(best, ExtRational(direct));
  }
  return best;
}

std::vector<HalfEdge> half_edges(const Curve& c, const Point& x) {
  std::vector<HalfEdge> out;
  if (x.is_vertex()) {
    for (const auto& end : c.incident(x.vertex)) {
      out.push_back({x, end.edge, end.at_from, c.edge(end.edge).length});
    }
  } else {
    const Edge& e = c.edge(x.edge);
    out.push_back({x, x.edge, true, e.length - ExtRational(x.offset)});
    out.push_back({x, x.edge, false, ExtRational(x.offset)});
  }
  return out;
}

bool is_tree(const Curve& c) { return c.betti() == 0; }

std::vector<Point> leaf_ends(const Curve& c) {
  std::vector<Point> out;
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (c.incident(v).size() == 1) out.push_back(c.vertex_point(v));
  }
  return out;
}

bool print_order_less(const Curve& c, const Point& a, const Point& b) {
  auto [ea, oa] = c.locate(a);
  auto [eb, ob] = c.locate(b);
  const std::string& ia = c.edge(ea).id;
  const std::string& ib = c.edge(eb).id;
  if (ia != ib) return ia < ib;
  return oa < ob;
}

Refinement::Refinement(CurvePtr coarse) : Refinement(std::move(coarse), {}) {}

Refinement::Refinement(CurvePtr coarse, std::span<const Point> cuts)
    : coarse_(std::move(coarse)) {
  const Curve& c = *coarse_;
  std::vector<std::vector<Rational>> cut_offsets(c.edge_count());
  for (const auto& p : cuts) {
    if (!p.is_vertex()) cut_offsets.at(p.edge).push_back(p.offset);
  }
  std::set<std::string> vertex_names(c.vertex_ids().begin(), c.vertex_ids().end());
  std::set<std::string> edge_names;
  for (const auto& e : c.edges()) edge_names.insert(e.id);

  std::vector<std::string> vertices = c.vertex_ids();
  std::vector<Edge> edges;
  by_coarse_.assign(c.edge_count(), {});
  for (int e = 0; e < c.edge_count(); ++e) {
    auto& offs = cut_offsets[e];
    std::sort(offs.begin(), offs.end());
    offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
    const Edge& ce = c.edge(e);
    if (offs.empty()) {
      by_coarse_[e].push_back(static_cast<int>(edges.size()));
      edges.push_back(ce);
      pieces_.push_back({e, Rational(0), ce.length});
      continue;
    }
    int prev = ce.from;
    Rational prev_off = 0;
    for (std::size_t k = 0; k <= offs.size(); ++k) {
      int next;
      ExtRational len;
      if (k < offs.size()) {
        std::string name = unique_name(ce.id + ":" + std::to_string(k + 1), vertex_names);
        vertex_names.insert(name);
        next = static_cast<int>(vertices.size());
        vertices.push_back(name);
        Point cp;
        cp.edge = e;
        cp.offset = offs[k];
        new_vertex_points_.push_back(cp);
        len = ExtRational(Rational(offs[k] - prev_off));
      } else {
        next = ce.to;
        len = ce.length - ExtRational(prev_off);
      }
      std::string ename = unique_name(ce.id + "." + std::to_string(k), edge_names);
      edge_names.insert(ename);
      by_coarse_[e].push_back(static_cast<int>(edges.size()));
      edges.push_back({ename, prev, next, len});
      pieces_.push_back({e, prev_off, len});
      prev = next;
      if (k < offs.size()) prev_off = offs[k];
    }
  }
  fine_ = make_curve(std::move(vertices), std::move(edges));
}

Point Refinement::to_fine(const Point& p) const {
  if (p.is_vertex()) return fine_->vertex_point(p.vertex);
  for (int fe : by_coarse_.at(p.edge)) {
    const Piece& pc = pieces_[fe];
    ExtRational rel = ExtRational(Rational(p.offset - pc.start));
    if (rel < ExtRational(0)) continue;
    if (rel <= pc.length) return fine_->point(fe, rel);
  }
  throw Error("point outside refined edge");
}

Point Refinement::to_coarse(const Point& p) const {
  if (p.is_vertex()) {
    if (p.vertex < coarse_->vertex_count()) return coarse_->vertex_point(p.vertex);
    return new_vertex_points_.at(p.vertex - coarse_->vertex_count());
  }
  const Piece& pc = pieces_.at(p.edge);
  return coarse_->point(pc.coarse_edge, ExtRational(Rational(pc.start + p.offset)));
}

int GraftResult::tree_vertex(std::size_t k, int v) const {
  const TreePart& t = trees.at(k);
  if (v == t.attach_vertex) return t.host_vertex;
  return t.vertex_offset + (v < t.attach_vertex ? v : v - 1);
}

GraftResult graft(const CurvePtr& c, std::span<const GraftSpec> specs) {
  std::vector<Point> hosts;
  for (const auto& s : specs) {
    if (c->is_at_infinity(s.host)) throw Error("cannot graft at a point at infinity");
    if (!s.tree || !is_tree(*s.tree)) throw Error("grafted curve is not a tree");
    hosts.push_back(s.host);
  }
  GraftResult out{nullptr, Refinement(c, hosts), {}};
  const Curve& host = *out.host.fine();
  std::vector<std::string> vertices = host.vertex_ids();
  std::vector<Edge> edges = host.edges();
  std::set<std::string> vnames(vertices.begin(), vertices.end());
  std::set<std::string> enames;
  for (const auto& e : edges) enames.insert(e.id);

  for (std::size_t k = 0; k < specs.size(); ++k) {
    const Point at = specs[k].attach;
    GraftResult::TreePart part{Refinement(specs[k].tree, std::span<const Point>(&at, 1)), -1, -1, 0,
                               0};
    const Curve& t = *part.tree.fine();
    Point fine_attach = part.tree.to_fine(at);
    part.attach_vertex = fine_attach.vertex;
    if (t.is_at_infinity(part.attach_vertex)) throw Error("tree attach point is at infinity");
    part.host_vertex = out.host.to_fine(specs[k].host).vertex;
    part.vertex_offset = static_cast<int>(vertices.size());
    part.edge_offset = static_cast<int>(edges.size());
    const std::string prefix = "g" + std::to_string(k) + "_";
    for (int v = 0; v < t.vertex_count(); ++v) {
      if (v == part.attach_vertex) continue;
      std::string name = unique_name(prefix + t.vertex_id(v), vnames);
      vnames.insert(name);
      vertices.push_back(name);
    }
    out.trees.push_back(std::move(part));
    for (int e = 0; e < t.edge_count(); ++e) {
      const Edge& te = t.edge(e);
      std::string name = unique_name(prefix + te.id, enames);
      enames.insert(name);
      edges.push_back({name, out.tree_vertex(k, te.from), out.tree_vertex(k, te.to), te.length});
    }
  }
  out.modified = make_curve(std::move(vertices), std::move(edges));
  return out;
}

}  // namespace tropgon
