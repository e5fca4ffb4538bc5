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

#include "tropgon/harmonic.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "tropgon/error.hpp"

namespace tropgon {
namespace {

std::string describe(const Curve& c, const HalfEdge& h) {
  return c.format_point(h.base) + " along " + c.edge(h.edge).id + (h.forward ? " (increasing)" : " (decreasing)");
}

// Target point reached from one end of a source edge.
Point end_image(const Curve& source, const Curve& target, int e, const EdgeMap& m, bool at_from) {
  const Edge& edge = source.edge(e);
  if (at_from || m.slope == 0) return target.point(m.target_edge, ExtRational(m.offset));
  if (edge.unbounded()) return target.point(m.target_edge, ExtRational::plus_infinity());
  return target.point(m.target_edge, ExtRational(Rational(m.offset + m.slope * edge.length.value())));
}

void check_maps(const Curve& source, const Curve& target, const std::vector<EdgeMap>& maps) {
  if (static_cast<int>(maps.size()) != source.edge_count()) throw Error("morphism needs one map per source edge");
  for (int e = 0; e < source.edge_count(); ++e) {
    const Edge& edge = source.edge(e);
    const EdgeMap& m = maps[e];
    if (m.target_edge < 0 || m.target_edge >= target.edge_count()) {
      throw Error("edge " + edge.id + " maps to a nonexistent target edge");
    }
    const Edge& te = target.edge(m.target_edge);
    auto inside = [&](const ExtRational& t) { return ExtRational(0) <= t && t <= te.length; };
    if (!inside(ExtRational(m.offset))) {
      throw Error("edge " + edge.id + " starts outside target edge " + te.id);
    }
    if (edge.unbounded()) {
      if (m.slope < 0 || (m.slope > 0 && !te.unbounded())) {
        throw Error("unbounded edge " + edge.id + " must run out along an unbounded target edge");
      }
      continue;
    }
    if (!inside(ExtRational(Rational(m.offset + m.slope * edge.length.value())))) {
      throw Error("edge " + edge.id + " leaves target edge " + te.id);
    }
  }
  for (int v = 0; v < source.vertex_count(); ++v) {
    std::optional<Point> image;
    for (const auto& end : source.incident(v)) {
      const Point p = end_image(source, target, end.edge, maps[end.edge], end.at_from);
      if (image && !(*image == p)) {
        throw Error("morphism is discontinuous at vertex " + source.vertex_id(v) + ": " + target.format_point(*image) +
                    " vs " + target.format_point(p));
      }
      image = p;
    }
  }
}

std::int64_t abs64(std::int64_t k) { return k < 0 ? -k : k; }

// Image interval [lo, hi] of a non-contracted source edge on its target edge.
std::pair<Rational, ExtRational> image_interval(const Curve& source, int e, const EdgeMap& m) {
  const Edge& edge = source.edge(e);
  if (edge.unbounded()) return {m.offset, ExtRational::plus_infinity()};
  const Rational end = m.offset + m.slope * edge.length.value();
  if (m.slope > 0) return {m.offset, ExtRational(end)};
  return {end, ExtRational(m.offset)};
}

void require_compact(const Morphism& m) {
  if (!m.source()->is_compact() || !m.target()->is_compact()) {
    throw Error("pushing and pulling functions needs compact curves");
  }
}

}  // namespace

Morphism::Morphism(CurvePtr source, CurvePtr target, std::vector<EdgeMap> maps)
    : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
  check_maps(*source_, *target_, maps_);
}

Point Morphism::operator()(const Point& x) const {
  if (x.is_vertex()) {
    const EdgeEnd& end = source_->incident(x.vertex).front();
    return end_image(*source_, *target_, end.edge, maps_[end.edge], end.at_from);
  }
  const EdgeMap& m = maps_[x.edge];
  return target_->point(m.target_edge, ExtRational(Rational(m.offset + m.slope * x.offset)));
}

std::optional<HalfEdge> Morphism::image(const HalfEdge& h) const {
  const EdgeMap& m = maps_.at(h.edge);
  if (m.slope == 0) return std::nullopt;
  return HalfEdge{(*this)(h.base), m.target_edge, (m.slope > 0) == h.forward, ExtRational(0)};
}

std::int64_t Morphism::degree(const HalfEdge& h) const { return abs64(maps_.at(h.edge).slope); }

Morphism refinement_map(const Refinement& r) {
  std::vector<EdgeMap> maps;
  for (int e = 0; e < r.fine()->edge_count(); ++e) maps.push_back({r.piece(e).coarse_edge, r.piece(e).start, 1});
  return Morphism(r.fine(), r.coarse(), std::move(maps));
}

Morphism coarsen_target(const Morphism& m, const Refinement& r) {
  if (!same_curve(m.target(), r.fine())) throw Error("morphism does not land on the refined curve");
  std::vector<EdgeMap> maps;
  for (const auto& em : m.maps()) {
    const auto& piece = r.piece(em.target_edge);
    maps.push_back({piece.coarse_edge, Rational(piece.start + em.offset), em.slope});
  }
  return Morphism(m.source(), r.coarse(), std::move(maps));
}

MorphismReport validate_morphism(const CurvePtr& source, const CurvePtr& target, const std::vector<EdgeMap>& maps) {
  MorphismReport r;
  try {
    check_maps(*source, *target, maps);
  } catch (const Error& e) {
    r.error = e.what();
    return r;
  }
  r.is_morphism = true;
  r.is_finite = std::none_of(maps.begin(), maps.end(), [](const EdgeMap& m) { return m.slope == 0; });
  if (!r.is_finite) {
    for (std::size_t e = 0; e < maps.size(); ++e) {
      if (maps[e].slope == 0) {
        r.error = "not finite: edge " + source->edge(static_cast<int>(e)).id + " is contracted";
        break;
      }
    }
  }
  return r;
}

MorphismReport validate_morphism(const Morphism& m) { return validate_morphism(m.source(), m.target(), m.maps()); }

LocalDegree local_degree(const Morphism& m, const Point& x) {
  const Curve& target = *m.target();
  LocalDegree out;
  for (const auto& h : half_edges(target, m(x))) out.sums.emplace_back(h, 0);
  for (const auto& h : half_edges(*m.source(), x)) {
    const auto img = m.image(h);
    if (!img) continue;
    auto it = std::find_if(out.sums.begin(), out.sums.end(), [&](const auto& s) { return s.first == *img; });
    if (it == out.sums.end()) throw std::logic_error("image half-edge not found at the image point");
    it->second += m.degree(h);
  }
  for (std::size_t i = 1; i < out.sums.size(); ++i) {
    if (out.sums[i].second != out.sums[0].second) {
      out.failure = "not harmonic at " + m.source()->format_point(x) + ": " + describe(target, out.sums[0].first) +
                    " receives " + std::to_string(out.sums[0].second) + " but " +
                    describe(target, out.sums[i].first) + " receives " + std::to_string(out.sums[i].second);
      return out;
    }
  }
  out.degree = out.sums.empty() ? 0 : out.sums[0].second;
  return out;
}

std::vector<Point> harmonic_checkpoints(const Morphism& m) {
  const Curve& c = *m.source();
  std::vector<Point> out;
  for (int v = 0; v < c.vertex_count(); ++v) out.push_back(c.vertex_point(v));
  for (int e = 0; e < c.edge_count(); ++e) {
    const Edge& edge = c.edge(e);
    out.push_back(c.point(e, edge.unbounded() ? ExtRational(1) : ExtRational(Rational(edge.length.value() / 2))));
  }
  return out;
}

std::int64_t global_degree(const Morphism& m) {
  for (const auto& x : harmonic_checkpoints(m)) {
    const LocalDegree ld = local_degree(m, x);
    if (!ld.degree) throw Error(ld.failure);
  }
  const Curve& source = *m.source();
  const Curve& target = *m.target();
  std::optional<std::int64_t> common;
  int witness_edge = -1;
  for (int te = 0; te < target.edge_count(); ++te) {
    const Edge& tedge = target.edge(te);
    std::set<Rational> marks{Rational(0)};
    if (!tedge.unbounded()) marks.insert(tedge.length.value());
    for (int v = 0; v < source.vertex_count(); ++v) {
      const Point y = m(source.vertex_point(v));
      if (!y.is_vertex() && y.edge == te) marks.insert(y.offset);
    }
    const Rational probe = marks.size() > 1 ? Rational((*marks.begin() + *std::next(marks.begin())) / 2)
                                            : Rational(*marks.begin() + 1);
    std::int64_t count = 0;
    for (int e = 0; e < source.edge_count(); ++e) {
      const EdgeMap& em = m.map(e);
      if (em.target_edge != te || em.slope == 0) continue;
      const auto [lo, hi] = image_interval(source, e, em);
      if (lo < probe && ExtRational(probe) < hi) count += abs64(em.slope);
    }
    if (common && *common != count) {
      throw Error("degree is not constant: " + target.edge(witness_edge).id + " has " + std::to_string(*common) +
                  " preimages, " + tedge.id + " has " + std::to_string(count));
    }
    common = count;
    witness_edge = te;
  }
  return common.value_or(0);
}

PLFunction push_function(const Morphism& m, const PLFunction& f) {
  require_compact(m);
  if (!same_curve(f.curve(), m.source())) throw Error("function is not on the source curve");
  global_degree(m);
  if (f.is_minus_infinity()) return PLFunction::minus_infinity(m.target());
  const Curve& source = *m.source();
  const Curve& target = *m.target();
  struct Part {
    Rational lo, hi;
    EdgeFunction g;
  };
  std::vector<std::vector<Part>> parts(target.edge_count());
  for (int e = 0; e < source.edge_count(); ++e) {
    const EdgeMap& em = m.map(e);
    if (em.slope == 0) continue;
    const auto [lo, hi] = image_interval(source, e, em);
    const EdgeFunction& h = f.on_edge(e);
    parts[em.target_edge].push_back({lo, hi.value(), (em.slope < 0 ? h.reversed() : h).stretched(abs64(em.slope))});
  }
  std::vector<EdgeFunction> out;
  for (int te = 0; te < target.edge_count(); ++te) {
    const Rational length = target.edge(te).length.value();
    std::set<Rational> marks{Rational(0), length};
    for (const auto& p : parts[te]) {
      marks.insert(p.lo);
      marks.insert(p.hi);
    }
    std::optional<Rational> start;
    ExtRational last;
    std::vector<EdgeFunction::Piece> pieces;
    for (auto it = marks.begin(); std::next(it) != marks.end(); ++it) {
      const Rational u = *it, v = *std::next(it);
      EdgeFunction sum = EdgeFunction::constant(0, ExtRational(Rational(v - u)));
      for (const auto& p : parts[te]) {
        if (p.lo <= u && v <= p.hi) sum = sum + p.g.restricted(u - p.lo, ExtRational(Rational(v - p.lo)));
      }
      if (!start) {
        start = sum.start();
      } else if (last != ExtRational(sum.start())) {
        throw std::logic_error("push-forward is discontinuous on " + target.edge(te).id);
      }
      last = sum.end_value();
      pieces.insert(pieces.end(), sum.pieces().begin(), sum.pieces().end());
    }
    out.emplace_back(*start, std::move(pieces));
  }
  return PLFunction(m.target(), std::move(out));
}

PLFunction pull_function(const Morphism& m, const PLFunction& f) {
  require_compact(m);
  if (!same_curve(f.curve(), m.target())) throw Error("function is not on the target curve");
  if (f.is_minus_infinity()) return PLFunction::minus_infinity(m.source());
  const Curve& source = *m.source();
  std::vector<EdgeFunction> out;
  for (int e = 0; e < source.edge_count(); ++e) {
    const EdgeMap& em = m.map(e);
    const ExtRational& length = source.edge(e).length;
    if (em.slope == 0) {
      out.push_back(EdgeFunction::constant(f(m(source.point(e, ExtRational(0)))).value(), length));
      continue;
    }
    const auto [lo, hi] = image_interval(source, e, em);
    EdgeFunction g = f.on_edge(em.target_edge).restricted(lo, hi);
    if (em.slope < 0) g = g.reversed();
    out.push_back(g.compressed(abs64(em.slope)));
  }
  return PLFunction(m.source(), std::move(out));
}

std::vector<std::pair<Point, std::int64_t>> fiber(const Morphism& m, const Point& y) {
  const Curve& source = *m.source();
  std::vector<std::pair<Point, std::int64_t>> out;
  for (int v = 0; v < source.vertex_count(); ++v) {
    const Point x = source.vertex_point(v);
    if (!(m(x) == y)) continue;
    const LocalDegree ld = local_degree(m, x);
    if (!ld.degree) throw Error(ld.failure);
    if (*ld.degree != 0) out.emplace_back(x, *ld.degree);
  }
  if (y.is_vertex()) return out;
  for (int e = 0; e < source.edge_count(); ++e) {
    const EdgeMap& em = m.map(e);
    if (em.target_edge != y.edge || em.slope == 0) continue;
    const Rational t = (y.offset - em.offset) / em.slope;
    if (t > 0 && ExtRational(t) < source.edge(e).length) out.emplace_back(source.point(e, ExtRational(t)), abs64(em.slope));
  }
  return out;
}

Divisor push_divisor(const Morphism& m, const Divisor& d) {
  if (!same_curve(d.curve(), m.source())) throw Error("divisor is not on the source curve");
  Divisor out(m.target());
  for (const auto& [x, c] : d.entries()) out.add(m(x), c);
  if (out.degree() != d.degree()) throw std::logic_error("push-forward changed the degree");
  return out;
}

Divisor pull_divisor(const Morphism& m, const Divisor& d) {
  if (!same_curve(d.curve(), m.target())) throw Error("divisor is not on the target curve");
  const std::int64_t deg = global_degree(m);
  Divisor out(m.source());
  for (const auto& [y, c] : d.entries()) {
    for (const auto& [x, k] : fiber(m, y)) out.add(x, k * c);
  }
  if (out.degree() != deg * d.degree()) throw std::logic_error("pull-back violates the degree law");
  return out;
}

Morphism retraction_of(const CurvePtr& original, const GraftResult& g) {
  const Curve& modified = *g.modified;
  std::vector<EdgeMap> maps;
  for (int e = 0; e < modified.edge_count(); ++e) {
    if (g.is_host_edge(e)) {
      const auto& piece = g.host.piece(e);
      maps.push_back({piece.coarse_edge, piece.start, 1});
      continue;
    }
    std::size_t k = 0;
    while (k + 1 < g.trees.size() && g.trees[k + 1].edge_offset <= e) ++k;
    const Point host = g.host.to_coarse(g.host.fine()->vertex_point(g.trees[k].host_vertex));
    const auto [edge, offset] = original->locate(host);
    maps.push_back({edge, offset.value(), 0});
  }
  return Morphism(g.modified, original, std::move(maps));
}

Modification modify(const CurvePtr& c, std::span<const GraftSpec> specs) {
  GraftResult g = graft(c, specs);
  Morphism pi = retraction_of(c, g);
  return {c, g.modified, std::move(pi)};
}

const Morphism& retraction_of(const Modification& m) { return m.retraction; }

Verification verify_finite_harmonic(const Morphism& m) {
  Verification out;
  const MorphismReport report = validate_morphism(m);
  out.finite = report.is_finite;
  if (!report.is_finite) {
    out.failure = report.error;
    return out;
  }
  for (const auto& x : harmonic_checkpoints(m)) {
    const LocalDegree ld = local_degree(m, x);
    if (!ld.degree) {
      out.failure = ld.failure;
      return out;
    }
    out.local.emplace_back(x, *ld.degree);
  }
  try {
    out.degree = global_degree(m);
  } catch (const Error& e) {
    out.failure = e.what();
    return out;
  }
  out.passed = true;
  return out;
}

}  // namespace tropgon
