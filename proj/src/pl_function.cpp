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

#include "tropgon/pl_function.hpp"

#include <algorithm>
#include <stdexcept>

#include "tropgon/error.hpp"

namespace tropgon {

PLFunction::PLFunction(CurvePtr curve, bool minus_infinity)
    : curve_(std::move(curve)), minus_infinity_(minus_infinity) {}

PLFunction::PLFunction(CurvePtr curve, std::vector<EdgeFunction> edges)
    : curve_(std::move(curve)), edges_(std::move(edges)) {
  const Curve& c = *curve_;
  if (static_cast<int>(edges_.size()) != c.edge_count()) {
    throw Error("function must be given on every edge");
  }
  for (int e = 0; e < c.edge_count(); ++e) {
    if (!(edges_[e].length() == c.edge(e).length)) {
      throw Error("function on edge " + c.edge(e).id + " has domain length " +
                  to_string(edges_[e].length()) + ", edge has " + to_string(c.edge(e).length));
    }
  }
  for (int v = 0; v < c.vertex_count(); ++v) {
    std::optional<ExtRational> seen;
    for (const auto& end : c.incident(v)) {
      const EdgeFunction& f = edges_[end.edge];
      ExtRational val = end.at_from ? ExtRational(f.start()) : f.end_value();
      if (seen && !(*seen == val)) {
        throw Error("function is discontinuous at vertex " + c.vertex_id(v) + " (" +
                    to_string(*seen) + " vs " + to_string(val) + ")");
      }
      seen = val;
    }
  }
}

PLFunction PLFunction::minus_infinity(CurvePtr curve) { return PLFunction(std::move(curve), true); }

PLFunction PLFunction::constant(CurvePtr curve, const Rational& value) {
  std::vector<EdgeFunction> edges;
  for (const auto& e : curve->edges()) edges.push_back(EdgeFunction::constant(value, e.length));
  return PLFunction(std::move(curve), std::move(edges));
}

const EdgeFunction& PLFunction::on_edge(int e) const {
  if (minus_infinity_) throw Error("the constant -inf has no edge pieces");
  return edges_.at(e);
}

ExtRational PLFunction::operator()(const Point& x) const {
  if (minus_infinity_) return ExtRational::minus_infinity();
  if (x.is_vertex()) {
    const EdgeEnd& end = curve_->incident(x.vertex).front();
    const EdgeFunction& f = edges_[end.edge];
    return end.at_from ? ExtRational(f.start()) : f.end_value();
  }
  return edges_.at(x.edge).value_at(ExtRational(x.offset));
}

std::int64_t PLFunction::outgoing_slope(const HalfEdge& h) const {
  const EdgeFunction& f = on_edge(h.edge);
  if (h.base.is_vertex()) {
    if (h.forward) return f.slope_right(Rational(0));
    return -f.slope_left(curve_->edge(h.edge).length);
  }
  if (h.forward) return f.slope_right(h.base.offset);
  return -f.slope_left(ExtRational(h.base.offset));
}

ExtRational PLFunction::max_value() const {
  if (minus_infinity_) return ExtRational::minus_infinity();
  ExtRational best = edges_.front().max_value();
  for (const auto& f : edges_) best = std::max(best, f.max_value());
  return best;
}

ExtRational PLFunction::min_value() const {
  if (minus_infinity_) return ExtRational::minus_infinity();
  ExtRational best = edges_.front().min_value();
  for (const auto& f : edges_) best = std::min(best, f.min_value());
  return best;
}

PLFunction PLFunction::shifted(const Rational& c) const {
  if (minus_infinity_) return *this;
  PLFunction out = *this;
  for (auto& f : out.edges_) f = f.shifted(c);
  return out;
}

PLFunction PLFunction::negated() const {
  if (minus_infinity_) throw Error("cannot negate the constant -inf");
  PLFunction out = *this;
  for (auto& f : out.edges_) f = f.negated();
  return out;
}

PLFunction operator+(const PLFunction& a, const PLFunction& b) {
  if (!same_curve(a.curve_, b.curve_)) throw Error("functions live on different curves");
  if (a.minus_infinity_ || b.minus_infinity_) return PLFunction::minus_infinity(a.curve_);
  std::vector<EdgeFunction> edges;
  for (std::size_t e = 0; e < a.edges_.size(); ++e) edges.push_back(a.edges_[e] + b.edges_[e]);
  return PLFunction(a.curve_, std::move(edges));
}

PLFunction operator-(const PLFunction& a, const PLFunction& b) { return a + b.negated(); }

bool operator==(const PLFunction& a, const PLFunction& b) {
  if (!same_curve(a.curve_, b.curve_)) return false;
  if (a.minus_infinity_ || b.minus_infinity_) return a.minus_infinity_ == b.minus_infinity_;
  return a.edges_ == b.edges_;
}

ExtRational evaluate(const PLFunction& f, const Point& x) { return f(x); }

std::int64_t order_at(const PLFunction& f, const Point& x) {
  if (f.is_minus_infinity()) throw Error("order of the constant -inf is undefined");
  std::int64_t ord = 0;
  for (const auto& h : half_edges(*f.curve(), x)) ord += f.outgoing_slope(h);
  return ord;
}

std::vector<Point> critical_points(const PLFunction& f) {
  const Curve& c = *f.curve();
  std::vector<Point> out;
  for (int v = 0; v < c.vertex_count(); ++v) out.push_back(c.vertex_point(v));
  if (f.is_minus_infinity()) return out;
  for (int e = 0; e < c.edge_count(); ++e) {
    for (const auto& t : f.on_edge(e).breakpoints()) out.push_back(c.point(e, ExtRational(t)));
  }
  return out;
}

Divisor principal_divisor(const PLFunction& f) {
  if (f.is_minus_infinity()) throw Error("principal divisor of the constant -inf is undefined");
  Divisor d(f.curve());
  for (const auto& p : critical_points(f)) d.add(p, order_at(f, p));
  if (d.degree() != 0) {
    throw std::logic_error("principal divisor of nonzero degree " + std::to_string(d.degree()));
  }
  return d;
}

PLFunction trop_combine(std::span<const TropScalar> coeffs, std::span<const PLFunction> fns) {
  if (coeffs.size() != fns.size() || fns.empty()) {
    throw Error("trop_combine: coefficient/function count mismatch");
  }
  const CurvePtr& curve = fns.front().curve();
  std::optional<std::vector<EdgeFunction>> acc;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (!same_curve(curve, fns[i].curve())) throw Error("trop_combine: functions on different curves");
    if (!coeffs[i].is_finite() || fns[i].is_minus_infinity()) continue;
    std::vector<EdgeFunction> term;
    for (const auto& f : fns[i].edge_functions()) term.push_back(f.shifted(coeffs[i].value()));
    if (!acc) {
      acc = std::move(term);
    } else {
      for (std::size_t e = 0; e < term.size(); ++e) (*acc)[e] = max((*acc)[e], term[e]);
    }
  }
  if (!acc) throw Error("trop_combine: every term is -inf");
  return PLFunction(curve, std::move(*acc));
}

PLFunction truncate_below(const PLFunction& f, const ExtRational& a) {
  if (a.is_plus_infinity()) return PLFunction::constant(f.curve(), Rational(0));
  if (a.is_minus_infinity()) return f;
  const PLFunction floor = PLFunction::constant(f.curve(), a.value());
  const TropScalar zero(Rational(0));
  const std::vector<TropScalar> coeffs{zero, zero};
  const std::vector<PLFunction> fns{f, floor};
  return trop_combine(coeffs, fns);
}

std::vector<Segment> nonconstant_locus(const PLFunction& f) {
  if (f.is_minus_infinity()) throw Error("non-constant locus of the constant -inf is undefined");
  std::vector<Segment> out;
  const Curve& c = *f.curve();
  for (int e = 0; e < c.edge_count(); ++e) {
    const EdgeFunction& g = f.on_edge(e);
    Rational pos = 0;
    std::optional<Segment> run;
    auto step = [&](std::int64_t slope, const ExtRational& end) {
      if (slope != 0) {
        if (!run) run = Segment{e, pos, end};
        run->to = end;
      } else if (run) {
        out.push_back(*run);
        run.reset();
      }
    };
    for (const auto& p : g.pieces()) {
      step(p.slope, ExtRational(Rational(pos + p.length)));
      pos += p.length;
    }
    if (g.tail_slope()) step(*g.tail_slope(), ExtRational::plus_infinity());
    if (run) out.push_back(*run);
  }
  return out;
}

bool contains(const Curve& c, std::span<const Segment> locus, const Point& x) {
  for (const auto& s : locus) {
    const Edge& e = c.edge(s.edge);
    if (x.is_vertex()) {
      if ((e.from == x.vertex && s.from == 0) || (e.to == x.vertex && s.to == e.length)) return true;
    } else if (x.edge == s.edge && s.from <= x.offset && ExtRational(x.offset) <= s.to) {
      return true;
    }
  }
  return false;
}

PLFunction interpolate(const CurvePtr& curve, const std::map<int, std::vector<Rational>>& knots,
                       const std::function<Rational(const Point&)>& value) {
  const Curve& c = *curve;
  if (!c.is_compact()) throw Error("interpolate needs a compact curve");
  std::vector<EdgeFunction> edges;
  for (int e = 0; e < c.edge_count(); ++e) {
    const Rational& len = c.edge(e).length.value();
    std::vector<Rational> ts{Rational(0), len};
    if (auto it = knots.find(e); it != knots.end()) {
      for (const auto& t : it->second) {
        if (t > 0 && t < len) ts.push_back(t);
      }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<Rational> vals;
    for (const auto& t : ts) vals.push_back(value(c.point(e, ExtRational(t))));
    std::vector<EdgeFunction::Piece> pieces;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      Rational slope = (vals[i + 1] - vals[i]) / (ts[i + 1] - ts[i]);
      if (!is_integer(slope)) {
        throw Error("interpolated slope " + to_string(slope) + " on edge " + c.edge(e).id +
                    " is not an integer");
      }
      pieces.push_back({to_integer(slope), Rational(ts[i + 1] - ts[i])});
    }
    edges.emplace_back(vals.front(), std::move(pieces));
  }
  return PLFunction(curve, std::move(edges));
}

PLFunction refine(const PLFunction& f, const Refinement& r) {
  if (!same_curve(f.curve(), r.coarse())) throw Error("function is not on the refined curve");
  if (f.is_minus_infinity()) return PLFunction::minus_infinity(r.fine());
  std::vector<EdgeFunction> edges;
  for (int e = 0; e < r.fine()->edge_count(); ++e) {
    const auto& pc = r.piece(e);
    edges.push_back(
        f.on_edge(pc.coarse_edge).restricted(pc.start, ExtRational(pc.start) + pc.length));
  }
  return PLFunction(r.fine(), std::move(edges));
}

PLFunction coarsen(const PLFunction& f, const Refinement& r) {
  if (!same_curve(f.curve(), r.fine())) throw Error("function is not on the fine curve");
  if (f.is_minus_infinity()) return PLFunction::minus_infinity(r.coarse());
  std::vector<EdgeFunction> edges;
  for (int e = 0; e < r.coarse()->edge_count(); ++e) {
    const auto& parts = r.pieces_of(e);
    std::vector<EdgeFunction::Piece> pieces;
    std::optional<std::int64_t> tail;
    for (int fe : parts) {
      const EdgeFunction& g = f.on_edge(fe);
      for (const auto& p : g.pieces()) pieces.push_back(p);
      if (g.tail_slope()) tail = g.tail_slope();
    }
    Rational start = f.on_edge(parts.front()).start();
    if (tail) {
      edges.emplace_back(start, std::move(pieces), *tail);
    } else {
      edges.emplace_back(start, std::move(pieces));
    }
  }
  return PLFunction(r.coarse(), std::move(edges));
}

}  // namespace tropgon
