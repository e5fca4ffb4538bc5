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

#include "tropgon/format.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "tropgon/error.hpp"

namespace tropgon {
namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::string at_line(int n, const std::string& msg) { return "line " + std::to_string(n) + ": " + msg; }

[[noreturn]] void malformed(const Line& l, const std::string& msg) { throw ParseError(at_line(l.number, msg)); }

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line l{number, {}};
    for (std::string tok; in >> tok;) l.tokens.push_back(tok);
    if (!l.tokens.empty()) out.push_back(std::move(l));
    if (end == text.size()) break;
  }
  return out;
}

std::int64_t parse_int(const Line& l, std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    malformed(l, "malformed integer '" + std::string(text) + "'");
  }
  return v;
}

Rational parse_q(const Line& l, std::string_view text) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    malformed(l, e.what());
  }
}

ExtRational parse_ext(const Line& l, std::string_view text) {
  try {
    return parse_ext_rational(text);
  } catch (const ParseError& e) {
    malformed(l, e.what());
  }
}

bool is_map_edge(const Line& l) {
  return l.tokens[0] == "edge" && l.tokens.size() >= 2 && l.tokens[1].find("->") != std::string::npos;
}

struct MapEdge {
  std::string source, target;
  Rational offset;
  std::int64_t slope = 0;
};

MapEdge parse_map_edge(const Line& l) {
  if (l.tokens.size() != 4 || l.tokens[2] != "slope") malformed(l, "expected 'edge <src>-><tgt>@<offset> slope <k>'");
  const std::string& spec = l.tokens[1];
  const auto arrow = spec.find("->");
  const auto at = spec.find('@', arrow);
  if (arrow == 0 || at == std::string::npos || at == arrow + 2) malformed(l, "malformed map edge '" + spec + "'");
  return {spec.substr(0, arrow), spec.substr(arrow + 2, at - arrow - 2), parse_q(l, spec.substr(at + 1)),
          parse_int(l, l.tokens[3])};
}

struct PieceSpec {
  std::string edge;
  Rational start;
  std::vector<EdgeFunction::Piece> pieces;
  std::optional<std::int64_t> tail;
};

PieceSpec parse_on(const Line& l) {
  const auto& t = l.tokens;
  if (t.size() < 6 || t[2] != "start" || t[4] != "pieces") {
    malformed(l, "expected 'on <edge> start <value> pieces <slope>:<length> ...'");
  }
  PieceSpec out{t[1], parse_q(l, t[3]), {}, std::nullopt};
  for (std::size_t k = 5; k < t.size(); ++k) {
    const auto colon = t[k].find(':');
    if (colon == std::string::npos) malformed(l, "malformed piece '" + t[k] + "'");
    const std::int64_t slope = parse_int(l, std::string_view(t[k]).substr(0, colon));
    const ExtRational len = parse_ext(l, std::string_view(t[k]).substr(colon + 1));
    if (len.is_plus_infinity()) {
      if (k + 1 != t.size()) malformed(l, "only the last piece may be unbounded");
      out.tail = slope;
    } else {
      if (!len.is_finite()) malformed(l, "malformed piece '" + t[k] + "'");
      out.pieces.push_back({slope, len.value()});
    }
  }
  return out;
}

std::pair<std::int64_t, std::string> parse_term(const Line& l, const std::string& tok) {
  const auto star = tok.find('*');
  if (star == std::string::npos || star + 1 == tok.size()) malformed(l, "malformed divisor term '" + tok + "'");
  return {parse_int(l, std::string_view(tok).substr(0, star)), tok.substr(star + 1)};
}

// Token counts and shapes of every record, and the order in which blocks may
// appear. Semantic checks happen while building.
void check_syntax(const std::vector<Line>& lines) {
  enum class Block { kNone, kCurveHead, kCurveBody, kFunc, kMap };
  Block block = Block::kNone;
  bool ended = false;
  for (const auto& l : lines) {
    const auto& t = l.tokens;
    const std::string& kw = t[0];
    if (ended) malformed(l, "content after 'end'");
    auto arity = [&](std::size_t n, const char* shape) {
      if (t.size() != n) malformed(l, std::string("expected '") + shape + "'");
    };
    auto need_curve = [&] {
      if (block == Block::kNone || block == Block::kMap) malformed(l, "'" + kw + "' outside a curve");
    };
    if (kw == "curve") {
      arity(2, "curve <id>");
      block = Block::kCurveHead;
    } else if (kw == "vertex") {
      arity(2, "vertex <id>");
      if (block != Block::kCurveHead) malformed(l, "'vertex' must follow 'curve' or another vertex or edge");
    } else if (is_map_edge(l)) {
      if (block != Block::kMap) malformed(l, "map edge outside a map");
      parse_map_edge(l);
    } else if (kw == "edge") {
      arity(5, "edge <id> <from> <to> <length>");
      if (block != Block::kCurveHead) malformed(l, "'edge' must follow 'curve' or another vertex or edge");
      parse_ext(l, t[4]);
    } else if (kw == "point") {
      arity(3, "point <id> <ref>");
      need_curve();
      block = Block::kCurveBody;
    } else if (kw == "func") {
      if (t.size() != 2 && !(t.size() == 3 && t[2] == "-inf")) malformed(l, "expected 'func <id>' or 'func <id> -inf'");
      need_curve();
      block = Block::kFunc;
    } else if (kw == "on") {
      if (block != Block::kFunc) malformed(l, "'on' outside a function");
      parse_on(l);
    } else if (kw == "div") {
      if (t.size() < 2) malformed(l, "expected 'div <id> <coef>*<ref> ...'");
      need_curve();
      block = Block::kCurveBody;
      for (std::size_t k = 2; k < t.size(); ++k) parse_term(l, t[k]);
    } else if (kw == "system") {
      if (t.size() < 6 || t[2] != "base" || t[4] != "gens") malformed(l, "expected 'system <id> base <div> gens <func> ...'");
      need_curve();
      block = Block::kCurveBody;
    } else if (kw == "map") {
      if (t.size() != 5 || t[3] != "->") malformed(l, "expected 'map <id> <source> -> <target>'");
      block = Block::kMap;
    } else if (kw == "end") {
      arity(1, "end");
      ended = true;
    } else {
      malformed(l, "unknown record '" + kw + "'");
    }
  }
  if (!ended) throw ParseError("unexpected end of input: missing 'end'");
}

class Builder {
 public:
  explicit Builder(Workspace& ws) : ws_(ws) {}

  void feed(const Line& l) {
    const auto& t = l.tokens;
    const std::string& kw = t[0];
    if (kw != "on") flush_function();
    if (!is_map_edge(l)) flush_map();
    if (kw != "vertex" && (kw != "edge" || is_map_edge(l))) flush_curve();
    if (kw == "curve") {
      pending_curve_ = Pending{l.number, t[1], {}, {}};
      curve_.clear();
    } else if (kw == "vertex") {
      pending_curve_->vertices.push_back(t[1]);
    } else if (is_map_edge(l)) {
      map_->edges.push_back({l.number, parse_map_edge(l)});
    } else if (kw == "edge") {
      auto& pc = *pending_curve_;
      pc.edges.push_back({t[1], vertex_of(l, pc, t[2]), vertex_of(l, pc, t[3]), parse_ext(l, t[4])});
    } else if (kw == "point") {
      wrap(l, [&] { ws_.add_point(t[1], curve_, resolve(l, t[2])); });
    } else if (kw == "func") {
      if (t.size() == 3) {
        wrap(l, [&] { ws_.add_function(t[1], PLFunction::minus_infinity(ws_.curve(curve_))); });
      } else {
        func_ = FuncBlock{l.number, t[1], {}};
      }
    } else if (kw == "on") {
      if (!func_) semantic(l, "piece list for a -inf function");
      func_->edges.push_back({l.number, parse_on(l)});
    } else if (kw == "div") {
      wrap(l, [&] {
        Divisor d(ws_.curve(curve_));
        for (std::size_t k = 2; k < t.size(); ++k) {
          const auto [c, ref] = parse_term(l, t[k]);
          d.add(resolve(l, ref), c);
        }
        ws_.add_divisor(t[1], std::move(d));
      });
    } else if (kw == "system") {
      wrap(l, [&] {
        std::vector<std::string> gens(t.begin() + 5, t.end());
        const auto& base = ws_.divisor(t[3]);
        if (!same_curve(base.curve(), ws_.curve(curve_))) throw Error("divisor " + t[3] + " is on another curve");
        ws_.add_system(t[1], t[3], std::move(gens));
      });
    } else if (kw == "map") {
      map_ = MapBlock{l.number, t[1], t[2], t[4], {}};
      curve_.clear();
    }
  }

  void finish() {
    flush_function();
    flush_map();
    flush_curve();
  }

 private:
  struct Pending {
    int line;
    std::string id;
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
  };
  struct FuncBlock {
    int line;
    std::string id;
    std::vector<std::pair<int, PieceSpec>> edges;
  };
  struct MapBlock {
    int line;
    std::string id, source, target;
    std::vector<std::pair<int, MapEdge>> edges;
  };

  [[noreturn]] static void semantic(const Line& l, const std::string& msg) { throw Error(at_line(l.number, msg)); }

  template <class F>
  static void wrap(int line, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      throw Error(at_line(line, e.what()));
    }
  }
  template <class F>
  static void wrap(const Line& l, F&& f) {
    wrap(l.number, std::forward<F>(f));
  }

  static int vertex_of(const Line& l, const Pending& pc, const std::string& id) {
    for (std::size_t v = 0; v < pc.vertices.size(); ++v) {
      if (pc.vertices[v] == id) return static_cast<int>(v);
    }
    semantic(l, "edge " + l.tokens[1] + " uses unknown vertex " + id);
  }

  Point resolve(const Line& l, const std::string& ref) const {
    const Curve& c = *ws_.curve(curve_);
    if (const auto at = ref.find('@'); at != std::string::npos) {
      const auto e = c.find_edge(std::string_view(ref).substr(0, at));
      if (!e) semantic(l, "unknown edge in '" + ref + "'");
      return c.point(*e, parse_ext(l, std::string_view(ref).substr(at + 1)));
    }
    if (const auto v = c.find_vertex(ref)) return c.vertex_point(*v);
    const auto it = ws_.points().find(ref);
    if (it == ws_.points().end() || it->second.curve != curve_) semantic(l, "unknown point " + ref);
    return it->second.point;
  }

  void flush_curve() {
    if (!pending_curve_) return;
    Pending pc = std::move(*pending_curve_);
    pending_curve_.reset();
    wrap(pc.line, [&] { ws_.add_curve(pc.id, make_curve(std::move(pc.vertices), std::move(pc.edges))); });
    curve_ = pc.id;
  }

  void flush_function() {
    if (!func_) return;
    FuncBlock fb = std::move(*func_);
    func_.reset();
    wrap(fb.line, [&] {
      const CurvePtr& c = ws_.curve(curve_);
      std::vector<std::optional<EdgeFunction>> edges(c->edge_count());
      for (auto& [line, spec] : fb.edges) {
        wrap(line, [&] {
          const int e = c->edge_index(spec.edge);
          if (edges[e]) throw Error("second piece list for edge " + spec.edge);
          const Edge& edge = c->edge(e);
          if (edge.unbounded() != spec.tail.has_value()) {
            throw Error("pieces on edge " + spec.edge + (edge.unbounded() ? " must end with an unbounded piece"
                                                                          : " must have finite lengths"));
          }
          for (const auto& p : spec.pieces) {
            if (p.length <= 0) throw Error("nonpositive piece length on edge " + spec.edge);
          }
          if (spec.tail) {
            edges[e] = EdgeFunction(spec.start, spec.pieces, *spec.tail);
          } else {
            Rational total = 0;
            for (const auto& p : spec.pieces) total += p.length;
            if (total != edge.length.value()) {
              throw Error("pieces on edge " + spec.edge + " cover " + to_string(total) + " of " +
                          to_string(edge.length));
            }
            edges[e] = EdgeFunction(spec.start, spec.pieces);
          }
        });
      }
      std::vector<EdgeFunction> all;
      for (int e = 0; e < c->edge_count(); ++e) {
        if (!edges[e]) throw Error("function " + fb.id + " has no pieces on edge " + c->edge(e).id);
        all.push_back(std::move(*edges[e]));
      }
      ws_.add_function(fb.id, PLFunction(c, std::move(all)));
    });
  }

  void flush_map() {
    if (!map_) return;
    MapBlock mb = std::move(*map_);
    map_.reset();
    wrap(mb.line, [&] {
      const CurvePtr& src = ws_.curve(mb.source);
      const CurvePtr& tgt = ws_.curve(mb.target);
      std::vector<std::optional<EdgeMap>> maps(src->edge_count());
      for (const auto& [line, me] : mb.edges) {
        wrap(line, [&] {
          const int e = src->edge_index(me.source);
          if (maps[e]) throw Error("second image for edge " + me.source);
          maps[e] = EdgeMap{tgt->edge_index(me.target), me.offset, me.slope};
        });
      }
      std::vector<EdgeMap> all;
      for (int e = 0; e < src->edge_count(); ++e) {
        if (!maps[e]) throw Error("map " + mb.id + " has no image for edge " + src->edge(e).id);
        all.push_back(*maps[e]);
      }
      ws_.add_map(mb.id, MapRecord{src, tgt, std::move(all)});
    });
  }

  Workspace& ws_;
  std::string curve_;
  std::optional<Pending> pending_curve_;
  std::optional<FuncBlock> func_;
  std::optional<MapBlock> map_;
};

std::string print_function(const std::string& id, const PLFunction& f) {
  if (f.is_minus_infinity()) return "func " + id + " -inf\n";
  std::string out = "func " + id + "\n";
  const Curve& c = *f.curve();
  for (int e = 0; e < c.edge_count(); ++e) {
    const EdgeFunction& ef = f.on_edge(e);
    out += "on " + c.edge(e).id + " start " + to_string(ef.start()) + " pieces";
    for (const auto& p : ef.pieces()) out += " " + std::to_string(p.slope) + ":" + to_string(p.length);
    if (ef.tail_slope()) out += " " + std::to_string(*ef.tail_slope()) + ":inf";
    out += "\n";
  }
  return out;
}

}  // namespace

void Workspace::require_new(const std::string& kind, const std::string& id, bool taken) const {
  if (id.empty()) throw Error("empty " + kind + " id");
  if (taken) throw Error("duplicate " + kind + " id " + id);
}

void Workspace::add_curve(const std::string& id, CurvePtr c) {
  require_new("curve", id, curves_.count(id) > 0);
  curves_.emplace(id, std::move(c));
}

void Workspace::add_point(const std::string& id, const std::string& curve, const Point& p) {
  require_new("point", id, points_.count(id) > 0);
  this->curve(curve);
  points_.emplace(id, NamedPoint{curve, p});
}

void Workspace::add_function(const std::string& id, PLFunction f) {
  require_new("function", id, functions_.count(id) > 0);
  curve_id(f.curve());
  functions_.emplace(id, std::move(f));
}

void Workspace::add_divisor(const std::string& id, Divisor d) {
  require_new("divisor", id, divisors_.count(id) > 0);
  curve_id(d.curve());
  divisors_.emplace(id, std::move(d));
}

void Workspace::add_system(const std::string& id, const std::string& base, std::vector<std::string> generators) {
  require_new("system", id, systems_.count(id) > 0);
  std::vector<PLFunction> gens;
  for (const auto& g : generators) gens.push_back(function(g));
  GenSystem s(divisor(base), std::move(gens));
  systems_.emplace(id, NamedSystem{base, std::move(generators), std::move(s)});
}

void Workspace::add_system(const std::string& id, const GenSystem& s) {
  add_divisor(id + "_base", s.base());
  std::vector<std::string> names;
  for (std::size_t k = 0; k < s.size(); ++k) {
    names.push_back(id + "_g" + std::to_string(k + 1));
    add_function(names.back(), s.generators()[k]);
  }
  add_system(id, id + "_base", std::move(names));
}

void Workspace::add_map(const std::string& id, const Morphism& m) {
  add_map(id, MapRecord{m.source(), m.target(), m.maps()});
}

void Workspace::add_map(const std::string& id, MapRecord m) {
  require_new("map", id, maps_.count(id) > 0);
  curve_id(m.source);
  curve_id(m.target);
  if (static_cast<int>(m.edges.size()) != m.source->edge_count()) throw Error("map " + id + " misses source edges");
  maps_.emplace(id, std::move(m));
}

namespace {

template <class M>
const auto& lookup(const M& m, const std::string& kind, const std::string& id) {
  const auto it = m.find(id);
  if (it == m.end()) throw Error("unknown " + kind + " " + id);
  return it->second;
}

}  // namespace

const CurvePtr& Workspace::curve(const std::string& id) const { return lookup(curves_, "curve", id); }
const PLFunction& Workspace::function(const std::string& id) const { return lookup(functions_, "function", id); }
const Divisor& Workspace::divisor(const std::string& id) const { return lookup(divisors_, "divisor", id); }
const GenSystem& Workspace::system(const std::string& id) const { return lookup(systems_, "system", id).system; }
const MapRecord& Workspace::map(const std::string& id) const { return lookup(maps_, "map", id); }

Morphism Workspace::morphism(const std::string& id) const {
  const MapRecord& m = map(id);
  const MorphismReport r = validate_morphism(m.source, m.target, m.edges);
  if (!r.is_morphism) throw Error("map " + id + ": " + r.error);
  return Morphism(m.source, m.target, m.edges);
}

const std::string& Workspace::curve_id(const CurvePtr& c) const {
  for (const auto& [id, k] : curves_) {
    if (k == c) return id;
  }
  for (const auto& [id, k] : curves_) {
    if (*k == *c) return id;
  }
  throw Error("curve is not registered");
}

Workspace parse_workspace(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  check_syntax(lines);
  Workspace ws;
  Builder b(ws);
  for (const auto& l : lines) {
    if (l.tokens[0] == "end") break;
    b.feed(l);
  }
  b.finish();
  return ws;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_workspace(text.str());
}

std::string print_workspace(const Workspace& ws) {
  std::string out;
  for (const auto& [cid, c] : ws.curves()) {
    if (!out.empty()) out += "\n";
    out += "curve " + cid + "\n";
    for (const auto& v : c->vertex_ids()) out += "vertex " + v + "\n";
    for (const auto& e : c->edges()) {
      out += "edge " + e.id + " " + c->vertex_id(e.from) + " " + c->vertex_id(e.to) + " " + to_string(e.length) + "\n";
    }
    for (const auto& [id, p] : ws.points()) {
      if (p.curve == cid) out += "point " + id + " " + c->format_point(p.point) + "\n";
    }
    for (const auto& [id, f] : ws.functions()) {
      if (ws.curve_id(f.curve()) == cid) out += print_function(id, f);
    }
    for (const auto& [id, d] : ws.divisors()) {
      if (ws.curve_id(d.curve()) != cid) continue;
      const std::string terms = to_string(d);
      out += "div " + id + (terms.empty() ? "" : " " + terms) + "\n";
    }
    for (const auto& [id, s] : ws.systems()) {
      if (ws.curve_id(s.system.curve()) != cid) continue;
      out += "system " + id + " base " + s.base + " gens";
      for (const auto& g : s.generators) out += " " + g;
      out += "\n";
    }
  }
  for (const auto& [id, m] : ws.maps()) {
    const Curve& src = *m.source;
    const Curve& tgt = *m.target;
    out += "\nmap " + id + " " + ws.curve_id(m.source) + " -> " + ws.curve_id(m.target) + "\n";
    for (int e = 0; e < src.edge_count(); ++e) {
      const EdgeMap& em = m.edges[e];
      out += "edge " + src.edge(e).id + "->" + tgt.edge(em.target_edge).id + "@" + to_string(em.offset) + " slope " +
             std::to_string(em.slope) + "\n";
    }
  }
  return out + "end\n";
}

void save_workspace(const Workspace& ws, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << print_workspace(ws);
}

}  // namespace tropgon
