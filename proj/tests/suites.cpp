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

#include "suites.hpp"

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "tropgon/gonality.hpp"

namespace tropgon::testing {
namespace {

using Coords = std::vector<Rational>;

class Sampler {
 public:
  explicit Sampler(const GenSystem& s) : s_(s) {
    const CellDecomposition cells = cell_decomposition(s);
    const Curve& fine = *cells.refinement.fine();
    for (int v = 0; v < fine.vertex_count(); ++v) ends_.push_back(cells.refinement.to_coarse(fine.vertex_point(v)));
  }

  Point operator()(std::mt19937& rng) const {
    std::uniform_int_distribution<int> coin(0, 3);
    if (coin(rng) == 0) {
      std::uniform_int_distribution<std::size_t> pick(0, ends_.size() - 1);
      return ends_[pick(rng)];
    }
    return random_point(rng, *s_.curve(), 16);
  }

 private:
  const GenSystem& s_;
  std::vector<Point> ends_;
};

// max_i (f_i - f_i(x)): D + div of it is D_x.
PLFunction level(const GenSystem& s, const Point& x) {
  std::vector<TropScalar> coeffs;
  for (const auto& f : s.generators()) coeffs.emplace_back(Rational(-f(x).value()));
  return trop_combine(coeffs, s.generators());
}

std::optional<Rational> line_parameter(const Coords& a, const Coords& b, const Coords& y) {
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational d = b[i] - a[i], w = y[i] - a[i];
    if (d == 0) {
      if (w != 0) return std::nullopt;
      continue;
    }
    if (lambda && *lambda != w / d) return std::nullopt;
    lambda = w / d;
  }
  return lambda;
}

bool on_segment(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  const std::vector<ProjPoint> seg = tropical_segment(p, q);
  if (seg.size() == 1) return r == p;
  for (std::size_t k = 0; k + 1 < seg.size(); ++k) {
    const auto t = line_parameter(seg[k].finite_coords(), seg[k + 1].finite_coords(), r.finite_coords());
    if (t && *t >= 0 && *t <= 1) return true;
  }
  return false;
}

struct Pair {
  Point x, y;
  PLFunction f;  // D_y = D_x + div(f)
  Divisor dx;
};

Pair make_pair(const GenSystem& s, const Point& x, const Point& y) {
  return {x, y, level(s, y) - level(s, x), divisor_at(s, x)};
}

std::string where(const GenSystem& s, const char* what, const Point& x, const Point& y) {
  const Curve& c = *s.curve();
  return std::string(what) + " x=" + c.format_point(x) + " y=" + c.format_point(y);
}

void check_truncation(const GenSystem& s, const Pair& p, const Point& z, SuiteResult& out, const char* what) {
  ++out.checks;
  const PLFunction cut = truncate_below(p.f, p.f(z));
  if (!(divisor_at(s, z) == p.dx + principal_divisor(cut))) {
    out.failures.push_back(where(s, what, p.x, p.y) + " z=" + s.curve()->format_point(z));
  }
}

}  // namespace

Point sample_point(std::mt19937& rng, const GenSystem& s) { return Sampler(s)(rng); }

SuiteResult base_suite(const GenSystem& s, std::mt19937& rng, std::size_t pairs) {
  SuiteResult out;
  Sampler sample(s);
  while (out.pairs < pairs) {
    const Point x = sample(rng), y = sample(rng);
    const Pair p = make_pair(s, x, y);
    ++out.pairs;
    out.checks += 3;
    if (!(divisor_at(s, y) == p.dx + principal_divisor(p.f))) out.failures.push_back(where(s, "base: D_y", x, y));
    if (p.f(y) != p.f.min_value()) out.failures.push_back(where(s, "base: minimum", x, y));
    if (p.f(x) != p.f.max_value()) out.failures.push_back(where(s, "base: maximum", x, y));
    const ProjPoint px = phi(s, x), py = phi(s, y);
    for (int k = 0; k < 8; ++k) {
      const Point z = sample(rng);
      if (on_segment(px, py, phi(s, z))) check_truncation(s, p, z, out, "base: truncation");
    }
    check_truncation(s, p, x, out, "base: truncation");
    check_truncation(s, p, y, out, "base: truncation");
  }
  return out;
}

SuiteResult zero_suite(const GenSystem& s, std::mt19937& rng, std::size_t pairs) {
  SuiteResult out;
  Sampler sample(s);
  while (out.pairs < pairs) {
    const Point x = sample(rng), y = sample(rng);
    ++out.pairs;
    ++out.checks;
    if (divisor_at(s, y)(x) > self_coefficient(s, x)) out.failures.push_back(where(s, "zero", x, y));
  }
  return out;
}

SuiteResult ratg_suite(const GenSystem& s, std::mt19937& rng, std::size_t pairs) {
  SuiteResult out;
  Sampler sample(s);
  const Curve& c = *s.curve();
  while (out.pairs < pairs) {
    const Point x = sample(rng), y = sample(rng);
    const Pair p = make_pair(s, x, y);
    const std::vector<Segment> locus = nonconstant_locus(p.f);
    if (locus.empty()) continue;
    ++out.pairs;
    std::uniform_int_distribution<std::size_t> pick(0, locus.size() - 1);
    std::uniform_int_distribution<long> step(0, 16);
    for (int k = 0; k < 4; ++k) {
      const Segment& seg = locus[pick(rng)];
      const Rational t = seg.from + (seg.to.value() - seg.from) * q(step(rng), 16);
      check_truncation(s, p, c.point(seg.edge, ExtRational(t)), out, "ratg");
    }
  }
  return out;
}

SuiteResult har_suite(const GenSystem& s, std::mt19937& rng, std::size_t pairs) {
  SuiteResult out;
  Sampler sample(s);
  const Curve& c = *s.curve();
  std::vector<Point> bad;
  for (const auto& ind : indeterminacy_set(s)) bad.push_back(ind.point);
  while (out.pairs < pairs) {
    const Point x = sample(rng), y = sample(rng);
    if (std::find(bad.begin(), bad.end(), x) != bad.end()) continue;
    const ProjPoint px = phi(s, x), py = phi(s, y);
    if (px == py) continue;
    ++out.pairs;
    const std::vector<ProjPoint> seg = tropical_segment(px, py);
    const Coords a = seg[0].finite_coords();
    const Coords b = seg[1].finite_coords();
    std::int64_t sum = 0;
    for (const auto& h : half_edges(c, x)) {
      Coords moved;
      std::int64_t lo = 0, hi = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::int64_t k = s.generators()[i].outgoing_slope(h);
        if (i == 0 || k < lo) lo = k;
        if (i == 0 || k > hi) hi = k;
        moved.push_back(Rational(a[i] + k));
      }
      // Shift so the first coordinate matches the canonical form.
      const Rational shift = moved[0];
      for (auto& m : moved) m -= shift;
      const auto t = line_parameter(a, b, moved);
      if (t && *t > 0) sum += hi - lo;
    }
    ++out.checks;
    if (sum != self_coefficient(s, x) - divisor_at(s, y)(x)) out.failures.push_back(where(s, "har", x, y));
  }
  return out;
}

}  // namespace tropgon::testing

namespace tropgon::testing {
namespace {

std::vector<PLFunction> sorted_normalized(const GenSystem& s) {
  std::vector<PLFunction> out;
  for (const auto& f : s.generators()) out.push_back(f.shifted(-f.max_value().value()));
  std::sort(out.begin(), out.end(), [&](const PLFunction& a, const PLFunction& b) {
    return to_string(principal_divisor(a)) + "|" + to_string(a.min_value()) <
           to_string(principal_divisor(b)) + "|" + to_string(b.min_value());
  });
  return out;
}

// Breakpoints, vertices and midpoints of a subdivision on which f and every
// generator are affine.
std::vector<Point> evaluation_points(const PLFunction& f, const GenSystem& s) {
  const Curve& c = *s.curve();
  std::vector<std::vector<Rational>> offsets(c.edge_count());
  auto add = [&](const PLFunction& g) {
    for (int e = 0; e < c.edge_count(); ++e) {
      for (const auto& t : g.on_edge(e).breakpoints()) offsets[e].push_back(t);
    }
  };
  add(f);
  for (const auto& g : s.generators()) add(g);
  std::vector<Point> out;
  for (int v = 0; v < c.vertex_count(); ++v) out.push_back(c.vertex_point(v));
  for (int e = 0; e < c.edge_count(); ++e) {
    auto& o = offsets[e];
    o.push_back(0);
    o.push_back(c.edge(e).length.value());
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    for (std::size_t k = 0; k + 1 < o.size(); ++k) {
      if (k > 0) out.push_back(c.point(e, ExtRational(o[k])));
      out.push_back(c.point(e, ExtRational(Rational((o[k] + o[k + 1]) / 2))));
    }
  }
  return out;
}

}  // namespace

GenSystem with_redundant_generators(const GenSystem& s) {
  std::vector<PLFunction> gens = s.generators();
  std::vector<TropScalar> a(gens.size());
  a[0] = q(-1, 2);
  a.back() = 0;
  gens.push_back(trop_combine(a, s.generators()));
  if (gens.size() < 5) gens.push_back(s.generators().back().shifted(q(3)));
  if (gens.size() > 5) gens.erase(gens.begin() + 5, gens.end());
  return GenSystem(s.base(), std::move(gens));
}

SuiteResult minimization_suite(const GenSystem& s) {
  SuiteResult out;
  const GenSystem once = minimize_generators(s);
  const GenSystem twice = minimize_generators(once);
  ++out.checks;
  if (once.generators() != twice.generators()) out.failures.push_back("minimization is not idempotent");
  const std::vector<PLFunction> expected = sorted_normalized(once);
  std::vector<std::size_t> order(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  do {
    std::vector<PLFunction> gens;
    for (auto i : order) gens.push_back(s.generators()[i]);
    ++out.pairs;
    ++out.checks;
    if (sorted_normalized(minimize_generators(GenSystem(s.base(), gens))) != expected) {
      out.failures.push_back("minimization depends on the generator order");
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

bool brute_force_member(const PLFunction& f, const GenSystem& s) {
  const std::vector<Point> pts = evaluation_points(f, s);
  const std::size_t n = s.size();
  std::vector<Rational> target;
  std::vector<std::vector<Rational>> values(n);
  for (const auto& p : pts) target.push_back(f(p).value());
  std::vector<std::vector<std::optional<Rational>>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<Rational> seen;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      values[i].push_back(s.generators()[i](pts[k]).value());
      seen.insert(target[k] - values[i][k]);
    }
    candidates[i].push_back(std::nullopt);
    for (const auto& a : seen) candidates[i].push_back(a);
  }
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    bool any = false;
    bool match = true;
    for (std::size_t i = 0; i < n; ++i) any = any || candidates[i][pick[i]].has_value();
    for (std::size_t k = 0; any && match && k < pts.size(); ++k) {
      std::optional<Rational> best;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& a = candidates[i][pick[i]];
        if (!a) continue;
        const Rational v = *a + values[i][k];
        if (!best || v > *best) best = v;
      }
      match = *best == target[k];
    }
    if (any && match) return true;
    std::size_t i = 0;
    while (i < n && ++pick[i] == candidates[i].size()) pick[i++] = 0;
    if (i == n) return false;
  }
}

SuiteResult membership_suite(const GenSystem& s, std::mt19937& rng, std::size_t count) {
  SuiteResult out;
  const auto& gens = s.generators();
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  std::size_t members = 0;
  while (out.pairs < count) {
    std::optional<PLFunction> f;
    switch (kind(rng)) {
      case 0: {
        std::vector<TropScalar> a;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          a.push_back(coin(rng) == 0 ? TropScalar() : TropScalar(random_rational(rng, -1, 1, 4)));
        }
        if (std::none_of(a.begin(), a.end(), [](const TropScalar& x) { return x.is_finite(); })) a[0] = 0;
        f = trop_combine(a, gens);
        break;
      }
      case 1:
        f = gens[pick(rng)] + gens[pick(rng)];
        break;
      default:
        f = random_function(rng, s.curve());
    }
    ++out.pairs;
    ++out.checks;
    const bool oracle = brute_force_member(*f, s);
    members += oracle;
    if (maximal_representation(*f, s).exact != oracle) {
      out.failures.push_back("maximal representation disagrees with the oracle (oracle says " +
                             std::string(oracle ? "member" : "non-member") + ")");
    }
  }
  if (members == 0 || members == out.pairs) out.failures.push_back("membership sample is one-sided");
  return out;
}

SuiteResult subdivision_suite(const GenSystem& s, std::mt19937& rng, int cuts) {
  SuiteResult out;
  const CurvePtr& c = s.curve();
  std::vector<Point> extra;
  while (static_cast<int>(extra.size()) < cuts) {
    const Point p = random_point(rng, *c, 64);
    if (!p.is_vertex() && std::find(extra.begin(), extra.end(), p) == extra.end()) extra.push_back(p);
  }
  const Refinement r(c, extra);
  std::vector<PLFunction> gens;
  for (const auto& g : s.generators()) gens.push_back(refine(g, r));
  const GenSystem fine(refine(s.base(), r), std::move(gens));
  auto fail = [&](const std::string& what) { out.failures.push_back("subdivision changes " + what); };

  for (int k = 0; k < 20; ++k) {
    const Point x = random_point(rng, *c, 16), y = random_point(rng, *c, 16);
    ++out.pairs;
    out.checks += 3;
    if (distance(*c, x, y) != distance(*r.fine(), r.to_fine(x), r.to_fine(y))) fail("a distance");
    if (!(divisor_at(fine, r.to_fine(x)) == refine(divisor_at(s, x), r))) fail("D_x");
    if (self_coefficient(fine, r.to_fine(x)) != self_coefficient(s, x)) fail("D_x(x)");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    ++out.checks;
    if (!(principal_divisor(fine.generators()[i]) == refine(principal_divisor(s.generators()[i]), r))) {
      fail("a principal divisor");
    }
  }
  out.checks += 2;
  if (algdim(fine) != algdim(s)) fail("algdim");
  if (check_star(fine).passed != check_star(s).passed) fail("the rank/geomdim check");

  const Witness w = construct_witness(s);
  const Witness wf = construct_witness(fine);
  out.checks += 6;
  if (w.certificate.degree != wf.certificate.degree) fail("the degree");
  std::vector<Indeterminacy> mapped;
  for (const auto& ind : wf.certificate.indeterminacy) mapped.push_back({r.to_coarse(ind.point), ind.multiplicity});
  std::sort(mapped.begin(), mapped.end(), [](const auto& a, const auto& b) { return a.point < b.point; });
  if (mapped != w.certificate.indeterminacy) fail("the indeterminacy set");
  if (w.certificate.graft_lengths != wf.certificate.graft_lengths) fail("the grafted trees");
  if (w.certificate.singletons != wf.certificate.singletons) fail("the singleton count");
  if (!isometric_trees(*w.target.curve, *wf.target.curve)) fail("the target tree");
  if (total_length(*w.modification.modified) != total_length(*wf.modification.modified) ||
      w.modification.modified->betti() != wf.modification.modified->betti()) {
    fail("the modified curve");
  }
  Certificate coarse_view = wf.certificate;
  coarse_view.indeterminacy = mapped;
  coarse_view.checkpoints.clear();
  Certificate reference = w.certificate;
  reference.checkpoints.clear();
  ++out.checks;
  if (to_string(coarse_view, *c, *wf.modification.modified) != to_string(reference, *c, *w.modification.modified)) {
    fail("the certificate");
  }
  return out;
}

}  // namespace tropgon::testing

namespace tropgon::testing {
namespace {

ProjPoint random_proj(std::mt19937& rng, std::size_t n) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i <= n; ++i) v.push_back(random_rational(rng, -4, 4, 3));
  return ProjPoint::from_finite(v);
}

}  // namespace

SuiteResult pushpull_suite(const Morphism& m, std::int64_t degree, std::mt19937& rng, std::size_t functions,
                           std::size_t divisors) {
  SuiteResult out;
  for (std::size_t i = 0; i < functions; ++i) {
    const PLFunction f = random_function(rng, m.source());
    const PLFunction g = random_function(rng, m.target());
    ++out.pairs;
    out.checks += 2;
    if (!(push_divisor(m, principal_divisor(f)) == principal_divisor(push_function(m, f)))) {
      out.failures.push_back("push-forward does not commute with div");
    }
    if (!(pull_divisor(m, principal_divisor(g)) == principal_divisor(pull_function(m, g)))) {
      out.failures.push_back("pull-back does not commute with div");
    }
  }
  for (std::size_t i = 0; i < divisors; ++i) {
    const Divisor d = random_divisor(rng, m.target(), 4);
    const Divisor e = random_divisor(rng, m.source(), 4);
    out.checks += 2;
    if (pull_divisor(m, d).degree() != degree * d.degree()) out.failures.push_back("pull-back degree law");
    if (push_divisor(m, e).degree() != e.degree()) out.failures.push_back("push-forward degree law");
  }
  return out;
}

SuiteResult segment_suite(std::mt19937& rng, std::size_t trials) {
  SuiteResult out;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const ProjPoint x = random_proj(rng, n), y = random_proj(rng, n);
    const std::vector<ProjPoint> seg = tropical_segment(x, y);
    ++out.pairs;
    out.checks += 3;
    if (!(seg.front() == x) || !(seg.back() == y)) out.failures.push_back("segment endpoints");
    if (seg.size() - 1 > n) out.failures.push_back("segment has more than n pieces");
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
      const auto a = seg[i].finite_coords(), b = seg[i + 1].finite_coords();
      std::set<Rational> diffs;
      for (std::size_t j = 0; j <= n; ++j) diffs.insert(Rational(b[j] - a[j]));
      ++out.checks;
      if (diffs.size() != 2) out.failures.push_back("segment direction is not a 0/1 vector");
    }
    const Rational total = proj_distance(x, y);
    for (const auto& b : seg) {
      ++out.checks;
      if (proj_distance(x, b) + proj_distance(b, y) != total) out.failures.push_back("breakpoint off the geodesic");
    }
    const std::vector<ProjPoint> rev = tropical_segment(y, x);
    if (std::set<ProjPoint>(seg.begin(), seg.end()) != std::set<ProjPoint>(rev.begin(), rev.end())) {
      out.failures.push_back("segment depends on the direction");
    }
  }
  return out;
}

SuiteResult metric_suite(std::mt19937& rng, std::size_t triples) {
  SuiteResult out;
  for (std::size_t trial = 0; trial < triples; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const ProjPoint x = random_proj(rng, n), y = random_proj(rng, n), z = random_proj(rng, n);
    ++out.pairs;
    out.checks += 4;
    if (proj_distance(x, y) != proj_distance(y, x)) out.failures.push_back("asymmetric distance");
    if (proj_distance(x, z) > proj_distance(x, y) + proj_distance(y, z)) out.failures.push_back("triangle inequality");
    if ((proj_distance(x, y) == 0) != proj_equal(x, y)) out.failures.push_back("distance zero between distinct points");
    if (proj_distance(x, x) != 0) out.failures.push_back("nonzero self-distance");
  }
  return out;
}

}  // namespace tropgon::testing
