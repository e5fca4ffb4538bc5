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

#include "tropgon/edge_function.hpp"

#include <algorithm>

#include "tropgon/error.hpp"

namespace tropgon {
namespace {

struct Span {
  Rational from;
  std::optional<Rational> to;  // nullopt: +inf
  std::int64_t slope;
  Rational value;  // at `from`
};

std::vector<Span> spans_of(const EdgeFunction& f) {
  std::vector<Span> out;
  Rational pos = 0;
  Rational val = f.start();
  for (const auto& p : f.pieces()) {
    out.push_back({pos, Rational(pos + p.length), p.slope, val});
    val += p.slope * p.length;
    pos += p.length;
  }
  if (f.tail_slope()) out.push_back({pos, std::nullopt, *f.tail_slope(), val});
  return out;
}

class Builder {
 public:
  explicit Builder(Rational start) : start_(std::move(start)) {}
  void add(std::int64_t slope, const Rational& len) {
    if (len > 0) pieces_.push_back({slope, len});
  }
  EdgeFunction finish(std::optional<std::int64_t> tail) {
    if (tail) return EdgeFunction(start_, std::move(pieces_), *tail);
    return EdgeFunction(start_, std::move(pieces_));
  }

 private:
  Rational start_;
  std::vector<EdgeFunction::Piece> pieces_;
};

// Calls f(u, v, a_value_at_u, a_slope, b_value_at_u, b_slope) for each
// maximal interval on which both functions are affine.
template <class F>
void for_each_common_interval(const EdgeFunction& a, const EdgeFunction& b, F&& f) {
  if (!(a.length() == b.length())) throw Error("edge functions on different domains");
  std::vector<Rational> knots{Rational(0)};
  for (const auto& s : spans_of(a)) knots.push_back(s.from);
  for (const auto& s : spans_of(b)) knots.push_back(s.from);
  if (!a.unbounded()) knots.push_back(a.finite_length());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    std::optional<Rational> v;
    if (i + 1 < knots.size()) {
      v = knots[i + 1];
    } else if (!a.unbounded()) {
      break;
    }
    const Rational& u = knots[i];
    f(u, v, a.value_at(ExtRational(u)).value(), a.slope_right(u), b.value_at(ExtRational(u)).value(),
      b.slope_right(u));
  }
}

}  // namespace

EdgeFunction::EdgeFunction(Rational start, std::vector<Piece> pieces)
    : start_(std::move(start)), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error("edge function needs a nonempty domain");
  canonicalize();
}

EdgeFunction::EdgeFunction(Rational start, std::vector<Piece> pieces, std::int64_t tail_slope)
    : start_(std::move(start)), pieces_(std::move(pieces)), tail_(tail_slope) {
  canonicalize();
}

EdgeFunction EdgeFunction::constant(Rational value, const ExtRational& length) {
  return affine(std::move(value), 0, length);
}

EdgeFunction EdgeFunction::affine(Rational start, std::int64_t slope, const ExtRational& length) {
  if (length.is_plus_infinity()) return EdgeFunction(std::move(start), {}, slope);
  return EdgeFunction(std::move(start), {{slope, length.value()}});
}

void EdgeFunction::canonicalize() {
  std::vector<Piece> merged;
  for (auto& p : pieces_) {
    if (p.length <= 0) throw Error("edge function piece of nonpositive length");
    if (!merged.empty() && merged.back().slope == p.slope) {
      merged.back().length += p.length;
    } else {
      merged.push_back(std::move(p));
    }
  }
  if (tail_) {
    while (!merged.empty() && merged.back().slope == *tail_) merged.pop_back();
  }
  pieces_ = std::move(merged);
}

ExtRational EdgeFunction::length() const {
  if (tail_) return ExtRational::plus_infinity();
  return ExtRational(finite_length());
}

Rational EdgeFunction::finite_length() const {
  Rational len = 0;
  for (const auto& p : pieces_) len += p.length;
  return len;
}

ExtRational EdgeFunction::value_at(const ExtRational& t) const {
  if (t.is_plus_infinity()) {
    if (!tail_) throw Error("edge function evaluated at +inf on a bounded domain");
    if (*tail_ > 0) return ExtRational::plus_infinity();
    if (*tail_ < 0) return ExtRational::minus_infinity();
    return value_at(ExtRational(finite_length()));
  }
  const Rational& x = t.value();
  if (x < 0 || (!tail_ && x > finite_length())) throw Error("edge function evaluated outside its domain");
  Rational pos = 0;
  Rational val = start_;
  for (const auto& p : pieces_) {
    if (x <= pos + p.length) return ExtRational(Rational(val + p.slope * (x - pos)));
    val += p.slope * p.length;
    pos += p.length;
  }
  return ExtRational(Rational(val + *tail_ * (x - pos)));
}

std::int64_t EdgeFunction::slope_right(const Rational& t) const {
  Rational pos = 0;
  for (const auto& p : pieces_) {
    if (t < pos + p.length) return p.slope;
    pos += p.length;
  }
  if (tail_) return *tail_;
  throw Error("no piece to the right of the domain end");
}

std::int64_t EdgeFunction::slope_left(const ExtRational& t) const {
  if (t.is_plus_infinity()) {
    if (!tail_) throw Error("no tail on a bounded domain");
    return *tail_;
  }
  Rational pos = 0;
  for (const auto& p : pieces_) {
    if (t.value() <= pos + p.length && t.value() > pos) return p.slope;
    pos += p.length;
  }
  if (tail_ && t.value() > pos) return *tail_;
  throw Error("no piece to the left of the domain start");
}

std::vector<Rational> EdgeFunction::breakpoints() const {
  std::vector<Rational> out;
  Rational pos = 0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    pos += pieces_[i].length;
    if (i + 1 < pieces_.size() || tail_) out.push_back(pos);
  }
  return out;
}

ExtRational EdgeFunction::max_value() const {
  if (tail_ && *tail_ > 0) return ExtRational::plus_infinity();
  Rational best = start_;
  Rational val = start_;
  for (const auto& p : pieces_) {
    val += p.slope * p.length;
    best = std::max(best, val);
  }
  return ExtRational(best);
}

ExtRational EdgeFunction::min_value() const {
  if (tail_ && *tail_ < 0) return ExtRational::minus_infinity();
  Rational best = start_;
  Rational val = start_;
  for (const auto& p : pieces_) {
    val += p.slope * p.length;
    best = std::min(best, val);
  }
  return ExtRational(best);
}

EdgeFunction EdgeFunction::shifted(const Rational& c) const {
  EdgeFunction f = *this;
  f.start_ += c;
  return f;
}

EdgeFunction EdgeFunction::negated() const {
  EdgeFunction f = *this;
  f.start_ = -f.start_;
  for (auto& p : f.pieces_) p.slope = -p.slope;
  if (f.tail_) f.tail_ = -*f.tail_;
  return f;
}

EdgeFunction EdgeFunction::restricted(const Rational& lo, const ExtRational& hi) const {
  if (lo < 0 || !(ExtRational(lo) < hi) || hi > length()) {
    throw Error("edge function restricted to an invalid interval");
  }
  Builder b(value_at(ExtRational(lo)).value());
  for (const auto& s : spans_of(*this)) {
    ExtRational s_to = s.to ? ExtRational(*s.to) : ExtRational::plus_infinity();
    ExtRational u = std::max(ExtRational(s.from), ExtRational(lo));
    ExtRational v = std::min(s_to, hi);
    if (!(u < v)) continue;
    if (v.is_plus_infinity()) return b.finish(s.slope);
    b.add(s.slope, Rational(v.value() - u.value()));
  }
  return b.finish(std::nullopt);
}

EdgeFunction EdgeFunction::reversed() const {
  if (tail_) throw Error("cannot reverse an unbounded edge function");
  std::vector<Piece> rev;
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) rev.push_back({-it->slope, it->length});
  return EdgeFunction(end_value().value(), std::move(rev));
}

EdgeFunction EdgeFunction::compressed(std::int64_t k) const {
  if (k <= 0) throw Error("compression factor must be positive");
  std::vector<Piece> ps;
  for (const auto& p : pieces_) ps.push_back({p.slope * k, Rational(p.length / k)});
  if (tail_) return EdgeFunction(start_, std::move(ps), *tail_ * k);
  return EdgeFunction(start_, std::move(ps));
}

EdgeFunction EdgeFunction::stretched(std::int64_t k) const {
  if (k <= 0) throw Error("stretch factor must be positive");
  std::vector<Piece> ps;
  for (const auto& p : pieces_) ps.push_back({p.slope, Rational(p.length * k)});
  if (tail_) return EdgeFunction(Rational(start_ * k), std::move(ps), *tail_);
  return EdgeFunction(Rational(start_ * k), std::move(ps));
}

EdgeFunction max(const EdgeFunction& a, const EdgeFunction& b) {
  Builder out(std::max(a.start(), b.start()));
  std::optional<std::int64_t> tail;
  for_each_common_interval(a, b, [&](const Rational& u, const std::optional<Rational>& v,
                                     const Rational& av, std::int64_t as, const Rational& bv,
                                     std::int64_t bs) {
    const Rational gap = av - bv;  // a - b at u
    const std::int64_t ds = as - bs;
    auto emit = [&](std::int64_t slope, const Rational& from, const std::optional<Rational>& to) {
      if (to) {
        out.add(slope, Rational(*to - from));
      } else {
        tail = slope;
      }
    };
    if (ds != 0) {
      Rational cross = u - gap / ds;
      if (cross > u && (!v || cross < *v)) {
        emit(gap > 0 ? as : bs, u, cross);
        emit(gap > 0 ? bs : as, cross, v);
        return;
      }
    }
    bool a_wins = gap > 0 || (gap == 0 && ds >= 0);
    emit(a_wins ? as : bs, u, v);
  });
  return out.finish(tail);
}

EdgeFunction operator+(const EdgeFunction& a, const EdgeFunction& b) {
  Builder out(Rational(a.start() + b.start()));
  std::optional<std::int64_t> tail;
  for_each_common_interval(a, b, [&](const Rational& u, const std::optional<Rational>& v,
                                     const Rational&, std::int64_t as, const Rational&,
                                     std::int64_t bs) {
    if (v) {
      out.add(as + bs, Rational(*v - u));
    } else {
      tail = as + bs;
    }
  });
  return out.finish(tail);
}

bool operator==(const EdgeFunction& a, const EdgeFunction& b) {
  if (a.start_ != b.start_ || a.tail_ != b.tail_ || a.pieces_.size() != b.pieces_.size()) return false;
  for (std::size_t i = 0; i < a.pieces_.size(); ++i) {
    if (a.pieces_[i].slope != b.pieces_[i].slope || a.pieces_[i].length != b.pieces_[i].length) {
      return false;
    }
  }
  return true;
}

}  // namespace tropgon
