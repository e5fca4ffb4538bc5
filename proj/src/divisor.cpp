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

#include "tropgon/divisor.hpp"

#include <algorithm>

#include "tropgon/error.hpp"

namespace tropgon {

bool same_curve(const CurvePtr& a, const CurvePtr& b) {
  return a == b || (a && b && *a == *b);
}

Divisor::Divisor(CurvePtr curve) : curve_(std::move(curve)) {}

Divisor::Divisor(CurvePtr curve, const std::map<Point, std::int64_t>& entries)
    : curve_(std::move(curve)) {
  for (const auto& [p, c] : entries) add(p, c);
}

Divisor Divisor::point(CurvePtr curve, const Point& p, std::int64_t coefficient) {
  Divisor d(std::move(curve));
  d.add(p, coefficient);
  return d;
}

std::int64_t Divisor::operator()(const Point& p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? 0 : it->second;
}

void Divisor::add(const Point& p, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = entries_.emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) entries_.erase(it);
  }
}

std::int64_t Divisor::degree() const {
  std::int64_t deg = 0;
  for (const auto& [p, c] : entries_) deg += c;
  return deg;
}

std::vector<Point> Divisor::support() const {
  std::vector<Point> out;
  for (const auto& [p, c] : entries_) out.push_back(p);
  return out;
}

bool Divisor::is_effective() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second > 0; });
}

Divisor& Divisor::operator+=(const Divisor& other) {
  if (!same_curve(curve_, other.curve_)) throw Error("divisors live on different curves");
  for (const auto& [p, c] : other.entries_) add(p, c);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& other) {
  if (!same_curve(curve_, other.curve_)) throw Error("divisors live on different curves");
  for (const auto& [p, c] : other.entries_) add(p, -c);
  return *this;
}

Divisor operator*(std::int64_t k, const Divisor& d) {
  Divisor out(d.curve_);
  for (const auto& [p, c] : d.entries_) out.add(p, k * c);
  return out;
}

bool operator==(const Divisor& a, const Divisor& b) {
  return same_curve(a.curve_, b.curve_) && a.entries_ == b.entries_;
}

std::string to_string(const Divisor& d) {
  std::vector<std::pair<Point, std::int64_t>> terms(d.entries().begin(), d.entries().end());
  const Curve& c = *d.curve();
  std::sort(terms.begin(), terms.end(),
            [&c](const auto& a, const auto& b) { return print_order_less(c, a.first, b.first); });
  std::string s;
  for (const auto& [p, coef] : terms) {
    if (!s.empty()) s += " ";
    s += std::to_string(coef) + "*" + c.format_point(p);
  }
  return s;
}

Divisor refine(const Divisor& d, const Refinement& r) {
  if (!same_curve(d.curve(), r.coarse())) throw Error("divisor is not on the refined curve");
  Divisor out(r.fine());
  for (const auto& [p, c] : d.entries()) out.add(r.to_fine(p), c);
  return out;
}

Divisor coarsen(const Divisor& d, const Refinement& r) {
  if (!same_curve(d.curve(), r.fine())) throw Error("divisor is not on the fine curve");
  Divisor out(r.coarse());
  for (const auto& [p, c] : d.entries()) out.add(r.to_coarse(p), c);
  return out;
}

}  // namespace tropgon
