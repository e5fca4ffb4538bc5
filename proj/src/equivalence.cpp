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

#include "tropgon/equivalence.hpp"

#include <stdexcept>

#include "tropgon/error.hpp"

namespace tropgon {
namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Solves a nonsingular square system by Gauss-Jordan elimination.
std::vector<Rational> solve(Matrix a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::logic_error("singular Laplacian system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= factor * a[col][k];
      b[r] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

EquivalenceResult linearly_equivalent(const Divisor& d, const Divisor& d_prime) {
  if (!same_curve(d.curve(), d_prime.curve())) throw Error("divisors live on different curves");
  if (d.degree() != d_prime.degree()) return {};
  const Divisor diff = d - d_prime;
  const std::vector<Point> cuts = diff.support();
  const Refinement r(d.curve(), cuts);
  const Curve& fine = *r.fine();
  const Divisor target = refine(diff, r);

  std::vector<int> unknown(fine.vertex_count(), -1);
  int n = 0;
  for (int v = 0; v < fine.vertex_count(); ++v) {
    if (!fine.is_at_infinity(v)) unknown[v] = n++;
  }
  Matrix a(n, std::vector<Rational>(n));
  std::vector<Rational> b(n);
  for (int v = 0; v < fine.vertex_count(); ++v) {
    if (unknown[v] >= 0) b[unknown[v]] = target(fine.vertex_point(v));
  }
  // Slope along each unbounded edge, away from its finite end.
  std::vector<std::int64_t> ray_slope(fine.edge_count(), 0);
  for (int e = 0; e < fine.edge_count(); ++e) {
    const Edge& edge = fine.edge(e);
    if (edge.unbounded()) {
      ray_slope[e] = -target(fine.vertex_point(edge.to));
      b[unknown[edge.from]] -= ray_slope[e];
      continue;
    }
    if (edge.from == edge.to) continue;
    const Rational w = 1 / edge.length.value();
    const int i = unknown[edge.from], j = unknown[edge.to];
    a[i][i] -= w;
    a[i][j] += w;
    a[j][j] -= w;
    a[j][i] += w;
  }
  // The rows sum to zero; pin the first finite vertex instead.
  std::fill(a[0].begin(), a[0].end(), Rational(0));
  a[0][0] = 1;
  b[0] = 0;
  const std::vector<Rational> phi = solve(std::move(a), std::move(b));

  std::vector<EdgeFunction> pieces;
  for (int e = 0; e < fine.edge_count(); ++e) {
    const Edge& edge = fine.edge(e);
    const Rational& start = phi[unknown[edge.from]];
    if (edge.unbounded()) {
      pieces.push_back(EdgeFunction::affine(start, ray_slope[e], edge.length));
      continue;
    }
    const Rational slope = (phi[unknown[edge.to]] - start) / edge.length.value();
    if (!is_integer(slope)) return {};
    pieces.push_back(EdgeFunction::affine(start, to_integer(slope), edge.length));
  }
  PLFunction w = coarsen(PLFunction(r.fine(), std::move(pieces)), r);
  return {true, std::move(w)};
}

}  // namespace tropgon
