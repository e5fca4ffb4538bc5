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

#pragma once

#include <optional>

#include "tropgon/divisor.hpp"
#include "tropgon/pl_function.hpp"

namespace tropgon {

struct EquivalenceResult {
  bool equivalent = false;
  // When equivalent: w with D = D' + div(w), normalized to w = 0 at the
  // curve's first finite vertex.
  std::optional<PLFunction> witness;
};

/// Decides whether D - D' is principal.
///
/// After subdividing at the supports, a function with divisor D - D' is
/// affine on every edge, so its vertex values solve a weighted Laplacian
/// system that is unique up to a constant. The divisors are equivalent
/// exactly when that solution has integer slopes. Different degrees give
/// false.
EquivalenceResult linearly_equivalent(const Divisor& d, const Divisor& d_prime);

}  // namespace tropgon
