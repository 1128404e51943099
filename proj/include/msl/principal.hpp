// Copyright 2026 The Authors.
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

#include <span>
#include <utility>
#include <vector>

#include "msl/matroid.hpp"
#include "msl/rational.hpp"

namespace msl {

// Densest-subset search falls back to enumerating all subsets; beyond this
// many elements only families with a closed form are accepted.
inline constexpr int kDensestBruteForceLimit = 20;
// Vertex-subset enumeration limit for the graphic closed form.
inline constexpr int kGraphicVertexLimit = 20;

struct PrincipalPart {
  std::vector<int> elements;  // ids in the base ground set
  Matroid minor;              // uniformly dense and loop-free
  int rank = 0;
  Rat density;                // |elements| / rank, taken in the contracted matroid
};

// Result of repeatedly restricting to the densest set and contracting it.
// Parts are disjoint, their densities are non-increasing, and together with
// loop_remainder they cover the ground set. Loops (original or created by a
// contraction) go to loop_remainder and never enter a part.
struct PrincipalDecomposition {
  std::vector<PrincipalPart> parts;
  std::vector<int> loop_remainder;
  int ground_size = 0;
};

// |s| / rank(s) as an exact rational. Throws for zero-rank (all-loop) sets,
// whose density is undefined.
Rat density(const Matroid& m, std::span<const int> s);

// The subset of non-loop elements maximizing density; ties prefer larger
// cardinality, then the lexicographically smallest index set. Throws when the
// matroid has no non-loop element or is too large for every available method.
std::pair<std::vector<int>, Rat> densest_subset(const Matroid& m);

// True iff no subset is denser than the full ground set. A matroid with a
// loop is never uniformly dense.
bool is_uniformly_dense(const Matroid& m);

PrincipalDecomposition principal_minors(const Matroid& m);

// The partition matroid with blocks E_i and capacities r_i taken from the
// decomposition; its optimum is the union of the r_i heaviest elements of
// each part. Remainder elements are loops of the result.
Matroid soto_partition_matroid(const PrincipalDecomposition& d);

}  // namespace msl
