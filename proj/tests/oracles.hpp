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

// Independent brute-force oracles used only by tests. These deliberately
// avoid the library's family-specific fast paths: everything here is derived
// from is_independent or from first principles.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "msl/matroid.hpp"
#include "msl/rational.hpp"

namespace msl::testing {

inline std::vector<int> mask_to_set(const std::vector<int>& ids, std::uint32_t mask) {
  std::vector<int> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (mask >> i & 1) out.push_back(ids[i]);
  }
  return out;
}

// Rank by greedily growing a maximal independent subset with is_independent
// queries only.
inline int greedy_rank_oracle(const Matroid& m, const std::vector<int>& s) {
  std::vector<int> kept;
  for (int e : s) {
    std::vector<int> cand = kept;
    cand.push_back(e);
    if (m.is_independent(cand)) kept = std::move(cand);
  }
  return static_cast<int>(kept.size());
}

// Exhaustive maximum weight over all independent subsets.
inline double exhaustive_opt_oracle(const Matroid& m, const WeightAssignment& w) {
  const std::vector<int>& ids = m.elements();
  double best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << ids.size()); ++mask) {
    std::vector<int> s = mask_to_set(ids, mask);
    if (!m.is_independent(s)) continue;
    best = std::max(best, weight_of_set(w, s));
  }
  return best;
}

// Brute-force densest subset over non-loop elements; ties by cardinality then
// lexicographic, mirroring the contract under test but derived independently.
inline std::pair<std::vector<int>, Rat> densest_oracle(const Matroid& m) {
  std::vector<int> ids;
  for (int e : m.elements()) {
    if (!m.is_loop(e)) ids.push_back(e);
  }
  std::vector<int> best_set;
  Rat best_density(-1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << ids.size()); ++mask) {
    std::vector<int> s = mask_to_set(ids, mask);
    Rat d(static_cast<long>(s.size()), greedy_rank_oracle(m, s));
    if (d > best_density || (d == best_density && s.size() > best_set.size()) ||
        (d == best_density && s.size() == best_set.size() && s < best_set)) {
      best_density = d;
      best_set = s;
    }
  }
  return {best_set, best_density};
}

struct AxiomReport {
  bool hereditary = true;
  bool exchange = true;
  bool rank_monotone = true;
  bool rank_submodular = true;
  bool ok() const { return hereditary && exchange && rank_monotone && rank_submodular; }
};

// Exhaustive matroid axiom check; usable up to ~12 elements.
inline AxiomReport check_matroid_axioms(const Matroid& m) {
  const std::vector<int>& ids = m.elements();
  const int k = static_cast<int>(ids.size());
  const std::uint32_t limit = std::uint32_t{1} << k;
  std::vector<char> indep(limit);
  std::vector<int> rank(limit);
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::vector<int> s = mask_to_set(ids, mask);
    indep[mask] = m.is_independent(s);
    rank[mask] = m.rank_of(s);
  }
  AxiomReport rep;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (indep[mask]) {
      for (int i = 0; i < k; ++i) {
        if ((mask >> i & 1) && !indep[mask & ~(std::uint32_t{1} << i)]) rep.hereditary = false;
      }
    }
  }
  for (std::uint32_t a = 0; a < limit; ++a) {
    if (!indep[a]) continue;
    for (std::uint32_t b = 0; b < limit; ++b) {
      if (!indep[b] || std::popcount(a) >= std::popcount(b)) continue;
      bool extended = false;
      for (int i = 0; i < k && !extended; ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        if ((b & bit) && !(a & bit) && indep[a | bit]) extended = true;
      }
      if (!extended) rep.exchange = false;
    }
  }
  for (std::uint32_t a = 0; a < limit; ++a) {
    for (std::uint32_t b = 0; b < limit; ++b) {
      if ((a & b) == a && rank[a] > rank[b]) rep.rank_monotone = false;
      if (rank[a | b] + rank[a & b] > rank[a] + rank[b]) rep.rank_submodular = false;
    }
  }
  return rep;
}

// P[|B| <= bound] when a uniformly random (t-1)-subset of n elements is split
// against a fixed half of size n/2, as an exact hypergeometric sum.
inline Rat hypergeometric_half_split(int n, int t_minus_1, int bound) {
  Int total = binomial(n, t_minus_1);
  Int favorable = 0;
  for (int k = 0; k <= bound; ++k) {
    favorable += binomial(n / 2, k) * binomial(n / 2, t_minus_1 - k);
  }
  return Rat(favorable) / Rat(total);
}

}  // namespace msl::testing
