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

#include "msl/principal.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace msl {

namespace {

struct Candidate {
  std::vector<int> set;
  Rat density;

  // (density desc, cardinality desc, lexicographic asc).
  bool better_than(const Candidate& other) const {
    if (density != other.density) return density > other.density;
    if (set.size() != other.set.size()) return set.size() > other.set.size();
    return set < other.set;
  }
};

std::pair<std::vector<int>, Rat> densest_by_enumeration(const Matroid& m,
                                                        const std::vector<int>& nonloops) {
  const int k = static_cast<int>(nonloops.size());
  Candidate best;
  bool have = false;
  std::vector<int> subset;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    subset.clear();
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1) subset.push_back(nonloops[i]);
    }
    int r = m.rank_of(subset);
    Candidate cand{subset, Rat(static_cast<long>(subset.size()), r)};
    if (!have || cand.better_than(best)) {
      best = std::move(cand);
      have = true;
    }
  }
  return {best.set, best.density};
}

// Densest subset of a partition matroid (under the current view): full
// blocks are optimal within a block, and mixing blocks cannot beat the best
// block, so the answer is the union of all maximum-density blocks.
std::pair<std::vector<int>, Rat> densest_partition(const Matroid& m,
                                                   const std::vector<int>& nonloops) {
  const auto* data = m.partition_data();
  std::map<int, std::vector<int>> alive_in_block;
  for (int e : nonloops) alive_in_block[data->block_of[e]].push_back(e);

  Rat best(-1);
  for (auto& [b, elems] : alive_in_block) {
    std::vector<int> probe{elems.front()};
    int cap = m.rank_of(elems);  // view-reduced capacity, clipped to the block
    Rat d(static_cast<long>(elems.size()), cap);
    if (d > best) best = d;
  }
  std::vector<int> out;
  for (auto& [b, elems] : alive_in_block) {
    int cap = m.rank_of(elems);
    if (Rat(static_cast<long>(elems.size()), cap) == best) {
      out.insert(out.end(), elems.begin(), elems.end());
    }
  }
  std::sort(out.begin(), out.end());
  return {out, best};
}

// Maximum density over all edge subsets of a (viewed) graphic matroid. The
// maximal densest set is span-closed, hence induced by a vertex subset, so
// enumerating vertex subsets of the contracted multigraph is exhaustive.
Rat graphic_max_density(const Matroid& m, const std::vector<int>& nonloops) {
  const auto* data = m.graphic_data();

  // Contract the view's contracted edges by merging their endpoints.
  std::vector<int> parent(data->num_vertices);
  for (int i = 0; i < data->num_vertices; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int e : m.contracted_elements()) {
    auto [u, v] = data->edges[e];
    parent[find(u)] = find(v);
  }

  // Touched merged vertices, relabeled densely.
  std::map<int, int> label;
  std::vector<std::pair<int, int>> edges;
  for (int e : nonloops) {
    auto [u, v] = data->edges[e];
    int ru = find(u), rv = find(v);
    if (!label.count(ru)) label[ru] = static_cast<int>(label.size());
    if (!label.count(rv)) label[rv] = static_cast<int>(label.size());
    edges.emplace_back(label[ru], label[rv]);
  }
  const int nv = static_cast<int>(label.size());
  if (nv > kGraphicVertexLimit) {
    throw std::invalid_argument("graphic matroid too large for density analysis (vertices > " +
                                std::to_string(kGraphicVertexLimit) + ")");
  }

  Rat best(-1);
  std::vector<int> scratch(nv);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << nv); ++mask) {
    int inside = 0;
    for (auto [u, v] : edges) {
      if ((mask >> u & 1) && (mask >> v & 1)) ++inside;
    }
    if (inside == 0) continue;
    for (int i = 0; i < nv; ++i) scratch[i] = i;
    std::function<int(int)> f2 = [&](int x) {
      while (scratch[x] != x) {
        scratch[x] = scratch[scratch[x]];
        x = scratch[x];
      }
      return x;
    };
    int rank = 0;
    for (auto [u, v] : edges) {
      if ((mask >> u & 1) && (mask >> v & 1) && f2(u) != f2(v)) {
        scratch[f2(u)] = f2(v);
        ++rank;
      }
    }
    Rat d(inside, rank);
    if (d > best) best = d;
  }
  return best;
}

std::vector<int> nonloop_elements(const Matroid& m) {
  std::vector<int> out;
  for (int e : m.elements()) {
    if (!m.is_loop(e)) out.push_back(e);
  }
  return out;
}

}  // namespace

Rat density(const Matroid& m, std::span<const int> s) {
  int r = m.rank_of(s);
  if (r == 0) {
    throw std::invalid_argument("density: undefined for zero-rank sets");
  }
  return Rat(static_cast<long>(s.size()), r);
}

std::pair<std::vector<int>, Rat> densest_subset(const Matroid& m) {
  std::vector<int> nonloops = nonloop_elements(m);
  if (nonloops.empty()) {
    throw std::invalid_argument("densest_subset: matroid has no non-loop element");
  }
  switch (m.family()) {
    case Matroid::Family::kUniform:
      // The whole set: |S|/min(|S|, r') only grows with |S|.
      return {nonloops, density(m, nonloops)};
    case Matroid::Family::kPartition:
      return densest_partition(m, nonloops);
    default:
      break;
  }
  if (static_cast<int>(nonloops.size()) <= kDensestBruteForceLimit) {
    return densest_by_enumeration(m, nonloops);
  }
  throw std::invalid_argument(
      "densest_subset: matroid too large for enumeration (> " +
      std::to_string(kDensestBruteForceLimit) + " non-loop elements) and no closed form applies");
}

bool is_uniformly_dense(const Matroid& m) {
  std::vector<int> nonloops = nonloop_elements(m);
  if (nonloops.size() != m.elements().size()) return false;  // loopy
  if (nonloops.empty()) return true;                         // vacuous
  Rat whole = density(m, nonloops);
  switch (m.family()) {
    case Matroid::Family::kUniform:
      return true;
    case Matroid::Family::kPartition:
      return densest_partition(m, nonloops).second == whole;
    case Matroid::Family::kGraphic:
      if (static_cast<int>(nonloops.size()) > kDensestBruteForceLimit) {
        return graphic_max_density(m, nonloops) == whole;
      }
      break;
    default:
      break;
  }
  return densest_subset(m).second == whole;
}

PrincipalDecomposition principal_minors(const Matroid& m) {
  PrincipalDecomposition out;
  out.ground_size = m.ground_size();

  std::vector<int> remaining = m.elements();
  std::vector<int> contracted;
  while (true) {
    Matroid current = m.minor(contracted, remaining);
    // Loops of the current contraction drop to the remainder bucket.
    std::vector<int> loops = current.loops();
    if (!loops.empty()) {
      out.loop_remainder.insert(out.loop_remainder.end(), loops.begin(), loops.end());
      std::vector<int> kept;
      std::set_difference(remaining.begin(), remaining.end(), loops.begin(), loops.end(),
                          std::back_inserter(kept));
      remaining = std::move(kept);
      current = m.minor(contracted, remaining);
    }
    if (remaining.empty()) break;

    auto [set, dens] = densest_subset(current);
    Matroid part_minor = m.minor(contracted, set);
    int r = part_minor.rank();
    out.parts.push_back(PrincipalPart{set, std::move(part_minor), r, dens});

    std::vector<int> new_contracted;
    std::merge(contracted.begin(), contracted.end(), set.begin(), set.end(),
               std::back_inserter(new_contracted));
    contracted = std::move(new_contracted);
    std::vector<int> kept;
    std::set_difference(remaining.begin(), remaining.end(), set.begin(), set.end(),
                        std::back_inserter(kept));
    remaining = std::move(kept);
  }
  std::sort(out.loop_remainder.begin(), out.loop_remainder.end());
  return out;
}

Matroid soto_partition_matroid(const PrincipalDecomposition& d) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> caps;
  for (const PrincipalPart& part : d.parts) {
    blocks.push_back(part.elements);
    caps.push_back(part.rank);
  }
  if (!d.loop_remainder.empty()) {
    blocks.push_back(d.loop_remainder);
    caps.push_back(0);
  }
  return Matroid::Partition(d.ground_size, std::move(blocks), std::move(caps));
}

}  // namespace msl
