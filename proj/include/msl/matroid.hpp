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

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace msl {

class Rng;

// A matroid over a dense ground set {0, ..., n-1}, given by one of four
// concrete families, possibly viewed through a minor (a set of contracted
// elements plus a restriction of the surviving ground set).
//
// Element ids always refer to the base ground set; a minor keeps the ids of
// its surviving elements. The viewed rank function is
//   rank(S) = rank_base(S + contracted) - rank_base(contracted).
//
// Instances are immutable after construction; all queries are read-only and
// safe to use from many threads at once.
class Matroid {
 public:
  enum class Family { kUniform, kPartition, kGraphic, kExplicit };

  // Independent sets are the subsets of size at most r.
  static Matroid Uniform(int n, int r);

  // Independent sets pick at most capacities[b] elements from blocks[b].
  // Blocks must be disjoint; elements outside every block are loops, as are
  // elements of zero-capacity blocks.
  static Matroid Partition(int n, std::vector<std::vector<int>> blocks,
                           std::vector<int> capacities);

  // Elements are edges of a multigraph; independent sets are the forests.
  // Self-loop edges (u == v) are matroid loops.
  static Matroid Graphic(int num_vertices, std::vector<std::pair<int, int>> edges);

  // Given by the list of its bases (all maximal independent sets, equal
  // cardinality). Intended for tiny test matroids; n is capped at 63.
  static Matroid Explicit(int n, const std::vector<std::vector<int>>& bases);

  // {"type":"uniform","n":..,"r":..} | {"type":"partition","blocks":..,
  // "capacities":..} | {"type":"graphic","vertices":..,"edges":[[u,v],..]} |
  // {"type":"explicit","n":..,"bases":..}
  static Matroid FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;  // base matroids only, not minors

  Family family() const;
  bool is_view() const { return !contracted_.empty() || static_cast<int>(alive_.size()) != ground_size(); }

  int ground_size() const;                            // n of the base ground set
  const std::vector<int>& elements() const { return alive_; }
  int num_elements() const { return static_cast<int>(alive_.size()); }
  bool contains(int e) const;
  const std::vector<int>& contracted_elements() const { return contracted_; }

  int rank() const { return view_rank_; }
  int rank_of(std::span<const int> s) const;
  bool is_independent(std::span<const int> s) const;
  // { e alive : rank(s + e) == rank(s) }; a superset of s and of all loops.
  std::vector<int> span_of(std::span<const int> s) const;
  std::vector<int> loops() const;
  bool is_loop(int e) const { return rank_of(std::span<const int>(&e, 1)) == 0; }

  // Minor with `contract` contracted and `keep` as the surviving ground set.
  // The two sets must be disjoint subsets of elements().
  Matroid minor(std::span<const int> contract, std::span<const int> keep) const;
  Matroid restriction(std::span<const int> keep) const;
  Matroid contraction(std::span<const int> contract) const;

  // Family introspection for closed-form code paths.
  struct UniformData {
    int r;
  };
  struct PartitionData {
    std::vector<std::vector<int>> blocks;
    std::vector<int> capacities;
    std::vector<int> block_of;  // -1 when the element lies in no block
  };
  struct GraphicData {
    int num_vertices;
    std::vector<std::pair<int, int>> edges;
  };
  struct ExplicitData {
    std::vector<std::uint64_t> basis_masks;
    int basis_size;
  };
  const UniformData* uniform_data() const;
  const PartitionData* partition_data() const;
  const GraphicData* graphic_data() const;
  const ExplicitData* explicit_data() const;

 private:
  struct Base;
  Matroid(std::shared_ptr<const Base> base, std::vector<int> alive, std::vector<int> contracted);

  int base_rank_of(const std::vector<int>& sorted_set) const;
  void check_subset(std::span<const int> s, std::vector<int>& sorted_out) const;

  std::shared_ptr<const Base> base_;
  std::vector<int> alive_;       // sorted ids surviving in this view
  std::vector<int> contracted_;  // sorted ids contracted away
  int contracted_rank_ = 0;
  int view_rank_ = 0;
};

// A strictly decreasing list of nonnegative weights w_1 > w_2 > ... > w_n
// together with a bijection from elements to weight indices.
class WeightAssignment {
 public:
  WeightAssignment(std::vector<double> decreasing_weights, std::vector<int> index_of_element);
  static WeightAssignment Identity(std::vector<double> decreasing_weights);
  static WeightAssignment Shuffled(std::vector<double> decreasing_weights, Rng& rng);

  int size() const { return static_cast<int>(weights_.size()); }
  double weight_of(int element) const { return weights_[index_of_element_.at(element)]; }
  // 0-based index into the sorted weight list; index 0 holds the largest weight.
  int weight_index_of(int element) const { return index_of_element_.at(element); }
  int element_holding(int weight_index) const { return element_of_index_.at(weight_index); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& index_of_element() const { return index_of_element_; }

 private:
  std::vector<double> weights_;
  std::vector<int> index_of_element_;
  std::vector<int> element_of_index_;
};

// Matroid greedy: scan elements by decreasing weight, keep an element if it
// stays independent with what was kept. Unique optimum under strict weights.
std::vector<int> greedy_opt(const Matroid& m, const WeightAssignment& w);

double weight_of_set(const WeightAssignment& w, std::span<const int> s);

}  // namespace msl
