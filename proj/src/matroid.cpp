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

#include "msl/matroid.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "msl/random.hpp"

namespace msl {

namespace {

std::vector<int> sorted_unique(std::span<const int> s) {
  std::vector<int> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument("element set contains a duplicate id");
  }
  return out;
}

// Union-find over vertex ids, path halving.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

struct Matroid::Base {
  Family family;
  int n = 0;
  UniformData uniform{};
  PartitionData partition{};
  GraphicData graphic{};
  ExplicitData expl{};

  // Rank of a sorted duplicate-free subset of {0,...,n-1} in the base matroid.
  int rank(const std::vector<int>& set) const {
    switch (family) {
      case Family::kUniform:
        return std::min<int>(static_cast<int>(set.size()), uniform.r);
      case Family::kPartition: {
        std::vector<int> count(partition.capacities.size(), 0);
        for (int e : set) {
          int b = partition.block_of[e];
          if (b >= 0) ++count[b];
        }
        int r = 0;
        for (std::size_t b = 0; b < count.size(); ++b) {
          r += std::min(count[b], partition.capacities[b]);
        }
        return r;
      }
      case Family::kGraphic: {
        DisjointSets dsu(graphic.num_vertices);
        int r = 0;
        for (int e : set) {
          auto [u, v] = graphic.edges[e];
          if (dsu.merge(u, v)) ++r;
        }
        return r;
      }
      case Family::kExplicit: {
        std::uint64_t mask = 0;
        for (int e : set) mask |= std::uint64_t{1} << e;
        int best = 0;
        for (std::uint64_t b : expl.basis_masks) {
          best = std::max(best, std::popcount(mask & b));
        }
        return best;
      }
    }
    return 0;
  }
};

Matroid::Matroid(std::shared_ptr<const Base> base, std::vector<int> alive,
                 std::vector<int> contracted)
    : base_(std::move(base)), alive_(std::move(alive)), contracted_(std::move(contracted)) {
  contracted_rank_ = base_->rank(contracted_);
  std::vector<int> all = contracted_;
  all.insert(all.end(), alive_.begin(), alive_.end());
  std::sort(all.begin(), all.end());
  view_rank_ = base_->rank(all) - contracted_rank_;
}

Matroid Matroid::Uniform(int n, int r) {
  if (n < 0 || r < 0) throw std::invalid_argument("Uniform: n and r must be >= 0");
  auto base = std::make_shared<Base>();
  base->family = Family::kUniform;
  base->n = n;
  base->uniform.r = std::min(r, n);
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  return Matroid(std::move(base), std::move(alive), {});
}

Matroid Matroid::Partition(int n, std::vector<std::vector<int>> blocks,
                           std::vector<int> capacities) {
  if (n < 0) throw std::invalid_argument("Partition: n must be >= 0");
  if (blocks.size() != capacities.size()) {
    throw std::invalid_argument("Partition: one capacity per block required");
  }
  auto base = std::make_shared<Base>();
  base->family = Family::kPartition;
  base->n = n;
  base->partition.block_of.assign(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (capacities[b] < 0) throw std::invalid_argument("Partition: negative capacity");
    for (int e : blocks[b]) {
      if (e < 0 || e >= n) throw std::invalid_argument("Partition: element id out of range");
      if (base->partition.block_of[e] != -1) {
        throw std::invalid_argument("Partition: blocks must be disjoint");
      }
      base->partition.block_of[e] = static_cast<int>(b);
    }
  }
  base->partition.blocks = std::move(blocks);
  base->partition.capacities = std::move(capacities);
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  return Matroid(std::move(base), std::move(alive), {});
}

Matroid Matroid::Graphic(int num_vertices, std::vector<std::pair<int, int>> edges) {
  if (num_vertices < 0) throw std::invalid_argument("Graphic: vertex count must be >= 0");
  for (auto [u, v] : edges) {
    if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices) {
      throw std::invalid_argument("Graphic: edge endpoint out of range");
    }
  }
  auto base = std::make_shared<Base>();
  base->family = Family::kGraphic;
  base->n = static_cast<int>(edges.size());
  base->graphic.num_vertices = num_vertices;
  base->graphic.edges = std::move(edges);
  std::vector<int> alive(base->n);
  for (int i = 0; i < base->n; ++i) alive[i] = i;
  return Matroid(std::move(base), std::move(alive), {});
}

Matroid Matroid::Explicit(int n, const std::vector<std::vector<int>>& bases) {
  if (n < 0 || n > 63) throw std::invalid_argument("Explicit: n must be in [0, 63]");
  if (bases.empty()) throw std::invalid_argument("Explicit: at least one basis required");
  auto base = std::make_shared<Base>();
  base->family = Family::kExplicit;
  base->n = n;
  base->expl.basis_size = static_cast<int>(bases.front().size());
  for (const auto& b : bases) {
    if (static_cast<int>(b.size()) != base->expl.basis_size) {
      throw std::invalid_argument("Explicit: bases must share one cardinality");
    }
    std::uint64_t mask = 0;
    for (int e : b) {
      if (e < 0 || e >= n) throw std::invalid_argument("Explicit: element id out of range");
      mask |= std::uint64_t{1} << e;
    }
    if (std::popcount(mask) != base->expl.basis_size) {
      throw std::invalid_argument("Explicit: duplicate element inside a basis");
    }
    base->expl.basis_masks.push_back(mask);
  }
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  return Matroid(std::move(base), std::move(alive), {});
}

Matroid Matroid::FromJson(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") {
    return Uniform(j.at("n").get<int>(), j.at("r").get<int>());
  }
  if (type == "partition") {
    auto blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
    auto caps = j.at("capacities").get<std::vector<int>>();
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    Matroid m = Partition(n, blocks, caps);
    // The file format defines ids through the blocks, so they must cover
    // {0,...,n-1} exactly.
    for (int covered : m.partition_data()->block_of) {
      if (covered < 0) {
        throw std::invalid_argument("partition json: blocks must cover 0..n-1 exactly");
      }
    }
    return m;
  }
  if (type == "graphic") {
    auto edge_lists = j.at("edges").get<std::vector<std::vector<int>>>();
    std::vector<std::pair<int, int>> edges;
    edges.reserve(edge_lists.size());
    for (const auto& e : edge_lists) {
      if (e.size() != 2) throw std::invalid_argument("graphic json: each edge is [u, v]");
      edges.emplace_back(e[0], e[1]);
    }
    return Graphic(j.at("vertices").get<int>(), std::move(edges));
  }
  if (type == "explicit") {
    return Explicit(j.at("n").get<int>(), j.at("bases").get<std::vector<std::vector<int>>>());
  }
  throw std::invalid_argument("unknown matroid type '" + type + "'");
}

nlohmann::json Matroid::ToJson() const {
  if (is_view()) throw std::logic_error("ToJson: minors are not serializable");
  nlohmann::json j;
  switch (base_->family) {
    case Family::kUniform:
      j["type"] = "uniform";
      j["n"] = base_->n;
      j["r"] = base_->uniform.r;
      break;
    case Family::kPartition: {
      j["type"] = "partition";
      auto blocks = base_->partition.blocks;
      auto caps = base_->partition.capacities;
      std::vector<int> uncovered;
      for (int e = 0; e < base_->n; ++e) {
        if (base_->partition.block_of[e] < 0) uncovered.push_back(e);
      }
      if (!uncovered.empty()) {
        blocks.push_back(uncovered);
        caps.push_back(0);
      }
      j["blocks"] = blocks;
      j["capacities"] = caps;
      break;
    }
    case Family::kGraphic: {
      j["type"] = "graphic";
      j["vertices"] = base_->graphic.num_vertices;
      std::vector<std::vector<int>> edges;
      for (auto [u, v] : base_->graphic.edges) edges.push_back({u, v});
      j["edges"] = edges;
      break;
    }
    case Family::kExplicit: {
      j["type"] = "explicit";
      j["n"] = base_->n;
      std::vector<std::vector<int>> bases;
      for (std::uint64_t mask : base_->expl.basis_masks) {
        std::vector<int> b;
        for (int e = 0; e < base_->n; ++e) {
          if (mask >> e & 1) b.push_back(e);
        }
        bases.push_back(std::move(b));
      }
      j["bases"] = bases;
      break;
    }
  }
  return j;
}

Matroid::Family Matroid::family() const { return base_->family; }
int Matroid::ground_size() const { return base_->n; }

bool Matroid::contains(int e) const {
  return std::binary_search(alive_.begin(), alive_.end(), e);
}

int Matroid::base_rank_of(const std::vector<int>& sorted_set) const {
  if (contracted_.empty()) return base_->rank(sorted_set);
  std::vector<int> merged;
  merged.reserve(sorted_set.size() + contracted_.size());
  std::merge(sorted_set.begin(), sorted_set.end(), contracted_.begin(), contracted_.end(),
             std::back_inserter(merged));
  return base_->rank(merged);
}

void Matroid::check_subset(std::span<const int> s, std::vector<int>& sorted_out) const {
  sorted_out = sorted_unique(s);
  for (int e : sorted_out) {
    if (!contains(e)) {
      throw std::out_of_range("element " + std::to_string(e) + " is not in this matroid");
    }
  }
}

int Matroid::rank_of(std::span<const int> s) const {
  std::vector<int> set;
  check_subset(s, set);
  return base_rank_of(set) - contracted_rank_;
}

bool Matroid::is_independent(std::span<const int> s) const {
  std::vector<int> set;
  check_subset(s, set);
  return base_rank_of(set) - contracted_rank_ == static_cast<int>(set.size());
}

std::vector<int> Matroid::span_of(std::span<const int> s) const {
  std::vector<int> set;
  check_subset(s, set);
  const int r = base_rank_of(set) - contracted_rank_;
  std::vector<int> out;
  std::vector<int> extended;
  for (int e : alive_) {
    if (std::binary_search(set.begin(), set.end(), e)) {
      out.push_back(e);
      continue;
    }
    extended = set;
    extended.insert(std::lower_bound(extended.begin(), extended.end(), e), e);
    if (base_rank_of(extended) - contracted_rank_ == r) out.push_back(e);
  }
  return out;
}

std::vector<int> Matroid::loops() const {
  std::vector<int> out;
  for (int e : alive_) {
    if (is_loop(e)) out.push_back(e);
  }
  return out;
}

Matroid Matroid::minor(std::span<const int> contract, std::span<const int> keep) const {
  std::vector<int> c, k;
  check_subset(contract, c);
  check_subset(keep, k);
  std::vector<int> overlap;
  std::set_intersection(c.begin(), c.end(), k.begin(), k.end(), std::back_inserter(overlap));
  if (!overlap.empty()) {
    throw std::invalid_argument("minor: contract and keep sets overlap");
  }
  std::vector<int> new_contracted;
  std::merge(contracted_.begin(), contracted_.end(), c.begin(), c.end(),
             std::back_inserter(new_contracted));
  return Matroid(base_, std::move(k), std::move(new_contracted));
}

Matroid Matroid::restriction(std::span<const int> keep) const { return minor({}, keep); }

Matroid Matroid::contraction(std::span<const int> contract) const {
  std::vector<int> c = sorted_unique(contract);
  std::vector<int> keep;
  std::set_difference(alive_.begin(), alive_.end(), c.begin(), c.end(), std::back_inserter(keep));
  return minor(c, keep);
}

const Matroid::UniformData* Matroid::uniform_data() const {
  return base_->family == Family::kUniform ? &base_->uniform : nullptr;
}
const Matroid::PartitionData* Matroid::partition_data() const {
  return base_->family == Family::kPartition ? &base_->partition : nullptr;
}
const Matroid::GraphicData* Matroid::graphic_data() const {
  return base_->family == Family::kGraphic ? &base_->graphic : nullptr;
}
const Matroid::ExplicitData* Matroid::explicit_data() const {
  return base_->family == Family::kExplicit ? &base_->expl : nullptr;
}

WeightAssignment::WeightAssignment(std::vector<double> decreasing_weights,
                                   std::vector<int> index_of_element)
    : weights_(std::move(decreasing_weights)), index_of_element_(std::move(index_of_element)) {
  const int n = static_cast<int>(weights_.size());
  if (static_cast<int>(index_of_element_.size()) != n) {
    throw std::invalid_argument("WeightAssignment: one weight index per element required");
  }
  for (int i = 0; i < n; ++i) {
    if (weights_[i] < 0) throw std::invalid_argument("WeightAssignment: weights must be nonnegative");
    if (i + 1 < n && !(weights_[i] > weights_[i + 1])) {
      throw std::invalid_argument("WeightAssignment: weights must be strictly decreasing");
    }
  }
  element_of_index_.assign(n, -1);
  for (int e = 0; e < n; ++e) {
    int idx = index_of_element_[e];
    if (idx < 0 || idx >= n || element_of_index_[idx] != -1) {
      throw std::invalid_argument("WeightAssignment: assignment must be a bijection");
    }
    element_of_index_[idx] = e;
  }
}

WeightAssignment WeightAssignment::Identity(std::vector<double> decreasing_weights) {
  std::vector<int> idx(decreasing_weights.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  return WeightAssignment(std::move(decreasing_weights), std::move(idx));
}

WeightAssignment WeightAssignment::Shuffled(std::vector<double> decreasing_weights, Rng& rng) {
  std::vector<int> idx(decreasing_weights.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  rng.shuffle(idx);
  return WeightAssignment(std::move(decreasing_weights), std::move(idx));
}

std::vector<int> greedy_opt(const Matroid& m, const WeightAssignment& w) {
  std::vector<int> order = m.elements();
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return w.weight_index_of(a) < w.weight_index_of(b); });
  std::vector<int> kept;
  std::vector<int> candidate;
  for (int e : order) {
    candidate = kept;
    candidate.push_back(e);
    if (m.is_independent(candidate)) kept = std::move(candidate);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

double weight_of_set(const WeightAssignment& w, std::span<const int> s) {
  double total = 0;
  for (int e : s) total += w.weight_of(e);
  return total;
}

}  // namespace msl
