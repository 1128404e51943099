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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "msl/harness.hpp"
#include "msl/principal.hpp"
#include "oracles.hpp"

using namespace msl;
using namespace msl::testing;

namespace {

Matroid triangle_pendant() { return Matroid::Graphic(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}); }

// Exact E[w(OPT)] over all n! weight bijections.
Rat expected_opt_over_assignments(const Matroid& m, const std::vector<double>& weights) {
  const int n = m.num_elements();
  const long long total = factorial(n);
  Rat sum = 0;
  for (long long k = 0; k < total; ++k) {
    WeightAssignment w(weights, unrank_permutation(n, k));
    sum += Rat(weight_of_set(w, greedy_opt(m, w)));
  }
  return sum / Rat(static_cast<long>(total));
}

}  // namespace

TEST_CASE("density basics") {
  Matroid tri = Matroid::Graphic(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(density(tri, tri.elements()) == Rat(3, 2));
  Matroid u = Matroid::Uniform(4, 2);
  CHECK(density(u, u.elements()) == Rat(2));
  CHECK(density(tri, std::vector<int>{0}) == Rat(1));
  Matroid loopy = Matroid::Partition(2, {{0}, {1}}, {1, 0});
  CHECK_THROWS_AS(density(loopy, std::vector<int>{1}), std::invalid_argument);
}

TEST_CASE("densest subset matches the brute-force oracle") {
  {
    Matroid m = triangle_pendant();
    auto [set, d] = densest_subset(m);
    auto [oset, od] = densest_oracle(m);
    CHECK(d == od);
    CHECK(set == oset);
    CHECK(set == std::vector<int>{0, 1, 2});
    CHECK(d == Rat(3, 2));
  }
  {
    Matroid m = Matroid::Uniform(4, 2);
    auto [set, d] = densest_subset(m);
    CHECK(set == m.elements());
    CHECK(d == Rat(2));
  }
  {
    // Blocks of sizes 3 and 1, both capacity 1: the 3-block wins at density 3.
    Matroid m = Matroid::Partition(4, {{0, 1, 2}, {3}}, {1, 1});
    auto [set, d] = densest_subset(m);
    auto [oset, od] = densest_oracle(m);
    CHECK(d == Rat(3));
    CHECK(d == od);
    CHECK(set == oset);
  }
}

TEST_CASE("densest subset closed forms agree with enumeration") {
  std::vector<Matroid> ms;
  ms.push_back(Matroid::Partition(6, {{0, 1}, {2, 3, 4}, {5}}, {1, 2, 1}));
  ms.push_back(Matroid::Partition(5, {{0, 1}, {2, 3}, {4}}, {1, 1, 0}));
  ms.push_back(Matroid::Uniform(5, 3));
  for (const Matroid& m : ms) {
    auto [set, d] = densest_subset(m);
    auto [oset, od] = densest_oracle(m);
    CHECK(d == od);
    CHECK(set == oset);
  }
}

TEST_CASE("uniform density detection") {
  CHECK(is_uniformly_dense(Matroid::Uniform(7, 3)));
  CHECK_FALSE(is_uniformly_dense(triangle_pendant()));  // 3/2 > 4/3
  CHECK(is_uniformly_dense(Matroid::Partition(4, {{0, 1}, {2, 3}}, {1, 1})));
  // Loops kill uniform density outright.
  CHECK_FALSE(is_uniformly_dense(Matroid::Partition(3, {{0, 1}, {2}}, {1, 0})));
}

TEST_CASE("uniform density via graphic vertex enumeration matches brute force") {
  // Small enough for both paths: force the vertex path by calling on a graph.
  std::vector<Matroid> graphs;
  graphs.push_back(Matroid::Graphic(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}));
  graphs.push_back(Matroid::Graphic(3, {{0, 1}, {1, 2}, {2, 0}}));
  graphs.push_back(Matroid::Graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}}));  // K4
  for (const Matroid& g : graphs) {
    bool brute = densest_oracle(g).second == density(g, g.elements());
    CHECK(is_uniformly_dense(g) == brute);
  }
  // A 13-cycle with every edge in 4 parallel copies: 52 elements, rank 12.
  // Too large to enumerate subsets; the vertex closed form must kick in.
  std::vector<std::pair<int, int>> edges;
  for (int d = 0; d < 4; ++d) {
    for (int v = 0; v < 13; ++v) edges.push_back({v, (v + 1) % 13});
  }
  Matroid multicycle = Matroid::Graphic(13, edges);
  CHECK(multicycle.num_elements() == 52);
  CHECK(multicycle.rank() == 12);
  CHECK(is_uniformly_dense(multicycle));
  CHECK_THROWS_AS(densest_subset(multicycle), std::invalid_argument);
}

TEST_CASE("principal minors of the triangle+pendant") {
  PrincipalDecomposition d = principal_minors(triangle_pendant());
  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts[0].elements == std::vector<int>{0, 1, 2});
  CHECK(d.parts[0].rank == 2);
  CHECK(d.parts[0].density == Rat(3, 2));
  CHECK(d.parts[1].elements == std::vector<int>{3});
  CHECK(d.parts[1].rank == 1);
  CHECK(d.parts[1].density == Rat(1));
  CHECK(d.loop_remainder.empty());
}

TEST_CASE("uniformly dense matroids decompose into one part") {
  Matroid m = Matroid::Uniform(6, 2);
  PrincipalDecomposition d = principal_minors(m);
  REQUIRE(d.parts.size() == 1);
  CHECK(d.parts[0].elements == m.elements());
}

TEST_CASE("partition decomposition splits by block density") {
  Matroid m = Matroid::Partition(6, {{0, 1, 2, 3}, {4, 5}}, {1, 1});
  PrincipalDecomposition d = principal_minors(m);
  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts[0].elements == std::vector<int>{0, 1, 2, 3});
  CHECK(d.parts[0].density == Rat(4));
  CHECK(d.parts[1].elements == std::vector<int>{4, 5});
  CHECK(d.parts[1].density == Rat(2));
}

TEST_CASE("decomposition invariants on a zoo") {
  std::vector<Matroid> zoo;
  zoo.push_back(triangle_pendant());
  zoo.push_back(Matroid::Uniform(5, 2));
  zoo.push_back(Matroid::Partition(7, {{0, 1, 2}, {3, 4}, {5}, {6}}, {1, 1, 1, 0}));
  zoo.push_back(Matroid::Graphic(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 4}}));
  zoo.push_back(Matroid::Explicit(5, {{0, 1}, {0, 2}, {1, 2}}));
  for (const Matroid& m : zoo) {
    PrincipalDecomposition d = principal_minors(m);
    // Parts plus remainder tile the ground set.
    std::vector<int> all = d.loop_remainder;
    for (const auto& part : d.parts) {
      all.insert(all.end(), part.elements.begin(), part.elements.end());
      CHECK(is_uniformly_dense(part.minor));
      CHECK(part.minor.loops().empty());
      CHECK(part.rank == part.minor.rank());
    }
    std::sort(all.begin(), all.end());
    CHECK(all == m.elements());
    for (std::size_t i = 0; i + 1 < d.parts.size(); ++i) {
      CHECK(d.parts[i].density >= d.parts[i + 1].density);
    }
    // Remainder elements really are loops once everything else is contracted.
    if (!d.loop_remainder.empty()) {
      std::vector<int> contracted;
      for (const auto& part : d.parts) {
        contracted.insert(contracted.end(), part.elements.begin(), part.elements.end());
      }
      Matroid rest = m.minor(contracted, d.loop_remainder);
      CHECK(rest.rank() == 0);
    }
  }
}

TEST_CASE("soto partition matroid mirrors the decomposition") {
  PrincipalDecomposition d = principal_minors(triangle_pendant());
  Matroid p = soto_partition_matroid(d);
  CHECK(p.rank_of(std::vector<int>{0, 1, 2}) == 2);
  CHECK(p.rank_of(std::vector<int>{3}) == 1);
  CHECK(p.rank() == 3);

  PrincipalDecomposition single = principal_minors(Matroid::Uniform(4, 2));
  Matroid q = soto_partition_matroid(single);
  CHECK(q.rank() == 2);
  CHECK(q.rank_of(std::vector<int>{1, 2, 3}) == 2);
}

TEST_CASE("partition optimum is a (1-1/e) fraction of the true optimum in expectation") {
  // Exact over all bijections; 0.6321206 > 1 - 1/e certifies the bound.
  const Rat c(6321206, 10000000);
  std::vector<Matroid> zoo;
  zoo.push_back(triangle_pendant());
  zoo.push_back(Matroid::Graphic(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}}));
  zoo.push_back(Matroid::Partition(5, {{0, 1, 2}, {3, 4}}, {1, 2}));
  zoo.push_back(Matroid::Explicit(5, {{0, 1}, {0, 2}, {1, 2}}));
  for (const Matroid& m : zoo) {
    std::vector<double> weights;
    for (int i = 0; i < m.num_elements(); ++i) weights.push_back(m.num_elements() - i);
    Matroid p = soto_partition_matroid(principal_minors(m));
    Rat opt_p = expected_opt_over_assignments(p, weights);
    Rat opt_m = expected_opt_over_assignments(m, weights);
    CHECK(opt_p >= c * opt_m);
  }
}

TEST_CASE("triangle+pendant partition-vs-matroid expectation with weights 4,3,2,1") {
  Matroid m = triangle_pendant();
  Matroid p = soto_partition_matroid(principal_minors(m));
  Rat opt_p = expected_opt_over_assignments(p, {4, 3, 2, 1});
  Rat opt_m = expected_opt_over_assignments(m, {4, 3, 2, 1});
  CHECK(opt_p >= Rat(6321206, 10000000) * opt_m);
  CHECK(opt_p <= opt_m);
}

TEST_CASE("densest subset error cases") {
  Matroid all_loops = Matroid::Partition(3, {{0, 1, 2}}, {0});
  CHECK_THROWS_AS(densest_subset(all_loops), std::invalid_argument);
}
