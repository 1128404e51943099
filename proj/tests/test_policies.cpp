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

#include <cmath>
#include <map>

#include "msl/classical.hpp"
#include "msl/harness.hpp"
#include "msl/policies.hpp"
#include "oracles.hpp"

using namespace msl;
using namespace msl::testing;

namespace {

std::vector<double> descending_weights(int n, double top = 0) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = (top > 0 && i == 0) ? top : n - i;
  return w;
}

std::vector<double> by_element(const Matroid& m, const WeightAssignment& w) {
  std::vector<double> out(m.ground_size(), 0);
  for (int e : m.elements()) out[e] = w.weight_of(e);
  return out;
}

}  // namespace

TEST_CASE("stream oracle guards restricted modes") {
  Matroid m = Matroid::Uniform(4, 2);
  StreamOracle mu(m, InfoMode::kNothingKnown);
  mu.reveal(2);
  CHECK(mu.rank_of(std::vector<int>{2}) == 1);
  CHECK_THROWS_AS(mu.rank_of(std::vector<int>{0}), PolicyContractViolation);
  CHECK_THROWS_AS(mu.is_independent(std::vector<int>{2, 3}), PolicyContractViolation);
  CHECK(mu.full_matroid() == nullptr);

  StreamOracle mk(m, InfoMode::kMatroidKnown);
  CHECK(mk.rank_of(std::vector<int>{0, 1, 2}) == 2);  // unrestricted
  CHECK(mk.full_matroid() != nullptr);
}

TEST_CASE("the runner rejects dependent acceptances") {
  struct GreedyAll : OnlinePolicy {
    InfoMode required_mode() const override { return InfoMode::kMatroidKnown; }
    bool offer(int e, double, QueryOracle&) override {
      accepted_.push_back(e);
      return true;
    }
  };
  Matroid m = Matroid::Uniform(4, 1);
  GreedyAll p;
  std::vector<double> w = {4, 3, 2, 1};
  CHECK_THROWS_AS(run_policy(p, m, w, m.elements()), PolicyContractViolation);
}

TEST_CASE("uniform-dense threshold rejects bad inputs at construction") {
  CHECK_THROWS(UniformDenseThreshold(Matroid::Graphic(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}})));
  CHECK_THROWS(UniformDenseThreshold(Matroid::Partition(3, {{0, 1}, {2}}, {1, 0})));
  CHECK_NOTHROW(UniformDenseThreshold(Matroid::Uniform(6, 3)));
}

TEST_CASE("small ranks fall back to the classical rule") {
  // Uniform(2,4): deterministic given order and assignment, at most one pick;
  // over all assignments its success probability equals the schedule value.
  Matroid m = Matroid::Uniform(4, 2);
  const long long total = factorial(4);
  int success = 0;
  for (long long k = 0; k < total; ++k) {
    WeightAssignment w({16, 8, 4, 2}, unrank_permutation(4, k));
    MonteCarloSource coins(1);
    UniformDenseThreshold policy(m);
    RunResult r = run_policy(policy, m, by_element(m, w), m.elements());
    CHECK(r.accepted.size() <= 1);
    CHECK(policy.trace().classical_path);
    if (r.value == 16) ++success;
  }
  CHECK(Rat(success, static_cast<long>(total)) ==
        evaluate_policy_exact(one_over_e_policy(4), 4));
}

TEST_CASE("threshold path never takes weights outside the top t when the sample is heavy") {
  Matroid m = Matroid::Uniform(32, 16);  // r = 16 >= 12, t = 2*4+2 = 10
  const int t = 2 * (16 / 4) + 2;
  Rng rng(99);
  std::vector<double> weights = descending_weights(32);
  for (int trial = 0; trial < 200; ++trial) {
    WeightAssignment w = WeightAssignment::Shuffled(weights, rng);
    UniformDenseThreshold policy(m, /*verify=*/false);
    RunResult r = run_policy(policy, m, by_element(m, w), m.elements());
    int in_first_half = 0;
    for (int pos = 0; pos < 16; ++pos) {
      if (w.weight_index_of(m.elements()[pos]) < t) ++in_first_half;
    }
    if (in_first_half >= 16 / 4 + 1) {
      // Threshold is a top-t weight, so nothing below w_t can clear it.
      for (int e : r.accepted) CHECK(w.weight_index_of(e) < t);
    }
  }
}

TEST_CASE("decomposition policy routes elements to their minors") {
  Matroid m = Matroid::Graphic(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  MonteCarloSource coins(3);
  PrincipalDecompositionPolicy policy(m);
  WeightAssignment w = WeightAssignment::Identity({4, 3, 2, 1});
  RunResult r = run_policy(policy, m, by_element(m, w), m.elements());
  CHECK(m.is_independent(r.accepted));
  REQUIRE(policy.decomposition().parts.size() == 2);
}

TEST_CASE("decomposition policy matches the plain threshold policy when uniformly dense") {
  Matroid m = Matroid::Uniform(6, 2);
  Rng rng(17);
  std::vector<double> weights = descending_weights(6);
  for (int trial = 0; trial < 50; ++trial) {
    WeightAssignment w = WeightAssignment::Shuffled(weights, rng);
    std::vector<int> order = m.elements();
    rng.shuffle(order);
    UniformDenseThreshold alg1(m);
    PrincipalDecompositionPolicy alg2(m);
    RunResult r1 = run_policy(alg1, m, by_element(m, w), order);
    RunResult r2 = run_policy(alg2, m, by_element(m, w), order);
    CHECK(r1.accepted == r2.accepted);
  }
}

TEST_CASE("decomposition policy never accepts loops") {
  Matroid m = Matroid::Partition(6, {{0, 1}, {2, 3}, {4, 5}}, {1, 1, 0});
  Rng rng(23);
  std::vector<double> weights = descending_weights(6, 1000);  // loops may carry weight
  for (int trial = 0; trial < 50; ++trial) {
    WeightAssignment w = WeightAssignment::Shuffled(weights, rng);
    std::vector<int> order = m.elements();
    rng.shuffle(order);
    PrincipalDecompositionPolicy policy(m);
    RunResult r = run_policy(policy, m, by_element(m, w), order);
    for (int e : r.accepted) {
      CHECK(e != 4);
      CHECK(e != 5);
    }
  }
}

TEST_CASE("dynamic threshold takes the top non-loop with probability 1/2 under a valid bound") {
  // Element 2 is a loop with the largest weight overall; the first branch
  // must skip it and take the true largest non-loop.
  Matroid m = Matroid::Partition(5, {{0, 1}, {3, 4}, {2}}, {1, 1, 0});
  std::vector<double> w = {900, 10, 1000, 5, 1};
  const double L = 500;  // valid: between the top two non-loop weights
  Rat expected = expect_over_coin_paths([&](RandomSource& rs) -> Rat {
    DynamicThreshold policy(L, rs);
    RunResult r = run_policy(policy, m, w, m.elements());
    return Rat(r.value);
  });
  // Branch E1 alone contributes 900/2.
  CHECK(expected >= Rat(450));
}

TEST_CASE("dynamic threshold trace properties") {
  Matroid m = Matroid::Uniform(10, 5);
  std::vector<double> w = descending_weights(10, 100);
  DynamicThreshold::Options opt;
  opt.e1_probability = Rat(0);
  MonteCarloSource coins(7);
  for (int trial = 0; trial < 100; ++trial) {
    DynamicThreshold policy(40.0, coins, opt);
    run_policy(policy, m, w, m.elements());
    const DynamicThresholdTrace& tr = policy.trace();
    CHECK_FALSE(tr.branch_e1);
    // Smallest power of two strictly above the rank 5.
    CHECK(tr.final_rstar == 8);
    CHECK(tr.final_rstar <= 2 * m.rank());
    for (std::size_t i = 0; i + 1 < tr.levels.size(); ++i) {
      CHECK(tr.levels[i] < tr.levels[i + 1]);  // thresholds only fall
    }
    CHECK(tr.final_threshold == 40.0 / std::exp2(tr.final_level));
  }
}

TEST_CASE("dynamic threshold final level is uniform, exactly") {
  // Rank 4 arrived set: final r* = 8, levels {1,2,3} each with probability
  // 1/3 conditioned on the greedy branch.
  Matroid m = Matroid::Uniform(8, 4);
  std::vector<double> w = descending_weights(8, 50);
  DynamicThreshold::Options opt;
  opt.e1_probability = Rat(0);
  std::map<int, Rat> level_prob;
  for_each_coin_path(
      [&](RandomSource& rs) -> Rat {
        DynamicThreshold policy(20.0, rs, opt);
        run_policy(policy, m, w, m.elements());
        return Rat(policy.trace().final_level);
      },
      [&](const Rat& prob, const Rat& value) { level_prob[static_cast<int>(value.get_d())] += prob; });
  REQUIRE(level_prob.size() == 3);
  CHECK(level_prob[1] == Rat(1, 3));
  CHECK(level_prob[2] == Rat(1, 3));
  CHECK(level_prob[3] == Rat(1, 3));
}

TEST_CASE("dynamic threshold validates its bound") {
  MonteCarloSource coins(1);
  CHECK_THROWS(DynamicThreshold(0.0, coins));
  CHECK_THROWS(DynamicThreshold(-2.0, coins));
}

TEST_CASE("block doubling on a single element") {
  Matroid m = Matroid::Uniform(1, 1);
  std::vector<double> w = {5};
  Rat expected = expect_over_coin_paths([&](RandomSource& rs) -> Rat {
    BlockDoubling policy(1, rs);
    RunResult r = run_policy(policy, m, w, m.elements());
    return Rat(r.value);
  });
  // floor(log2 1) = 0, so b = 0 always and the element is taken outright.
  CHECK(expected == Rat(5));
}

TEST_CASE("block doubling catches a lone non-loop among loops") {
  // One non-loop (element 7, arriving last), everything else loops.
  Matroid m = Matroid::Partition(8, {{7}, {0, 1, 2, 3, 4, 5, 6}}, {1, 0});
  std::vector<double> w = {8, 7, 6, 5, 4, 3, 2, 100};
  Rat accept_prob = expect_over_coin_paths([&](RandomSource& rs) -> Rat {
    BlockDoubling policy(8, rs);
    RunResult r = run_policy(policy, m, w, m.elements());
    return Rat(r.accepted.empty() ? 0 : 1);
  });
  // The b=0 branch alone takes it: probability 1/(floor(log2 8)+1) = 1/4.
  CHECK(accept_prob >= Rat(1, 4));
}

TEST_CASE("block doubling ignores loops when counting blocks") {
  Matroid m = Matroid::Partition(6, {{0, 3}, {1, 4}, {2, 5}}, {1, 1, 0});
  std::vector<double> w = {6, 5, 100, 3, 2, 50};
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    MonteCarloSource coins(seed);
    BlockDoubling policy(6, coins);
    RunResult r = run_policy(policy, m, w, m.elements());
    for (int e : r.accepted) {
      CHECK(e != 2);
      CHECK(e != 5);
    }
  }
}

TEST_CASE("threshold price on two elements beats the sample half the time") {
  Matroid m = Matroid::Uniform(2, 1);
  int success = 0;
  for (long long k = 0; k < 2; ++k) {
    std::vector<int> order = unrank_permutation(2, k);
    WeightAssignment w({3, 1}, {0, 1});
    MonteCarloSource coins(5);
    ThresholdPrice policy(2, coins);
    RunResult r = run_policy(policy, m, by_element(m, w), order);
    if (r.value == 3) ++success;
  }
  CHECK(success == 1);  // exactly the order that shows the max second
}

TEST_CASE("threshold price stays independent and above its price") {
  Matroid m = Matroid::Uniform(16, 4);
  Rng rng(31);
  std::vector<double> weights = descending_weights(16);
  for (int trial = 0; trial < 100; ++trial) {
    WeightAssignment w = WeightAssignment::Shuffled(weights, rng);
    std::vector<int> order = m.elements();
    rng.shuffle(order);
    MonteCarloSource coins(derive_seed(41, trial));
    ThresholdPrice policy(16, coins);
    RunResult r = run_policy(policy, m, by_element(m, w), order);
    CHECK(r.accepted.size() <= 4);
    for (int e : r.accepted) CHECK(w.weight_of(e) > policy.threshold());
  }
}

TEST_CASE("guess distribution sums below one") {
  for (double eps : {0.1, 0.5, 1.0}) {
    double total = 0;
    for (int i = 0; i < 200000; ++i) total += UnknownNReduction::guess_probability(eps, i);
    // Integral tail bound for the rest of the series.
    const double tail = (eps / (1 + eps)) / (eps * std::pow(200000.0, eps));
    CHECK(total + tail <= 1.0 + 1e-9);
    CHECK(total > 0.3);
  }
}

TEST_CASE("reduction accepts a single element at least with the first guess probability") {
  Matroid m = Matroid::Uniform(1, 1);
  std::vector<double> w = {1};
  const double eps = 0.5;
  // Record-style base capped so that huge guessed horizons stay cheap; on a
  // one-element stream only the horizon-1 guess can act, and it always takes
  // the element.
  PolicyFactory base = [](long long n_prime, RandomSource& rs) -> std::unique_ptr<OnlinePolicy> {
    const int capped = static_cast<int>(std::min<long long>(n_prime, 64));
    return std::make_unique<SchedulePolicy>(harmonic_policy(capped), rs);
  };
  int accepted = 0;
  const int trials = 40000;
  for (int k = 0; k < trials; ++k) {
    MonteCarloSource coins(derive_seed(777, k));
    UnknownNReduction policy(eps, base, coins);
    RunResult r = run_policy(policy, m, w, m.elements());
    accepted += r.accepted.empty() ? 0 : 1;
  }
  const double p0 = UnknownNReduction::guess_probability(eps, 0);
  const double sigma = std::sqrt(p0 * (1 - p0) / trials);
  CHECK(static_cast<double>(accepted) / trials >= p0 - 3 * sigma);
}

TEST_CASE("reduction validates eps") {
  MonteCarloSource coins(1);
  PolicyFactory base = [](long long n, RandomSource& rs) -> std::unique_ptr<OnlinePolicy> {
    return std::make_unique<ThresholdPrice>(n, rs);
  };
  CHECK_THROWS(UnknownNReduction(0.0, base, coins));
  CHECK_THROWS(UnknownNReduction(1.5, base, coins));
}

TEST_CASE("claim sets partition the top weights") {
  Matroid m = Matroid::Uniform(16, 12);
  Rng rng(13);
  std::vector<double> weights = descending_weights(16);
  const int t = 2 * (12 / 4) + 2;  // 8
  for (int trial = 0; trial < 100; ++trial) {
    WeightAssignment w = WeightAssignment::Shuffled(weights, rng);
    std::vector<int> order = m.elements();
    rng.shuffle(order);
    for (int i = 1; i <= 12 / 4; ++i) {
      TopWeightSets sets = compute_claim_sets(m, w, order, i);
      CHECK(sets.t == t);
      CHECK(static_cast<int>(sets.c_prime.size()) == t - 1);
      CHECK(sets.a_prime.size() + sets.b_prime.size() == sets.c_prime.size());
      for (int e : sets.c_prime) {
        CHECK(w.weight_index_of(e) < t);
        CHECK(w.weight_index_of(e) != i - 1);
      }
    }
  }
}

TEST_CASE("claim-set split frequency is near one half") {
  Matroid m = Matroid::Uniform(16, 12);
  Rng rng(29);
  std::vector<double> weights = descending_weights(16);
  std::vector<int> order = m.elements();
  const int trials = 20000;
  int small_b = 0;
  for (int k = 0; k < trials; ++k) {
    WeightAssignment w = WeightAssignment::Shuffled(weights, rng);
    TopWeightSets sets = compute_claim_sets(m, w, order, 1);
    if (static_cast<int>(sets.b_prime.size()) <= 12 / 4) ++small_b;
  }
  const double sigma = std::sqrt(0.25 / trials);
  CHECK(std::abs(static_cast<double>(small_b) / trials - 0.5) <= 4 * sigma);
}

TEST_CASE("claim sets validate their preconditions") {
  Matroid odd = Matroid::Uniform(15, 12);
  WeightAssignment w15 = WeightAssignment::Identity(descending_weights(15));
  CHECK_THROWS(compute_claim_sets(odd, w15, odd.elements(), 1));
  Matroid small = Matroid::Uniform(16, 8);
  WeightAssignment w16 = WeightAssignment::Identity(descending_weights(16));
  CHECK_THROWS(compute_claim_sets(small, w16, small.elements(), 1));
  Matroid ok = Matroid::Uniform(16, 12);
  CHECK_THROWS(compute_claim_sets(ok, w16, ok.elements(), 4));  // i > floor(r/4)
}
