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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "msl/matroid.hpp"
#include "msl/policies.hpp"
#include "msl/rational.hpp"

namespace msl {

// ---------------------------------------------------------------------------
// Experiment configuration

struct PolicySpec {
  std::string name;  // alg1|alg2|alg3|alg4|threshold-price|unknown-n-reduction|
                     // classical-harmonic|classical-one-over-e
  double L = 0;      // alg3
  double eps = 0;    // unknown-n-reduction
  std::string base;  // unknown-n-reduction: name of the known-n base policy
  int N = 0;         // classical schedules

  nlohmann::json ToJson() const;
  static PolicySpec FromJson(const nlohmann::json& j);
};

InfoMode policy_mode(const PolicySpec& spec);

// verify=false skips the uniformly-dense check for alg1; the experiment
// runner validates the matroid once instead of once per trial.
std::unique_ptr<OnlinePolicy> make_policy(const PolicySpec& spec, const Matroid& m,
                                          long long stream_length, RandomSource& coins,
                                          bool verify = true);

struct HardWeightModel {
  double gamma = 0.25;
  int j_max = 0;  // 0 = choose automatically from the tail target
};

struct BoundSpec {
  // "mean-at-least": mean >= value - slack_stderr * stderr
  // "ratio-at-most": opt_mean / mean <= value
  // "success-at-least": success_rate >= value - slack_stderr * stderr
  std::string kind;
  double value = 0;
  double slack_stderr = 0;
  std::string source;  // free text naming the guarantee being measured
};

struct ExperimentConfig {
  Matroid matroid;

  // Weight model: an explicit strictly decreasing list, or i.i.d. draws from
  // the hard distribution (one draw per element; ties broken earlier=larger).
  std::vector<double> weights;
  std::optional<HardWeightModel> hard_weights;

  enum class Assignment { kIdentity, kFixed, kRandom, kExhaustive };
  Assignment assignment = Assignment::kIdentity;
  std::vector<int> fixed_assignment;  // weight index per element

  enum class Order { kFixed, kRandom, kExhaustive, kAdversary };
  Order order = Order::kFixed;
  std::vector<int> fixed_order;  // defaults to elements() when empty
  std::string adversary;         // loops-first|loops-last|alternating|descending-weight

  PolicySpec policy;
  long long trials = 1;
  std::uint64_t seed = 0;
  std::optional<BoundSpec> bound;

  // True when any exhaustive dimension is set; such runs integrate the
  // policy's coins exactly and ignore `trials`.
  bool exhaustive() const {
    return assignment == Assignment::kExhaustive || order == Order::kExhaustive;
  }

  nlohmann::json ToJson() const;
  static ExperimentConfig FromJson(const nlohmann::json& j);
};

// ---------------------------------------------------------------------------
// Reports

struct TrialRecord {
  long long index = 0;
  double value = 0;
  double opt = 0;
  double success = 0;  // P[value == opt] for this trial/combination
  std::uint64_t seed = 0;
  bool exact = false;
  Rat value_exact;
  Rat opt_exact;
  Rat success_exact;
};

struct BoundOutcome {
  BoundSpec spec;
  bool pass = false;
};

// Per-trial records plus aggregates. Aggregates are always recomputed from
// the records in index order, so merging shards is associative and
// independent of scheduling.
struct Report {
  nlohmann::json config_echo;
  bool exact = false;
  std::vector<TrialRecord> records;
  long long trials = 0;
  double mean = 0;
  double stderr_of_mean = 0;
  double opt_mean = 0;
  double ratio = 0;  // opt_mean / mean
  double success_rate = 0;
  Rat mean_exact;
  Rat opt_mean_exact;
  Rat success_rate_exact;
  std::optional<BoundOutcome> bound;

  void recompute();
  bool passed() const { return !bound || bound->pass; }
  nlohmann::json ToJson() const;
  std::string ToCsv() const;
};

Report merge_reports(std::vector<Report> shards);

// ---------------------------------------------------------------------------
// Runners (OpenMP-parallel kernel plus a serial reference; both produce
// bitwise-identical reports because every trial derives its own seed).

Report run_experiment(const ExperimentConfig& config);
Report run_experiment_serial(const ExperimentConfig& config);
// Monte Carlo shard [begin, end); merge_reports stitches shards together.
Report run_experiment_range(const ExperimentConfig& config, long long begin, long long end,
                            bool parallel);

// Orders a heuristic adversary can propose for this matroid. The
// descending-weight adversary needs a deterministic assignment.
std::vector<int> adversary_order(const std::string& name, const Matroid& m,
                                 const std::vector<double>* weight_of_element);
std::vector<std::string> applicable_adversaries(const ExperimentConfig& config);

struct OrderSearchResult {
  std::vector<int> order;
  Report report;
};

// The order minimizing the policy's expected value: exhaustive over all
// orders for n <= 7, otherwise the worst of the shipped heuristic orders.
OrderSearchResult worstcase_order_search(const ExperimentConfig& config, bool exhaustive);

// ---------------------------------------------------------------------------
// Hard distribution (w_j = 2^{gamma j} with probability 2^{-j})

struct HardInstance {
  double gamma = 0;
  int levels = 0;
  int j_max = 0;
  std::vector<double> level_weight;  // 1-based: level_weight[j]
  std::vector<Rat> level_prob;       // exact dyadic; truncated mass goes to w_1

  // Adversarial stopping point after ell blocks: 2^{ell+1} - 2.
  long long stop_point(int ell) const { return (2LL << ell) - 2; }
  int sample_level(Rng& rng) const;  // inverse CDF on the dyadic probabilities
  double sample(Rng& rng) const { return level_weight[sample_level(rng)]; }
  // E[max of m i.i.d. draws] under the truncated sampling distribution.
  double expected_max_sampled(long long m) const;
};

HardInstance hard_instance(double gamma, int levels, int j_max = 0);

// gamma = 1 / log2(log2(N)).
double hard_gamma_for(long long N);

struct ExpectedMax {
  double value = 0;       // sum_{j<=j_max} w_j (F(j)^m - F(j-1)^m), F(j) = 1 - 2^{-j}
  double tail_bound = 0;  // bound on the truncated part
};

// E[max of m draws] of the untruncated distribution, truncated at j_max terms
// with the dropped tail reported.
ExpectedMax expected_max_exact(double gamma, long long m, int j_max);

// ---------------------------------------------------------------------------
// Hardness sweep over single-choice policies

struct SweepPolicySpec {
  std::string kind;  // "harmonic" | "fixed-threshold"
  int threshold_level = 0;  // accept weights strictly above w_level
};

struct SweepPolicyResult {
  std::string name;
  std::vector<double> alg_by_level;  // E[value] when stopped after ell blocks
  std::vector<double> opt_by_level;  // E[max] at the same stopping points
  std::vector<double> ratio_by_level;
  int worst_level = 0;
  double worst_ratio = 0;
};

struct SweepResult {
  long long N = 0;
  double gamma = 0;
  int levels = 0;
  std::vector<SweepPolicyResult> policies;

  nlohmann::json ToJson() const;
  std::string ToCsv() const;
};

// Evaluates each policy against every stopping level n_ell <= N and reports
// the worst E[OPT_ell]/E[ALG] per policy. This demonstrates degradation of
// fixed policies; it is a measurement, not a lower bound over all algorithms.
SweepResult hardness_sweep(const std::vector<SweepPolicySpec>& family, long long N, double gamma,
                           int j_max = 0);

std::vector<SweepPolicySpec> default_sweep_family();

// ---------------------------------------------------------------------------
// Small utilities shared by the exhaustive paths

long long factorial(int n);
// k-th permutation of {0..n-1} in lexicographic order, 0 <= k < n!.
std::vector<int> unrank_permutation(int n, long long k);

}  // namespace msl
