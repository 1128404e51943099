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

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "msl/classical.hpp"
#include "msl/matroid.hpp"
#include "msl/principal.hpp"
#include "msl/random.hpp"

namespace msl {

// What a policy may know in advance:
//   kMatroidKnown      - full oracle access (MK)
//   kCardinalityKnown  - only n; queries limited to arrived elements (MN)
//   kNothingKnown      - nothing; queries limited to arrived elements (MU)
enum class InfoMode { kMatroidKnown, kCardinalityKnown, kNothingKnown };

const char* to_string(InfoMode m);
InfoMode info_mode_from_string(const std::string& s);

// Thrown when a policy breaks its contract (queries an unseen element in a
// restricted mode, or accepts a dependent set).
class PolicyContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Query surface handed to a policy on each arrival.
class QueryOracle {
 public:
  virtual ~QueryOracle() = default;
  virtual int rank_of(std::span<const int> s) const = 0;
  virtual bool is_independent(std::span<const int> s) const = 0;
  // Rank query on the singleton within the arrived prefix; this is how
  // restricted-mode policies detect loops on arrival.
  virtual bool is_loop(int e) const = 0;
  // Rank and size of this oracle's revealed scope.
  virtual int prefix_rank() const = 0;
  virtual int prefix_size() const = 0;
  // Non-null only in MK mode.
  virtual const Matroid* full_matroid() const { return nullptr; }
};

// Guarding oracle: in MN/MU modes every query touching an element that has
// not arrived yet throws PolicyContractViolation.
class StreamOracle : public QueryOracle {
 public:
  StreamOracle(const Matroid& m, InfoMode mode);
  void reveal(int e);

  int rank_of(std::span<const int> s) const override;
  bool is_independent(std::span<const int> s) const override;
  bool is_loop(int e) const override;
  int prefix_rank() const override { return prefix_rank_; }
  int prefix_size() const override { return static_cast<int>(arrived_.size()); }
  const Matroid* full_matroid() const override {
    return mode_ == InfoMode::kMatroidKnown ? &matroid_ : nullptr;
  }

 private:
  void check_arrived(std::span<const int> s) const;

  Matroid matroid_;
  InfoMode mode_;
  std::vector<char> seen_;
  std::vector<int> arrived_;
  int prefix_rank_ = 0;
};

// A sub-scope of another oracle (used when an algorithm runs a sub-policy on
// a slice of the stream). Queries stay within the outer arrived set.
class ScopedOracle : public QueryOracle {
 public:
  explicit ScopedOracle(const QueryOracle& outer) : outer_(&outer) {}
  void add(int e) { scope_.push_back(e); }

  int rank_of(std::span<const int> s) const override { return outer_->rank_of(s); }
  bool is_independent(std::span<const int> s) const override { return outer_->is_independent(s); }
  bool is_loop(int e) const override { return outer_->is_loop(e); }
  int prefix_rank() const override { return outer_->rank_of(scope_); }
  int prefix_size() const override { return static_cast<int>(scope_.size()); }

 private:
  const QueryOracle* outer_;
  std::vector<int> scope_;
};

// Online decision contract: one offer per arriving element, decisions are
// irrevocable, and the accepted set must stay independent at all times.
class OnlinePolicy {
 public:
  virtual ~OnlinePolicy() = default;
  virtual InfoMode required_mode() const = 0;
  // Called after the oracle has revealed `element`; true accepts.
  virtual bool offer(int element, double weight, QueryOracle& oracle) = 0;
  const std::vector<int>& accepted() const { return accepted_; }

 protected:
  std::vector<int> accepted_;
};

struct RunResult {
  std::vector<int> accepted;
  double value = 0;
};

// Drives one policy over one arrival order, enforcing the contract: the
// accepted set is checked for independence in the true matroid after every
// event.
RunResult run_policy(OnlinePolicy& policy, const Matroid& m,
                     const std::vector<double>& weight_of_element, std::span<const int> order);

// Thresholding policy for a loop-free uniformly dense matroid (MK mode).
// Ranks below 12 fall back to the classical secretary rule on weights; larger
// ranks sample the first half and use the (floor(r/4)+1)-st largest sampled
// weight as a fixed threshold.
class UniformDenseThreshold : public OnlinePolicy {
 public:
  struct Trace {
    bool classical_path = false;
    int sample_target = 0;
    double threshold = std::numeric_limits<double>::infinity();
    bool threshold_set = false;
  };

  // Throws unless the matroid is loop-free and uniformly dense. Callers that
  // have already established density (the decomposition policy) pass
  // verify=false.
  explicit UniformDenseThreshold(const Matroid& m, bool verify = true);

  InfoMode required_mode() const override { return InfoMode::kMatroidKnown; }
  bool offer(int element, double weight, QueryOracle& oracle) override;
  const Trace& trace() const { return trace_; }

 private:
  Matroid m_;
  int n_ = 0;
  int r_ = 0;
  int position_ = 0;
  // classical path
  int skip_ = 0;
  double best_seen_ = -std::numeric_limits<double>::infinity();
  // threshold path
  int keep_ = 0;                // floor(r/4) + 1
  std::vector<double> top_;     // min-heap of the keep_ largest sampled weights
  Trace trace_;
};

// Decompose into principal minors and run one UniformDenseThreshold per
// minor; the union of the per-minor picks is independent by the contraction
// structure. Loops (the zero-rank remainder) are never accepted.
class PrincipalDecompositionPolicy : public OnlinePolicy {
 public:
  explicit PrincipalDecompositionPolicy(const Matroid& m);

  InfoMode required_mode() const override { return InfoMode::kMatroidKnown; }
  bool offer(int element, double weight, QueryOracle& oracle) override;
  const PrincipalDecomposition& decomposition() const { return decomp_; }

 private:
  PrincipalDecomposition decomp_;
  std::vector<int> part_of_;  // -1 for the loop remainder
  std::vector<std::unique_ptr<UniformDenseThreshold>> subs_;
  std::vector<std::unique_ptr<StreamOracle>> sub_oracles_;
};

struct DynamicThresholdTrace {
  bool branch_e1 = false;
  long long final_rstar = 2;
  int final_level = 1;                 // threshold = L / 2^final_level
  double final_threshold = 0;
  std::vector<int> levels;             // successive threshold levels, starting at 1
  std::vector<int> doubling_times;     // arrivals seen when rank first reached r*
};

struct DynamicThresholdOptions {
  // Probability of the take-first-above-L branch. Tests that condition on
  // the complement set it to 0; the algorithm itself uses 1/2.
  Rat e1_probability = Rat(1, 2);
};

// Rank-adaptive dynamic threshold for AO-AA-MU, given a bound L on the
// largest non-loop weight. With probability 1/2 it just takes the first
// non-loop element above L; otherwise it starts the threshold at L/2 and each
// time the arrived rank reaches r* halves it to L/(2 r*) with probability
// 1/log2(2 r*), then doubles r*.
class DynamicThreshold : public OnlinePolicy {
 public:
  using Options = DynamicThresholdOptions;

  DynamicThreshold(double bound, RandomSource& coins, const Options& opt = {});

  InfoMode required_mode() const override { return InfoMode::kNothingKnown; }
  bool offer(int element, double weight, QueryOracle& oracle) override;
  const DynamicThresholdTrace& trace() const { return trace_; }

 private:
  double bound_;
  RandomSource* coins_;
  bool take_first_;
  bool done_ = false;
  long long rstar_ = 2;
  double threshold_;
  DynamicThresholdTrace trace_;
};

// AO-RA-MN: draw b uniform in {0..floor(log2 n)}, watch the first 2^b - 1
// non-loops to learn a bound, then run DynamicThreshold on the next 2^b
// non-loops. Loops are ignored throughout. b = 0 has nothing to observe; that
// branch takes the first non-loop outright.
class BlockDoubling : public OnlinePolicy {
 public:
  BlockDoubling(int n, RandomSource& coins, const DynamicThreshold::Options& sub_opt = {});

  InfoMode required_mode() const override { return InfoMode::kCardinalityKnown; }
  bool offer(int element, double weight, QueryOracle& oracle) override;
  int chosen_block() const { return b_; }
  const DynamicThreshold* sub_policy() const { return sub_ ? &*sub_ : nullptr; }

 private:
  RandomSource* coins_;
  int b_;
  long long observe_target_;
  long long run_target_;
  long long nonloops_seen_ = 0;
  double learned_bound_ = 0;
  DynamicThreshold::Options sub_opt_;
  std::optional<DynamicThreshold> sub_;
  std::optional<ScopedOracle> sub_oracle_;
  bool took_first_ = false;  // b == 0 or zero learned bound
};

// Known-n sample-and-threshold baseline (RO-AA-MN): watch the first
// ceil(n/2) elements, pick j uniform in {0..ceil(log2 r_seen)} and use
// w_max / 2^j as a fixed price afterwards.
class ThresholdPrice : public OnlinePolicy {
 public:
  ThresholdPrice(long long n, RandomSource& coins);

  InfoMode required_mode() const override { return InfoMode::kCardinalityKnown; }
  bool offer(int element, double weight, QueryOracle& oracle) override;
  double threshold() const { return threshold_; }

 private:
  RandomSource* coins_;
  long long sample_target_;
  long long position_ = 0;
  double max_seen_ = 0;
  double threshold_ = std::numeric_limits<double>::infinity();
};

using PolicyFactory =
    std::function<std::unique_ptr<OnlinePolicy>(long long n_prime, RandomSource& coins)>;

// Runs a known-n base policy with a guessed horizon n' = 2^i, i drawn with
// probability (eps/(1+eps)) / (1+i)^{1+eps}; with the leftover probability it
// accepts nothing. The base sees only the first n' arrivals.
class UnknownNReduction : public OnlinePolicy {
 public:
  UnknownNReduction(double eps, PolicyFactory base_factory, RandomSource& coins);

  InfoMode required_mode() const override { return InfoMode::kNothingKnown; }
  bool offer(int element, double weight, QueryOracle& oracle) override;

  static double guess_probability(double eps, int i);
  long long horizon() const { return horizon_; }

 private:
  long long horizon_ = 0;  // 0 = accept nothing
  long long seen_ = 0;
  std::unique_ptr<OnlinePolicy> base_;
};

// A classical acceptance schedule run online: candidates are the non-loop
// arrivals; the i-th candidate is taken with probability q_i when it beats
// every earlier candidate's weight.
class SchedulePolicy : public OnlinePolicy {
 public:
  SchedulePolicy(AcceptanceSchedule schedule, RandomSource& coins);

  InfoMode required_mode() const override { return InfoMode::kCardinalityKnown; }
  bool offer(int element, double weight, QueryOracle& oracle) override;

 private:
  AcceptanceSchedule schedule_;
  RandomSource* coins_;
  int candidate_ = 0;
  bool done_ = false;
  double best_seen_ = -std::numeric_limits<double>::infinity();
};

// The sets C'_i, A'_i, B'_i of the half-split analysis: the elements holding
// the top t = 2 floor(r/4) + 2 weights minus the holder of w_i, split by the
// first/second half of the arrival order.
struct TopWeightSets {
  int t = 0;
  std::vector<int> c_prime;
  std::vector<int> a_prime;
  std::vector<int> b_prime;
};

// Requires even n (the exact-1/2 split statement needs |A| = |B|), r >= 12,
// and 1 <= i <= floor(r/4).
TopWeightSets compute_claim_sets(const Matroid& m, const WeightAssignment& w,
                                 std::span<const int> order, int i);

}  // namespace msl
