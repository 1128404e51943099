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

#include "msl/policies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace msl {

namespace {

int floor_log2(long long x) {
  if (x < 1) throw std::invalid_argument("floor_log2: positive argument required");
  return 63 - std::countl_zero(static_cast<unsigned long long>(x));
}

int ceil_log2(long long x) {
  int f = floor_log2(x);
  return (1LL << f) == x ? f : f + 1;
}

}  // namespace

const char* to_string(InfoMode m) {
  switch (m) {
    case InfoMode::kMatroidKnown:
      return "MK";
    case InfoMode::kCardinalityKnown:
      return "MN";
    case InfoMode::kNothingKnown:
      return "MU";
  }
  return "?";
}

InfoMode info_mode_from_string(const std::string& s) {
  if (s == "MK") return InfoMode::kMatroidKnown;
  if (s == "MN") return InfoMode::kCardinalityKnown;
  if (s == "MU") return InfoMode::kNothingKnown;
  throw std::invalid_argument("unknown information mode '" + s + "' (want MK|MN|MU)");
}

StreamOracle::StreamOracle(const Matroid& m, InfoMode mode)
    : matroid_(m), mode_(mode), seen_(m.ground_size(), 0) {}

void StreamOracle::reveal(int e) {
  if (e < 0 || e >= static_cast<int>(seen_.size()) || !matroid_.contains(e)) {
    throw std::invalid_argument("reveal: element is not in the matroid");
  }
  if (seen_[e]) throw std::invalid_argument("reveal: element arrived twice");
  seen_[e] = 1;
  arrived_.push_back(e);
  prefix_rank_ = matroid_.rank_of(arrived_);
}

void StreamOracle::check_arrived(std::span<const int> s) const {
  if (mode_ == InfoMode::kMatroidKnown) return;
  for (int e : s) {
    if (e < 0 || e >= static_cast<int>(seen_.size()) || !seen_[e]) {
      throw PolicyContractViolation("query touches element " + std::to_string(e) +
                                    ", which has not arrived");
    }
  }
}

int StreamOracle::rank_of(std::span<const int> s) const {
  check_arrived(s);
  return matroid_.rank_of(s);
}

bool StreamOracle::is_independent(std::span<const int> s) const {
  check_arrived(s);
  return matroid_.is_independent(s);
}

bool StreamOracle::is_loop(int e) const {
  check_arrived(std::span<const int>(&e, 1));
  return matroid_.is_loop(e);
}

RunResult run_policy(OnlinePolicy& policy, const Matroid& m,
                     const std::vector<double>& weight_of_element, std::span<const int> order) {
  StreamOracle oracle(m, policy.required_mode());
  RunResult out;
  for (int e : order) {
    oracle.reveal(e);
    if (policy.offer(e, weight_of_element.at(e), oracle)) {
      out.accepted.push_back(e);
      out.value += weight_of_element[e];
      if (policy.accepted().size() != out.accepted.size() ||
          !m.is_independent(policy.accepted())) {
        throw PolicyContractViolation("accepted set is not independent after element " +
                                      std::to_string(e));
      }
    }
  }
  return out;
}

UniformDenseThreshold::UniformDenseThreshold(const Matroid& m, bool verify) : m_(m) {
  n_ = m_.num_elements();
  r_ = m_.rank();
  if (n_ < 1) throw std::invalid_argument("thresholding policy needs a nonempty matroid");
  if (verify) {
    if (!m_.loops().empty()) {
      throw std::invalid_argument("thresholding policy requires a loop-free matroid");
    }
    if (!is_uniformly_dense(m_)) {
      throw std::invalid_argument("thresholding policy requires a uniformly dense matroid");
    }
  }
  if (r_ < 12) {
    trace_.classical_path = true;
    skip_ = static_cast<int>(std::floor(static_cast<double>(n_) / std::exp(1.0)));
  } else {
    trace_.sample_target = (n_ + 1) / 2;  // first ceil(n/2) arrivals
    keep_ = r_ / 4 + 1;
  }
}

bool UniformDenseThreshold::offer(int element, double weight, QueryOracle& oracle) {
  ++position_;
  if (trace_.classical_path) {
    if (!accepted_.empty()) return false;
    const bool record = weight > best_seen_;
    best_seen_ = std::max(best_seen_, weight);
    if (position_ <= skip_ || !record) return false;
    accepted_.push_back(element);
    return true;
  }

  if (position_ <= trace_.sample_target) {
    // Track the keep_ largest sampled weights; top_.front() ends up being the
    // (floor(r/4)+1)-st largest of the sample.
    top_.push_back(weight);
    std::push_heap(top_.begin(), top_.end(), std::greater<>());
    if (static_cast<int>(top_.size()) > keep_) {
      std::pop_heap(top_.begin(), top_.end(), std::greater<>());
      top_.pop_back();
    }
    if (position_ == trace_.sample_target && static_cast<int>(top_.size()) == keep_) {
      trace_.threshold = top_.front();
      trace_.threshold_set = true;
    }
    return false;
  }

  if (!trace_.threshold_set || weight <= trace_.threshold) return false;
  std::vector<int> candidate = accepted_;
  candidate.push_back(element);
  if (!oracle.is_independent(candidate)) return false;
  accepted_.push_back(element);
  return true;
}

PrincipalDecompositionPolicy::PrincipalDecompositionPolicy(const Matroid& m)
    : decomp_(principal_minors(m)) {
  part_of_.assign(m.ground_size(), -1);
  for (std::size_t p = 0; p < decomp_.parts.size(); ++p) {
    for (int e : decomp_.parts[p].elements) part_of_[e] = static_cast<int>(p);
    subs_.push_back(std::make_unique<UniformDenseThreshold>(decomp_.parts[p].minor,
                                                            /*verify=*/false));
    sub_oracles_.push_back(
        std::make_unique<StreamOracle>(decomp_.parts[p].minor, InfoMode::kMatroidKnown));
  }
}

bool PrincipalDecompositionPolicy::offer(int element, double weight, QueryOracle& oracle) {
  (void)oracle;
  const int part = part_of_.at(element);
  if (part < 0) return false;  // loop remainder
  sub_oracles_[part]->reveal(element);
  if (!subs_[part]->offer(element, weight, *sub_oracles_[part])) return false;
  accepted_.push_back(element);
  return true;
}

DynamicThreshold::DynamicThreshold(double bound, RandomSource& coins, const Options& opt)
    : bound_(bound), coins_(&coins) {
  if (!(bound > 0)) throw std::invalid_argument("dynamic threshold: bound L must be positive");
  take_first_ = coins_->bernoulli(opt.e1_probability);
  threshold_ = bound_ / 2;
  trace_.branch_e1 = take_first_;
  trace_.levels.push_back(1);
}

bool DynamicThreshold::offer(int element, double weight, QueryOracle& oracle) {
  if (take_first_) {
    if (!done_ && weight > bound_ && !oracle.is_loop(element)) {
      accepted_.push_back(element);
      done_ = true;
      return true;
    }
    return false;
  }

  bool take = false;
  if (weight > threshold_) {
    std::vector<int> candidate = accepted_;
    candidate.push_back(element);
    if (oracle.is_independent(candidate)) {
      accepted_.push_back(element);
      take = true;
    }
  }
  // Threshold update; the arrived rank grows by at most one per element, so a
  // single check per arrival crosses each power of two exactly once.
  if (oracle.prefix_rank() >= rstar_) {
    const int level = floor_log2(2 * rstar_);  // log2(2 r*), r* a power of two
    trace_.doubling_times.push_back(oracle.prefix_size());
    if (coins_->bernoulli(Rat(1, level))) {
      threshold_ = bound_ / static_cast<double>(2 * rstar_);
      trace_.levels.push_back(level);
    }
    rstar_ *= 2;
  }
  trace_.final_rstar = rstar_;
  trace_.final_level = trace_.levels.back();
  trace_.final_threshold = threshold_;
  return take;
}

BlockDoubling::BlockDoubling(int n, RandomSource& coins, const DynamicThreshold::Options& sub_opt)
    : coins_(&coins), sub_opt_(sub_opt) {
  if (n < 1) throw std::invalid_argument("block doubling: n must be >= 1");
  b_ = coins_->uniform_int(floor_log2(n) + 1);
  observe_target_ = (1LL << b_) - 1;
  run_target_ = 1LL << b_;
}

bool BlockDoubling::offer(int element, double weight, QueryOracle& oracle) {
  if (oracle.is_loop(element)) return false;
  ++nonloops_seen_;

  if (nonloops_seen_ <= observe_target_) {
    learned_bound_ = std::max(learned_bound_, weight);
    return false;
  }
  if (nonloops_seen_ > observe_target_ + run_target_) return false;

  // b = 0 observes nothing, so there is no bound to run with; that branch
  // (and a degenerate all-zero observation) takes the first non-loop element
  // with positive weight.
  if (b_ == 0 || learned_bound_ <= 0) {
    if (!took_first_ && (b_ == 0 || weight > 0)) {
      took_first_ = true;
      accepted_.push_back(element);
      return true;
    }
    return false;
  }

  if (!sub_) {
    sub_.emplace(learned_bound_, *coins_, sub_opt_);
    sub_oracle_.emplace(oracle);
  }
  sub_oracle_->add(element);
  if (!sub_->offer(element, weight, *sub_oracle_)) return false;
  accepted_.push_back(element);
  return true;
}

ThresholdPrice::ThresholdPrice(long long n, RandomSource& coins) : coins_(&coins) {
  if (n < 1) throw std::invalid_argument("threshold price: n must be >= 1");
  sample_target_ = (n + 1) / 2;
}

bool ThresholdPrice::offer(int element, double weight, QueryOracle& oracle) {
  ++position_;
  if (position_ <= sample_target_) {
    max_seen_ = std::max(max_seen_, weight);
    if (position_ == sample_target_) {
      const int r_seen = std::max(1, oracle.prefix_rank());
      const int j = coins_->uniform_int(ceil_log2(r_seen) + 1);
      threshold_ = max_seen_ / static_cast<double>(1LL << j);
    }
    return false;
  }
  if (weight <= threshold_) return false;
  std::vector<int> candidate = accepted_;
  candidate.push_back(element);
  if (!oracle.is_independent(candidate)) return false;
  accepted_.push_back(element);
  return true;
}

double UnknownNReduction::guess_probability(double eps, int i) {
  return eps / (1 + eps) / std::pow(1.0 + i, 1.0 + eps);
}

UnknownNReduction::UnknownNReduction(double eps, PolicyFactory base_factory, RandomSource& coins) {
  if (!(eps > 0) || eps > 1) {
    throw std::invalid_argument("unknown-n reduction: eps must lie in (0, 1]");
  }
  const double u = coins.uniform01();
  double cumulative = 0;
  for (int i = 0; i < 62; ++i) {
    cumulative += guess_probability(eps, i);
    if (u < cumulative) {
      horizon_ = 1LL << i;
      base_ = base_factory(horizon_, coins);
      break;
    }
  }
  // Otherwise the leftover mass: accept nothing.
}

bool UnknownNReduction::offer(int element, double weight, QueryOracle& oracle) {
  if (!base_ || seen_ >= horizon_) return false;
  ++seen_;
  if (!base_->offer(element, weight, oracle)) return false;
  accepted_.push_back(element);
  return true;
}

SchedulePolicy::SchedulePolicy(AcceptanceSchedule schedule, RandomSource& coins)
    : schedule_(std::move(schedule)), coins_(&coins) {}

bool SchedulePolicy::offer(int element, double weight, QueryOracle& oracle) {
  if (oracle.is_loop(element)) return false;
  ++candidate_;
  if (done_ || candidate_ > schedule_.size()) return false;
  const bool record = weight > best_seen_;
  best_seen_ = std::max(best_seen_, weight);
  if (!record) return false;
  if (!coins_->bernoulli(schedule_.q[candidate_ - 1])) return false;
  done_ = true;
  accepted_.push_back(element);
  return true;
}

TopWeightSets compute_claim_sets(const Matroid& m, const WeightAssignment& w,
                                 std::span<const int> order, int i) {
  const int n = m.num_elements();
  const int r = m.rank();
  if (n % 2 != 0) {
    throw std::invalid_argument("compute_claim_sets: even n required for the exact half split");
  }
  if (r < 12) throw std::invalid_argument("compute_claim_sets: rank must be >= 12");
  if (i < 1 || i > r / 4) {
    throw std::invalid_argument("compute_claim_sets: need 1 <= i <= floor(r/4)");
  }
  if (static_cast<int>(order.size()) != n || w.size() != n) {
    throw std::invalid_argument("compute_claim_sets: order/assignment size mismatch");
  }
  TopWeightSets out;
  out.t = 2 * (r / 4) + 2;
  std::vector<char> first_half(m.ground_size(), 0);
  for (int pos = 0; pos < n / 2; ++pos) first_half[order[pos]] = 1;
  for (int e : m.elements()) {
    const int widx = w.weight_index_of(e);  // 0-based; w_i has index i-1
    if (widx >= out.t || widx == i - 1) continue;
    out.c_prime.push_back(e);
    (first_half[e] ? out.a_prime : out.b_prime).push_back(e);
  }
  return out;
}

}  // namespace msl
