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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "msl/classical.hpp"
#include "msl/harness.hpp"

namespace msl {

namespace {

int floor_log2_ll(long long x) {
  if (x < 1) throw std::invalid_argument("floor_log2: positive argument required");
  return 63 - std::countl_zero(static_cast<unsigned long long>(x));
}

}  // namespace

double hard_gamma_for(long long N) {
  if (N < 5) throw std::invalid_argument("hard_gamma_for: N too small");
  return 1.0 / std::log2(std::log2(static_cast<double>(N)));
}

HardInstance hard_instance(double gamma, int levels, int j_max) {
  if (!(gamma > 0) || !(gamma < 1.0 / 3.0)) {
    throw std::invalid_argument("hard_instance: gamma must lie in (0, 1/3)");
  }
  if (levels < 1) throw std::invalid_argument("hard_instance: at least one level required");
  HardInstance h;
  h.gamma = gamma;
  h.levels = levels;
  if (j_max == 0) {
    // Relative truncated mass of E[w] is s^J with s = 2^{gamma-1}; stop when
    // it drops below 1e-9.
    const double s = std::exp2(gamma - 1.0);
    int J = levels + 2;
    while (std::pow(s, J) >= 1e-9) ++J;
    j_max = J;
  }
  if (j_max < 2 || j_max > 200) throw std::invalid_argument("hard_instance: j_max out of range");
  h.j_max = j_max;
  h.level_weight.assign(j_max + 1, 0.0);
  h.level_prob.assign(j_max + 1, Rat(0));
  Rat covered = 0;
  for (int j = 1; j <= j_max; ++j) {
    h.level_weight[j] = std::exp2(gamma * j);
    Int den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), j);
    h.level_prob[j] = Rat(Int(1), den);
    covered += h.level_prob[j];
  }
  // Truncated tail mass goes to the smallest weight w_1: conservative for the
  // optimum, favorable to the adversary.
  h.level_prob[1] += 1 - covered;
  return h;
}

int HardInstance::sample_level(Rng& rng) const {
  // Inverse CDF on exact dyadic probabilities: the level is the position of
  // the leading one bit, so P[level = j] = 2^{-j}.
  const std::uint64_t u = rng.next_u64();
  const int j = std::countl_zero(u) + 1;  // u == 0 gives 65
  return j > j_max ? 1 : j;
}

double HardInstance::expected_max_sampled(long long m) const {
  // Levels are value-sorted ascending (w_j grows with j), so the cumulative
  // distribution walks j upward.
  double expected = 0;
  double prev_pow = 0;
  double cumulative = 0;
  for (int j = 1; j <= j_max; ++j) {
    cumulative += to_double(level_prob[j]);
    const double cur_pow = std::pow(std::min(cumulative, 1.0), static_cast<double>(m));
    expected += level_weight[j] * (cur_pow - prev_pow);
    prev_pow = cur_pow;
  }
  return expected;
}

ExpectedMax expected_max_exact(double gamma, long long m, int j_max) {
  if (m < 1) throw std::invalid_argument("expected_max_exact: m must be >= 1");
  if (j_max < 1) throw std::invalid_argument("expected_max_exact: j_max must be >= 1");
  ExpectedMax out;
  double prev = 0;  // F(j-1)^m, F(0) = 0
  for (int j = 1; j <= j_max; ++j) {
    const double f = 1.0 - std::exp2(-j);
    const double cur = std::pow(f, static_cast<double>(m));
    out.value += std::exp2(gamma * j) * (cur - prev);
    prev = cur;
  }
  // P[max = w_j] <= m 2^{-(j-1)}, so the dropped part is at most
  // 2m sum_{j>j_max} 2^{(gamma-1) j}.
  const double s = std::exp2(gamma - 1.0);
  out.tail_bound = 2.0 * static_cast<double>(m) * std::pow(s, j_max + 1) / (1.0 - s);
  return out;
}

namespace {

struct LevelDistribution {
  std::vector<double> prob;    // 1-based
  std::vector<double> weight;  // 1-based
  int j_max;
};

// E[value] of "accept the first weight strictly above w_k" after n draws.
double fixed_threshold_value(const LevelDistribution& d, int k, long long n) {
  double q = 0, gain = 0;
  for (int j = k + 1; j <= d.j_max; ++j) {
    q += d.prob[j];
    gain += d.prob[j] * d.weight[j];
  }
  if (q <= 0) return 0;
  const double hit = 1.0 - std::pow(1.0 - q, static_cast<double>(n));
  return hit * (gain / q);
}

// One forward pass of the record DP for a schedule policy on i.i.d. draws;
// fills E[accepted value by position t] for every prefix t <= n_max.
//
// State: (still alive, current max level s); a fresh draw j > s is a record
// (ties resolve earlier=larger, so equal levels are not records) and is
// accepted with the position's schedule probability.
std::vector<double> schedule_value_by_prefix(const LevelDistribution& d,
                                             const std::vector<double>& q_by_position,
                                             long long n_max) {
  const int jm = d.j_max;
  std::vector<double> alive(jm + 1, 0.0);
  alive[0] = 1.0;  // level 0: nothing seen yet
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  std::vector<double> next(jm + 1, 0.0);
  double absorbed = 0;
  for (long long t = 1; t <= n_max; ++t) {
    const double q =
        t <= static_cast<long long>(q_by_position.size()) ? q_by_position[t - 1] : 0.0;
    std::fill(next.begin(), next.end(), 0.0);
    // prefix[s] = P[alive with max level < j] when scanning j upward
    double prefix = 0;
    double stay_cum = 0;  // P[draw <= j] accumulates as j grows
    for (int j = 0; j <= jm; ++j) {
      if (j >= 1) {
        const double pj = d.prob[j];
        // records from every state s < j
        absorbed += prefix * pj * q * d.weight[j];
        next[j] += prefix * pj * (1.0 - q);
        stay_cum += pj;
      }
      // non-records: draw <= current max
      next[j] += alive[j] * stay_cum;
      prefix += alive[j];
    }
    std::swap(alive, next);
    out[static_cast<std::size_t>(t)] = absorbed;
  }
  return out;
}

}  // namespace

std::vector<SweepPolicySpec> default_sweep_family() {
  return {SweepPolicySpec{"harmonic", 0}, SweepPolicySpec{"fixed-threshold", 4},
          SweepPolicySpec{"fixed-threshold", 8}, SweepPolicySpec{"fixed-threshold", 12}};
}

SweepResult hardness_sweep(const std::vector<SweepPolicySpec>& family, long long N, double gamma,
                           int j_max) {
  if (N < 2) throw std::invalid_argument("hardness_sweep: N must be >= 2");
  SweepResult result;
  result.N = N;
  result.gamma = gamma;
  // Largest number of blocks whose stopping point still fits below N.
  int levels = 0;
  while ((2LL << (levels + 1)) - 2 <= N) ++levels;
  if (levels < 1) throw std::invalid_argument("hardness_sweep: N admits no stopping level");
  result.levels = levels;

  const HardInstance hard = hard_instance(gamma, levels, j_max);
  LevelDistribution dist;
  dist.j_max = hard.j_max;
  dist.prob.assign(hard.j_max + 1, 0.0);
  dist.weight = hard.level_weight;
  for (int j = 1; j <= hard.j_max; ++j) dist.prob[j] = to_double(hard.level_prob[j]);

  const long long n_max = hard.stop_point(levels);

  for (const SweepPolicySpec& spec : family) {
    SweepPolicyResult pr;
    std::vector<double> value_by_prefix;
    if (spec.kind == "harmonic") {
      pr.name = "harmonic(N=" + std::to_string(N) + ")";
      if (N > (1LL << 22)) {
        throw std::invalid_argument("hardness_sweep: harmonic schedule too large to materialize");
      }
      AcceptanceSchedule schedule = harmonic_policy(static_cast<int>(N));
      std::vector<double> q(schedule.q.size());
      for (std::size_t i = 0; i < q.size(); ++i) q[i] = to_double(schedule.q[i]);
      value_by_prefix = schedule_value_by_prefix(dist, q, n_max);
    } else if (spec.kind == "fixed-threshold") {
      pr.name = "fixed-threshold(level=" + std::to_string(spec.threshold_level) + ")";
    } else {
      throw std::invalid_argument("hardness_sweep: unknown policy kind '" + spec.kind + "'");
    }

    for (int ell = 1; ell <= levels; ++ell) {
      const long long stop = hard.stop_point(ell);
      double alg;
      if (spec.kind == "harmonic") {
        alg = value_by_prefix[static_cast<std::size_t>(stop)];
      } else {
        alg = fixed_threshold_value(dist, spec.threshold_level, stop);
      }
      const double opt = hard.expected_max_sampled(stop);
      pr.alg_by_level.push_back(alg);
      pr.opt_by_level.push_back(opt);
      const double ratio = alg > 0 ? opt / alg : std::numeric_limits<double>::infinity();
      pr.ratio_by_level.push_back(ratio);
      if (ell == 1 || ratio > pr.worst_ratio) {
        pr.worst_ratio = ratio;
        pr.worst_level = ell;
      }
    }
    result.policies.push_back(std::move(pr));
  }
  return result;
}

nlohmann::json SweepResult::ToJson() const {
  nlohmann::json j;
  j["N"] = N;
  j["gamma"] = gamma;
  j["levels"] = levels;
  j["policies"] = nlohmann::json::array();
  for (const SweepPolicyResult& p : policies) {
    j["policies"].push_back({{"policy", p.name},
                             {"worst_level", p.worst_level},
                             {"worst_ratio", p.worst_ratio},
                             {"alg_by_level", p.alg_by_level},
                             {"opt_by_level", p.opt_by_level},
                             {"ratio_by_level", p.ratio_by_level}});
  }
  return j;
}

std::string SweepResult::ToCsv() const {
  std::string out = "policy,level,stop_point,alg,opt,ratio\n";
  char buf[256];
  for (const SweepPolicyResult& p : policies) {
    for (std::size_t i = 0; i < p.ratio_by_level.size(); ++i) {
      const int ell = static_cast<int>(i) + 1;
      std::snprintf(buf, sizeof(buf), "%s,%d,%lld,%.17g,%.17g,%.17g\n", p.name.c_str(), ell,
                    (2LL << ell) - 2, p.alg_by_level[i], p.opt_by_level[i], p.ratio_by_level[i]);
      out += buf;
    }
  }
  return out;
}

}  // namespace msl
