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

#include "msl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "msl/classical.hpp"

namespace msl {

namespace {

constexpr const char* kAdversaries[] = {"loops-first", "loops-last", "alternating",
                                        "descending-weight"};

std::vector<double> resolve_weight_list(const ExperimentConfig& c) { return c.weights; }

// Max-weight independent set under the (weight desc, arrival asc) tie-break
// order; ties only occur for sampled streams.
double tiebroken_opt(const Matroid& m, const std::vector<double>& w_elem,
                     std::span<const int> order) {
  std::vector<int> pos(m.ground_size(), 0);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
  std::vector<int> ids = m.elements();
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (w_elem[a] != w_elem[b]) return w_elem[a] > w_elem[b];
    return pos[a] < pos[b];
  });
  std::vector<int> kept, candidate;
  double total = 0;
  for (int e : ids) {
    candidate = kept;
    candidate.push_back(e);
    if (m.is_independent(candidate)) {
      kept = std::move(candidate);
      total += w_elem[e];
    }
  }
  return total;
}

void validate_config(const ExperimentConfig& c) {
  if (c.matroid.is_view()) {
    throw std::invalid_argument("config: experiments run on base matroids, not minors");
  }
  const int n = c.matroid.num_elements();
  if (c.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (c.hard_weights) {
    if (!c.weights.empty()) {
      throw std::invalid_argument("config: give either explicit weights or the hard model");
    }
    if (c.assignment != ExperimentConfig::Assignment::kIdentity) {
      throw std::invalid_argument("config: the hard model draws per element; assignment must be identity");
    }
    if (c.exhaustive()) {
      throw std::invalid_argument("config: the hard model cannot be combined with exhaustive modes");
    }
  } else {
    if (static_cast<int>(c.weights.size()) != n) {
      throw std::invalid_argument("config: one weight per element required");
    }
    for (int i = 0; i + 1 < n; ++i) {
      if (!(c.weights[i] > c.weights[i + 1])) {
        throw std::invalid_argument("config: weights must be strictly decreasing (duplicates rejected)");
      }
    }
    if (n > 0 && c.weights.back() < 0) {
      throw std::invalid_argument("config: weights must be nonnegative");
    }
  }
  if (c.order == ExperimentConfig::Order::kExhaustive && n > 7) {
    throw std::invalid_argument("config: exhaustive order mode requires n <= 7");
  }
  if (c.assignment == ExperimentConfig::Assignment::kExhaustive && n > 8) {
    throw std::invalid_argument("config: exhaustive assignment mode requires n <= 8");
  }
  if (c.assignment == ExperimentConfig::Assignment::kFixed &&
      static_cast<int>(c.fixed_assignment.size()) != n) {
    throw std::invalid_argument("config: fixed assignment must list one weight index per element");
  }
  if (c.order == ExperimentConfig::Order::kFixed && !c.fixed_order.empty() &&
      static_cast<int>(c.fixed_order.size()) != n) {
    throw std::invalid_argument("config: fixed order must be a permutation of the elements");
  }
  if (c.order == ExperimentConfig::Order::kAdversary) {
    bool known = false;
    for (const char* a : kAdversaries) known = known || c.adversary == a;
    if (!known) throw std::invalid_argument("config: unknown adversary '" + c.adversary + "'");
    if (c.adversary == "descending-weight" &&
        (c.hard_weights || c.assignment == ExperimentConfig::Assignment::kRandom ||
         c.assignment == ExperimentConfig::Assignment::kExhaustive)) {
      throw std::invalid_argument(
          "config: the descending-weight adversary needs a deterministic assignment");
    }
  }
  if (c.exhaustive() && c.policy.name == "unknown-n-reduction") {
    throw std::invalid_argument(
        "config: unknown-n-reduction draws from a non-dyadic distribution and cannot be "
        "integrated exactly; use Monte Carlo trials");
  }
  // Constructing the policy once surfaces bad parameters (and, for alg1, a
  // non-uniformly-dense matroid) before any trial runs.
  MonteCarloSource probe(0);
  make_policy(c.policy, c.matroid, std::max(1, n), probe);
}

struct TrialContext {
  const ExperimentConfig* config;
  std::vector<double> weight_list;  // explicit weights (empty for hard model)
  std::optional<HardInstance> hard;
};

TrialContext make_context(const ExperimentConfig& c) {
  TrialContext ctx;
  ctx.config = &c;
  if (c.hard_weights) {
    ctx.hard = hard_instance(c.hard_weights->gamma, /*levels=*/1, c.hard_weights->j_max);
  } else {
    ctx.weight_list = resolve_weight_list(c);
  }
  return ctx;
}

std::vector<int> default_order(const Matroid& m) { return m.elements(); }

TrialRecord run_one_mc_trial(const TrialContext& ctx, long long index) {
  const ExperimentConfig& c = *ctx.config;
  const Matroid& m = c.matroid;
  const int n = m.num_elements();
  const std::uint64_t trial_seed = derive_seed(c.seed, static_cast<std::uint64_t>(index));
  MonteCarloSource coins(trial_seed);

  // Draw order is fixed: assignment/weights first, then the arrival order,
  // then the policy's own coins.
  std::vector<double> w_elem(m.ground_size(), 0);
  std::optional<WeightAssignment> assignment;
  if (ctx.hard) {
    for (int e : m.elements()) w_elem[e] = ctx.hard->sample(coins.rng());
  } else {
    std::vector<int> perm;
    switch (c.assignment) {
      case ExperimentConfig::Assignment::kIdentity:
        perm.resize(n);
        std::iota(perm.begin(), perm.end(), 0);
        break;
      case ExperimentConfig::Assignment::kFixed:
        perm = c.fixed_assignment;
        break;
      case ExperimentConfig::Assignment::kRandom:
        perm.resize(n);
        std::iota(perm.begin(), perm.end(), 0);
        coins.rng().shuffle(perm);
        break;
      case ExperimentConfig::Assignment::kExhaustive:
        throw std::logic_error("exhaustive assignment in the Monte Carlo path");
    }
    assignment.emplace(ctx.weight_list, perm);
    for (int e : m.elements()) w_elem[e] = assignment->weight_of(e);
  }

  std::vector<int> order;
  switch (c.order) {
    case ExperimentConfig::Order::kFixed:
      order = c.fixed_order.empty() ? default_order(m) : c.fixed_order;
      break;
    case ExperimentConfig::Order::kRandom:
      order = m.elements();
      coins.rng().shuffle(order);
      break;
    case ExperimentConfig::Order::kAdversary:
      order = adversary_order(c.adversary, m, &w_elem);
      break;
    case ExperimentConfig::Order::kExhaustive:
      throw std::logic_error("exhaustive order in the Monte Carlo path");
  }

  double opt = 0;
  if (assignment) {
    opt = weight_of_set(*assignment, greedy_opt(m, *assignment));
  } else {
    opt = tiebroken_opt(m, w_elem, order);
  }

  auto policy = make_policy(c.policy, m, n, coins, /*verify=*/false);
  RunResult result = run_policy(*policy, m, w_elem, order);

  TrialRecord rec;
  rec.index = index;
  rec.value = result.value;
  rec.opt = opt;
  rec.success = (result.value == opt) ? 1.0 : 0.0;
  rec.seed = trial_seed;
  return rec;
}

TrialRecord run_one_exhaustive_combo(const ExperimentConfig& c, long long index,
                                     long long assign_count) {
  const Matroid& m = c.matroid;
  const int n = m.num_elements();
  const long long order_index = index / assign_count;
  const long long assign_index = index % assign_count;

  std::vector<int> perm;
  if (c.assignment == ExperimentConfig::Assignment::kExhaustive) {
    perm = unrank_permutation(n, assign_index);
  } else if (c.assignment == ExperimentConfig::Assignment::kFixed) {
    perm = c.fixed_assignment;
  } else {
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0);
  }

  WeightAssignment assignment(c.weights, perm);
  std::vector<double> w_elem(m.ground_size(), 0);
  for (int e : m.elements()) w_elem[e] = assignment.weight_of(e);

  std::vector<int> order;
  if (c.order == ExperimentConfig::Order::kExhaustive) {
    std::vector<int> pi = unrank_permutation(n, order_index);
    order.resize(n);
    for (int i = 0; i < n; ++i) order[i] = m.elements()[pi[i]];
  } else if (c.order == ExperimentConfig::Order::kAdversary) {
    order = adversary_order(c.adversary, m, &w_elem);
  } else {
    order = c.fixed_order.empty() ? default_order(m) : c.fixed_order;
  }

  std::vector<int> opt_set = greedy_opt(m, assignment);
  Rat opt_exact = 0;
  for (int e : opt_set) opt_exact += Rat(assignment.weight_of(e));

  Rat expected_value = 0;
  Rat success = 0;
  for_each_coin_path(
      [&](RandomSource& rs) -> Rat {
        auto policy = make_policy(c.policy, m, n, rs, /*verify=*/false);
        RunResult result = run_policy(*policy, m, w_elem, order);
        Rat exact = 0;
        for (int e : result.accepted) exact += Rat(w_elem[e]);
        return exact;
      },
      [&](const Rat& prob, const Rat& value) {
        expected_value += prob * value;
        if (value == opt_exact) success += prob;
      });

  TrialRecord rec;
  rec.index = index;
  rec.exact = true;
  rec.value_exact = expected_value;
  rec.opt_exact = opt_exact;
  rec.success_exact = success;
  rec.value = to_double(expected_value);
  rec.opt = to_double(opt_exact);
  rec.success = to_double(success);
  rec.seed = 0;
  return rec;
}

Report run_range_impl(const ExperimentConfig& c, long long begin, long long end, bool parallel) {
  validate_config(c);
  const bool exhaustive = c.exhaustive();
  long long total;
  long long assign_count = 1;
  std::optional<TrialContext> ctx;
  if (exhaustive) {
    const int n = c.matroid.num_elements();
    const long long order_count =
        c.order == ExperimentConfig::Order::kExhaustive ? factorial(n) : 1;
    assign_count = c.assignment == ExperimentConfig::Assignment::kExhaustive ? factorial(n) : 1;
    total = order_count * assign_count;
  } else {
    total = c.trials;
    ctx = make_context(c);
  }
  if (begin < 0 || end > total || begin > end) {
    throw std::invalid_argument("run_experiment_range: bad trial range");
  }

  const long long count = end - begin;
  std::vector<TrialRecord> records(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long long k = 0; k < count; ++k) {
    records[static_cast<std::size_t>(k)] =
        exhaustive ? run_one_exhaustive_combo(c, begin + k, assign_count)
                   : run_one_mc_trial(*ctx, begin + k);
  }

  Report report;
  report.config_echo = c.ToJson();
  report.exact = exhaustive;
  report.records = std::move(records);
  report.bound = c.bound ? std::optional<BoundOutcome>(BoundOutcome{*c.bound, false})
                         : std::nullopt;
  report.recompute();
  return report;
}

}  // namespace

// ---------------------------------------------------------------------------
// Policy construction

InfoMode policy_mode(const PolicySpec& spec) {
  if (spec.name == "alg1" || spec.name == "alg2") return InfoMode::kMatroidKnown;
  if (spec.name == "alg3" || spec.name == "unknown-n-reduction") return InfoMode::kNothingKnown;
  if (spec.name == "alg4" || spec.name == "threshold-price" ||
      spec.name == "classical-harmonic" || spec.name == "classical-one-over-e") {
    return InfoMode::kCardinalityKnown;
  }
  throw std::invalid_argument("unknown policy '" + spec.name + "'");
}

namespace {

std::unique_ptr<OnlinePolicy> make_base_policy(const std::string& name, long long n_prime,
                                               RandomSource& coins) {
  if (name == "threshold-price") return std::make_unique<ThresholdPrice>(n_prime, coins);
  if (name == "alg4") return std::make_unique<BlockDoubling>(n_prime, coins);
  throw std::invalid_argument("unknown-n-reduction: unsupported base policy '" + name + "'");
}

}  // namespace

std::unique_ptr<OnlinePolicy> make_policy(const PolicySpec& spec, const Matroid& m,
                                          long long stream_length, RandomSource& coins,
                                          bool verify) {
  if (spec.name == "alg1") return std::make_unique<UniformDenseThreshold>(m, verify);
  if (spec.name == "alg2") return std::make_unique<PrincipalDecompositionPolicy>(m);
  if (spec.name == "alg3") return std::make_unique<DynamicThreshold>(spec.L, coins);
  if (spec.name == "alg4") return std::make_unique<BlockDoubling>(stream_length, coins);
  if (spec.name == "threshold-price") return std::make_unique<ThresholdPrice>(stream_length, coins);
  if (spec.name == "unknown-n-reduction") {
    const std::string base = spec.base.empty() ? "threshold-price" : spec.base;
    make_base_policy(base, 1, coins);  // surface bad names before sampling
    return std::make_unique<UnknownNReduction>(
        spec.eps,
        [base](long long n_prime, RandomSource& rs) { return make_base_policy(base, n_prime, rs); },
        coins);
  }
  if (spec.name == "classical-harmonic") {
    const int N = spec.N > 0 ? spec.N : static_cast<int>(stream_length);
    return std::make_unique<SchedulePolicy>(harmonic_policy(N), coins);
  }
  if (spec.name == "classical-one-over-e") {
    const int N = spec.N > 0 ? spec.N : static_cast<int>(stream_length);
    return std::make_unique<SchedulePolicy>(one_over_e_policy(N), coins);
  }
  throw std::invalid_argument("unknown policy '" + spec.name + "'");
}

// ---------------------------------------------------------------------------
// JSON round trips

nlohmann::json PolicySpec::ToJson() const {
  nlohmann::json j;
  j["name"] = name;
  if (name == "alg3") j["L"] = L;
  if (name == "unknown-n-reduction") {
    j["eps"] = eps;
    j["base"] = base.empty() ? "threshold-price" : base;
  }
  if (N > 0) j["N"] = N;
  return j;
}

PolicySpec PolicySpec::FromJson(const nlohmann::json& j) {
  PolicySpec s;
  s.name = j.at("name").get<std::string>();
  s.L = j.value("L", 0.0);
  s.eps = j.value("eps", 0.0);
  s.base = j.value("base", std::string());
  s.N = j.value("N", 0);
  return s;
}

nlohmann::json ExperimentConfig::ToJson() const {
  nlohmann::json j;
  j["matroid"] = matroid.ToJson();
  if (hard_weights) {
    j["weights"] = {{"hard", {{"gamma", hard_weights->gamma}, {"j_max", hard_weights->j_max}}}};
  } else {
    j["weights"] = weights;
  }
  switch (assignment) {
    case Assignment::kIdentity:
      j["assignment"] = "identity";
      break;
    case Assignment::kFixed:
      j["assignment"] = fixed_assignment;
      break;
    case Assignment::kRandom:
      j["assignment"] = "random";
      break;
    case Assignment::kExhaustive:
      j["assignment"] = "exhaustive";
      break;
  }
  switch (order) {
    case Order::kFixed:
      if (fixed_order.empty()) {
        j["order"] = "identity";
      } else {
        j["order"] = fixed_order;
      }
      break;
    case Order::kRandom:
      j["order"] = "random";
      break;
    case Order::kExhaustive:
      j["order"] = "exhaustive";
      break;
    case Order::kAdversary:
      j["order"] = {{"adversary", adversary}};
      break;
  }
  j["policy"] = policy.ToJson();
  j["mode"] = to_string(policy_mode(policy));
  j["trials"] = trials;
  j["seed"] = seed;
  if (bound) {
    j["bound"] = {{"kind", bound->kind},
                  {"value", bound->value},
                  {"slack_stderr", bound->slack_stderr},
                  {"source", bound->source}};
  }
  return j;
}

ExperimentConfig ExperimentConfig::FromJson(const nlohmann::json& j) {
  nlohmann::json mj = j.at("matroid");
  if (mj.is_string()) {
    std::ifstream in(mj.get<std::string>());
    if (!in) throw std::invalid_argument("config: cannot open matroid file " + mj.get<std::string>());
    in >> mj;
  }
  ExperimentConfig c{Matroid::FromJson(mj)};

  const nlohmann::json& wj = j.at("weights");
  if (wj.is_object()) {
    const nlohmann::json& hj = wj.at("hard");
    c.hard_weights = HardWeightModel{hj.at("gamma").get<double>(), hj.value("j_max", 0)};
  } else {
    c.weights = wj.get<std::vector<double>>();
  }

  if (j.contains("assignment")) {
    const nlohmann::json& aj = j["assignment"];
    if (aj.is_array()) {
      c.assignment = Assignment::kFixed;
      c.fixed_assignment = aj.get<std::vector<int>>();
    } else {
      const std::string s = aj.get<std::string>();
      if (s == "identity") {
        c.assignment = Assignment::kIdentity;
      } else if (s == "random") {
        c.assignment = Assignment::kRandom;
      } else if (s == "exhaustive") {
        c.assignment = Assignment::kExhaustive;
      } else {
        throw std::invalid_argument("config: unknown assignment model '" + s + "'");
      }
    }
  }

  if (j.contains("order")) {
    const nlohmann::json& oj = j["order"];
    if (oj.is_array()) {
      c.order = Order::kFixed;
      c.fixed_order = oj.get<std::vector<int>>();
    } else if (oj.is_object()) {
      c.order = Order::kAdversary;
      c.adversary = oj.at("adversary").get<std::string>();
    } else {
      const std::string s = oj.get<std::string>();
      if (s == "identity") {
        c.order = Order::kFixed;
      } else if (s == "random") {
        c.order = Order::kRandom;
      } else if (s == "exhaustive") {
        c.order = Order::kExhaustive;
      } else {
        throw std::invalid_argument("config: unknown order model '" + s + "'");
      }
    }
  }

  c.policy = PolicySpec::FromJson(j.at("policy"));
  if (j.contains("mode") &&
      info_mode_from_string(j["mode"].get<std::string>()) != policy_mode(c.policy)) {
    throw std::invalid_argument("config: mode does not match the policy's information model");
  }
  c.trials = j.value("trials", 1LL);
  c.seed = j.value("seed", 0ULL);
  if (j.contains("bound")) {
    const nlohmann::json& bj = j["bound"];
    c.bound = BoundSpec{bj.at("kind").get<std::string>(), bj.at("value").get<double>(),
                        bj.value("slack_stderr", 0.0), bj.value("source", std::string())};
  }
  return c;
}

// ---------------------------------------------------------------------------
// Reports

void Report::recompute() {
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return a.index < b.index; });
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    if (records[i].index == records[i + 1].index) {
      throw std::invalid_argument("report: duplicate trial index " +
                                  std::to_string(records[i].index));
    }
  }
  trials = static_cast<long long>(records.size());
  mean = stderr_of_mean = opt_mean = ratio = success_rate = 0;
  mean_exact = opt_mean_exact = success_rate_exact = 0;
  if (trials == 0) return;

  double sum = 0, opt_sum = 0, success_sum = 0;
  for (const TrialRecord& r : records) {
    sum += r.value;
    opt_sum += r.opt;
    success_sum += r.success;
  }
  if (exact) {
    for (const TrialRecord& r : records) {
      mean_exact += r.value_exact;
      opt_mean_exact += r.opt_exact;
      success_rate_exact += r.success_exact;
    }
    mean_exact /= static_cast<long>(trials);
    opt_mean_exact /= static_cast<long>(trials);
    success_rate_exact /= static_cast<long>(trials);
    mean = to_double(mean_exact);
    opt_mean = to_double(opt_mean_exact);
    success_rate = to_double(success_rate_exact);
  } else {
    mean = sum / static_cast<double>(trials);
    opt_mean = opt_sum / static_cast<double>(trials);
    success_rate = success_sum / static_cast<double>(trials);
    if (trials > 1) {
      double ss = 0;
      for (const TrialRecord& r : records) ss += (r.value - mean) * (r.value - mean);
      stderr_of_mean = std::sqrt(ss / static_cast<double>(trials - 1) /
                                 static_cast<double>(trials));
    }
  }
  ratio = mean > 0 ? opt_mean / mean : std::numeric_limits<double>::infinity();

  if (bound) {
    const BoundSpec& b = bound->spec;
    if (b.kind == "mean-at-least") {
      if (exact) {
        bound->pass = mean_exact >= Rat(b.value);
      } else {
        bound->pass = mean >= b.value - b.slack_stderr * stderr_of_mean;
      }
    } else if (b.kind == "ratio-at-most") {
      if (exact) {
        bound->pass = opt_mean_exact <= Rat(b.value) * mean_exact;
      } else {
        bound->pass = ratio <= b.value;
      }
    } else if (b.kind == "success-at-least") {
      if (exact) {
        bound->pass = success_rate_exact >= Rat(b.value);
      } else {
        bound->pass = success_rate >= b.value - b.slack_stderr * stderr_of_mean;
      }
    } else {
      throw std::invalid_argument("unknown bound kind '" + b.kind + "'");
    }
  }
}

nlohmann::json Report::ToJson() const {
  nlohmann::json j;
  j["config_echo"] = config_echo;
  j["trials"] = trials;
  j["mean"] = mean;
  j["stderr"] = stderr_of_mean;
  j["opt_mean"] = opt_mean;
  j["ratio"] = ratio;
  j["success_rate"] = success_rate;
  if (exact) {
    j["mean_exact"] = fraction_string(mean_exact);
    j["opt_mean_exact"] = fraction_string(opt_mean_exact);
    j["success_rate_exact"] = fraction_string(success_rate_exact);
  }
  j["bound"] = bound ? nlohmann::json(bound->spec.value) : nlohmann::json();
  j["bound_kind"] = bound ? nlohmann::json(bound->spec.kind) : nlohmann::json();
  j["bound_source"] = bound ? nlohmann::json(bound->spec.source) : nlohmann::json();
  j["pass"] = passed();
  return j;
}

std::string Report::ToCsv() const {
  std::string policy = "?";
  if (config_echo.contains("policy")) policy = config_echo["policy"].value("name", "?");
  std::string out = "trial,policy,value,opt,ratio,seed\n";
  char buf[160];
  for (const TrialRecord& r : records) {
    const double ratio_r = r.value > 0 ? r.opt / r.value : std::numeric_limits<double>::infinity();
    std::snprintf(buf, sizeof(buf), "%lld,%s,%.17g,%.17g,%.17g,%llu\n", r.index, policy.c_str(),
                  r.value, r.opt, ratio_r, static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

Report merge_reports(std::vector<Report> shards) {
  if (shards.empty()) throw std::invalid_argument("merge_reports: nothing to merge");
  Report merged = std::move(shards.front());
  for (std::size_t i = 1; i < shards.size(); ++i) {
    if (shards[i].config_echo != merged.config_echo) {
      throw std::invalid_argument("merge_reports: shards come from different configs");
    }
    if (shards[i].exact != merged.exact) {
      throw std::invalid_argument("merge_reports: cannot mix exact and sampled shards");
    }
    merged.records.insert(merged.records.end(),
                          std::make_move_iterator(shards[i].records.begin()),
                          std::make_move_iterator(shards[i].records.end()));
  }
  merged.recompute();
  return merged;
}

// ---------------------------------------------------------------------------
// Runners

Report run_experiment(const ExperimentConfig& config) {
  long long total = config.trials;
  if (config.exhaustive()) {
    const int n = config.matroid.num_elements();
    total = (config.order == ExperimentConfig::Order::kExhaustive ? factorial(n) : 1) *
            (config.assignment == ExperimentConfig::Assignment::kExhaustive ? factorial(n) : 1);
  }
  return run_range_impl(config, 0, total, /*parallel=*/true);
}

Report run_experiment_serial(const ExperimentConfig& config) {
  long long total = config.trials;
  if (config.exhaustive()) {
    const int n = config.matroid.num_elements();
    total = (config.order == ExperimentConfig::Order::kExhaustive ? factorial(n) : 1) *
            (config.assignment == ExperimentConfig::Assignment::kExhaustive ? factorial(n) : 1);
  }
  return run_range_impl(config, 0, total, /*parallel=*/false);
}

Report run_experiment_range(const ExperimentConfig& config, long long begin, long long end,
                            bool parallel) {
  return run_range_impl(config, begin, end, parallel);
}

// ---------------------------------------------------------------------------
// Adversarial orders

std::vector<int> adversary_order(const std::string& name, const Matroid& m,
                                 const std::vector<double>* weight_of_element) {
  std::vector<int> loops = m.loops();
  std::vector<int> nonloops;
  for (int e : m.elements()) {
    if (!std::binary_search(loops.begin(), loops.end(), e)) nonloops.push_back(e);
  }
  if (name == "loops-first") {
    loops.insert(loops.end(), nonloops.begin(), nonloops.end());
    return loops;
  }
  if (name == "loops-last") {
    nonloops.insert(nonloops.end(), loops.begin(), loops.end());
    return nonloops;
  }
  if (name == "alternating") {
    std::vector<int> out;
    std::size_t i = 0, j = 0;
    while (i < nonloops.size() || j < loops.size()) {
      if (i < nonloops.size()) out.push_back(nonloops[i++]);
      if (j < loops.size()) out.push_back(loops[j++]);
    }
    return out;
  }
  if (name == "descending-weight") {
    if (weight_of_element == nullptr) {
      throw std::invalid_argument("descending-weight adversary needs the weight assignment");
    }
    std::vector<int> out = m.elements();
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      if ((*weight_of_element)[a] != (*weight_of_element)[b]) {
        return (*weight_of_element)[a] > (*weight_of_element)[b];
      }
      return a < b;
    });
    return out;
  }
  throw std::invalid_argument("unknown adversary '" + name + "'");
}

std::vector<std::string> applicable_adversaries(const ExperimentConfig& config) {
  std::vector<std::string> out = {"loops-first", "loops-last", "alternating"};
  if (!config.hard_weights && config.assignment != ExperimentConfig::Assignment::kRandom &&
      config.assignment != ExperimentConfig::Assignment::kExhaustive) {
    out.push_back("descending-weight");
  }
  return out;
}

OrderSearchResult worstcase_order_search(const ExperimentConfig& config, bool exhaustive) {
  const Matroid& m = config.matroid;
  const int n = m.num_elements();
  OrderSearchResult best;
  bool have = false;

  auto consider = [&](std::vector<int> order) {
    ExperimentConfig c = config;
    c.order = ExperimentConfig::Order::kFixed;
    c.fixed_order = std::move(order);
    Report r = run_experiment(c);
    const bool better =
        !have || (r.exact ? r.mean_exact < best.report.mean_exact : r.mean < best.report.mean);
    if (better) {
      best.order = c.fixed_order;
      best.report = std::move(r);
      have = true;
    }
  };

  if (exhaustive) {
    if (n > 7) {
      throw std::invalid_argument("worstcase_order_search: exhaustive search requires n <= 7");
    }
    const long long total = factorial(n);
    for (long long k = 0; k < total; ++k) {
      std::vector<int> perm = unrank_permutation(n, k);
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = m.elements()[perm[i]];
      consider(std::move(order));
    }
  } else {
    for (const std::string& name : applicable_adversaries(config)) {
      std::vector<double> w_elem;
      const std::vector<double>* wp = nullptr;
      if (name == "descending-weight") {
        std::vector<int> perm = config.fixed_assignment;
        if (config.assignment == ExperimentConfig::Assignment::kIdentity) {
          perm.resize(n);
          std::iota(perm.begin(), perm.end(), 0);
        }
        WeightAssignment wa(config.weights, perm);
        w_elem.assign(m.ground_size(), 0);
        for (int e : m.elements()) w_elem[e] = wa.weight_of(e);
        wp = &w_elem;
      }
      consider(adversary_order(name, m, wp));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Utilities

long long factorial(int n) {
  if (n < 0 || n > 20) throw std::invalid_argument("factorial: n out of range");
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<int> unrank_permutation(int n, long long k) {
  if (k < 0 || k >= factorial(n)) throw std::invalid_argument("unrank_permutation: bad rank");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(n);
  long long f = factorial(n);
  for (int i = n; i >= 1; --i) {
    f /= i;
    const long long d = k / f;
    k %= f;
    out.push_back(pool[static_cast<std::size_t>(d)]);
    pool.erase(pool.begin() + static_cast<std::size_t>(d));
  }
  return out;
}

}  // namespace msl
