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
#include <functional>
#include <random>
#include <vector>

#include "msl/rational.hpp"

namespace msl {

std::uint64_t split_mix64(std::uint64_t x);

// Per-stream seed derivation: hash(master, stream). Identical inputs give
// identical sub-streams regardless of how work is scheduled.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Deterministic generator. Bounded draws and shuffles are implemented here
// rather than with std distributions so that traces are reproducible
// bit-for-bit for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53 random bits.
  double uniform01();

  // Uniform in {0, ..., n-1}, unbiased (rejection sampling).
  int uniform_int(int n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[uniform_int(i + 1)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// All policy-internal randomness flows through this interface. Probabilities
// for bernoulli() are exact rationals so that a run can be either simulated
// (MonteCarloSource) or integrated exactly over every coin path
// (for_each_coin_path below).
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual bool bernoulli(const Rat& p) = 0;
  virtual int uniform_int(int n) = 0;
  // Only for policies whose mixing probabilities are irrational; such
  // policies cannot be integrated exactly.
  virtual double uniform01() = 0;
};

class MonteCarloSource final : public RandomSource {
 public:
  explicit MonteCarloSource(std::uint64_t seed) : rng_(seed) {}
  bool bernoulli(const Rat& p) override;
  int uniform_int(int n) override { return rng_.uniform_int(n); }
  double uniform01() override { return rng_.uniform01(); }
  Rng& rng() { return rng_; }

 private:
  Rng rng_;
};

// Runs `body` once per coin path and reports each path's exact probability
// and returned value. The body must be deterministic between draws and must
// not call uniform01(). bernoulli(0/1) and uniform_int(1) do not branch.
void for_each_coin_path(
    const std::function<Rat(RandomSource&)>& body,
    const std::function<void(const Rat& prob, const Rat& value)>& visit);

// Exact expectation of `body` over its own coin flips.
Rat expect_over_coin_paths(const std::function<Rat(RandomSource&)>& body);

}  // namespace msl
