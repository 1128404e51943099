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

#include "msl/random.hpp"

#include <cmath>
#include <stdexcept>

namespace msl {

std::uint64_t split_mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return split_mix64(split_mix64(master) ^ split_mix64(stream + 0x632be59bd9b4e019ULL));
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
  if (n == 1) return 0;
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int>(x % un);
}

bool MonteCarloSource::bernoulli(const Rat& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  return rng_.uniform01() < p.get_d();
}

namespace {

struct PathChoice {
  int arity = 2;
  int taken = 0;
  bool is_bernoulli = false;
  Rat p;  // bernoulli success probability
};

// Replays a recorded prefix of choices, then extends it by taking the first
// option at every fresh decision point.
class PathSource final : public RandomSource {
 public:
  explicit PathSource(std::vector<PathChoice>* script) : script_(script) {}

  bool bernoulli(const Rat& p) override {
    if (p <= 0) return false;
    if (p >= 1) return true;
    if (cursor_ < script_->size()) return (*script_)[cursor_++].taken == 0;
    script_->push_back(PathChoice{2, 0, true, p});
    ++cursor_;
    return true;
  }

  int uniform_int(int n) override {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    if (n == 1) return 0;
    if (cursor_ < script_->size()) return (*script_)[cursor_++].taken;
    script_->push_back(PathChoice{n, 0, false, Rat(0)});
    ++cursor_;
    return 0;
  }

  double uniform01() override {
    throw std::logic_error("exact coin-path enumeration cannot integrate uniform01 draws");
  }

  std::size_t consumed() const { return cursor_; }

 private:
  std::vector<PathChoice>* script_;
  std::size_t cursor_ = 0;
};

Rat path_probability(const std::vector<PathChoice>& script) {
  Rat prob = 1;
  for (const PathChoice& c : script) {
    if (c.is_bernoulli) {
      prob *= (c.taken == 0) ? c.p : Rat(1 - c.p);
    } else {
      prob *= Rat(1, c.arity);
    }
  }
  return prob;
}

}  // namespace

void for_each_coin_path(
    const std::function<Rat(RandomSource&)>& body,
    const std::function<void(const Rat& prob, const Rat& value)>& visit) {
  std::vector<PathChoice> script;
  for (;;) {
    PathSource source(&script);
    Rat value = body(source);
    if (source.consumed() != script.size()) {
      throw std::logic_error("coin-path enumeration: body is not deterministic between draws");
    }
    visit(path_probability(script), value);
    while (!script.empty()) {
      PathChoice& last = script.back();
      if (last.taken + 1 < last.arity) {
        ++last.taken;
        break;
      }
      script.pop_back();
    }
    if (script.empty()) break;
  }
}

Rat expect_over_coin_paths(const std::function<Rat(RandomSource&)>& body) {
  Rat total = 0;
  for_each_coin_path(body, [&](const Rat& prob, const Rat& value) { total += prob * value; });
  return total;
}

}  // namespace msl
