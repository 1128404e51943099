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

#include <vector>

#include "msl/rational.hpp"

namespace msl {

// A single-choice policy in record form: when element i arrives and is the
// best seen so far and nothing has been accepted yet, accept it with
// probability q[i-1]. Any classical-secretary algorithm can be brought to
// this form without loss.
struct AcceptanceSchedule {
  std::vector<Rat> q;

  int size() const { return static_cast<int>(q.size()); }
};

// p[i-1] = probability that a policy skips the first i-1 candidates and
// accepts candidate i, over both the input order and the policy's coins.
struct PolicyProfile {
  std::vector<Rat> p;

  int size() const { return static_cast<int>(p.size()); }
};

// q_i = 1/(H_{N-1} + 1 - H_{i-1}); induced from p_i = 1/(i (H_{N-1}+1)).
// Selects the best of n candidates with probability exactly 1/(H_{N-1}+1)
// for every n <= N.
AcceptanceSchedule harmonic_policy(int N);

// Observe floor(n/e) candidates, then accept the first record.
AcceptanceSchedule one_over_e_policy(int n);

PolicyProfile profile_from_schedule(const AcceptanceSchedule& s);

// Feasibility of the profile: sum_{j<i} p_j + i p_i <= 1 for every i.
bool profile_feasible(const PolicyProfile& p);

// Exact probability that the schedule selects the maximum of the first n
// elements under a uniformly random rank order. Uses the independence of
// best-so-far indicators: p_i = (q_i/i) prod_{j<i} (1 - q_j/j), success =
// (1/n) sum i p_i. Requires n <= size of the schedule.
Rat evaluate_policy_exact(const AcceptanceSchedule& s, int n);

// Same probability by summing over all n! relative rank orders; the
// independent check for evaluate_policy_exact. n <= 8.
Rat evaluate_policy_enumeration(const AcceptanceSchedule& s, int n);

}  // namespace msl
