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

#include "msl/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace msl {

AcceptanceSchedule harmonic_policy(int N) {
  if (N < 1) throw std::invalid_argument("harmonic_policy: N must be >= 1");
  const Rat base = harmonic_number(N - 1) + 1;
  AcceptanceSchedule s;
  s.q.reserve(N);
  Rat h_prev = 0;  // H_{i-1}
  for (int i = 1; i <= N; ++i) {
    s.q.push_back(Rat(1) / (base - h_prev));
    h_prev += Rat(1, i);
  }
  return s;
}

AcceptanceSchedule one_over_e_policy(int n) {
  if (n < 1) throw std::invalid_argument("one_over_e_policy: n must be >= 1");
  const int k = static_cast<int>(std::floor(static_cast<double>(n) / std::exp(1.0)));
  AcceptanceSchedule s;
  s.q.assign(n, Rat(1));
  std::fill(s.q.begin(), s.q.begin() + k, Rat(0));
  return s;
}

PolicyProfile profile_from_schedule(const AcceptanceSchedule& s) {
  PolicyProfile out;
  out.p.reserve(s.q.size());
  Rat alive = 1;  // prod_{j<i} (1 - q_j/j)
  for (int i = 1; i <= s.size(); ++i) {
    const Rat& qi = s.q[i - 1];
    if (qi < 0 || qi > 1) throw std::invalid_argument("schedule probability outside [0,1]");
    out.p.push_back(alive * qi / i);
    alive *= 1 - qi / i;
  }
  return out;
}

bool profile_feasible(const PolicyProfile& p) {
  Rat prefix = 0;
  for (int i = 1; i <= p.size(); ++i) {
    if (p.p[i - 1] < 0) return false;
    if (prefix + i * p.p[i - 1] > 1) return false;
    prefix += p.p[i - 1];
  }
  return true;
}

Rat evaluate_policy_exact(const AcceptanceSchedule& s, int n) {
  if (n < 1 || n > s.size()) {
    throw std::invalid_argument("evaluate_policy_exact: need 1 <= n <= schedule length");
  }
  Rat sum = 0;
  Rat alive = 1;
  for (int i = 1; i <= n; ++i) {
    const Rat& qi = s.q[i - 1];
    if (qi < 0 || qi > 1) throw std::invalid_argument("schedule probability outside [0,1]");
    sum += alive * qi;  // i * p_i
    alive *= 1 - qi / i;
  }
  return sum / n;
}

Rat evaluate_policy_enumeration(const AcceptanceSchedule& s, int n) {
  if (n < 1 || n > s.size()) {
    throw std::invalid_argument("evaluate_policy_enumeration: need 1 <= n <= schedule length");
  }
  if (n > 8) throw std::invalid_argument("evaluate_policy_enumeration: n > 8 is too expensive");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);  // relative ranks, n = best
  Rat success = 0;
  Int orders = 0;
  do {
    ++orders;
    // The global max sits at the last record position; the policy succeeds
    // iff every earlier record's coin fails and the max's coin succeeds.
    Rat not_yet = 1;
    int best = 0;
    for (int pos = 1; pos <= n; ++pos) {
      if (perm[pos - 1] > best) {
        best = perm[pos - 1];
        const Rat& q = s.q[pos - 1];
        if (best == n) {
          success += not_yet * q;
          break;
        }
        not_yet *= 1 - q;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return success / Rat(orders);
}

}  // namespace msl
