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

#include <string>
#include <vector>

#include "msl/classical.hpp"
#include "msl/rational.hpp"

namespace msl {

// maximize objective . x  subject to  rows[i].coeffs . x <= rows[i].rhs, x >= 0.
struct RationalLP {
  struct Row {
    std::vector<Rat> coeffs;
    Rat rhs;
  };
  int num_vars = 0;
  std::vector<Rat> objective;
  std::vector<Row> rows;
  std::vector<std::string> var_names;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  Rat objective;
  std::vector<Rat> x;
};

// The secretary LP over variables p_1..p_N and alpha:
//   maximize alpha
//   for every n <= N:   (1/n) sum_{i<=n} i p_i >= alpha
//   full:     for every i <= N:  sum_{j<i} p_j + i p_i <= 1
//   weakened: the single row    sum_i p_i <= 1
// The weakened variant drops information and can only have a larger optimum.
RationalLP build_secretary_lp(int N, bool weakened);

// Exact-arithmetic simplex (two phases, Bland's anti-cycling rule). The
// returned solution is re-checked against every constraint before return.
LpSolution solve_lp_exact(const RationalLP& lp);

// Executable policy from an LP solution over (p, alpha):
// q_i = i p_i / (1 - sum_{j<i} p_j), with q_i = 0 once the denominator hits 0.
// Rejects profiles violating the feasibility rows (which would need q_i > 1).
AcceptanceSchedule policy_from_lp(const LpSolution& sol);

}  // namespace msl
