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

#include "msl/lp.hpp"

#include <stdexcept>

namespace msl {

namespace {

// Dense simplex tableau over exact rationals.
//
// Layout: columns 0..n-1 structural, n..n+m-1 slack, then one artificial
// column per negative-rhs row; last column is the rhs. basis_[i] is the
// variable owning row i. Bland's rule (smallest eligible index enters,
// smallest-index tie break on the ratio test) guarantees termination.
class SimplexTableau {
 public:
  explicit SimplexTableau(const RationalLP& lp)
      : n_(lp.num_vars), m_(static_cast<int>(lp.rows.size())) {
    for (const auto& row : lp.rows) {
      if (static_cast<int>(row.coeffs.size()) != n_) {
        throw std::invalid_argument("lp row has wrong coefficient count");
      }
    }
    std::vector<int> artificial_rows;
    for (int i = 0; i < m_; ++i) {
      if (lp.rows[i].rhs < 0) artificial_rows.push_back(i);
    }
    num_art_ = static_cast<int>(artificial_rows.size());
    cols_ = n_ + m_ + num_art_ + 1;
    tab_.assign(m_, std::vector<Rat>(cols_, Rat(0)));
    basis_.resize(m_);

    int art = 0;
    for (int i = 0; i < m_; ++i) {
      const bool flip = lp.rows[i].rhs < 0;
      const Rat sign = flip ? Rat(-1) : Rat(1);
      for (int j = 0; j < n_; ++j) tab_[i][j] = sign * lp.rows[i].coeffs[j];
      tab_[i][n_ + i] = sign;  // slack
      tab_[i].back() = sign * lp.rows[i].rhs;
      if (flip) {
        tab_[i][n_ + m_ + art] = 1;
        basis_[i] = n_ + m_ + art;
        ++art;
      } else {
        basis_[i] = n_ + i;
      }
    }
  }

  // Phase 1: maximize -sum(artificials); feasible iff the optimum is 0.
  bool make_feasible() {
    if (num_art_ == 0) return true;
    std::vector<Rat> cost(cols_ - 1, Rat(0));
    for (int j = n_ + m_; j < cols_ - 1; ++j) cost[j] = -1;
    load_objective(cost);
    run();
    if (obj_value_ != 0) return false;
    // Pivot any artificial still in the basis out on a non-artificial column
    // (its row value is 0, so the pivot is degenerate and harmless).
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      bool pivoted = false;
      for (int j = 0; j < n_ + m_ && !pivoted; ++j) {
        if (tab_[i][j] != 0) {
          pivot(i, j);
          pivoted = true;
        }
      }
      // An all-zero row is a redundant constraint; the artificial stays basic
      // at value 0, which is harmless for phase 2.
    }
    return true;
  }

  // Phase 2 on the real objective. Returns false when unbounded.
  bool optimize(const std::vector<Rat>& objective) {
    std::vector<Rat> cost(cols_ - 1, Rat(0));
    for (int j = 0; j < n_; ++j) cost[j] = objective[j];
    load_objective(cost);
    return run();
  }

  Rat objective_value() const { return obj_value_; }

  std::vector<Rat> solution() const {
    std::vector<Rat> x(n_, Rat(0));
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = tab_[i].back();
    }
    return x;
  }

 private:
  void load_objective(const std::vector<Rat>& cost) {
    cost_ = cost;
    obj_row_.assign(cols_ - 1, Rat(0));
    obj_value_ = 0;
    for (int j = 0; j < cols_ - 1; ++j) obj_row_[j] = -cost[j];  // reduced costs, negated
    for (int i = 0; i < m_; ++i) {
      const Rat& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < cols_ - 1; ++j) obj_row_[j] += cb * tab_[i][j];
      obj_value_ += cb * tab_[i].back();
    }
    for (int j = 0; j < cols_ - 1; ++j) obj_row_[j] = -obj_row_[j];
  }

  // One Bland step; the objective row keeps c_j - z_j in obj_row_.
  bool run() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols_ - 1; ++j) {
        if (phase2_blocked(j)) continue;
        if (obj_row_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best_ratio;
      for (int i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rat ratio = tab_[i].back() / tab_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  // Artificial columns never re-enter once phase 1 is over.
  bool phase2_blocked(int j) const { return j >= n_ + m_ && cost_[j] == 0; }

  void pivot(int row, int col) {
    const Rat inv = 1 / tab_[row][col];
    for (int j = 0; j < cols_; ++j) tab_[row][j] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || tab_[i][col] == 0) continue;
      const Rat factor = tab_[i][col];
      for (int j = 0; j < cols_; ++j) tab_[i][j] -= factor * tab_[row][j];
    }
    const Rat ofactor = obj_row_[col];
    if (ofactor != 0) {
      for (int j = 0; j < cols_ - 1; ++j) obj_row_[j] -= ofactor * tab_[row][j];
      obj_value_ += ofactor * tab_[row].back();
    }
    basis_[row] = col;
  }

  int n_, m_, num_art_ = 0, cols_ = 0;
  std::vector<std::vector<Rat>> tab_;
  std::vector<int> basis_;
  std::vector<Rat> obj_row_;
  std::vector<Rat> cost_;
  Rat obj_value_;
};

void verify_solution(const RationalLP& lp, const LpSolution& sol) {
  Rat obj = 0;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (sol.x[j] < 0) throw std::logic_error("lp solver returned a negative variable");
    obj += lp.objective[j] * sol.x[j];
  }
  if (obj != sol.objective) throw std::logic_error("lp solver objective mismatch");
  for (const auto& row : lp.rows) {
    Rat lhs = 0;
    for (int j = 0; j < lp.num_vars; ++j) lhs += row.coeffs[j] * sol.x[j];
    if (lhs > row.rhs) throw std::logic_error("lp solver returned an infeasible point");
  }
}

}  // namespace

RationalLP build_secretary_lp(int N, bool weakened) {
  if (N < 1) throw std::invalid_argument("build_secretary_lp: N must be >= 1");
  RationalLP lp;
  lp.num_vars = N + 1;  // p_1..p_N, alpha
  lp.objective.assign(N + 1, Rat(0));
  lp.objective[N] = 1;
  for (int i = 1; i <= N; ++i) lp.var_names.push_back("p_" + std::to_string(i));
  lp.var_names.push_back("alpha");

  // Guarantee rows: n alpha - sum_{i<=n} i p_i <= 0.
  for (int n = 1; n <= N; ++n) {
    RationalLP::Row row;
    row.coeffs.assign(N + 1, Rat(0));
    for (int i = 1; i <= n; ++i) row.coeffs[i - 1] = -i;
    row.coeffs[N] = n;
    row.rhs = 0;
    lp.rows.push_back(std::move(row));
  }
  if (weakened) {
    RationalLP::Row row;
    row.coeffs.assign(N + 1, Rat(0));
    for (int i = 1; i <= N; ++i) row.coeffs[i - 1] = 1;
    row.rhs = 1;
    lp.rows.push_back(std::move(row));
  } else {
    // Feasibility rows: sum_{j<i} p_j + i p_i <= 1.
    for (int i = 1; i <= N; ++i) {
      RationalLP::Row row;
      row.coeffs.assign(N + 1, Rat(0));
      for (int j = 1; j < i; ++j) row.coeffs[j - 1] = 1;
      row.coeffs[i - 1] = i;
      row.rhs = 1;
      lp.rows.push_back(std::move(row));
    }
  }
  return lp;
}

LpSolution solve_lp_exact(const RationalLP& lp) {
  SimplexTableau tableau(lp);
  LpSolution sol;
  if (!tableau.make_feasible()) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  if (!tableau.optimize(lp.objective)) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  sol.status = LpStatus::kOptimal;
  sol.objective = tableau.objective_value();
  sol.x = tableau.solution();
  verify_solution(lp, sol);
  return sol;
}

AcceptanceSchedule policy_from_lp(const LpSolution& sol) {
  if (sol.status != LpStatus::kOptimal) {
    throw std::invalid_argument("policy_from_lp: solution is not optimal/feasible");
  }
  if (sol.x.size() < 2) throw std::invalid_argument("policy_from_lp: expected (p, alpha)");
  const int N = static_cast<int>(sol.x.size()) - 1;
  AcceptanceSchedule s;
  s.q.reserve(N);
  Rat prefix = 0;  // sum_{j<i} p_j
  for (int i = 1; i <= N; ++i) {
    const Rat& pi = sol.x[i - 1];
    if (prefix + i * pi > 1) {
      throw std::invalid_argument("policy_from_lp: profile violates feasibility rows");
    }
    Rat denom = 1 - prefix;
    if (denom == 0) {
      s.q.push_back(Rat(0));
    } else {
      s.q.push_back(i * pi / denom);
    }
    prefix += pi;
  }
  return s;
}

}  // namespace msl
