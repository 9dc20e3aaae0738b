// Copyright 2026 The eamod Authors
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

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <iosfwd>
#include <vector>

namespace eamod {

// min c'x  s.t.  row_lower <= A x <= row_upper,  col_lower <= x <= col_upper.
// Infinite bounds are +/-infinity; equality rows have row_lower == row_upper.
struct LpModel {
  Eigen::SparseMatrix<double> A;  // column-major, rows x cols
  Eigen::VectorXd cost;
  Eigen::VectorXd col_lower;
  Eigen::VectorXd col_upper;
  Eigen::VectorXd row_lower;
  Eigen::VectorXd row_upper;
  std::vector<char> integer;

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }
};

// Nonbasic position of a variable. Variables 0..n-1 are the structural
// columns, n..n+m-1 the row activities.
enum class VarState : signed char { kBasic, kAtLower, kAtUpper, kAtZero };

struct Basis {
  std::vector<int> heads;          // basic variable per basis position (size m)
  std::vector<VarState> state;     // per variable (size n + m)

  bool empty() const { return heads.empty(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kTimeLimit };

const char* to_string(LpStatus s);

struct IterationInfo {
  long iteration = 0;
  int phase = 0;                  // 1: minimising infeasibility, 2: optimising
  double objective = 0.0;         // phase 2 objective, or sum of infeasibilities
  double dual_bound = 0.0;        // Lagrangian bound from the current duals (phase 2)
  bool degenerate = false;
  bool bland = false;
};

enum class Pricing { kDantzig, kDevex };

struct SimplexOptions {
  Pricing pricing = Pricing::kDevex;
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_interval = 100;
  long iteration_limit = 5'000'000;
  double time_limit_s = 1e30;
  // Consecutive degenerate pivots, as a multiple of the row count, after
  // which pricing switches to Bland's rule until the objective moves.
  int bland_trigger_factor = 10;
  std::ostream* log = nullptr;
  long log_every = 0;
  std::function<void(const IterationInfo&)> on_iteration;
};

struct SimplexResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  Eigen::VectorXd x;               // structural values
  Eigen::VectorXd row_activity;    // A x
  Eigen::VectorXd duals;           // one per row; >= 0 at lower, <= 0 at upper
  Eigen::VectorXd reduced_costs;   // c - A' y
  Basis basis;
  long iterations = 0;
  long phase1_iterations = 0;
  long dual_iterations = 0;        // dual simplex pivots after a warm start
  long bland_iterations = 0;
  int refactorizations = 0;
};

// Bounded-variable revised simplex with a composite phase 1, Dantzig
// pricing, a Harris ratio test and a product-form update of a sparse LU
// factorisation. `warm` may come from a model with the same shape but
// different bounds.
SimplexResult solve_simplex(const LpModel& lp, const SimplexOptions& options = {},
                            const Basis* warm = nullptr);

struct CertificateCheck {
  double primal_residual = 0.0;
  double bound_violation = 0.0;
  double dual_infeasibility = 0.0;
  double complementary_slackness = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
};

// Re-derives primal feasibility, dual sign conditions and complementary
// slackness of (x, duals) from scratch. Dual sign conditions are evaluated
// against the bound each quantity actually sits at.
CertificateCheck check_certificate(const LpModel& lp, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& duals, double active_tol = 1e-7);

// Lagrangian lower bound  min_{l<=x<=u, rl<=s<=ru} c'x - y'(Ax - s)  for the
// given multipliers; -inf if the inner minimum is unbounded.
double lagrangian_bound(const LpModel& lp, const Eigen::VectorXd& duals);

}  // namespace eamod
