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
#include <functional>
#include <iosfwd>
#include <vector>

#include "eamod/simplex.hpp"

namespace eamod {

enum class MipStatus { kOptimal, kInfeasible, kUnbounded, kLimitReached };

struct BbTracePoint {
  long node = 0;
  double incumbent = 0.0;  // +inf until the first integral point
  double bound = 0.0;      // global lower bound
};

struct BranchBoundOptions {
  double int_tol = 1e-6;
  double opt_tol = 1e-6;  // relative
  long max_nodes = 1'000'000;
  double time_limit_s = 1e30;
  int heuristic_every = 10;
  // Proposes values for the integer columns from a relaxation. Returning
  // false skips the heuristic. The default rounds to the nearest integer.
  std::function<bool(const Eigen::VectorXd& relaxation, Eigen::VectorXd& integer_values)> rounding;
  SimplexOptions lp;
  std::ostream* log = nullptr;
};

struct BranchBoundResult {
  MipStatus status = MipStatus::kInfeasible;
  bool has_incumbent = false;
  double objective = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd duals;  // of the LP that produced the incumbent
  double best_bound = 0.0;
  double gap = 0.0;  // (incumbent - bound) / max(1, |incumbent|)
  long nodes = 0;
  long simplex_iterations = 0;
  std::vector<BbTracePoint> trace;
};

// Best-first branch-and-bound over the columns flagged in lp.integer.
// Branches on the most fractional column (lowest index on ties); children
// start from the parent's final basis.
BranchBoundResult branch_and_bound(const LpModel& lp, const BranchBoundOptions& options = {});

}  // namespace eamod
