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

#include <iosfwd>
#include <string>
#include <vector>

#include "eamod/branch_bound.hpp"
#include "eamod/model.hpp"
#include "eamod/simplex.hpp"

namespace eamod {

// kCompact needs an instance straight from assemble(); kAuto takes it when
// available and falls back to the assembled rows otherwise.
enum class SolverRoute { kAuto, kDirect, kCompact };

struct SolverConfig {
  double feas_tol = 1e-7;
  double opt_tol = 1e-6;  // relative
  double int_tol = 1e-6;
  long max_bb_nodes = 100'000;
  double time_limit_s = 3600.0;
  SolverRoute route = SolverRoute::kAuto;
  int verbosity = 0;  // 1: branch-and-bound progress, 2: every simplex iteration
  std::ostream* log = nullptr;

  void validate() const;
};

// Rows become row bounds; integrality flags are kept unless relaxed.
LpModel to_lp_model(const ProblemInstance& pi, bool relax_integrality);

// LP (relaxation) optimum. Integer columns are treated as continuous.
FlowSolution solve_lp(const ProblemInstance& pi, const SolverConfig& cfg = {});

// Joint siting optimum by branch-and-bound on the siting columns.
FlowSolution solve_milp(const ProblemInstance& pi, const SolverConfig& cfg = {});

struct SitingEnumeration {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<int> siting;  // geo indices, ascending
  double objective = 0.0;
  long combinations = 0;
  long lp_solves = 0;
};

// Number of station sets of size at most n drawn from `candidates`.
long count_sitings(int candidates, int n);

// Exhaustive oracle: the fixed-siting LP for every candidate subset of size
// at most N. Ties resolve to the lexicographically smallest subset.
SitingEnumeration enumerate_sitings(const LayeredGraph& lg, const DemandSet& d,
                                    const ScenarioParams& p, const SolverConfig& cfg = {});

// `variable,value` rows, nonzero columns only.
std::string format_solution_dump(const ProblemInstance& pi, const FlowSolution& sol);

}  // namespace eamod
