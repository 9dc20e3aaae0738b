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

#include "eamod/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "compact.hpp"
#include "eamod/errors.hpp"
#include "eamod/graph_io.hpp"

namespace eamod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SimplexOptions simplex_options(const SolverConfig& cfg) {
  SimplexOptions so;
  so.time_limit_s = cfg.time_limit_s;
  if (cfg.verbosity >= 2 && cfg.log) {
    so.log = cfg.log;
    so.log_every = 1;
  }
  return so;
}

bool use_compact(const ProblemInstance& pi, const SolverConfig& cfg) {
  switch (cfg.route) {
    case SolverRoute::kDirect: return false;
    case SolverRoute::kCompact:
      if (!pi.structure) throw ConfigError("compact route needs an instance built by assemble()");
      return true;
    case SolverRoute::kAuto: return static_cast<bool>(pi.structure);
  }
  return false;
}

Certificate make_certificate(const char* formulation, const LpModel& lp, const SimplexResult& r) {
  const CertificateCheck c = check_certificate(lp, r.x, r.duals);
  return {formulation,          c.primal_residual,  c.bound_violation, c.dual_infeasibility,
          c.complementary_slackness, c.primal_objective, c.dual_objective};
}

FlowSolution package(const ProblemInstance& pi, const Eigen::VectorXd& x, const SolverConfig& cfg) {
  if (pi.structure) return solution_from_columns(pi, x, cfg.feas_tol);
  FlowSolution sol;
  sol.columns = x;
  sol.objective = pi.cost.dot(x);
  return sol;
}

// Rounding heuristic for siting columns: open the N most used stations.
std::function<bool(const Eigen::VectorXd&, Eigen::VectorXd&)> top_n_rounding(
    const LpModel& lp, int n_stations, double int_tol) {
  std::vector<int> ints;
  for (int j = 0; j < lp.cols(); ++j) {
    if (lp.integer[j]) ints.push_back(j);
  }
  return [ints, n_stations, int_tol](const Eigen::VectorXd& relax, Eigen::VectorXd& vals) {
    std::vector<int> order(ints.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return relax[ints[a]] > relax[ints[b]]; });
    vals = Eigen::VectorXd::Zero(static_cast<int>(ints.size()));
    for (int k = 0; k < std::min<int>(n_stations, static_cast<int>(order.size())); ++k) {
      if (relax[ints[order[k]]] > int_tol) vals[order[k]] = 1.0;
    }
    return true;
  };
}

}  // namespace

void SolverConfig::validate() const {
  if (!(feas_tol > 0) || !(opt_tol > 0) || !(int_tol > 0)) {
    throw ConfigError("solver tolerances must be positive");
  }
  if (max_bb_nodes < 1) throw ConfigError("max_bb_nodes must be at least 1");
  if (!(time_limit_s > 0)) throw ConfigError("time limit must be positive");
}

LpModel to_lp_model(const ProblemInstance& pi, bool relax_integrality) {
  LpModel lp;
  lp.A = pi.matrix;
  lp.A.makeCompressed();
  lp.cost = pi.cost;
  lp.col_lower = pi.lower;
  lp.col_upper = pi.upper;
  lp.row_lower.resize(pi.num_rows());
  lp.row_upper.resize(pi.num_rows());
  for (int r = 0; r < pi.num_rows(); ++r) {
    const auto& row = pi.rows[r];
    lp.row_lower[r] = row.sense == RowSense::kLessEqual ? -kInf : row.rhs;
    lp.row_upper[r] = row.sense == RowSense::kGreaterEqual ? kInf : row.rhs;
  }
  lp.integer = relax_integrality ? std::vector<char>(pi.num_cols(), 0) : pi.integer;
  lp.integer.resize(pi.num_cols(), 0);
  return lp;
}

FlowSolution solve_lp(const ProblemInstance& pi, const SolverConfig& cfg) {
  cfg.validate();
  const SimplexOptions so = simplex_options(cfg);
  const bool compact = use_compact(pi, cfg);
  detail::CompactModel cm;
  LpModel direct;
  if (compact) {
    cm = detail::build_compact(*pi.structure);
  } else {
    direct = to_lp_model(pi, true);
  }
  const LpModel& lp = compact ? cm.lp : direct;
  const SimplexResult r = solve_simplex(lp, so);
  if (r.status == LpStatus::kIterationLimit) {
    throw SolverError("simplex iteration cap reached after " + std::to_string(r.iterations) +
                      " iterations (" + std::to_string(r.bland_iterations) + " under Bland's rule)");
  }

  FlowSolution sol;
  if (r.status == LpStatus::kOptimal) {
    sol = package(pi, compact ? detail::expand_compact(cm, *pi.structure, r.x) : r.x, cfg);
    sol.status = SolveStatus::kOptimal;
    sol.certificate = make_certificate(compact ? "compact" : "arc", lp, r);
    sol.best_bound = sol.objective;
  } else {
    sol.status = r.status == LpStatus::kInfeasible  ? SolveStatus::kInfeasible
                 : r.status == LpStatus::kUnbounded ? SolveStatus::kUnbounded
                                                    : SolveStatus::kLimitReached;
  }
  sol.route = compact ? "compact" : "arc";
  sol.simplex_iterations = r.iterations;
  if (cfg.log && cfg.verbosity >= 1) {
    *cfg.log << "lp: " << to_string(sol.status) << " objective " << sol.objective << " after "
             << r.iterations << " iterations (" << sol.route << " route, " << lp.rows() << " rows, "
             << lp.cols() << " cols)\n";
  }
  return sol;
}

FlowSolution solve_milp(const ProblemInstance& pi, const SolverConfig& cfg) {
  cfg.validate();
  const bool compact = use_compact(pi, cfg);
  detail::CompactModel cm;
  LpModel direct;
  if (compact) {
    cm = detail::build_compact(*pi.structure);
  } else {
    direct = to_lp_model(pi, false);
  }
  const LpModel& lp = compact ? cm.lp : direct;

  BranchBoundOptions bo;
  bo.int_tol = cfg.int_tol;
  bo.opt_tol = cfg.opt_tol;
  bo.max_nodes = cfg.max_bb_nodes;
  bo.time_limit_s = cfg.time_limit_s;
  bo.lp = simplex_options(cfg);
  if (cfg.verbosity >= 1) bo.log = cfg.log;
  if (pi.structure) bo.rounding = top_n_rounding(lp, pi.structure->params.max_stations, cfg.int_tol);
  const BranchBoundResult r = branch_and_bound(lp, bo);

  FlowSolution sol;
  if (r.has_incumbent) {
    sol = package(pi, compact ? detail::expand_compact(cm, *pi.structure, r.x) : r.x, cfg);
  }
  switch (r.status) {
    case MipStatus::kOptimal: sol.status = SolveStatus::kOptimal; break;
    case MipStatus::kInfeasible: sol.status = SolveStatus::kInfeasible; break;
    case MipStatus::kUnbounded: sol.status = SolveStatus::kUnbounded; break;
    case MipStatus::kLimitReached: sol.status = SolveStatus::kLimitReached; break;
  }
  sol.route = compact ? "compact" : "arc";
  sol.best_bound = r.best_bound;
  sol.gap = r.gap;
  sol.bb_nodes = r.nodes;
  sol.simplex_iterations = r.simplex_iterations;
  if (cfg.log && cfg.verbosity >= 1) {
    *cfg.log << "milp: " << to_string(sol.status) << " objective " << sol.objective << " bound "
             << sol.best_bound << " gap " << sol.gap << " nodes " << r.nodes << '\n';
  }
  return sol;
}

long count_sitings(int candidates, int n) {
  long total = 0;
  long binom = 1;
  for (int s = 0; s <= std::min(n, candidates); ++s) {
    total += binom;
    if (total > 1'000'000'000L) return total;
    binom = binom * (candidates - s) / (s + 1);
  }
  return total;
}

SitingEnumeration enumerate_sitings(const LayeredGraph& lg, const DemandSet& d,
                                    const ScenarioParams& p, const SolverConfig& cfg) {
  p.validate();
  const std::vector<int>& cand = lg.candidate_stations();
  const int C = static_cast<int>(cand.size());
  SitingEnumeration out;
  out.combinations = count_sitings(C, p.max_stations);
  if (out.combinations > 100'000) {
    throw ConfigError("siting enumeration would need " + std::to_string(out.combinations) +
                      " LP solves (limit 100000)");
  }
  ScenarioParams q = p;
  q.mode = SitingMode::kFixed;
  std::vector<int> current;
  double best = kInf;
  // Depth-first over ascending index sets visits subsets in lexicographic
  // order, so keeping only strict improvements honours the tie rule.
  auto visit = [&](auto&& self, int next) -> void {
    q.fixed_siting = current;
    const FlowSolution sol = solve_lp(assemble(lg, d, q), cfg);
    ++out.lp_solves;
    const bool better = best == kInf ||
                        sol.objective < best - cfg.opt_tol * 1e-3 * std::max(1.0, std::abs(best));
    if (sol.optimal() && better) {
      best = sol.objective;
      out.siting = current;
      out.status = SolveStatus::kOptimal;
    }
    if (static_cast<int>(current.size()) == p.max_stations) return;
    for (int s = next; s < C; ++s) {
      current.push_back(cand[s]);
      self(self, s + 1);
      current.pop_back();
    }
  };
  visit(visit, 0);
  out.objective = out.status == SolveStatus::kOptimal ? best : 0.0;
  return out;
}

std::string format_solution_dump(const ProblemInstance& pi, const FlowSolution& sol) {
  std::string out = "variable,value\n";
  for (int j = 0; j < pi.num_cols() && j < sol.columns.size(); ++j) {
    if (sol.columns[j] == 0.0) continue;
    out += pi.columns[j].name + ',' + format_double(sol.columns[j]) + '\n';
  }
  return out;
}

}  // namespace eamod
