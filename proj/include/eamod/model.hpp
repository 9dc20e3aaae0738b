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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eamod/demand.hpp"
#include "eamod/layered.hpp"

namespace eamod {

enum class SitingMode { kFixed, kJoint };

struct ScenarioParams {
  int max_stations = 0;                      // N
  double station_capacity = 1.0;             // Z, vehicles charging at once per layer step
  double charge_rate_layers_per_hour = 1.0;  // E
  SitingMode mode = SitingMode::kJoint;
  std::vector<int> fixed_siting;             // geo indices, fixed mode only

  void validate() const;
  double charging_arc_capacity() const { return station_capacity * charge_rate_layers_per_hour; }
};

// Source equation of a constraint row. Rows read from foreign LP files that
// carry no recognised prefix are kUntagged.
enum class RowTag { kEq2, kEq3, kEq4, kEq5, kEq6, kEq7, kEq8, kEq9, kUntagged };
enum class RowSense { kEqual, kLessEqual, kGreaterEqual };

const char* to_string(RowTag tag);
RowTag tag_from_name(std::string_view row_name);

struct Row {
  std::string name;
  RowTag tag = RowTag::kUntagged;
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
};

enum class ColumnKind { kUserFlow, kRebalancingFlow, kSiting, kOther };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kOther;
  int demand = -1;   // user flows
  int arc = -1;      // user and rebalancing flows
  int station = -1;  // siting: geo index
};

// The network an instance was assembled from. Solvers use it to pick a
// structure-aware route; it is dropped whenever rows are edited.
struct FlowStructure {
  LayeredGraph graph;
  DemandSet demand;
  ScenarioParams params;
};

struct InstanceStats {
  long rows = 0;
  long cols = 0;
  long nonzeros = 0;
  long integers = 0;
};

struct ProblemInstance {
  std::vector<Column> columns;
  std::vector<Row> rows;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;  // rows x columns
  Eigen::VectorXd cost;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<char> integer;
  std::shared_ptr<const FlowStructure> structure;

  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_cols() const { return static_cast<int>(columns.size()); }
  InstanceStats stats() const;
};

std::string format_stats(const InstanceStats& s);

// Copy of `pi` without the rows carrying `tag`; the copy has no structure.
ProblemInstance drop_rows(const ProblemInstance& pi, RowTag tag);

// Column layout of an assembled instance: user flows demand-major, then
// rebalancing flows, then one siting column per candidate (joint mode).
inline int user_column(int demand, int arc, int num_arcs) { return demand * num_arcs + arc; }
inline int rebalancing_column(int arc, int num_arcs, int num_demands) {
  return num_demands * num_arcs + arc;
}
inline int siting_column(int slot, int num_arcs, int num_demands) {
  return (num_demands + 1) * num_arcs + slot;
}

// Builds the routing (fixed siting) or joint routing/siting instance.
// Flow rates are vehicles per hour and arc costs are hours, so the
// objective is vehicle-hours per hour.
ProblemInstance assemble(const LayeredGraph& lg, const DemandSet& d, const ScenarioParams& p);

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kLimitReached };

const char* to_string(SolveStatus s);

// Optimality evidence for the LP that was actually solved.
struct Certificate {
  std::string formulation;        // "arc" (the assembled instance) or "compact"
  double primal_residual = 0.0;   // max row violation
  double bound_violation = 0.0;   // max column bound violation
  double dual_infeasibility = 0.0;
  double complementary_slackness = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
};

struct FlowSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<Eigen::VectorXd> user_flows;  // per demand, per layered arc
  Eigen::VectorXd rebalancing_flows;        // per layered arc
  std::vector<int> siting;                  // per geo node, 0 or 1
  std::vector<double> siting_level;         // per geo node, fractional in relaxations
  Eigen::VectorXd columns;                  // values in instance column order

  // Solver bookkeeping.
  std::string route;
  double best_bound = 0.0;
  double gap = 0.0;
  long simplex_iterations = 0;
  long bb_nodes = 0;
  std::optional<Certificate> certificate;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

// Fills user/rebalancing flows and siting from column values, clamping flows
// below `clamp_below` to zero. Requires pi.structure.
FlowSolution solution_from_columns(const ProblemInstance& pi, const Eigen::VectorXd& x,
                                   double clamp_below);

// Worst constraint residuals of a solution, recomputed from the layered graph
// and the demand set rather than from the instance rows.
struct ConstraintAudit {
  double conservation_per_demand = 0.0;  // Eq2
  double conservation_vehicles = 0.0;    // Eq3
  double user_geo_usage = 0.0;           // Eq4
  double rebalancing_geo_usage = 0.0;    // Eq5
  double soc_handoff = 0.0;              // Eq6
  int stations_used = 0;
  int station_limit = 0;                 // Eq7: stations_used <= station_limit
  double siting_total = 0.0;             // sum of siting levels, also <= station_limit
  double charging_capacity_slack = 0.0;  // Eq8: min over charging arcs of Z*E*c - x^r
  double user_charging_flow = 0.0;       // Eq9: max |x^m| on charging arcs
  double min_flow = 0.0;                 // Eq10-11

  bool passes(double residual_tol) const;
};

ConstraintAudit audit_flows(const LayeredGraph& lg, const DemandSet& d, const ScenarioParams& p,
                            const FlowSolution& sol);

}  // namespace eamod
