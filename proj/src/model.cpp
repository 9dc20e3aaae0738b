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

#include "eamod/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eamod/errors.hpp"

namespace eamod {

void ScenarioParams::validate() const {
  if (max_stations < 0) throw ConfigError("station limit N must be non-negative");
  if (!(station_capacity > 0)) throw ConfigError("station capacity Z must be positive");
  if (!(charge_rate_layers_per_hour > 0)) throw ConfigError("charging rate E must be positive");
  if (mode == SitingMode::kJoint && !fixed_siting.empty()) {
    throw ConfigError("a fixed siting is only meaningful in fixed-siting mode");
  }
}

const char* to_string(RowTag tag) {
  switch (tag) {
    case RowTag::kEq2: return "Eq2";
    case RowTag::kEq3: return "Eq3";
    case RowTag::kEq4: return "Eq4";
    case RowTag::kEq5: return "Eq5";
    case RowTag::kEq6: return "Eq6";
    case RowTag::kEq7: return "Eq7";
    case RowTag::kEq8: return "Eq8";
    case RowTag::kEq9: return "Eq9";
    case RowTag::kUntagged: return "untagged";
  }
  return "untagged";
}

RowTag tag_from_name(std::string_view name) {
  if (name.size() < 3 || !name.starts_with("Eq")) return RowTag::kUntagged;
  if (name.size() > 3 && name[3] != '_' && name[3] != 'a' && name[3] != 'b') {
    return RowTag::kUntagged;
  }
  switch (name[2]) {
    case '2': return RowTag::kEq2;
    case '3': return RowTag::kEq3;
    case '4': return RowTag::kEq4;
    case '5': return RowTag::kEq5;
    case '6': return RowTag::kEq6;
    case '7': return RowTag::kEq7;
    case '8': return RowTag::kEq8;
    case '9': return RowTag::kEq9;
    default: return RowTag::kUntagged;
  }
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kLimitReached: return "limit";
  }
  return "?";
}

InstanceStats ProblemInstance::stats() const {
  InstanceStats s;
  s.rows = num_rows();
  s.cols = num_cols();
  s.nonzeros = matrix.nonZeros();
  s.integers = std::count(integer.begin(), integer.end(), 1);
  return s;
}

std::string format_stats(const InstanceStats& s) {
  return "rows=" + std::to_string(s.rows) + ", cols=" + std::to_string(s.cols) +
         ", nonzeros=" + std::to_string(s.nonzeros) + ", integers=" + std::to_string(s.integers);
}

ProblemInstance drop_rows(const ProblemInstance& pi, RowTag tag) {
  ProblemInstance out;
  out.columns = pi.columns;
  out.cost = pi.cost;
  out.lower = pi.lower;
  out.upper = pi.upper;
  out.integer = pi.integer;
  std::vector<Eigen::Triplet<double>> trip;
  for (int r = 0; r < pi.num_rows(); ++r) {
    if (pi.rows[r].tag == tag) continue;
    const int nr = out.num_rows();
    out.rows.push_back(pi.rows[r]);
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(pi.matrix, r); it; ++it) {
      trip.emplace_back(nr, static_cast<int>(it.col()), it.value());
    }
  }
  out.matrix.resize(out.num_rows(), out.num_cols());
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  return out;
}

ProblemInstance assemble(const LayeredGraph& lg, const DemandSet& d, const ScenarioParams& p) {
  p.validate();
  d.validate(lg.num_geo());
  const bool joint = p.mode == SitingMode::kJoint;
  std::vector<char> sited(lg.num_geo(), 0);
  if (!joint) {
    if (static_cast<int>(p.fixed_siting.size()) > p.max_stations) {
      throw ConfigError("fixed siting has more stations than the limit N");
    }
    for (int g : p.fixed_siting) {
      if (g < 0 || g >= lg.num_geo() || lg.candidate_slot(g) < 0) {
        throw ConfigError("fixed siting references geo node " + std::to_string(g) +
                          ", which is not a candidate station");
      }
      if (sited[g]) throw ConfigError("fixed siting lists geo node " + std::to_string(g) + " twice");
      sited[g] = 1;
    }
  }

  const int A = lg.num_arcs();
  const int M = d.size();
  const int V = lg.num_nodes();
  const int C = joint ? static_cast<int>(lg.candidate_stations().size()) : 0;
  const int n = (M + 1) * A + C;

  ProblemInstance pi;
  pi.columns.resize(n);
  pi.cost = Eigen::VectorXd::Zero(n);
  pi.lower = Eigen::VectorXd::Zero(n);
  pi.upper = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  pi.integer.assign(n, 0);
  for (int m = 0; m < M; ++m) {
    for (int a = 0; a < A; ++a) {
      const int j = user_column(m, a, A);
      pi.columns[j] = {"xm" + std::to_string(m) + "_a" + std::to_string(a), ColumnKind::kUserFlow, m, a, -1};
      pi.cost[j] = lg.arc(a).travel_time_s / 3600.0;
    }
  }
  for (int a = 0; a < A; ++a) {
    const int j = rebalancing_column(a, A, M);
    pi.columns[j] = {"xr_a" + std::to_string(a), ColumnKind::kRebalancingFlow, -1, a, -1};
    pi.cost[j] = lg.arc(a).travel_time_s / 3600.0;
  }
  for (int s = 0; s < C; ++s) {
    const int j = siting_column(s, A, M);
    const int g = lg.candidate_stations()[s];
    pi.columns[j] = {"c_g" + std::to_string(g), ColumnKind::kSiting, -1, -1, g};
    pi.upper[j] = 1.0;
    pi.integer[j] = 1;
  }

  std::vector<Eigen::Triplet<double>> trip;
  auto add_row = [&](std::string name, RowTag tag, RowSense sense, double rhs) {
    pi.rows.push_back({std::move(name), tag, sense, rhs});
    return static_cast<int>(pi.rows.size()) - 1;
  };

  // Eq2: per-demand conservation with injections at the origin/destination geo nodes.
  for (int m = 0; m < M; ++m) {
    const auto& req = d.requests[m];
    for (int v = 0; v < V; ++v) {
      double rhs = 0.0;
      if (v == lg.geo_node(req.destination)) rhs += req.rate_per_hour;
      if (v == lg.geo_node(req.origin)) rhs -= req.rate_per_hour;
      const int r = add_row("Eq2_m" + std::to_string(m) + "_v" + std::to_string(v), RowTag::kEq2,
                            RowSense::kEqual, rhs);
      for (int a : lg.in_arcs(v)) trip.emplace_back(r, user_column(m, a, A), 1.0);
      for (int a : lg.out_arcs(v)) trip.emplace_back(r, user_column(m, a, A), -1.0);
    }
  }
  // Eq3: conservation of all vehicles.
  for (int v = 0; v < V; ++v) {
    const int r = add_row("Eq3_v" + std::to_string(v), RowTag::kEq3, RowSense::kEqual, 0.0);
    for (int m = 0; m <= M; ++m) {
      for (int a : lg.in_arcs(v)) trip.emplace_back(r, m * A + a, 1.0);
      for (int a : lg.out_arcs(v)) trip.emplace_back(r, m * A + a, -1.0);
    }
  }
  // Eq4/Eq5: geo arcs are used twice per unit of demand.
  const double twice_demand = 2.0 * d.total_rate();
  {
    const int r4 = add_row("Eq4", RowTag::kEq4, RowSense::kEqual, twice_demand);
    for (int m = 0; m < M; ++m) {
      for (int a = lg.geo_begin(); a < A; ++a) trip.emplace_back(r4, user_column(m, a, A), 1.0);
    }
    const int r5 = add_row("Eq5", RowTag::kEq5, RowSense::kEqual, twice_demand);
    for (int a = lg.geo_begin(); a < A; ++a) trip.emplace_back(r5, rebalancing_column(a, A, M), 1.0);
  }
  // Eq6: a vehicle keeps its SoC layer when it switches between serving a
  // request and rebalancing at a geo node, in both directions.
  for (int g = 0; g < lg.num_geo(); ++g) {
    for (int l = 0; l < lg.num_layers(); ++l) {
      const std::string suffix = "_g" + std::to_string(g) + "_l" + std::to_string(l);
      const int ra = add_row("Eq6a" + suffix, RowTag::kEq6, RowSense::kEqual, 0.0);
      for (int m = 0; m < M; ++m) trip.emplace_back(ra, user_column(m, lg.geo_in_arc(g, l), A), 1.0);
      trip.emplace_back(ra, rebalancing_column(lg.geo_out_arc(g, l), A, M), -1.0);
      const int rb = add_row("Eq6b" + suffix, RowTag::kEq6, RowSense::kEqual, 0.0);
      trip.emplace_back(rb, rebalancing_column(lg.geo_in_arc(g, l), A, M), 1.0);
      for (int m = 0; m < M; ++m) trip.emplace_back(rb, user_column(m, lg.geo_out_arc(g, l), A), -1.0);
    }
  }
  // Eq7: station budget.
  if (C > 0) {
    const int r = add_row("Eq7", RowTag::kEq7, RowSense::kLessEqual, p.max_stations);
    for (int s = 0; s < C; ++s) trip.emplace_back(r, siting_column(s, A, M), 1.0);
  }
  // Eq8: charging-arc capacity, linked to the siting decision.
  const double cap = p.charging_arc_capacity();
  for (int a = lg.charging_begin(); a < lg.geo_begin(); ++a) {
    const int g = lg.arc(a).geo;
    const double rhs = joint ? 0.0 : (sited[g] ? cap : 0.0);
    const int r = add_row("Eq8_a" + std::to_string(a), RowTag::kEq8, RowSense::kLessEqual, rhs);
    trip.emplace_back(r, rebalancing_column(a, A, M), 1.0);
    if (joint) trip.emplace_back(r, siting_column(lg.candidate_slot(g), A, M), -cap);
  }
  // Eq9: no charging with a rider on board.
  for (int m = 0; m < M; ++m) {
    for (int a = lg.charging_begin(); a < lg.geo_begin(); ++a) {
      const int r = add_row("Eq9_m" + std::to_string(m) + "_a" + std::to_string(a), RowTag::kEq9,
                            RowSense::kEqual, 0.0);
      trip.emplace_back(r, user_column(m, a, A), 1.0);
    }
  }

  pi.matrix.resize(pi.num_rows(), n);
  pi.matrix.setFromTriplets(trip.begin(), trip.end());
  auto structure = std::make_shared<FlowStructure>();
  structure->graph = lg;
  structure->demand = d;
  structure->params = p;
  if (!joint) {
    std::sort(structure->params.fixed_siting.begin(), structure->params.fixed_siting.end());
  }
  pi.structure = std::move(structure);
  return pi;
}

FlowSolution solution_from_columns(const ProblemInstance& pi, const Eigen::VectorXd& x,
                                   double clamp_below) {
  if (!pi.structure) throw SolverError("instance carries no flow structure");
  const auto& lg = pi.structure->graph;
  const auto& p = pi.structure->params;
  const int A = lg.num_arcs();
  const int M = pi.structure->demand.size();
  FlowSolution sol;
  sol.columns = x;
  for (int j = 0; j < pi.num_cols(); ++j) {
    if (pi.columns[j].kind != ColumnKind::kSiting && sol.columns[j] < clamp_below) {
      sol.columns[j] = 0.0;
    }
  }
  sol.user_flows.resize(M);
  for (int m = 0; m < M; ++m) sol.user_flows[m] = sol.columns.segment(user_column(m, 0, A), A);
  sol.rebalancing_flows = sol.columns.segment(rebalancing_column(0, A, M), A);
  sol.siting.assign(lg.num_geo(), 0);
  sol.siting_level.assign(lg.num_geo(), 0.0);
  if (p.mode == SitingMode::kFixed) {
    for (int g : p.fixed_siting) {
      sol.siting[g] = 1;
      sol.siting_level[g] = 1.0;
    }
  } else {
    for (int s = 0; s < static_cast<int>(lg.candidate_stations().size()); ++s) {
      const int g = lg.candidate_stations()[s];
      const double c = sol.columns[siting_column(s, A, M)];
      sol.siting[g] = static_cast<int>(std::clamp(std::round(c), 0.0, 1.0));
      sol.siting_level[g] = c;
    }
  }
  sol.objective = pi.cost.dot(sol.columns);
  return sol;
}

bool ConstraintAudit::passes(double tol) const {
  return conservation_per_demand <= tol && conservation_vehicles <= tol &&
         user_geo_usage <= tol && rebalancing_geo_usage <= tol && soc_handoff <= tol &&
         stations_used <= station_limit && siting_total <= station_limit + tol &&
         charging_capacity_slack >= -tol &&
         user_charging_flow == 0.0 && min_flow >= 0.0;
}

ConstraintAudit audit_flows(const LayeredGraph& lg, const DemandSet& d, const ScenarioParams& p,
                            const FlowSolution& sol) {
  ConstraintAudit au;
  const int M = d.size();
  if (static_cast<int>(sol.user_flows.size()) != M || sol.rebalancing_flows.size() != lg.num_arcs()) {
    throw ValidationError("solution carries no flows to audit");
  }
  const int V = lg.num_nodes();
  const auto& xr = sol.rebalancing_flows;
  Eigen::VectorXd total = xr;
  for (int m = 0; m < M; ++m) total += sol.user_flows[m];

  auto balance = [&](const Eigen::VectorXd& f, int v) {
    double b = 0.0;
    for (int a : lg.in_arcs(v)) b += f[a];
    for (int a : lg.out_arcs(v)) b -= f[a];
    return b;
  };
  for (int m = 0; m < M; ++m) {
    const auto& req = d.requests[m];
    for (int v = 0; v < V; ++v) {
      double expected = 0.0;
      if (v == lg.geo_node(req.destination)) expected += req.rate_per_hour;
      if (v == lg.geo_node(req.origin)) expected -= req.rate_per_hour;
      au.conservation_per_demand =
          std::max(au.conservation_per_demand, std::abs(balance(sol.user_flows[m], v) - expected));
    }
  }
  for (int v = 0; v < V; ++v) {
    au.conservation_vehicles = std::max(au.conservation_vehicles, std::abs(balance(total, v)));
  }
  double user_geo = 0.0, rebal_geo = 0.0;
  for (int a = lg.geo_begin(); a < lg.num_arcs(); ++a) {
    user_geo += total[a] - xr[a];
    rebal_geo += xr[a];
  }
  au.user_geo_usage = std::abs(user_geo - 2.0 * d.total_rate());
  au.rebalancing_geo_usage = std::abs(rebal_geo - 2.0 * d.total_rate());
  for (int g = 0; g < lg.num_geo(); ++g) {
    for (int l = 0; l < lg.num_layers(); ++l) {
      const int in = lg.geo_in_arc(g, l);
      const int out = lg.geo_out_arc(g, l);
      au.soc_handoff = std::max(au.soc_handoff, std::abs((total[in] - xr[in]) - xr[out]));
      au.soc_handoff = std::max(au.soc_handoff, std::abs(xr[in] - (total[out] - xr[out])));
    }
  }
  au.stations_used = static_cast<int>(std::count(sol.siting.begin(), sol.siting.end(), 1));
  au.station_limit = p.max_stations;
  // Relaxed solutions are audited against their fractional siting levels.
  const bool levels = static_cast<int>(sol.siting_level.size()) == lg.num_geo();
  for (int g = 0; g < lg.num_geo(); ++g) {
    au.siting_total += levels ? sol.siting_level[g] : sol.siting[g];
  }
  au.charging_capacity_slack = std::numeric_limits<double>::infinity();
  for (int a = lg.charging_begin(); a < lg.geo_begin(); ++a) {
    const int g = lg.arc(a).geo;
    const double c = levels ? sol.siting_level[g] : sol.siting[g];
    au.charging_capacity_slack =
        std::min(au.charging_capacity_slack, p.charging_arc_capacity() * c - xr[a]);
    for (int m = 0; m < M; ++m) {
      au.user_charging_flow = std::max(au.user_charging_flow, std::abs(sol.user_flows[m][a]));
    }
  }
  if (lg.num_charging_arcs() == 0) au.charging_capacity_slack = 0.0;
  au.min_flow = xr.size() > 0 ? xr.minCoeff() : 0.0;
  for (int m = 0; m < M; ++m) {
    if (sol.user_flows[m].size() > 0) au.min_flow = std::min(au.min_flow, sol.user_flows[m].minCoeff());
  }
  return au;
}

}  // namespace eamod
