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


#include <gtest/gtest.h>

#include <sstream>

#include "eamod/errors.hpp"
#include "eamod/scenario.hpp"
#include "eamod/solver.hpp"
#include "oracles.hpp"

namespace eamod {
namespace {

struct Instance {
  LayeredGraph graph;
  DemandSet demand;
  ScenarioParams params;
};

// Six geo nodes, all of them candidates, with tight chargers.
Instance six_candidates(std::uint64_t seed) {
  RandomIsoOptions o;
  o.nodes = 6;
  o.arcs = 16;
  o.max_multiple = 2;
  o.metres_per_unit = 1500.0;
  const IsoEnergyGraph iso = random_iso_graph(o, seed);
  const std::vector<int> stations{0, 1, 2, 3, 4, 5};
  Instance in{build_layered_graph(iso, 400.0, stations, 50'000.0),
              random_demand(6, 4, 0.5, 2.0, seed + 1), {}};
  in.params.max_stations = 2;
  in.params.station_capacity = 1.0;
  in.params.charge_rate_layers_per_hour = 3.0;
  return in;
}

Instance feasible_six(std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    Instance in = six_candidates(s);
    if (solve_milp(assemble(in.graph, in.demand, in.params)).optimal()) return in;
  }
}

TEST(SolveLpTest, ZeroDemand) {
  const auto mi = oracle::micro_instance(3, 4, 4, 1, 2, 1);
  const ProblemInstance pi = assemble(mi.graph, make_demand_set({}), mi.params);
  for (SolverRoute route : {SolverRoute::kDirect, SolverRoute::kCompact}) {
    SolverConfig cfg;
    cfg.route = route;
    const FlowSolution sol = solve_lp(pi, cfg);
    ASSERT_TRUE(sol.optimal());
    EXPECT_EQ(sol.objective, 0.0);
    EXPECT_EQ(sol.rebalancing_flows.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(SolveLpTest, RoutesAgreeAndCarryCertificates) {
  int optimal = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto mi = oracle::micro_instance(700 + seed, 5, 6, 3, 3, 2);
    const ProblemInstance pi = assemble(mi.graph, mi.demand, mi.params);
    SolverConfig direct, compact;
    direct.route = SolverRoute::kDirect;
    compact.route = SolverRoute::kCompact;
    const FlowSolution a = solve_lp(pi, direct);
    const FlowSolution b = solve_lp(pi, compact);
    ASSERT_EQ(a.status, b.status) << "seed " << seed;
    if (!a.optimal()) continue;
    ++optimal;
    EXPECT_NEAR(a.objective, b.objective, 1e-6 * std::max(1.0, a.objective));
    for (const FlowSolution* s : {&a, &b}) {
      ASSERT_TRUE(s->certificate.has_value());
      EXPECT_LE(s->certificate->primal_residual, 1e-7);
      EXPECT_LE(s->certificate->complementary_slackness, 1e-6);
      EXPECT_LE(oracle::row_residual(pi, s->columns), 1e-7);
      EXPECT_TRUE(audit_flows(mi.graph, mi.demand, mi.params, *s).passes(1e-7));
    }
    EXPECT_EQ(a.certificate->formulation, "arc");
    EXPECT_EQ(b.certificate->formulation, "compact");
  }
  EXPECT_GE(optimal, 8);
}

TEST(SolveMilpTest, MatchesSitingEnumeration) {
  const Instance in = feasible_six(40);
  const ProblemInstance pi = assemble(in.graph, in.demand, in.params);
  const FlowSolution milp = solve_milp(pi);
  const SitingEnumeration en = enumerate_sitings(in.graph, in.demand, in.params);
  ASSERT_TRUE(milp.optimal());
  ASSERT_EQ(en.status, SolveStatus::kOptimal);
  EXPECT_EQ(en.combinations, 22);
  EXPECT_EQ(en.lp_solves, 22);
  EXPECT_NEAR(milp.objective, en.objective, 1e-6 * std::max(1.0, en.objective));
  int sited = 0;
  for (int c : milp.siting) sited += c;
  EXPECT_LE(sited, in.params.max_stations);
  EXPECT_TRUE(audit_flows(in.graph, in.demand, in.params, milp).passes(1e-7));
}

TEST(SolveMilpTest, DominatesEveryFixedSiting) {
  const Instance in = feasible_six(60);
  const FlowSolution milp = solve_milp(assemble(in.graph, in.demand, in.params));
  ASSERT_TRUE(milp.optimal());
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      ScenarioParams p = in.params;
      p.mode = SitingMode::kFixed;
      p.fixed_siting = {a, b};
      const FlowSolution fixed = solve_lp(assemble(in.graph, in.demand, p));
      if (fixed.optimal()) {
        EXPECT_LE(milp.objective, fixed.objective + 1e-6 * fixed.objective);
      }
    }
  }
}

TEST(SolveMilpTest, RelaxationTightWhenUnconstrained) {
  Instance in = feasible_six(80);
  in.params.max_stations = 6;
  in.params.station_capacity = 1e3;
  const ProblemInstance pi = assemble(in.graph, in.demand, in.params);
  const FlowSolution lp = solve_lp(pi);
  const FlowSolution milp = solve_milp(pi);
  ASSERT_TRUE(lp.optimal());
  ASSERT_TRUE(milp.optimal());
  EXPECT_NEAR(milp.objective, lp.objective, 1e-6 * std::max(1.0, lp.objective));
}

TEST(SolveMilpTest, Deterministic) {
  const Instance in = feasible_six(90);
  const ProblemInstance pi = assemble(in.graph, in.demand, in.params);
  const FlowSolution a = solve_milp(pi);
  const FlowSolution b = solve_milp(pi);
  EXPECT_EQ(a.columns, b.columns);
  EXPECT_EQ(a.bb_nodes, b.bb_nodes);
}

TEST(EnumerateSitingsTest, SingleCandidateComparesTwoSitings) {
  const Instance six = feasible_six(100);
  const std::vector<int> one{2};
  const LayeredGraph lg = build_layered_graph(six.graph.iso(), 400.0, one, 50'000.0);
  ScenarioParams p = six.params;
  p.max_stations = 1;
  const SitingEnumeration en = enumerate_sitings(lg, six.demand, p);
  EXPECT_EQ(en.combinations, 2);
  EXPECT_EQ(en.lp_solves, 2);
  // The winner is no worse than either fixed siting.
  for (const std::vector<int>& s : {std::vector<int>{}, std::vector<int>{2}}) {
    ScenarioParams q = p;
    q.mode = SitingMode::kFixed;
    q.fixed_siting = s;
    const FlowSolution f = solve_lp(assemble(lg, six.demand, q));
    if (f.optimal() && en.status == SolveStatus::kOptimal) {
      EXPECT_LE(en.objective, f.objective + 1e-9);
    }
  }
}

TEST(EnumerateSitingsTest, RefusesLargeBudgets) {
  EXPECT_EQ(count_sitings(6, 2), 22);
  EXPECT_EQ(count_sitings(1, 1), 2);
  EXPECT_EQ(count_sitings(4, 9), 16);
  RandomIsoOptions o;
  o.nodes = 30;
  o.arcs = 70;
  const IsoEnergyGraph iso = random_iso_graph(o, 1);
  std::vector<int> all(30);
  for (int g = 0; g < 30; ++g) all[g] = g;
  const LayeredGraph lg = build_layered_graph(iso, 300.0, all, 50'000.0);
  ScenarioParams p;
  p.max_stations = 10;
  EXPECT_GT(count_sitings(30, 10), 100'000);
  try {
    enumerate_sitings(lg, random_demand(30, 2, 1.0, 1.0, 1), p);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(std::to_string(count_sitings(30, 10))), std::string::npos)
        << e.what();
  }
}

TEST(SolverConfigTest, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.feas_tol = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.max_bb_nodes = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(SolutionDumpTest, ListsNonzeroColumns) {
  const Instance in = feasible_six(40);
  const ProblemInstance pi = assemble(in.graph, in.demand, in.params);
  const FlowSolution sol = solve_lp(pi);
  const std::string dump = format_solution_dump(pi, sol);
  std::istringstream lines(dump);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "variable,value");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_NE(line.find(','), std::string::npos);
  }
  EXPECT_EQ(rows, static_cast<int>((sol.columns.array() != 0.0).count()));
}

TEST(SolverTest, LpModelRelaxesIntegrality) {
  const Instance in = six_candidates(1);
  const ProblemInstance pi = assemble(in.graph, in.demand, in.params);
  const LpModel relaxed = to_lp_model(pi, true);
  const LpModel exact = to_lp_model(pi, false);
  EXPECT_EQ(std::count(relaxed.integer.begin(), relaxed.integer.end(), 1), 0);
  EXPECT_EQ(std::count(exact.integer.begin(), exact.integer.end(), 1), 6);
  EXPECT_EQ(exact.A.nonZeros(), pi.matrix.nonZeros());
}

}  // namespace
}  // namespace eamod
