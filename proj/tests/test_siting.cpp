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

#include <algorithm>
#include <random>
#include <set>

#include "eamod/errors.hpp"
#include "eamod/siting.hpp"
#include "oracles.hpp"

namespace eamod {
namespace {

using WeightedArcs = std::vector<std::tuple<int, int, double>>;

IsoEnergyGraph graph_of(int n, const WeightedArcs& arcs) {
  IsoEnergyGraph g;
  g.unit_energy_wh = 100.0;
  for (int i = 0; i < n; ++i) g.nodes.push_back({i, i, {40.7 + 0.001 * i, -74.0}});
  for (const auto& [u, v, w] : arcs) g.arcs.push_back({u, v, 1, w, 10.0 * w, 100.0});
  return g;
}

// Strongly connected digraph: a directed ring plus random chords, with
// small integer weights so that equal-length paths are common.
WeightedArcs random_digraph(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(1, 4), node(0, n - 1);
  std::set<std::pair<int, int>> used;
  WeightedArcs arcs;
  for (int i = 0; i < n; ++i) {
    used.insert({i, (i + 1) % n});
    arcs.emplace_back(i, (i + 1) % n, w(rng));
  }
  const int extra = n + static_cast<int>(rng() % (2 * n));
  for (int e = 0; e < extra; ++e) {
    const int a = node(rng), b = node(rng);
    if (a == b || !used.insert({a, b}).second) continue;
    arcs.emplace_back(a, b, w(rng));
  }
  return arcs;
}

TEST(BetweennessTest, DirectedLine) {
  const CentralityScores s = betweenness(graph_of(3, {{0, 1, 1.0}, {1, 2, 1.0}}));
  EXPECT_EQ(s, (CentralityScores{0.0, 1.0, 0.0}));
}

TEST(BetweennessTest, CompleteGraphIsFlat) {
  WeightedArcs arcs;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      if (a != b) arcs.emplace_back(a, b, 2.0);
    }
  }
  for (double v : betweenness(graph_of(5, arcs))) EXPECT_EQ(v, 0.0);
}

TEST(BetweennessTest, SplitsTiesEvenly) {
  // Two equal routes 0->1->3 and 0->2->3.
  const CentralityScores s =
      betweenness(graph_of(4, {{0, 1, 1.0}, {1, 3, 1.0}, {0, 2, 1.0}, {2, 3, 1.0}}));
  EXPECT_DOUBLE_EQ(s[1], 0.5);
  EXPECT_DOUBLE_EQ(s[2], 0.5);
  EXPECT_DOUBLE_EQ(s[0], 0.0);
}

TEST(BetweennessTest, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 6 + static_cast<int>(seed % 7);
    const WeightedArcs arcs = random_digraph(seed, n);
    const CentralityScores got = betweenness(graph_of(n, arcs));
    const std::vector<double> want = oracle::brute_betweenness(n, arcs);
    for (int v = 0; v < n; ++v) EXPECT_NEAR(got[v], want[v], 1e-9) << "seed " << seed << " v " << v;
  }
}

TEST(BetweennessTest, InvariantUnderUniformScaling) {
  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    WeightedArcs arcs = random_digraph(seed, 10);
    const CentralityScores base = betweenness(graph_of(10, arcs));
    for (auto& a : arcs) std::get<2>(a) *= 7.0;
    const CentralityScores scaled = betweenness(graph_of(10, arcs));
    for (int v = 0; v < 10; ++v) EXPECT_NEAR(base[v], scaled[v], 1e-12);
  }
}

TEST(BetweennessTest, EnergyWeightUsesMultiples) {
  // Fast but energy-hungry direct arc versus a slow two-hop detour.
  IsoEnergyGraph g = graph_of(3, {{0, 2, 1.0}, {0, 1, 5.0}, {1, 2, 5.0}, {2, 0, 1.0}, {1, 0, 1.0}});
  g.arcs[0].k = 4;
  EXPECT_EQ(betweenness(g, CentralityWeight::kTravelTime)[1], 0.0);
  EXPECT_EQ(betweenness(g, CentralityWeight::kEnergy)[1], 1.0);
}

TEST(BetweennessTest, Errors) {
  EXPECT_THROW(betweenness(graph_of(4, {{0, 1, 1.0}, {1, 0, 1.0}, {2, 3, 1.0}})), ValidationError);
  EXPECT_THROW(betweenness(graph_of(2, {{0, 1, 0.0}, {1, 0, 1.0}})), ValidationError);
}

TEST(HeuristicSitingTest, TieRuleAndEdges) {
  const CentralityScores s{0.5, 0.5, 0.1};
  EXPECT_EQ(heuristic_siting(s, 1), std::vector<int>{0});
  EXPECT_TRUE(heuristic_siting(s, 0).empty());
  EXPECT_EQ(heuristic_siting(s, 3), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(heuristic_siting(s, 5), (std::vector<int>{0, 1, 2}));
  const std::vector<int> cands{1, 2};
  EXPECT_EQ(heuristic_siting(s, 1, cands), std::vector<int>{1});
  EXPECT_THROW(heuristic_siting(s, -1), ConfigError);
}

TEST(HeuristicSitingTest, NestedInN) {
  const WeightedArcs arcs = random_digraph(3, 12);
  const CentralityScores s = betweenness(graph_of(12, arcs));
  for (int n = 0; n < 12; ++n) {
    const auto small = heuristic_siting(s, n);
    const auto big = heuristic_siting(s, n + 1);
    EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end())) << n;
    EXPECT_EQ(static_cast<int>(big.size()), n + 1);
  }
}

TEST(HeuristicSitingTest, ScoresExport) {
  EXPECT_EQ(format_scores({0.0, 1.5}), "geo_index,score\n0,0\n1,1.5\n");
}

}  // namespace
}  // namespace eamod
