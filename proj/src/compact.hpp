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

// Structure-aware reformulation of an assembled routing/siting instance.
//
// Between two geo-node handoffs a user flow is a walk on road arcs that
// descends exactly k layers. Its cheapest form depends only on (demand, k),
// so user flows are replaced by leg columns y(m, l, k) from hub (o_m, l) to
// hub (d_m, l - k), priced at the fastest walk using exactly k energy units.
// A leg that is not faster than some leg using less energy is dropped: the
// vehicle arrives with more charge and can follow the same rebalancing route,
// skipping charging steps, at no extra cost.

#include <vector>

#include "eamod/model.hpp"
#include "eamod/simplex.hpp"

namespace eamod::detail {

struct Leg {
  int demand = 0;
  int layer = 0;  // departure layer
  int k = 0;
  double time_h = 0.0;
  int path = 0;   // index into CompactModel::paths
};

struct CompactModel {
  LpModel lp;
  int num_flow_arcs = 0;  // rebalancing columns: layered road and charging arcs
  int leg_begin = 0;
  int siting_begin = 0;
  int num_sites = 0;
  std::vector<Leg> legs;
  std::vector<std::vector<int>> paths;  // iso arcs of each (demand, k) walk
};

CompactModel build_compact(const FlowStructure& fs);

// Instance column values (assemble() layout) of a compact solution.
Eigen::VectorXd expand_compact(const CompactModel& cm, const FlowStructure& fs,
                               const Eigen::VectorXd& z);

}  // namespace eamod::detail
