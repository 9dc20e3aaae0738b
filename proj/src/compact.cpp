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

#include "compact.hpp"

#include <algorithm>
#include <limits>

namespace eamod::detail {
namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CompactModel build_compact(const FlowStructure& fs) {
  const auto& lg = fs.graph;
  const auto& iso = lg.iso();
  const auto& d = fs.demand;
  const auto& p = fs.params;
  const bool joint = p.mode == SitingMode::kJoint;
  const int L = lg.num_layers();
  const int G = lg.num_geo();
  const int M = d.size();
  const int K = L - 1;  // most energy one leg can use

  CompactModel cm;
  cm.num_flow_arcs = lg.geo_begin();

  // Fastest walk per (demand, exact energy) by dynamic programming over k.
  const int n_iso = static_cast<int>(iso.arcs.size());
  std::vector<std::vector<int>> in_iso(G);
  for (int i = 0; i < n_iso; ++i) in_iso[iso.arcs[i].head].push_back(i);
  std::vector<double> best((K + 1) * G);
  std::vector<int> pred((K + 1) * G);
  for (int m = 0; m < M; ++m) {
    const auto& req = d.requests[m];
    std::fill(best.begin(), best.end(), kInf);
    std::fill(pred.begin(), pred.end(), -1);
    best[req.origin] = 0.0;
    for (int k = 1; k <= K; ++k) {
      for (int v = 0; v < G; ++v) {
        double& b = best[k * G + v];
        for (int i : in_iso[v]) {
          const auto& arc = iso.arcs[i];
          if (arc.k > k) continue;
          const double t = best[(k - arc.k) * G + arc.tail] + arc.travel_time_s;
          if (t < b) {
            b = t;
            pred[k * G + v] = i;
          }
        }
      }
    }
    double frontier = kInf;
    for (int k = 1; k <= K; ++k) {
      const double t = best[k * G + req.destination];
      if (!(t < frontier)) continue;
      frontier = t;
      std::vector<int> path;
      for (int v = req.destination, kk = k; kk > 0;) {
        const int i = pred[kk * G + v];
        path.push_back(i);
        kk -= iso.arcs[i].k;
        v = iso.arcs[i].tail;
      }
      std::reverse(path.begin(), path.end());
      const int pi = static_cast<int>(cm.paths.size());
      cm.paths.push_back(std::move(path));
      for (int l = k; l < L; ++l) cm.legs.push_back({m, l, k, t / 3600.0, pi});
    }
  }

  const int C = joint ? static_cast<int>(lg.candidate_stations().size()) : 0;
  cm.leg_begin = cm.num_flow_arcs;
  cm.siting_begin = cm.leg_begin + static_cast<int>(cm.legs.size());
  cm.num_sites = C;
  const int n = cm.siting_begin + C;
  const int hubs = G * L;
  const int n_charging = lg.num_charging_arcs();
  const int m_rows = hubs + M + (joint ? n_charging + (C > 0 ? 1 : 0) : 0);

  LpModel& lp = cm.lp;
  lp.cost = Eigen::VectorXd::Zero(n);
  lp.col_lower = Eigen::VectorXd::Zero(n);
  lp.col_upper = Eigen::VectorXd::Constant(n, kInf);
  lp.row_lower = Eigen::VectorXd::Zero(m_rows);
  lp.row_upper = Eigen::VectorXd::Zero(m_rows);
  lp.integer.assign(n, 0);

  std::vector<char> sited(G, 0);
  for (int g : p.fixed_siting) sited[g] = 1;
  const double cap = p.charging_arc_capacity();

  std::vector<Eigen::Triplet<double>> trip;
  for (int a = 0; a < cm.num_flow_arcs; ++a) {
    const auto& arc = lg.arc(a);
    lp.cost[a] = arc.travel_time_s / 3600.0;
    trip.emplace_back(arc.head, a, 1.0);
    trip.emplace_back(arc.tail, a, -1.0);
    if (arc.kind == ArcKind::kCharging && !joint) lp.col_upper[a] = sited[arc.geo] ? cap : 0.0;
  }
  for (std::size_t i = 0; i < cm.legs.size(); ++i) {
    const auto& leg = cm.legs[i];
    const auto& req = d.requests[leg.demand];
    const int j = cm.leg_begin + static_cast<int>(i);
    lp.cost[j] = leg.time_h;
    trip.emplace_back(lg.layer_node(req.destination, leg.layer - leg.k), j, 1.0);
    trip.emplace_back(lg.layer_node(req.origin, leg.layer), j, -1.0);
    trip.emplace_back(hubs + leg.demand, j, 1.0);
  }
  for (int m = 0; m < M; ++m) {
    lp.row_lower[hubs + m] = lp.row_upper[hubs + m] = d.requests[m].rate_per_hour;
  }
  if (joint) {
    for (int s = 0; s < C; ++s) {
      lp.col_upper[cm.siting_begin + s] = 1.0;
      lp.integer[cm.siting_begin + s] = 1;
    }
    for (int c = 0; c < n_charging; ++c) {
      const int a = lg.charging_begin() + c;
      const int r = hubs + M + c;
      lp.row_lower[r] = -kInf;
      trip.emplace_back(r, a, 1.0);
      trip.emplace_back(r, cm.siting_begin + lg.candidate_slot(lg.arc(a).geo), -cap);
    }
    if (C > 0) {
      const int r = hubs + M + n_charging;
      lp.row_lower[r] = -kInf;
      lp.row_upper[r] = p.max_stations;
      for (int s = 0; s < C; ++s) trip.emplace_back(r, cm.siting_begin + s, 1.0);
    }
  }
  lp.A.resize(m_rows, n);
  lp.A.setFromTriplets(trip.begin(), trip.end());
  lp.A.makeCompressed();
  return cm;
}

Eigen::VectorXd expand_compact(const CompactModel& cm, const FlowStructure& fs,
                               const Eigen::VectorXd& z) {
  const auto& lg = fs.graph;
  const auto& iso = lg.iso();
  const int A = lg.num_arcs();
  const int M = fs.demand.size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero((M + 1) * A + cm.num_sites);

  // Layered road arc of (iso arc, tail layer).
  std::vector<int> road_base(iso.arcs.size(), -1);
  for (int a = 0; a < lg.num_road_arcs(); ++a) {
    const auto& arc = lg.arc(a);
    if (road_base[arc.iso_arc] < 0) road_base[arc.iso_arc] = a - arc.layer;
  }
  for (int a = 0; a < cm.num_flow_arcs; ++a) x[rebalancing_column(a, A, M)] = z[a];
  for (std::size_t i = 0; i < cm.legs.size(); ++i) {
    const double y = z[cm.leg_begin + static_cast<int>(i)];
    if (y == 0.0) continue;
    const auto& leg = cm.legs[i];
    const auto& req = fs.demand.requests[leg.demand];
    int layer = leg.layer;
    x[user_column(leg.demand, lg.geo_out_arc(req.origin, layer), A)] += y;
    x[rebalancing_column(lg.geo_in_arc(req.origin, layer), A, M)] += y;
    for (int ia : cm.paths[leg.path]) {
      x[user_column(leg.demand, road_base[ia] + layer, A)] += y;
      layer -= iso.arcs[ia].k;
    }
    x[user_column(leg.demand, lg.geo_in_arc(req.destination, layer), A)] += y;
    x[rebalancing_column(lg.geo_out_arc(req.destination, layer), A, M)] += y;
  }
  for (int s = 0; s < cm.num_sites; ++s) x[siting_column(s, A, M)] = z[cm.siting_begin + s];
  return x;
}

}  // namespace eamod::detail
