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

#include "eamod/layered.hpp"

#include <algorithm>
#include <cmath>

#include "eamod/errors.hpp"

namespace eamod {

const char* to_string(ArcKind kind) {
  switch (kind) {
    case ArcKind::kRoad:
      return "road";
    case ArcKind::kCharging:
      return "charging";
    case ArcKind::kGeoIn:
      return "geo-in";
    case ArcKind::kGeoOut:
      return "geo-out";
  }
  return "?";
}

int layer_count(double battery_capacity_wh, double unit_energy_wh) {
  if (!(unit_energy_wh > 0)) throw ConfigError("unit energy must be positive");
  const double q = battery_capacity_wh / unit_energy_wh;
  return static_cast<int>(std::floor(q * (1.0 + 1e-12)));
}

LayeredGraph build_layered_graph(const IsoEnergyGraph& iso, double battery_capacity_wh,
                                 std::span<const int> candidate_stations,
                                 double charger_power_w) {
  if (!(charger_power_w > 0)) throw ConfigError("charger power must be positive");
  const int L = layer_count(battery_capacity_wh, iso.unit_energy_wh);
  if (L < 2) {
    throw ConfigError("battery too small: " + std::to_string(L) +
                      " SoC layers (need at least 2)");
  }
  const int G = iso.num_nodes();
  LayeredGraph lg;
  lg.iso_ = iso;
  lg.num_layers_ = L;
  lg.charge_time_s_ = iso.unit_energy_wh / charger_power_w * 3600.0;
  lg.candidates_.assign(candidate_stations.begin(), candidate_stations.end());
  std::sort(lg.candidates_.begin(), lg.candidates_.end());
  if (std::adjacent_find(lg.candidates_.begin(), lg.candidates_.end()) != lg.candidates_.end()) {
    throw ConfigError("duplicate candidate station");
  }
  lg.slot_.assign(G, -1);
  for (int s = 0; s < static_cast<int>(lg.candidates_.size()); ++s) {
    const int g = lg.candidates_[s];
    if (g < 0 || g >= G) throw ConfigError("candidate station outside the reduced graph");
    lg.slot_[g] = s;
  }

  auto& arcs = lg.arcs_;
  for (int a = 0; a < iso.num_arcs(); ++a) {
    const auto& ia = iso.arcs[a];
    for (int l = ia.k; l < L; ++l) {
      arcs.push_back({lg.layer_node(ia.tail, l), lg.layer_node(ia.head, l - ia.k), ArcKind::kRoad,
                      ia.travel_time_s, iso.arc_energy_wh(ia), ia.distance_m, ia.tail, l, a});
    }
  }
  lg.charging_begin_ = static_cast<int>(arcs.size());
  for (int g : lg.candidates_) {
    for (int l = 0; l + 1 < L; ++l) {
      arcs.push_back({lg.layer_node(g, l), lg.layer_node(g, l + 1), ArcKind::kCharging,
                      lg.charge_time_s_, iso.unit_energy_wh, 0.0, g, l, -1});
    }
  }
  lg.geo_begin_ = static_cast<int>(arcs.size());
  for (int g = 0; g < G; ++g) {
    for (int l = 0; l < L; ++l) {
      arcs.push_back({lg.layer_node(g, l), lg.geo_node(g), ArcKind::kGeoIn, 0.0, 0.0, 0.0, g, l, -1});
      arcs.push_back({lg.geo_node(g), lg.layer_node(g, l), ArcKind::kGeoOut, 0.0, 0.0, 0.0, g, l, -1});
    }
  }
  lg.out_.assign(lg.num_nodes(), {});
  lg.in_.assign(lg.num_nodes(), {});
  for (int a = 0; a < lg.num_arcs(); ++a) {
    lg.out_[arcs[a].tail].push_back(a);
    lg.in_[arcs[a].head].push_back(a);
  }
  return lg;
}

std::string dump_layered_graph(const LayeredGraph& lg) {
  auto node = [&](int v) {
    if (lg.is_geo_node(v)) return "(" + std::to_string(v - lg.num_geo() * lg.num_layers()) + ",*)";
    return "(" + std::to_string(v / lg.num_layers()) + "," + std::to_string(v % lg.num_layers()) +
           ")";
  };
  std::string out;
  for (const auto& a : lg.arcs()) {
    out += node(a.tail) + " -> " + node(a.head) + ' ' + to_string(a.kind) + ' ' +
           format_double(a.travel_time_s) + ' ' + format_double(a.energy_wh) + '\n';
  }
  return out;
}

}  // namespace eamod
