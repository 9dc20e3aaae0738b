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

#include <span>
#include <string>
#include <vector>

#include "eamod/isoenergy.hpp"

namespace eamod {

enum class ArcKind { kRoad, kCharging, kGeoIn, kGeoOut };

const char* to_string(ArcKind kind);

struct LayeredArc {
  int tail = 0;
  int head = 0;
  ArcKind kind = ArcKind::kRoad;
  double travel_time_s = 0.0;
  // Energy drawn from the battery for road arcs, energy added for charging
  // arcs, zero for geo arcs.
  double energy_wh = 0.0;
  double distance_m = 0.0;
  int geo = 0;       // geo index of the tail (of the head for geo-out arcs)
  int layer = 0;     // SoC layer of the layered endpoint (tail layer for road/charging)
  int iso_arc = -1;  // road arcs only
};

// State-of-charge expansion of an iso-energy graph.
//
// Layered node (g, l) has id g * L + l, geo node g has id G * L + g. Arcs are
// stored as road arcs (per iso arc, layers ascending), then charging arcs
// (per candidate station, layers ascending), then geo arcs (per geo node and
// layer: geo-in followed by geo-out).
class LayeredGraph {
 public:
  const IsoEnergyGraph& iso() const { return iso_; }
  int num_layers() const { return num_layers_; }
  int num_geo() const { return iso_.num_nodes(); }
  int num_nodes() const { return num_geo() * (num_layers_ + 1); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  double unit_energy_wh() const { return iso_.unit_energy_wh; }
  double charge_time_s() const { return charge_time_s_; }
  const std::vector<int>& candidate_stations() const { return candidates_; }
  const std::vector<LayeredArc>& arcs() const { return arcs_; }
  const LayeredArc& arc(int a) const { return arcs_[a]; }

  int layer_node(int g, int layer) const { return g * num_layers_ + layer; }
  int geo_node(int g) const { return num_geo() * num_layers_ + g; }
  bool is_geo_node(int v) const { return v >= num_geo() * num_layers_; }

  int num_road_arcs() const { return charging_begin_; }
  int num_charging_arcs() const { return geo_begin_ - charging_begin_; }
  int num_geo_arcs() const { return num_arcs() - geo_begin_; }
  int charging_begin() const { return charging_begin_; }
  int geo_begin() const { return geo_begin_; }
  int geo_in_arc(int g, int layer) const { return geo_begin_ + 2 * layer_node(g, layer); }
  int geo_out_arc(int g, int layer) const { return geo_in_arc(g, layer) + 1; }
  // Position of a geo index within candidate_stations(), or -1.
  int candidate_slot(int g) const { return slot_[g]; }
  int charging_arc(int slot, int layer) const {
    return charging_begin_ + slot * (num_layers_ - 1) + layer;
  }

  const std::vector<int>& out_arcs(int v) const { return out_[v]; }
  const std::vector<int>& in_arcs(int v) const { return in_[v]; }

 private:
  friend LayeredGraph build_layered_graph(const IsoEnergyGraph&, double, std::span<const int>,
                                          double);
  IsoEnergyGraph iso_;
  int num_layers_ = 0;
  double charge_time_s_ = 0.0;
  std::vector<int> candidates_;
  std::vector<int> slot_;
  std::vector<LayeredArc> arcs_;
  int charging_begin_ = 0;
  int geo_begin_ = 0;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// floor(battery / unit), with a small relative guard against representation
// error in the quotient.
int layer_count(double battery_capacity_wh, double unit_energy_wh);

// Charging arcs take unit_energy_wh / charger_power_w to traverse.
LayeredGraph build_layered_graph(const IsoEnergyGraph& iso, double battery_capacity_wh,
                                 std::span<const int> candidate_stations,
                                 double charger_power_w);

// One line per arc: `(g,l) -> (g',l') kind time_s energy_wh`; geo nodes
// print as `(g,*)`.
std::string dump_layered_graph(const LayeredGraph& lg);

}  // namespace eamod
