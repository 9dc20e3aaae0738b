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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eamod/graph_io.hpp"

namespace eamod {

// Vehicle design parameters. consumption_scale and mass_scale are fractions
// of the reference vehicle.
struct VehicleSpec {
  std::string label;
  double consumption_scale = 1.0;
  double battery_capacity_wh = 0.0;
  double mass_scale = 1.0;

  void validate() const;
};

// Cars A, B and C of the vehicle-design comparison, with batteries expressed
// as a fraction of `reference_battery_wh` (Car C).
std::vector<VehicleSpec> reference_vehicles(double reference_battery_wh);

struct IsoNode {
  int road_index = 0;
  std::int64_t original_id = 0;
  GeoPoint position;
};

// An arc of the reduced graph. `energy_wh` is the energy of the underlying
// minimum-energy road path; the model only ever uses k * unit_energy_wh.
struct IsoArc {
  int tail = 0;
  int head = 0;
  int k = 1;
  double travel_time_s = 0.0;
  double distance_m = 0.0;
  double energy_wh = 0.0;
};

struct IsoEnergyGraph {
  double unit_energy_wh = 0.0;
  std::vector<IsoNode> nodes;
  std::vector<IsoArc> arcs;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }
  double arc_energy_wh(const IsoArc& a) const { return a.k * unit_energy_wh; }
};

bool is_strongly_connected(int num_nodes, std::span<const std::pair<int, int>> arcs);
bool is_strongly_connected(const IsoEnergyGraph& g);
bool is_strongly_connected(const RoadGraph& g);

// Serialises with a `unit_energy_wh=<value>` header and a trailing `k`
// column on every arc. Node ids are the original road-network ids.
std::string format_iso_energy_graph(const IsoEnergyGraph& g);
IsoEnergyGraph parse_iso_energy_graph(std::string_view document);

RoadGraph scale_energy(const RoadGraph& g, const VehicleSpec& v);

// Minimum-energy path costs; ties on energy are broken by travel time, then
// distance. Rows follow `sources`, columns are all nodes of the graph.
struct PathMatrix {
  std::vector<int> sources;
  Eigen::MatrixXd energy_wh;
  Eigen::MatrixXd time_s;
  Eigen::MatrixXd distance_m;
  int unreachable_pairs = 0;
};

PathMatrix shortest_energy_matrix(const RoadGraph& g, std::span<const int> sources);

struct ResampleOptions {
  double unit_energy_wh = 0.0;
  double tolerance = 0.05;
  std::optional<int> target_node_count;
  int max_multiple = 4;
};

class InfeasibleReduction : public std::runtime_error {
 public:
  InfeasibleReduction(const std::string& what, std::optional<double> tightest)
      : std::runtime_error(what), tightest_tolerance_(tightest) {}
  // Smallest tolerance found (on a geometric scan) that yields a strongly
  // connected reduction, if any below 0.5.
  std::optional<double> tightest_tolerance() const { return tightest_tolerance_; }

 private:
  std::optional<double> tightest_tolerance_;
};

// Relative distance of `energy` from its nearest positive multiple of
// `unit` (at least one unit). Returns +inf if that multiple exceeds
// max_multiple.
double quantization_error(double energy, double unit, int max_multiple, int* k = nullptr);

// Reduces g to a node subset whose connecting minimum-energy paths are
// integer multiples of the unit energy.
//
// Nodes are chosen greedily: start from the node of highest degree, then
// keep adding the node whose minimum path energy to and from the selected
// set is closest to a multiple of the unit (ties: larger degree, lower
// index) until the target count is reached or no node quantizes within the
// tolerance. An arc i->j is emitted when a minimum-energy path from i to j
// avoids every other selected node and its energy quantizes to k <=
// max_multiple units within the tolerance. Throws InfeasibleReduction if
// the result is not strongly connected.
IsoEnergyGraph resample_iso_energy(const RoadGraph& g, const ResampleOptions& options,
                                   std::vector<std::string>* warnings = nullptr);

}  // namespace eamod
