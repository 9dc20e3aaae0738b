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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eamod/demand.hpp"
#include "eamod/graph_io.hpp"
#include "eamod/isoenergy.hpp"
#include "eamod/layered.hpp"
#include "eamod/model.hpp"
#include "eamod/siting.hpp"
#include "eamod/solver.hpp"

namespace eamod {

// Reference discretisation: Car C's battery holds 670 units.
inline constexpr double kReferenceUnitEnergyWh = 100.0;
inline constexpr double kReferenceBatteryWh = 67'000.0;

// --- synthetic inputs --------------------------------------------------------

struct GridCityOptions {
  int rows = 5;
  int cols = 5;
  double spacing_m = 1000.0;
  double energy_wh_per_m = 0.15;
  double speed_mps = 8.0;
  double jitter = 0.0;  // relative, applied symmetrically per street
  GeoPoint south_west{40.70, -74.02};
};

// Bidirectional street grid; node (r, c) has index r * cols + c.
RoadGraph make_grid_city(const GridCityOptions& options, std::uint64_t seed);

// Trips between random intersections, snapped a few metres off the node;
// `hotspot_share` of the pickups start at node `hotspot`.
std::vector<TripRecord> make_trips(const RoadGraph& road, int count, double horizon_hours,
                                   std::uint64_t seed, int hotspot = -1,
                                   double hotspot_share = 0.0);

struct RandomIsoOptions {
  int nodes = 6;
  int arcs = 14;            // even counts give symmetric pairs
  int max_multiple = 3;
  double width_m = 3000.0;
  double height_m = 3000.0;
  double unit_energy_wh = 100.0;
  double metres_per_unit = 700.0;
  double speed_mps = 8.0;
};

// Strongly connected iso-energy graph on random positions: a ring, then the
// shortest remaining node pairs in both directions until `arcs` is reached.
IsoEnergyGraph random_iso_graph(const RandomIsoOptions& options, std::uint64_t seed);

// `count` distinct random (o, d) requests with rates in [min_rate, max_rate].
DemandSet random_demand(int num_geo, int count, double min_rate, double max_rate,
                        std::uint64_t seed);

// --- pipeline ---------------------------------------------------------------

struct BaseScenario {
  RoadGraph road;
  std::vector<TripRecord> trips;
  double horizon_hours = 1.0;
  ResampleOptions resample;             // unit energy of the reference vehicle
  double battery_capacity_wh = kReferenceBatteryWh;
  double charger_power_w = 50'000.0;
  double station_capacity = 10.0;       // Z
  int max_stations = 10;                // N
  std::vector<int> candidates;          // reduced-node indices; empty: all
  CentralityWeight centrality = CentralityWeight::kTravelTime;
  SolverConfig solver;
};

struct PreparedScenario {
  IsoEnergyGraph iso;
  LayeredGraph graph;
  DemandSet demand;
  AggregationSummary aggregation;
  ScenarioParams params;  // joint mode, N and Z from the scenario, E from the charger
  std::vector<std::string> warnings;
};

// Scale energy, resample, aggregate trips, build layers. With a vehicle, the
// unit energy is scaled by its consumption so the reduced graph is shared.
PreparedScenario prepare_scenario(const BaseScenario& base, const VehicleSpec* vehicle = nullptr);

// Charging rate E in layers per hour for a charger of the given power.
double charge_rate_layers_per_hour(double charger_power_w, double unit_energy_wh);

// --- metrics ----------------------------------------------------------------

struct Metrics {
  double total_vehicle_hours_per_hour = 0.0;
  double fleet_size_estimate = 0.0;
  double user_energy_wh_per_day = 0.0;
  double rebal_energy_wh_per_day = 0.0;  // road arcs only
  double grid_energy_wh_per_day = 0.0;   // drawn on charging arcs
  double rebal_share = 0.0;              // rebal / (user + rebal) road energy
  double charging_visits_per_day = 0.0;
};

// Throws ValidationError for a non-optimal solution.
Metrics compute_metrics(const FlowSolution& sol, const LayeredGraph& lg, const DemandSet& d,
                        const ScenarioParams& p);

// --- harnesses --------------------------------------------------------------

struct SweepRow {
  int n = 0;
  SolveStatus optimal_status = SolveStatus::kInfeasible;
  double optimal_objective = 0.0;
  double optimal_rebal_energy_wh_per_day = 0.0;
  double optimal_grid_energy_wh_per_day = 0.0;
  std::vector<int> optimal_siting;
  SolveStatus heuristic_status = SolveStatus::kInfeasible;
  double heuristic_objective = 0.0;
  double heuristic_rebal_energy_wh_per_day = 0.0;
  double heuristic_grid_energy_wh_per_day = 0.0;
  std::vector<int> heuristic_siting;
  std::string error;
};

// Joint optimum and betweenness-sited routing optimum for each N. Errors are
// recorded per row and the sweep continues.
std::vector<SweepRow> sweep_stations(const PreparedScenario& s, std::span<const int> n_values,
                                     const SolverConfig& cfg,
                                     CentralityWeight weight = CentralityWeight::kTravelTime);
std::vector<SweepRow> sweep_stations(const BaseScenario& base, std::span<const int> n_values);

struct VehicleRow {
  std::string label;
  int layers = 0;
  SolveStatus status = SolveStatus::kInfeasible;
  double total_energy_wh_per_day = 0.0;  // user + rebalancing road energy
  double user_energy_wh_per_day = 0.0;
  double rebal_energy_wh_per_day = 0.0;
  double grid_energy_wh_per_day = 0.0;
  double fleet_size = 0.0;
  std::string error;
};

std::vector<VehicleRow> compare_vehicles(const BaseScenario& base,
                                         std::span<const VehicleSpec> vehicles);

std::string format_metrics_csv(const Metrics& m);
std::string format_sweep_csv(std::span<const SweepRow> rows);
std::string format_vehicle_csv(std::span<const VehicleRow> rows);

}  // namespace eamod
