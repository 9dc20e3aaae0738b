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

#include "eamod/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "eamod/errors.hpp"

namespace eamod {
namespace {

constexpr double kMetresPerDegreeLat = 111'320.0;

GeoPoint offset(const GeoPoint& p, double north_m, double east_m) {
  const double lat = p.lat_deg + north_m / kMetresPerDegreeLat;
  const double lon =
      p.lon_deg + east_m / (kMetresPerDegreeLat * std::cos(p.lat_deg * std::numbers::pi / 180.0));
  return {lat, lon};
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

RoadGraph make_grid_city(const GridCityOptions& o, std::uint64_t seed) {
  if (o.rows < 1 || o.cols < 1) throw ConfigError("grid needs at least one row and column");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-o.jitter, o.jitter);
  std::vector<RoadNode> nodes;
  for (int r = 0; r < o.rows; ++r) {
    for (int c = 0; c < o.cols; ++c) {
      nodes.push_back({r * o.cols + c, offset(o.south_west, r * o.spacing_m, c * o.spacing_m)});
    }
  }
  std::vector<RoadArc> arcs;
  auto street = [&](int a, int b) {
    const double f = 1.0 + noise(rng);
    const double len = o.spacing_m * f;
    const double e = len * o.energy_wh_per_m;
    const double t = len / o.speed_mps;
    arcs.push_back({a, b, len, t, e});
    arcs.push_back({b, a, len, t, e});
  };
  for (int r = 0; r < o.rows; ++r) {
    for (int c = 0; c < o.cols; ++c) {
      const int v = r * o.cols + c;
      if (c + 1 < o.cols) street(v, v + 1);
      if (r + 1 < o.rows) street(v, v + o.cols);
    }
  }
  return RoadGraph(std::move(nodes), std::move(arcs));
}

std::vector<TripRecord> make_trips(const RoadGraph& road, int count, double horizon_hours,
                                   std::uint64_t seed, int hotspot, double hotspot_share) {
  if (road.num_nodes() < 2) throw ConfigError("trip generation needs at least two nodes");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> node(0, road.num_nodes() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> jitter(-5.0, 5.0);
  std::vector<TripRecord> trips;
  trips.reserve(count);
  for (int i = 0; i < count; ++i) {
    int o = node(rng);
    if (hotspot >= 0 && unit(rng) < hotspot_share) o = hotspot;
    int d = node(rng);
    while (d == o) d = node(rng);
    TripRecord t;
    t.pickup = offset(road.nodes()[o].position, jitter(rng), jitter(rng));
    t.dropoff = offset(road.nodes()[d].position, jitter(rng), jitter(rng));
    t.timestamp_s = unit(rng) * horizon_hours * 3600.0;
    trips.push_back(t);
  }
  return trips;
}

IsoEnergyGraph random_iso_graph(const RandomIsoOptions& o, std::uint64_t seed) {
  if (o.nodes < 2) throw ConfigError("random iso graph needs at least two nodes");
  if (o.arcs < 2 * o.nodes || o.arcs > o.nodes * (o.nodes - 1)) {
    throw ConfigError("random iso graph arc count out of range");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, o.width_m), uy(0.0, o.height_m);
  std::vector<std::pair<double, double>> xy(o.nodes);
  for (auto& p : xy) p = {ux(rng), uy(rng)};
  // Order nodes along a rough sweep so the ring stays short.
  std::vector<int> ring(o.nodes);
  for (int i = 0; i < o.nodes; ++i) ring[i] = i;
  const double cx = o.width_m / 2, cy = o.height_m / 2;
  std::sort(ring.begin(), ring.end(), [&](int a, int b) {
    return std::atan2(xy[a].second - cy, xy[a].first - cx) <
           std::atan2(xy[b].second - cy, xy[b].first - cx);
  });

  IsoEnergyGraph g;
  g.unit_energy_wh = o.unit_energy_wh;
  const GeoPoint origin{40.75, -73.99};
  for (int i = 0; i < o.nodes; ++i) {
    g.nodes.push_back({i, i, offset(origin, xy[i].second, xy[i].first)});
  }
  std::set<std::pair<int, int>> used;
  auto add = [&](int a, int b) {
    if (a == b || used.count({a, b})) return;
    used.insert({a, b});
    const double dist = std::hypot(xy[a].first - xy[b].first, xy[a].second - xy[b].second);
    const int k = std::clamp(static_cast<int>(std::ceil(dist / o.metres_per_unit)), 1, o.max_multiple);
    g.arcs.push_back({a, b, k, std::max(1.0, dist / o.speed_mps), dist, k * o.unit_energy_wh});
  };
  for (int i = 0; i < o.nodes; ++i) {
    add(ring[i], ring[(i + 1) % o.nodes]);
    add(ring[(i + 1) % o.nodes], ring[i]);
  }
  std::vector<std::tuple<double, int, int>> pairs;
  for (int a = 0; a < o.nodes; ++a) {
    for (int b = a + 1; b < o.nodes; ++b) {
      pairs.emplace_back(std::hypot(xy[a].first - xy[b].first, xy[a].second - xy[b].second), a, b);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [dist, a, b] : pairs) {
    if (static_cast<int>(g.arcs.size()) >= o.arcs) break;
    add(a, b);
    if (static_cast<int>(g.arcs.size()) < o.arcs) add(b, a);
  }
  return g;
}

DemandSet random_demand(int num_geo, int count, double min_rate, double max_rate,
                        std::uint64_t seed) {
  if (count > num_geo * (num_geo - 1)) throw ConfigError("more requests than ordered node pairs");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> node(0, num_geo - 1);
  std::uniform_real_distribution<double> rate(min_rate, max_rate);
  std::set<std::pair<int, int>> seen;
  std::vector<Request> req;
  while (static_cast<int>(req.size()) < count) {
    const int o = node(rng), d = node(rng);
    if (o == d || !seen.insert({o, d}).second) continue;
    req.push_back({o, d, rate(rng)});
  }
  return make_demand_set(std::move(req));
}

double charge_rate_layers_per_hour(double charger_power_w, double unit_energy_wh) {
  return charger_power_w / unit_energy_wh;
}

PreparedScenario prepare_scenario(const BaseScenario& base, const VehicleSpec* vehicle) {
  PreparedScenario s;
  ResampleOptions ro = base.resample;
  double battery = base.battery_capacity_wh;
  const RoadGraph* road = &base.road;
  RoadGraph scaled;
  if (vehicle) {
    vehicle->validate();
    scaled = scale_energy(base.road, *vehicle);
    road = &scaled;
    ro.unit_energy_wh *= vehicle->consumption_scale;
    battery = vehicle->battery_capacity_wh;
  }
  s.iso = resample_iso_energy(*road, ro, &s.warnings);
  s.demand = aggregate_demands(base.trips, s.iso, base.horizon_hours, &s.aggregation);
  std::vector<int> candidates = base.candidates;
  if (candidates.empty()) {
    for (int g = 0; g < s.iso.num_nodes(); ++g) candidates.push_back(g);
  }
  s.graph = build_layered_graph(s.iso, battery, candidates, base.charger_power_w);
  s.params.max_stations = base.max_stations;
  s.params.station_capacity = base.station_capacity;
  s.params.charge_rate_layers_per_hour =
      charge_rate_layers_per_hour(base.charger_power_w, s.iso.unit_energy_wh);
  s.params.mode = SitingMode::kJoint;
  return s;
}

Metrics compute_metrics(const FlowSolution& sol, const LayeredGraph& lg, const DemandSet& d,
                        const ScenarioParams& p) {
  if (!sol.optimal()) throw ValidationError("metrics need an optimal solution");
  Metrics m;
  m.total_vehicle_hours_per_hour = sol.objective;
  const auto& xr = sol.rebalancing_flows;
  double charging = 0.0;
  for (int a = 0; a < lg.num_arcs(); ++a) {
    const auto& arc = lg.arc(a);
    double user = 0.0;
    for (int k = 0; k < d.size(); ++k) user += sol.user_flows[k][a];
    m.fleet_size_estimate += arc.travel_time_s / 3600.0 * (xr[a] + user);
    if (arc.kind == ArcKind::kRoad) {
      m.user_energy_wh_per_day += arc.energy_wh * user * 24.0;
      m.rebal_energy_wh_per_day += arc.energy_wh * xr[a] * 24.0;
    } else if (arc.kind == ArcKind::kCharging) {
      m.grid_energy_wh_per_day += arc.energy_wh * xr[a] * 24.0;
      charging += xr[a];
    }
  }
  const double road = m.user_energy_wh_per_day + m.rebal_energy_wh_per_day;
  m.rebal_share = road > 0 ? m.rebal_energy_wh_per_day / road : 0.0;
  m.charging_visits_per_day = charging / p.charge_rate_layers_per_hour * 24.0;
  return m;
}

std::vector<SweepRow> sweep_stations(const PreparedScenario& s, std::span<const int> n_values,
                                     const SolverConfig& cfg, CentralityWeight weight) {
  const CentralityScores scores = betweenness(s.iso, weight);
  std::vector<SweepRow> rows;
  for (int n : n_values) {
    SweepRow row;
    row.n = n;
    try {
      ScenarioParams joint = s.params;
      joint.mode = SitingMode::kJoint;
      joint.fixed_siting.clear();
      joint.max_stations = n;
      const FlowSolution opt = solve_milp(assemble(s.graph, s.demand, joint), cfg);
      row.optimal_status = opt.status;
      if (opt.optimal()) {
        const Metrics m = compute_metrics(opt, s.graph, s.demand, joint);
        row.optimal_objective = opt.objective;
        row.optimal_rebal_energy_wh_per_day = m.rebal_energy_wh_per_day;
        row.optimal_grid_energy_wh_per_day = m.grid_energy_wh_per_day;
        for (int g = 0; g < s.graph.num_geo(); ++g) {
          if (opt.siting[g]) row.optimal_siting.push_back(g);
        }
      }

      ScenarioParams fixed = joint;
      fixed.mode = SitingMode::kFixed;
      fixed.fixed_siting = heuristic_siting(scores, n, s.graph.candidate_stations());
      row.heuristic_siting = fixed.fixed_siting;
      const FlowSolution heu = solve_lp(assemble(s.graph, s.demand, fixed), cfg);
      row.heuristic_status = heu.status;
      if (heu.optimal()) {
        const Metrics m = compute_metrics(heu, s.graph, s.demand, fixed);
        row.heuristic_objective = heu.objective;
        row.heuristic_rebal_energy_wh_per_day = m.rebal_energy_wh_per_day;
        row.heuristic_grid_energy_wh_per_day = m.grid_energy_wh_per_day;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> sweep_stations(const BaseScenario& base, std::span<const int> n_values) {
  const PreparedScenario s = prepare_scenario(base);
  return sweep_stations(s, n_values, base.solver, base.centrality);
}

std::vector<VehicleRow> compare_vehicles(const BaseScenario& base,
                                         std::span<const VehicleSpec> vehicles) {
  std::vector<VehicleRow> rows;
  for (const auto& v : vehicles) {
    VehicleRow row;
    row.label = v.label;
    try {
      const PreparedScenario s = prepare_scenario(base, &v);
      row.layers = s.graph.num_layers();
      const FlowSolution sol = solve_milp(assemble(s.graph, s.demand, s.params), base.solver);
      row.status = sol.status;
      if (sol.optimal()) {
        const Metrics m = compute_metrics(sol, s.graph, s.demand, s.params);
        row.user_energy_wh_per_day = m.user_energy_wh_per_day;
        row.rebal_energy_wh_per_day = m.rebal_energy_wh_per_day;
        row.grid_energy_wh_per_day = m.grid_energy_wh_per_day;
        row.total_energy_wh_per_day = m.user_energy_wh_per_day + m.rebal_energy_wh_per_day;
        row.fleet_size = m.fleet_size_estimate;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_metrics_csv(const Metrics& m) {
  return "total_vehicle_hours_per_hour,fleet_size_estimate,user_energy_wh_per_day,"
         "rebal_energy_wh_per_day,grid_energy_wh_per_day,rebal_share,charging_visits_per_day\n" +
         format_double(m.total_vehicle_hours_per_hour) + ',' + format_double(m.fleet_size_estimate) +
         ',' + format_double(m.user_energy_wh_per_day) + ',' +
         format_double(m.rebal_energy_wh_per_day) + ',' + format_double(m.grid_energy_wh_per_day) +
         ',' + format_double(m.rebal_share) + ',' + format_double(m.charging_visits_per_day) + '\n';
}

std::string format_sweep_csv(std::span<const SweepRow> rows) {
  std::string out =
      "n,optimal_status,optimal_objective,optimal_rebal_energy_wh_per_day,"
      "optimal_grid_energy_wh_per_day,optimal_siting,heuristic_status,heuristic_objective,"
      "heuristic_rebal_energy_wh_per_day,heuristic_grid_energy_wh_per_day,heuristic_siting,error\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + to_string(r.optimal_status) + ',' +
           format_double(r.optimal_objective) + ',' +
           format_double(r.optimal_rebal_energy_wh_per_day) + ',' +
           format_double(r.optimal_grid_energy_wh_per_day) + ',' + join(r.optimal_siting) + ',' +
           to_string(r.heuristic_status) + ',' + format_double(r.heuristic_objective) + ',' +
           format_double(r.heuristic_rebal_energy_wh_per_day) + ',' +
           format_double(r.heuristic_grid_energy_wh_per_day) + ',' + join(r.heuristic_siting) +
           ",\"" + r.error + "\"\n";
  }
  return out;
}

std::string format_vehicle_csv(std::span<const VehicleRow> rows) {
  std::string out =
      "vehicle,layers,status,total_energy_wh_per_day,user_energy_wh_per_day,"
      "rebal_energy_wh_per_day,grid_energy_wh_per_day,fleet_size,error\n";
  for (const auto& r : rows) {
    out += r.label + ',' + std::to_string(r.layers) + ',' + to_string(r.status) + ',' +
           format_double(r.total_energy_wh_per_day) + ',' +
           format_double(r.user_energy_wh_per_day) + ',' +
           format_double(r.rebal_energy_wh_per_day) + ',' +
           format_double(r.grid_energy_wh_per_day) + ',' + format_double(r.fleet_size) + ",\"" +
           r.error + "\"\n";
  }
  return out;
}

}  // namespace eamod
