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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "eamod/errors.hpp"
#include "eamod/lp_format.hpp"
#include "eamod/scenario.hpp"

namespace {

using namespace eamod;

struct Common {
  std::string network;
  std::string trips;
  std::optional<double> unit_energy_wh;
  std::optional<double> battery_wh;
  double tolerance = 0.05;
  std::optional<int> target_nodes;
  int max_multiple = 4;
  int stations = 10;
  double charger_power_w = 50'000.0;
  double station_capacity = 10.0;
  double horizon_hours = 1.0;
  std::uint64_t seed = 1;
  int grid = 5;
  int synthetic_trips = 200;
  std::string out;
  std::string log;
  int verbosity = 0;
  double time_limit_s = 3600.0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--network", c.network, "road network file ([nodes]/[arcs] sections)");
  app->add_option("--trips", c.trips, "trip CSV");
  app->add_option("--unit-energy-wh", c.unit_energy_wh, "iso-energy unit");
  app->add_option("--battery-wh", c.battery_wh, "battery capacity of the reference vehicle");
  app->add_option("--tolerance", c.tolerance, "relative quantisation tolerance");
  app->add_option("--target-nodes", c.target_nodes, "reduced node count");
  app->add_option("--max-multiple", c.max_multiple, "largest energy multiple per reduced arc");
  app->add_option("--stations", c.stations, "station limit N");
  app->add_option("--charger-power-w", c.charger_power_w, "charger power");
  app->add_option("--station-capacity", c.station_capacity, "vehicles per station Z");
  app->add_option("--horizon-hours", c.horizon_hours, "trip horizon");
  app->add_option("--seed", c.seed, "seed for the synthetic city when no network is given");
  app->add_option("--grid", c.grid, "synthetic city side length");
  app->add_option("--synthetic-trips", c.synthetic_trips, "synthetic trip count");
  app->add_option("--out", c.out, "output file (default stdout)");
  app->add_option("--log", c.log, "solver log file");
  app->add_option("-v,--verbosity", c.verbosity, "0 quiet, 1 progress, 2 every simplex iteration");
  app->add_option("--time-limit", c.time_limit_s, "solver time limit in seconds");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Context {
  BaseScenario base;
  std::unique_ptr<std::ofstream> log;
};

std::unique_ptr<Context> make_context(const Common& c) {
  auto ctx = std::make_unique<Context>();
  BaseScenario& b = ctx->base;
  const bool synthetic = c.network.empty();
  if (synthetic) {
    GridCityOptions g;
    g.rows = g.cols = c.grid;
    g.jitter = 0.02;
    b.road = make_grid_city(g, c.seed);
    b.resample.unit_energy_wh = c.unit_energy_wh.value_or(g.spacing_m * g.energy_wh_per_m);
    b.battery_capacity_wh = c.battery_wh.value_or(20 * b.resample.unit_energy_wh);
  } else {
    b.road = read_road_network(c.network);
    b.resample.unit_energy_wh = c.unit_energy_wh.value_or(kReferenceUnitEnergyWh);
    b.battery_capacity_wh = c.battery_wh.value_or(kReferenceBatteryWh);
  }
  if (!c.trips.empty()) {
    b.trips = read_trip_records(c.trips);
  } else {
    b.trips = make_trips(b.road, c.synthetic_trips, c.horizon_hours, c.seed + 1);
  }
  b.horizon_hours = c.horizon_hours;
  b.resample.tolerance = c.tolerance;
  b.resample.target_node_count = c.target_nodes;
  b.resample.max_multiple = c.max_multiple;
  b.max_stations = c.stations;
  b.charger_power_w = c.charger_power_w;
  b.station_capacity = c.station_capacity;
  b.solver.verbosity = c.verbosity;
  b.solver.time_limit_s = c.time_limit_s;
  if (!c.log.empty()) {
    ctx->log = std::make_unique<std::ofstream>(c.log);
    b.solver.log = ctx->log.get();
  } else if (c.verbosity > 0) {
    b.solver.log = &std::cerr;
  }
  return ctx;
}

std::vector<int> parse_n_values(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(part));
    } else {
      const int lo = std::stoi(part.substr(0, dots));
      const int hi = std::stoi(part.substr(dots + 2));
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    }
  }
  if (out.empty()) throw ConfigError("empty station list '" + spec + "'");
  return out;
}

void report_preparation(const PreparedScenario& s) {
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
  std::cerr << "reduced graph: " << s.iso.num_nodes() << " nodes, " << s.iso.num_arcs()
            << " arcs; " << s.graph.num_layers() << " layers; " << s.demand.size()
            << " requests (" << s.aggregation.trips_degenerate << " trips dropped)\n";
}

ScenarioParams solve_params(const PreparedScenario& s, const std::string& mode,
                            const std::vector<int>& siting, CentralityWeight weight) {
  ScenarioParams p = s.params;
  if (mode == "lp") {
    p.mode = SitingMode::kFixed;
    p.fixed_siting = siting.empty() ? heuristic_siting(betweenness(s.iso, weight), p.max_stations,
                                                       s.graph.candidate_stations())
                                    : siting;
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint routing, charging and charging-station siting for electric robotaxi fleets"};
  app.require_subcommand(1);
  Common c;

  auto* resample = app.add_subcommand("resample", "reduce the road network to an iso-energy graph");
  add_common(resample, c);

  auto* build = app.add_subcommand("build", "build the SoC-layered graph and instance statistics");
  add_common(build, c);
  bool dump = false;
  build->add_flag("--dump", dump, "print every layered arc");

  std::string mode = "milp";
  std::string solution_path;
  std::vector<int> siting;
  std::string weight_name = "time";
  auto* solve = app.add_subcommand("solve", "solve with fixed (lp) or joint (milp) siting");
  add_common(solve, c);
  solve->add_option("--mode", mode, "lp: heuristic or given siting; milp: joint siting")
      ->check(CLI::IsMember({"lp", "milp"}));
  solve->add_option("--siting", siting, "fixed siting (reduced-node indices) for --mode lp");
  solve->add_option("--solution", solution_path, "write the `variable,value` dump here");
  solve->add_option("--centrality-weight", weight_name, "time or energy")
      ->check(CLI::IsMember({"time", "energy"}));

  std::string n_spec = "1..5";
  auto* sweep = app.add_subcommand("sweep", "optimal against betweenness siting for each N");
  add_common(sweep, c);
  sweep->add_option("--n", n_spec, "station counts, e.g. 1..8 or 2,4,6");
  sweep->add_option("--centrality-weight", weight_name, "time or energy")
      ->check(CLI::IsMember({"time", "energy"}));

  auto* compare = app.add_subcommand("compare-vehicles", "full pipeline for Cars A, B and C");
  add_common(compare, c);

  auto* export_lp = app.add_subcommand("export-lp", "write the instance in LP format");
  add_common(export_lp, c);
  export_lp->add_option("--mode", mode, "lp or milp")->check(CLI::IsMember({"lp", "milp"}));
  export_lp->add_option("--siting", siting, "fixed siting for --mode lp");

  CLI11_PARSE(app, argc, argv);

  try {
    auto ctx = make_context(c);
    BaseScenario& base = ctx->base;
    const CentralityWeight weight =
        weight_name == "energy" ? CentralityWeight::kEnergy : CentralityWeight::kTravelTime;
    base.centrality = weight;
    Output out(c.out);

    if (resample->parsed()) {
      std::vector<std::string> warnings;
      const IsoEnergyGraph iso = resample_iso_energy(base.road, base.resample, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
      out.stream() << format_iso_energy_graph(iso);
    } else if (build->parsed()) {
      const PreparedScenario s = prepare_scenario(base);
      report_preparation(s);
      if (dump) out.stream() << dump_layered_graph(s.graph);
      out.stream() << format_stats(assemble(s.graph, s.demand, s.params).stats()) << '\n';
    } else if (solve->parsed()) {
      const PreparedScenario s = prepare_scenario(base);
      report_preparation(s);
      const ScenarioParams p = solve_params(s, mode, siting, weight);
      const ProblemInstance pi = assemble(s.graph, s.demand, p);
      const FlowSolution sol = mode == "lp" ? solve_lp(pi, base.solver) : solve_milp(pi, base.solver);
      std::cerr << "status " << to_string(sol.status) << ", objective " << sol.objective
                << ", nodes " << sol.bb_nodes << ", gap " << sol.gap << '\n';
      if (!solution_path.empty()) {
        std::ofstream f(solution_path);
        f << format_solution_dump(pi, sol);
      }
      if (!sol.optimal()) return 2;
      out.stream() << format_metrics_csv(compute_metrics(sol, s.graph, s.demand, p));
    } else if (sweep->parsed()) {
      const std::vector<int> ns = parse_n_values(n_spec);
      const PreparedScenario s = prepare_scenario(base);
      report_preparation(s);
      const auto rows = sweep_stations(s, ns, base.solver, weight);
      out.stream() << format_sweep_csv(rows);
    } else if (compare->parsed()) {
      const auto vehicles = reference_vehicles(base.battery_capacity_wh);
      const auto rows = compare_vehicles(base, vehicles);
      out.stream() << format_vehicle_csv(rows);
    } else if (export_lp->parsed()) {
      const PreparedScenario s = prepare_scenario(base);
      report_preparation(s);
      const ScenarioParams p = solve_params(s, mode, siting, weight);
      out.stream() << export_lp_text(assemble(s.graph, s.demand, p));
    }
  } catch (const InfeasibleReduction& e) {
    std::cerr << "error: " << e.what();
    if (e.tightest_tolerance()) std::cerr << " (tightest workable tolerance " << *e.tightest_tolerance() << ')';
    std::cerr << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
