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

#include "eamod/isoenergy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "eamod/errors.hpp"

namespace eamod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Label {
  double energy = kInf;
  double time = kInf;
  double dist = kInf;
};

bool lex_less(const Label& a, const Label& b) {
  if (a.energy != b.energy) return a.energy < b.energy;
  if (a.time != b.time) return a.time < b.time;
  return a.dist < b.dist;
}

// Lexicographic (energy, time, distance) Dijkstra. Nodes flagged in
// `blocked` (other than the source) are labelled but never expanded.
std::vector<Label> dijkstra(const RoadGraph& g, int source, bool reverse,
                            const std::vector<char>* blocked = nullptr) {
  std::vector<Label> label(g.num_nodes());
  std::vector<char> done(g.num_nodes(), 0);
  using Entry = std::pair<Label, int>;
  auto cmp = [](const Entry& a, const Entry& b) { return lex_less(b.first, a.first); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  label[source] = {0.0, 0.0, 0.0};
  heap.push({label[source], source});
  const auto& adj = reverse ? g.in_arcs() : g.out_arcs();
  while (!heap.empty()) {
    const auto [lab, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    if (blocked && v != source && (*blocked)[v]) continue;
    for (int a : adj[v]) {
      const auto& arc = g.arcs()[a];
      const int w = reverse ? arc.tail : arc.head;
      const Label cand{lab.energy + arc.energy_wh, lab.time + arc.travel_time_s,
                       lab.dist + arc.distance_m};
      if (!done[w] && lex_less(cand, label[w])) {
        label[w] = cand;
        heap.push({cand, w});
      }
    }
  }
  return label;
}

bool ties(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

std::optional<IsoEnergyGraph> try_resample(const RoadGraph& g, const ResampleOptions& opt,
                                           std::vector<std::string>* warnings) {
  const int n = g.num_nodes();
  const double unit = opt.unit_energy_wh;
  std::vector<char> selected(n, 0);
  std::vector<int> order;

  int seed = 0;
  for (int v = 1; v < n; ++v) {
    if (g.degree(v) > g.degree(seed)) seed = v;
  }
  std::vector<double> to_set(n, kInf);    // min energy from the selected set to v
  std::vector<double> from_set(n, kInf);  // min energy from v to the selected set
  auto add = [&](int v) {
    selected[v] = 1;
    order.push_back(v);
    const auto fwd = dijkstra(g, v, false);
    const auto bwd = dijkstra(g, v, true);
    for (int w = 0; w < n; ++w) {
      to_set[w] = std::min(to_set[w], fwd[w].energy);
      from_set[w] = std::min(from_set[w], bwd[w].energy);
    }
  };
  add(seed);

  while (!opt.target_node_count || static_cast<int>(order.size()) < *opt.target_node_count) {
    int best = -1;
    double best_score = kInf;
    for (int v = 0; v < n; ++v) {
      if (selected[v]) continue;
      const double score =
          std::max(quantization_error(to_set[v], unit, opt.max_multiple),
                   quantization_error(from_set[v], unit, opt.max_multiple));
      if (!(score <= opt.tolerance)) continue;
      if (best < 0 || (score < best_score && !ties(score, best_score)) ||
          (ties(score, best_score) && g.degree(v) > g.degree(best))) {
        best = v;
        best_score = score;
      }
    }
    if (best < 0) break;
    add(best);
  }
  if (opt.target_node_count && static_cast<int>(order.size()) < *opt.target_node_count &&
      warnings) {
    warnings->push_back("only " + std::to_string(order.size()) + " of " +
                        std::to_string(*opt.target_node_count) +
                        " requested nodes quantize within the tolerance");
  }

  std::vector<int> chosen = order;
  std::sort(chosen.begin(), chosen.end());
  std::vector<int> reduced_index(n, -1);
  IsoEnergyGraph out;
  out.unit_energy_wh = unit;
  for (int v : chosen) {
    reduced_index[v] = out.num_nodes();
    out.nodes.push_back({v, g.nodes()[v].original_id, g.nodes()[v].position});
  }
  for (int i : chosen) {
    const auto full = dijkstra(g, i, false);
    const auto direct = dijkstra(g, i, false, &selected);
    for (int j : chosen) {
      if (j == i) continue;
      const Label& lab = direct[j];
      if (!std::isfinite(lab.energy) || !ties(lab.energy, full[j].energy)) continue;
      int k = 0;
      if (quantization_error(lab.energy, unit, opt.max_multiple, &k) <= opt.tolerance) {
        out.arcs.push_back(
            {reduced_index[i], reduced_index[j], k, lab.time, lab.dist, lab.energy});
      }
    }
  }
  if (out.num_nodes() > 1 && !is_strongly_connected(out)) return std::nullopt;
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

}  // namespace

void VehicleSpec::validate() const {
  if (!(consumption_scale > 0.0 && consumption_scale <= 1.0)) {
    throw ValidationError("vehicle '" + label + "': consumption_scale must be in (0, 1]");
  }
  if (!(battery_capacity_wh > 0.0)) {
    throw ValidationError("vehicle '" + label + "': battery_capacity_wh must be positive");
  }
}

std::vector<VehicleSpec> reference_vehicles(double reference_battery_wh) {
  return {
      {"Car A", 0.85, 0.25 * reference_battery_wh, 0.69},
      {"Car B", 0.93, 0.60 * reference_battery_wh, 0.85},
      {"Car C", 1.00, 1.00 * reference_battery_wh, 1.00},
  };
}

bool is_strongly_connected(int num_nodes, std::span<const std::pair<int, int>> arcs) {
  if (num_nodes <= 1) return true;
  std::vector<std::vector<int>> fwd(num_nodes), bwd(num_nodes);
  for (const auto& [t, h] : arcs) {
    fwd[t].push_back(h);
    bwd[h].push_back(t);
  }
  auto reaches_all = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(num_nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == num_nodes;
  };
  return reaches_all(fwd) && reaches_all(bwd);
}

bool is_strongly_connected(const IsoEnergyGraph& g) {
  std::vector<std::pair<int, int>> arcs;
  for (const auto& a : g.arcs) arcs.emplace_back(a.tail, a.head);
  return is_strongly_connected(g.num_nodes(), arcs);
}

bool is_strongly_connected(const RoadGraph& g) {
  std::vector<std::pair<int, int>> arcs;
  for (const auto& a : g.arcs()) arcs.emplace_back(a.tail, a.head);
  return is_strongly_connected(g.num_nodes(), arcs);
}

std::string format_iso_energy_graph(const IsoEnergyGraph& g) {
  std::string out = "unit_energy_wh=" + format_double(g.unit_energy_wh) + "\n[nodes]\n";
  for (const auto& n : g.nodes) {
    out += std::to_string(n.original_id) + ' ' + format_double(n.position.lat_deg) + ' ' +
           format_double(n.position.lon_deg) + '\n';
  }
  out += "[arcs]\n";
  for (const auto& a : g.arcs) {
    out += std::to_string(g.nodes[a.tail].original_id) + ' ' +
           std::to_string(g.nodes[a.head].original_id) + ' ' + format_double(a.distance_m) + ' ' +
           format_double(a.travel_time_s) + ' ' + format_double(a.energy_wh) + ' ' +
           std::to_string(a.k) + '\n';
  }
  return out;
}

IsoEnergyGraph parse_iso_energy_graph(std::string_view document) {
  // Split off the header and the k column, then reuse the road parser.
  std::string road_doc;
  std::vector<int> ks;
  std::optional<double> unit;
  bool in_arcs = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    const auto nl = document.find('\n', pos);
    const auto raw = document.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                       : nl - pos);
    ++line_no;
    const auto text = trim(raw);
    if (text.starts_with("unit_energy_wh=")) {
      const auto v = text.substr(15);
      double u = 0.0;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), u);
      if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError(line_no, "bad unit_energy_wh header");
      }
      unit = u;
      road_doc += '\n';
    } else if (in_arcs && !text.empty() && text.front() != '#' && text.front() != '[') {
      const auto cut = text.find_last_of(" \t");
      if (cut == std::string_view::npos) throw ParseError(line_no, "arc line without k column");
      const auto kt = text.substr(cut + 1);
      int k = 0;
      auto [ptr, ec] = std::from_chars(kt.data(), kt.data() + kt.size(), k);
      if (ec != std::errc{} || ptr != kt.data() + kt.size() || k < 1) {
        throw ParseError(line_no, "bad k column");
      }
      ks.push_back(k);
      road_doc += std::string(text.substr(0, cut)) + '\n';
    } else {
      if (text == "[arcs]") in_arcs = true;
      if (text == "[nodes]") in_arcs = false;
      road_doc += std::string(raw) + '\n';
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (!unit || !(*unit > 0)) throw ParseError(0, "missing or non-positive unit_energy_wh header");
  const RoadGraph road = parse_road_network(road_doc);
  IsoEnergyGraph g;
  g.unit_energy_wh = *unit;
  for (const auto& n : road.nodes()) g.nodes.push_back({-1, n.original_id, n.position});
  for (int a = 0; a < road.num_arcs(); ++a) {
    const auto& r = road.arcs()[a];
    g.arcs.push_back({r.tail, r.head, ks[a], r.travel_time_s, r.distance_m, r.energy_wh});
  }
  return g;
}

RoadGraph scale_energy(const RoadGraph& g, const VehicleSpec& v) {
  v.validate();
  std::vector<RoadArc> arcs = g.arcs();
  for (auto& a : arcs) a.energy_wh *= v.consumption_scale;
  return RoadGraph(g.nodes(), std::move(arcs));
}

PathMatrix shortest_energy_matrix(const RoadGraph& g, std::span<const int> sources) {
  PathMatrix pm;
  pm.sources.assign(sources.begin(), sources.end());
  const auto rows = static_cast<Eigen::Index>(sources.size());
  pm.energy_wh.resize(rows, g.num_nodes());
  pm.time_s.resize(rows, g.num_nodes());
  pm.distance_m.resize(rows, g.num_nodes());
  for (Eigen::Index r = 0; r < rows; ++r) {
    const int s = sources[r];
    if (s < 0 || s >= g.num_nodes()) throw ValidationError("source outside the graph");
    const auto lab = dijkstra(g, s, false);
    for (int v = 0; v < g.num_nodes(); ++v) {
      pm.energy_wh(r, v) = lab[v].energy;
      pm.time_s(r, v) = lab[v].time;
      pm.distance_m(r, v) = lab[v].dist;
      if (!std::isfinite(lab[v].energy)) ++pm.unreachable_pairs;
    }
  }
  return pm;
}

double quantization_error(double energy, double unit, int max_multiple, int* k) {
  if (!std::isfinite(energy) || !(unit > 0)) return kInf;
  const double m = std::max(1.0, std::round(energy / unit));
  if (m > max_multiple) return kInf;
  if (k) *k = static_cast<int>(m);
  return std::abs(energy - m * unit) / (m * unit);
}

IsoEnergyGraph resample_iso_energy(const RoadGraph& g, const ResampleOptions& options,
                                   std::vector<std::string>* warnings) {
  g.validate();
  if (!(options.unit_energy_wh > 0)) throw ConfigError("unit energy must be positive");
  if (!(options.tolerance >= 0 && options.tolerance < 0.5)) {
    throw ConfigError("tolerance must lie in [0, 0.5)");
  }
  if (options.max_multiple < 1) throw ConfigError("max_multiple must be at least 1");
  if (options.target_node_count && *options.target_node_count < 1) {
    throw ConfigError("target node count must be positive");
  }
  if (g.num_nodes() == 0) throw ValidationError("empty road network");
  if (!is_strongly_connected(g)) throw ValidationError("road network is not strongly connected");
  if (g.num_nodes() == 1) {
    if (warnings) warnings->push_back("single-node network: reduced graph has no arcs");
    IsoEnergyGraph out;
    out.unit_energy_wh = options.unit_energy_wh;
    out.nodes.push_back({0, g.nodes()[0].original_id, g.nodes()[0].position});
    return out;
  }

  if (auto out = try_resample(g, options, warnings)) return *std::move(out);

  std::optional<double> tightest;
  ResampleOptions probe = options;
  for (double d = std::max(options.tolerance, 1e-4) * 1.15; d < 0.5; d *= 1.15) {
    probe.tolerance = d;
    if (try_resample(g, probe, nullptr)) {
      tightest = d;
      break;
    }
  }
  std::ostringstream msg;
  msg << "no strongly connected iso-energy reduction at tolerance " << options.tolerance;
  if (tightest) {
    msg << "; tightest tolerance found: " << *tightest;
  } else {
    msg << "; none found below 0.5";
  }
  throw InfeasibleReduction(msg.str(), tightest);
}

}  // namespace eamod
