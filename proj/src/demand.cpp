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

#include "eamod/demand.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

#include "eamod/errors.hpp"

namespace eamod {

double DemandSet::total_rate() const {
  return std::accumulate(requests.begin(), requests.end(), 0.0,
                         [](double s, const Request& r) { return s + r.rate_per_hour; });
}

void DemandSet::validate(int num_geo) const {
  if (!(horizon_hours > 0)) throw ValidationError("horizon must be positive");
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto& r = requests[i];
    if (r.origin < 0 || r.origin >= num_geo || r.destination < 0 || r.destination >= num_geo) {
      throw ValidationError("request " + std::to_string(i) + " references an unknown geo node");
    }
    if (r.origin == r.destination) {
      throw ValidationError("request " + std::to_string(i) + " has origin == destination");
    }
    if (!(r.rate_per_hour > 0)) {
      throw ValidationError("request " + std::to_string(i) + " has a non-positive rate");
    }
    if (i > 0 && !(std::pair(requests[i - 1].origin, requests[i - 1].destination) <
                   std::pair(r.origin, r.destination))) {
      throw ValidationError("requests must be unique and sorted by (origin, destination)");
    }
  }
}

int nearest_node(const IsoEnergyGraph& iso, const GeoPoint& p) {
  int best = -1;
  double best_d = 0.0;
  for (int v = 0; v < iso.num_nodes(); ++v) {
    const double d = great_circle_m(iso.nodes[v].position, p);
    if (best < 0 || d < best_d) {
      best = v;
      best_d = d;
    }
  }
  return best;
}

DemandSet make_demand_set(std::vector<Request> requests, double horizon_hours) {
  std::map<std::pair<int, int>, double> merged;
  for (const auto& r : requests) merged[{r.origin, r.destination}] += r.rate_per_hour;
  DemandSet d;
  d.horizon_hours = horizon_hours;
  for (const auto& [od, rate] : merged) d.requests.push_back({od.first, od.second, rate});
  return d;
}

DemandSet aggregate_demands(std::span<const TripRecord> trips, const IsoEnergyGraph& iso,
                            double horizon_hours, AggregationSummary* summary) {
  if (!(horizon_hours > 0)) throw ConfigError("horizon must be positive");
  if (trips.empty()) throw ValidationError("no trips to aggregate");
  if (iso.num_nodes() == 0) throw ValidationError("reduced graph has no nodes");
  AggregationSummary s;
  std::map<std::pair<int, int>, double> riders;
  for (const auto& t : trips) {
    const int o = nearest_node(iso, t.pickup);
    const int d = nearest_node(iso, t.dropoff);
    if (o == d) {
      ++s.trips_degenerate;
      s.riders_degenerate += t.count;
      continue;
    }
    ++s.trips_used;
    riders[{o, d}] += t.count;
  }
  if (summary) *summary = s;
  if (riders.empty()) {
    throw ValidationError("all " + std::to_string(trips.size()) +
                          " trips start and end at the same reduced node");
  }
  DemandSet out;
  out.horizon_hours = horizon_hours;
  for (const auto& [od, count] : riders) {
    out.requests.push_back({od.first, od.second, count / horizon_hours});
  }
  return out;
}

std::string format_demand_set(const DemandSet& d) {
  std::string out = "horizon_hours=" + format_double(d.horizon_hours) +
                    "\norigin,destination,rate_per_hour\n";
  for (const auto& r : d.requests) {
    out += std::to_string(r.origin) + ',' + std::to_string(r.destination) + ',' +
           format_double(r.rate_per_hour) + '\n';
  }
  return out;
}

DemandSet parse_demand_set(std::string_view document) {
  std::vector<Request> requests;
  double horizon = 0.0;
  bool have_horizon = false, have_header = false;
  std::size_t line_no = 0, pos = 0;
  auto num = [&](std::string_view tok, auto& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError(line_no, "bad number '" + std::string(tok) + "'");
    }
  };
  while (pos <= document.size()) {
    const auto nl = document.find('\n', pos);
    auto line = document.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (!line.empty()) {
      if (line.starts_with("horizon_hours=")) {
        num(line.substr(14), horizon);
        have_horizon = true;
      } else if (line == "origin,destination,rate_per_hour") {
        have_header = true;
      } else {
        if (!have_header) throw ParseError(line_no, "missing 'origin,destination,rate_per_hour' header");
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == line.npos ? line.npos : c1 + 1);
        if (c1 == line.npos || c2 == line.npos) throw ParseError(line_no, "expected three fields");
        Request r;
        num(line.substr(0, c1), r.origin);
        num(line.substr(c1 + 1, c2 - c1 - 1), r.destination);
        num(line.substr(c2 + 1), r.rate_per_hour);
        requests.push_back(r);
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (!have_horizon) throw ParseError(0, "missing horizon_hours header");
  return make_demand_set(std::move(requests), horizon);
}

}  // namespace eamod
