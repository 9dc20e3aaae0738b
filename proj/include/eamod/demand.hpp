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
#include <string_view>
#include <vector>

#include "eamod/graph_io.hpp"
#include "eamod/isoenergy.hpp"

namespace eamod {

struct Request {
  int origin = 0;
  int destination = 0;
  double rate_per_hour = 0.0;
};

// Steady-state travel requests between geo nodes, at most one per ordered
// pair, sorted by (origin, destination).
struct DemandSet {
  std::vector<Request> requests;
  double horizon_hours = 1.0;

  int size() const { return static_cast<int>(requests.size()); }
  double total_rate() const;
  void validate(int num_geo) const;
};

struct AggregationSummary {
  std::size_t trips_used = 0;
  std::size_t trips_degenerate = 0;  // origin and destination snap to the same node
  double riders_degenerate = 0.0;
};

// Index of the reduced node nearest to p by great-circle distance; ties go
// to the lower index.
int nearest_node(const IsoEnergyGraph& iso, const GeoPoint& p);

DemandSet aggregate_demands(std::span<const TripRecord> trips, const IsoEnergyGraph& iso,
                            double horizon_hours, AggregationSummary* summary = nullptr);

// Builds a DemandSet from raw (o, d, rate) triples, merging duplicates.
DemandSet make_demand_set(std::vector<Request> requests, double horizon_hours = 1.0);

// `horizon_hours=<h>` header followed by `origin,destination,rate_per_hour`.
std::string format_demand_set(const DemandSet& d);
DemandSet parse_demand_set(std::string_view document);

}  // namespace eamod
