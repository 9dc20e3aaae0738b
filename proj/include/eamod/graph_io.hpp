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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace eamod {

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

// Great-circle distance in metres (haversine, mean Earth radius).
double great_circle_m(const GeoPoint& a, const GeoPoint& b);

struct RoadNode {
  std::int64_t original_id = 0;
  GeoPoint position;
};

struct RoadArc {
  int tail = 0;
  int head = 0;
  double distance_m = 0.0;
  double travel_time_s = 0.0;
  double energy_wh = 0.0;
};

// Directed road network with dense 0-based node indices. The original ids
// from the source document are kept on the nodes.
class RoadGraph {
 public:
  RoadGraph() = default;
  RoadGraph(std::vector<RoadNode> nodes, std::vector<RoadArc> arcs);

  const std::vector<RoadNode>& nodes() const { return nodes_; }
  const std::vector<RoadArc>& arcs() const { return arcs_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  std::optional<int> index_of(std::int64_t original_id) const;

  // Out- and in-adjacency as arc indices.
  const std::vector<std::vector<int>>& out_arcs() const { return out_; }
  const std::vector<std::vector<int>>& in_arcs() const { return in_; }
  int degree(int v) const {
    return static_cast<int>(out_[v].size() + in_[v].size());
  }

  // Throws ValidationError on dangling endpoints, self-loops, non-positive
  // weights or duplicate node ids.
  void validate() const;

 private:
  void build_index();

  std::vector<RoadNode> nodes_;
  std::vector<RoadArc> arcs_;
  std::unordered_map<std::int64_t, int> index_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Line-oriented document:
//   [nodes]
//   id lat lon
//   [arcs]
//   tail head dist_m time_s energy_wh
// Blank lines and lines starting with '#' are ignored.
RoadGraph parse_road_network(std::string_view document);
RoadGraph read_road_network(const std::filesystem::path& path);
std::string format_road_network(const RoadGraph& g);

struct TripRecord {
  GeoPoint pickup;
  GeoPoint dropoff;
  double timestamp_s = 0.0;
  double count = 1.0;
};

// CSV with header pickup_lat,pickup_lon,dropoff_lat,dropoff_lon,timestamp,count.
// Columns are located by header name; extra columns are ignored.
std::vector<TripRecord> load_trip_records(std::string_view document);
std::vector<TripRecord> read_trip_records(const std::filesystem::path& path);
std::string format_trip_records(const std::vector<TripRecord>& trips);

std::string read_text_file(const std::filesystem::path& path);

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace eamod
