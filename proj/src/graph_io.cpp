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

#include "eamod/graph_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "eamod/errors.hpp"

namespace eamod {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_number(std::string_view tok, std::size_t line, const char* field) {
  double v = 0.0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("bad number for ") + field + ": '" + std::string(tok) + "'");
  }
  return v;
}

std::int64_t parse_id(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "bad node id: '" + std::string(tok) + "'");
  }
  return v;
}

template <typename F>
void for_each_line(std::string_view doc, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= doc.size()) {
    const auto nl = doc.find('\n', pos);
    const auto end = nl == std::string_view::npos ? doc.size() : nl;
    ++line_no;
    f(doc.substr(pos, end - pos), line_no);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

}  // namespace

double great_circle_m(const GeoPoint& a, const GeoPoint& b) {
  constexpr double kEarthRadiusM = 6371008.8;
  constexpr double kDeg = std::numbers::pi / 180.0;
  const double dlat = (b.lat_deg - a.lat_deg) * kDeg;
  const double dlon = (b.lon_deg - a.lon_deg) * kDeg;
  const double s = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.lat_deg * kDeg) * std::cos(b.lat_deg * kDeg) *
                       std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(s)));
}

RoadGraph::RoadGraph(std::vector<RoadNode> nodes, std::vector<RoadArc> arcs)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  build_index();
}

void RoadGraph::build_index() {
  index_.clear();
  index_.reserve(nodes_.size());
  for (int i = 0; i < num_nodes(); ++i) index_.emplace(nodes_[i].original_id, i);
  out_.assign(nodes_.size(), {});
  in_.assign(nodes_.size(), {});
  for (int a = 0; a < num_arcs(); ++a) {
    const auto& arc = arcs_[a];
    if (arc.tail >= 0 && arc.tail < num_nodes()) out_[arc.tail].push_back(a);
    if (arc.head >= 0 && arc.head < num_nodes()) in_[arc.head].push_back(a);
  }
}

std::optional<int> RoadGraph::index_of(std::int64_t original_id) const {
  const auto it = index_.find(original_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void RoadGraph::validate() const {
  if (index_.size() != nodes_.size()) throw ValidationError("duplicate node ids");
  for (const auto& n : nodes_) {
    if (!std::isfinite(n.position.lat_deg) || !std::isfinite(n.position.lon_deg)) {
      throw ValidationError("node " + std::to_string(n.original_id) + " has non-finite coordinates");
    }
  }
  for (int a = 0; a < num_arcs(); ++a) {
    const auto& arc = arcs_[a];
    const std::string name = "arc " + std::to_string(a);
    if (arc.tail < 0 || arc.tail >= num_nodes() || arc.head < 0 || arc.head >= num_nodes()) {
      throw ValidationError(name + " references a node outside the graph");
    }
    if (arc.tail == arc.head) throw ValidationError(name + " is a self-loop");
    if (!(arc.distance_m > 0) || !(arc.travel_time_s > 0) || !(arc.energy_wh > 0) ||
        !std::isfinite(arc.distance_m) || !std::isfinite(arc.travel_time_s) ||
        !std::isfinite(arc.energy_wh)) {
      throw ValidationError(name + " (" + std::to_string(nodes_[arc.tail].original_id) + " -> " +
                            std::to_string(nodes_[arc.head].original_id) +
                            ") has a non-positive weight");
    }
  }
}

RoadGraph parse_road_network(std::string_view document) {
  enum class Section { kNone, kNodes, kArcs };
  Section section = Section::kNone;
  std::vector<RoadNode> nodes;
  struct RawArc {
    std::int64_t tail, head;
    double d, t, e;
    std::size_t line;
  };
  std::vector<RawArc> raw_arcs;

  for_each_line(document, [&](std::string_view raw, std::size_t line) {
    const auto text = trim(raw);
    if (text.empty() || text.front() == '#') return;
    if (text == "[nodes]") {
      section = Section::kNodes;
      return;
    }
    if (text == "[arcs]") {
      section = Section::kArcs;
      return;
    }
    const auto tok = split_ws(text);
    switch (section) {
      case Section::kNone:
        throw ParseError(line, "data before any [nodes]/[arcs] section");
      case Section::kNodes:
        if (tok.size() != 3) throw ParseError(line, "expected 'id lat lon'");
        nodes.push_back({parse_id(tok[0], line),
                         {parse_number(tok[1], line, "lat"), parse_number(tok[2], line, "lon")}});
        break;
      case Section::kArcs:
        if (tok.size() != 5) throw ParseError(line, "expected 'tail head dist_m time_s energy_wh'");
        raw_arcs.push_back({parse_id(tok[0], line), parse_id(tok[1], line),
                            parse_number(tok[2], line, "dist_m"),
                            parse_number(tok[3], line, "time_s"),
                            parse_number(tok[4], line, "energy_wh"), line});
        break;
    }
  });

  std::unordered_map<std::int64_t, int> index;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    if (!index.emplace(nodes[i].original_id, i).second) {
      throw ValidationError("duplicate node id " + std::to_string(nodes[i].original_id));
    }
  }
  std::vector<RoadArc> arcs;
  arcs.reserve(raw_arcs.size());
  for (const auto& r : raw_arcs) {
    const auto t = index.find(r.tail);
    const auto h = index.find(r.head);
    if (t == index.end() || h == index.end()) {
      const auto missing = t == index.end() ? r.tail : r.head;
      throw ValidationError("arc " + std::to_string(r.tail) + " -> " + std::to_string(r.head) +
                            " (line " + std::to_string(r.line) + ") references unknown node " +
                            std::to_string(missing));
    }
    arcs.push_back({t->second, h->second, r.d, r.t, r.e});
  }
  RoadGraph g(std::move(nodes), std::move(arcs));
  g.validate();
  return g;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RoadGraph read_road_network(const std::filesystem::path& path) {
  return parse_road_network(read_text_file(path));
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_road_network(const RoadGraph& g) {
  std::string out = "[nodes]\n";
  for (const auto& n : g.nodes()) {
    out += std::to_string(n.original_id) + ' ' + format_double(n.position.lat_deg) + ' ' +
           format_double(n.position.lon_deg) + '\n';
  }
  out += "[arcs]\n";
  for (const auto& a : g.arcs()) {
    out += std::to_string(g.nodes()[a.tail].original_id) + ' ' +
           std::to_string(g.nodes()[a.head].original_id) + ' ' + format_double(a.distance_m) +
           ' ' + format_double(a.travel_time_s) + ' ' + format_double(a.energy_wh) + '\n';
  }
  return out;
}

std::vector<TripRecord> load_trip_records(std::string_view document) {
  static constexpr std::array<std::string_view, 6> kColumns = {
      "pickup_lat", "pickup_lon", "dropoff_lat", "dropoff_lon", "timestamp", "count"};
  std::array<int, 6> col{};
  col.fill(-1);
  bool have_header = false;
  std::vector<TripRecord> trips;

  for_each_line(document, [&](std::string_view raw, std::size_t line) {
    const auto text = trim(raw);
    if (text.empty()) return;
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const auto comma = text.find(',', pos);
      fields.push_back(trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!have_header) {
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        const auto it = std::find(fields.begin(), fields.end(), kColumns[c]);
        if (it == fields.end()) {
          throw ParseError(line, "missing column '" + std::string(kColumns[c]) + "'");
        }
        col[c] = static_cast<int>(it - fields.begin());
      }
      have_header = true;
      return;
    }
    const auto at = [&](std::size_t c) {
      if (col[c] >= static_cast<int>(fields.size())) {
        throw ParseError(line, "missing value for column '" + std::string(kColumns[c]) + "'");
      }
      return parse_number(fields[col[c]], line, kColumns[c].data());
    };
    TripRecord r;
    r.pickup = {at(0), at(1)};
    r.dropoff = {at(2), at(3)};
    r.timestamp_s = at(4);
    r.count = at(5);
    for (double v : {r.pickup.lat_deg, r.pickup.lon_deg, r.dropoff.lat_deg, r.dropoff.lon_deg}) {
      if (!std::isfinite(v)) throw ValidationError("line " + std::to_string(line) + ": non-finite coordinate");
    }
    if (!(r.count >= 1)) {
      throw ValidationError("line " + std::to_string(line) + ": count must be >= 1");
    }
    trips.push_back(r);
  });
  if (!have_header) throw ParseError(0, "trip document has no header");
  return trips;
}

std::vector<TripRecord> read_trip_records(const std::filesystem::path& path) {
  return load_trip_records(read_text_file(path));
}

std::string format_trip_records(const std::vector<TripRecord>& trips) {
  std::string out = "pickup_lat,pickup_lon,dropoff_lat,dropoff_lon,timestamp,count\n";
  for (const auto& t : trips) {
    out += format_double(t.pickup.lat_deg) + ',' + format_double(t.pickup.lon_deg) + ',' +
           format_double(t.dropoff.lat_deg) + ',' + format_double(t.dropoff.lon_deg) + ',' +
           format_double(t.timestamp_s) + ',' + format_double(t.count) + '\n';
  }
  return out;
}

}  // namespace eamod
