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


#include <gtest/gtest.h>

#include "eamod/demand.hpp"
#include "eamod/errors.hpp"
#include "eamod/scenario.hpp"

namespace eamod {
namespace {

IsoEnergyGraph three_nodes() {
  IsoEnergyGraph iso;
  iso.unit_energy_wh = 100.0;
  iso.nodes = {{0, 1, {40.70, -74.00}}, {1, 2, {40.71, -74.00}}, {2, 3, {40.72, -74.00}}};
  return iso;
}

TripRecord trip(const GeoPoint& a, const GeoPoint& b, double count = 1.0) {
  return {a, b, 0.0, count};
}

TEST(AggregateDemandsTest, TenTripsOverTenHours) {
  const IsoEnergyGraph iso = three_nodes();
  const std::vector<TripRecord> trips(10, trip({40.7001, -74.0}, {40.7099, -74.0}));
  const DemandSet d = aggregate_demands(trips, iso, 10.0);
  ASSERT_EQ(d.size(), 1);
  EXPECT_EQ(d.requests[0].origin, 0);
  EXPECT_EQ(d.requests[0].destination, 1);
  EXPECT_DOUBLE_EQ(d.requests[0].rate_per_hour, 1.0);
  EXPECT_DOUBLE_EQ(d.horizon_hours, 10.0);
}

TEST(AggregateDemandsTest, OppositeDirectionsStaySeparate) {
  const IsoEnergyGraph iso = three_nodes();
  const GeoPoint a{40.70, -74.0}, b{40.72, -74.0};
  const std::vector<TripRecord> trips{trip(a, b), trip(a, b), trip(b, a)};
  const DemandSet d = aggregate_demands(trips, iso, 1.0);
  ASSERT_EQ(d.size(), 2);
  EXPECT_EQ(d.requests[0].origin, 0);
  EXPECT_EQ(d.requests[0].destination, 2);
  EXPECT_DOUBLE_EQ(d.requests[0].rate_per_hour, 2.0);
  EXPECT_EQ(d.requests[1].origin, 2);
  EXPECT_DOUBLE_EQ(d.requests[1].rate_per_hour, 1.0);
}

TEST(AggregateDemandsTest, RateConservation) {
  RandomIsoOptions o;
  o.nodes = 8;
  o.arcs = 20;
  const IsoEnergyGraph iso = random_iso_graph(o, 2);
  GridCityOptions g;
  g.south_west = {40.74, -74.00};
  const auto trips = make_trips(make_grid_city(g, 1), 300, 5.0, 9);
  AggregationSummary s;
  const DemandSet d = aggregate_demands(trips, iso, 5.0, &s);
  double riders = 0.0;
  for (const auto& t : trips) riders += t.count;
  EXPECT_EQ(s.trips_used + s.trips_degenerate, trips.size());
  EXPECT_NEAR(d.total_rate() * 5.0, riders - s.riders_degenerate, 1e-9);
  EXPECT_NO_THROW(d.validate(iso.num_nodes()));
}

TEST(AggregateDemandsTest, NodePositionsSnapToThemselves) {
  RandomIsoOptions o;
  o.nodes = 9;
  o.arcs = 20;
  const IsoEnergyGraph iso = random_iso_graph(o, 4);
  for (int v = 0; v < iso.num_nodes(); ++v) EXPECT_EQ(nearest_node(iso, iso.nodes[v].position), v);
}

TEST(AggregateDemandsTest, TiesGoToLowerIndex) {
  IsoEnergyGraph iso = three_nodes();
  iso.nodes[2].position = iso.nodes[1].position;
  EXPECT_EQ(nearest_node(iso, {40.7101, -74.0}), 1);
}

TEST(AggregateDemandsTest, AllDegenerateIsAnError) {
  const IsoEnergyGraph iso = three_nodes();
  const std::vector<TripRecord> trips{trip({40.7, -74.0}, {40.7001, -74.0})};
  EXPECT_THROW(aggregate_demands(trips, iso, 1.0), ValidationError);
  EXPECT_THROW(aggregate_demands({}, iso, 1.0), ValidationError);
  EXPECT_THROW(aggregate_demands(trips, iso, 0.0), ConfigError);
}

TEST(DemandSetTest, MergeAndValidate) {
  const DemandSet d = make_demand_set({{1, 0, 0.5}, {0, 1, 1.0}, {1, 0, 0.25}}, 2.0);
  ASSERT_EQ(d.size(), 2);
  EXPECT_DOUBLE_EQ(d.requests[1].rate_per_hour, 0.75);
  EXPECT_DOUBLE_EQ(d.total_rate(), 1.75);
  EXPECT_NO_THROW(d.validate(2));
  EXPECT_THROW(d.validate(1), ValidationError);
  EXPECT_THROW(make_demand_set({{0, 0, 1.0}}).validate(2), ValidationError);
  EXPECT_THROW(make_demand_set({{0, 1, 0.0}}).validate(2), ValidationError);
}

TEST(DemandSetTest, TextRoundTrip) {
  const DemandSet d = make_demand_set({{0, 2, 1.5}, {2, 1, 0.125}}, 24.0);
  const DemandSet e = parse_demand_set(format_demand_set(d));
  EXPECT_DOUBLE_EQ(e.horizon_hours, 24.0);
  ASSERT_EQ(e.size(), 2);
  EXPECT_EQ(e.requests[1].origin, 2);
  EXPECT_DOUBLE_EQ(e.requests[1].rate_per_hour, 0.125);
  EXPECT_THROW(parse_demand_set("origin,destination,rate_per_hour\n0,1,1\n"), ParseError);
  EXPECT_THROW(parse_demand_set("horizon_hours=1\norigin,destination,rate_per_hour\n0,1\n"),
               ParseError);
}

}  // namespace
}  // namespace eamod
