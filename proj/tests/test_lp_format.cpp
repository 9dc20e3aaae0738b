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

#include <limits>

#include "eamod/errors.hpp"
#include "eamod/lp_format.hpp"
#include "eamod/model.hpp"
#include "oracles.hpp"

namespace eamod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ProblemInstance tiny_instance() {
  ProblemInstance pi;
  pi.columns = {{"xr_a0", ColumnKind::kRebalancingFlow, -1, 0, -1},
                {"xr_a1", ColumnKind::kRebalancingFlow, -1, 1, -1},
                {"c_g2", ColumnKind::kSiting, -1, -1, 2}};
  pi.rows = {{"Eq3_v0", RowTag::kEq3, RowSense::kEqual, 0.0},
             {"Eq8_a1", RowTag::kEq8, RowSense::kLessEqual, 0.0},
             {"Eq7", RowTag::kEq7, RowSense::kLessEqual, 1.0}};
  std::vector<Eigen::Triplet<double>> t{{0, 0, 1.0}, {0, 1, -1.0}, {1, 1, 1.0}, {1, 2, -2.5},
                                        {2, 2, 1.0}};
  pi.matrix.resize(3, 3);
  pi.matrix.setFromTriplets(t.begin(), t.end());
  pi.cost = Eigen::Vector3d(0.5, 0.25, 0.0);
  pi.lower = Eigen::Vector3d::Zero();
  pi.upper = Eigen::Vector3d(kInf, 4.0, 1.0);
  pi.integer = {0, 0, 1};
  return pi;
}

void expect_same(const ProblemInstance& a, const ProblemInstance& b) {
  const InstanceStats sa = a.stats(), sb = b.stats();
  ASSERT_EQ(sa.rows, sb.rows);
  ASSERT_EQ(sa.cols, sb.cols);
  EXPECT_EQ(sa.nonzeros, sb.nonzeros);
  EXPECT_EQ(sa.integers, sb.integers);
  EXPECT_EQ(a.integer, b.integer);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_EQ(a.cost, b.cost);
  for (int r = 0; r < a.num_rows(); ++r) {
    EXPECT_EQ(a.rows[r].name, b.rows[r].name);
    EXPECT_EQ(a.rows[r].tag, b.rows[r].tag);
    EXPECT_EQ(a.rows[r].sense, b.rows[r].sense);
    EXPECT_EQ(a.rows[r].rhs, b.rows[r].rhs);
  }
  for (int j = 0; j < a.num_cols(); ++j) {
    EXPECT_EQ(a.columns[j].name, b.columns[j].name);
    EXPECT_EQ(a.columns[j].kind, b.columns[j].kind);
  }
  EXPECT_EQ(Eigen::MatrixXd(a.matrix), Eigen::MatrixXd(b.matrix));
}

TEST(LpFormatTest, GoldenFile) {
  const std::string golden = read_text_file(EAMOD_TEST_DATA_DIR "/tiny.lp");
  EXPECT_EQ(export_lp_text(tiny_instance()), golden);
  expect_same(parse_lp_text(golden), tiny_instance());
}

TEST(LpFormatTest, EmptyInstance) {
  ProblemInstance empty;
  empty.matrix.resize(0, 0);
  const std::string text = export_lp_text(empty);
  const ProblemInstance back = parse_lp_text(text);
  EXPECT_EQ(back.num_rows(), 0);
  EXPECT_EQ(back.num_cols(), 0);
}

TEST(LpFormatTest, AssembledInstancesRoundTrip) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto mi = oracle::micro_instance(40 + seed, 4, 5, 3, 3, 2);
    if (seed % 2) {
      mi.params.mode = SitingMode::kFixed;
      mi.params.fixed_siting = {mi.graph.candidate_stations()[0]};
    }
    const ProblemInstance pi = assemble(mi.graph, mi.demand, mi.params);
    const ProblemInstance back = parse_lp_text(export_lp_text(pi));
    expect_same(pi, back);
  }
}

TEST(LpFormatTest, FreeFixedAndNegativeBounds) {
  ProblemInstance pi = tiny_instance();
  pi.lower = Eigen::Vector3d(-kInf, 3.0, -2.0);
  pi.upper = Eigen::Vector3d(kInf, 3.0, 5.0);
  pi.integer = {0, 0, 1};
  pi.rows[2].rhs = -1.5e-7;
  const ProblemInstance back = parse_lp_text(export_lp_text(pi));
  expect_same(pi, back);
}

TEST(LpFormatTest, ReaderAcceptsCommonVariants) {
  const ProblemInstance pi = parse_lp_text(
      "\\ hand written\n"
      "Maximize\n"
      " obj: 3 x + 2 y\n"
      "Subject To\n"
      " c1: x + y <= 4\n"
      " c2: x + 3 y >= 1\n"
      "Bounds\n"
      " x <= 3\n"
      "Generals\n"
      " y\n"
      "End\n");
  ASSERT_EQ(pi.num_cols(), 2);
  ASSERT_EQ(pi.num_rows(), 2);
  EXPECT_EQ(pi.cost[0], -3.0);
  EXPECT_EQ(pi.upper[0], 3.0);
  EXPECT_EQ(pi.lower[0], 0.0);
  EXPECT_EQ(pi.upper[1], kInf);
  EXPECT_EQ(pi.integer[1], 1);
  EXPECT_EQ(pi.rows[1].sense, RowSense::kGreaterEqual);
}

TEST(LpFormatTest, ErrorsCarryLineNumbers) {
  try {
    parse_lp_text("Minimize\n obj: x\nSubject To\n c1: x + y\nEnd\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_lp_text("Minimize\n obj: x\nSubject To\n c1: x <= 1\n"), ParseError);
  EXPECT_THROW(parse_lp_text("Minimize\n obj: x\nBounds\n x ?? 2\nEnd\n"), ParseError);
}

}  // namespace
}  // namespace eamod
