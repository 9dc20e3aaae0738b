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
#include <vector>

#include "eamod/isoenergy.hpp"

namespace eamod {

enum class CentralityWeight { kTravelTime, kEnergy };

// Betweenness per geo index: for every ordered pair (s, t) with s != t, the
// fraction of shortest s-t paths passing through v, summed over pairs.
// Paths whose lengths agree to 1e-12 relative count as ties.
using CentralityScores = std::vector<double>;

// Throws ValidationError when the graph falls apart into several components or
// has a non-positive weight. Unreachable pairs contribute nothing.
CentralityScores betweenness(const IsoEnergyGraph& iso,
                             CentralityWeight weight = CentralityWeight::kTravelTime);

// The n highest-scoring indices, ascending; equal scores go to the lower index.
std::vector<int> heuristic_siting(const CentralityScores& scores, int n);

// As above, restricted to `candidates`.
std::vector<int> heuristic_siting(const CentralityScores& scores, int n,
                                  std::span<const int> candidates);

// `geo_index,score` rows with a header line.
std::string format_scores(const CentralityScores& scores);

}  // namespace eamod
