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

#include <string>
#include <string_view>

#include "eamod/model.hpp"

namespace eamod {

// CPLEX LP text. The objective names every column, zero costs included, so
// that a re-parse recovers the column order; every column gets a Bounds line.
std::string export_lp_text(const ProblemInstance& pi);

// Reads the subset of the LP format that export_lp_text writes, plus the
// usual variants (`>=`/`=>`, `free`, one-sided bounds, General/Binaries,
// Maximize). Columns first seen in constraints are appended in order of
// appearance. The result carries no flow structure. Throws ParseError.
ProblemInstance parse_lp_text(std::string_view text);

}  // namespace eamod
