// Copyright 2026 The upmp Authors
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

#ifndef UPMP_FIXING_HPP_
#define UPMP_FIXING_HPP_

#include <string>
#include <vector>

#include "upmp/core.hpp"
#include "upmp/lanes.hpp"

namespace upmp {

// One directed edge of the access network. Stack vertices are named Sk with
// k = (i-1)*rows + j; direction vertices N/S/W/E; origin o.
struct NetworkEdge {
  std::string from;
  std::string to;
  int cost = 0;
};

// Origin->direction edges, direction->boundary-stack entry edges, and
// stack->stack continuation edges into stacks that no allowed direction
// reaches directly. Entry and continuation costs are the increase in
// blocking loads plus one per newly buried empty stack.
std::vector<NetworkEdge> build_network(const Bay& bay);

// "from to cost" per line, edge order as produced by build_network.
std::string dump_network(const Bay& bay);

struct FixingSolution {
  Fixing fixing;
  std::vector<VirtualLane> lanes;
  int objective = 0;  // blocking plus hole penalties of the chosen lanes
};

// Exact minimum-cost direction assignment. Lanes are straight, contiguous
// and boundary-anchored; every stack lies in exactly one lane. Deterministic:
// equal-cost solutions are ranked by total placement headroom, then by a
// fixed exploration order that prefers north, south, west, east coverage.
// Throws FixingError when some stack cannot be reached (malformed variant).
FixingSolution solve_fixing(const Bay& bay);

// Same search with custom term weights; weight (0, 1) minimizes holes alone,
// which tests use to certify that a bay admits a hole-free fixing.
FixingSolution solve_fixing_weighted(const Bay& bay, int blocking_weight, int hole_weight);

// Fast decision: can the stacks be partitioned into lanes in which no empty
// slot sits behind a load? The generator keeps this invariant placement by
// placement.
bool hole_free_fixing_exists(const Bay& bay);

// Lanes for a bay: the forced partition for single-direction variants,
// otherwise the solved fixing. Returns the objective (0 when forced).
struct PreparedLanes {
  std::vector<VirtualLane> lanes;
  Fixing fixing;
  int objective = 0;
  bool fixed_by_variant = false;
};
PreparedLanes prepare_lanes(const Bay& bay);

}  // namespace upmp

#endif  // UPMP_FIXING_HPP_
