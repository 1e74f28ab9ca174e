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

#ifndef UPMP_LOWER_BOUND_HPP_
#define UPMP_LOWER_BOUND_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "upmp/core.hpp"
#include "upmp/lanes.hpp"

namespace upmp {

// Per-group slot demand of blocking loads against the slots that can absorb
// them without creating new blockage. Indices run 1..groups; cumulative
// values accumulate from the highest group down. Free capacity of entirely
// empty lanes enters every cumulative supply level.
struct DemandSupplyTable {
  int groups = 0;
  std::vector<int> demand;       // d(g): blocking loads of group g
  std::vector<int> cum_demand;   // D(g) = sum over g' >= g of d(g')
  std::vector<int> supply;       // s(g): slots in front of a lane's outermost
                                 // well-placed load, credited at its group
  std::vector<int> cum_supply;   // S(g) = sum over g' >= g of s(g') + empty capacity
  int empty_capacity = 0;        // total slots of empty lanes
  int critical_group = 0;        // largest group maximizing the surplus
  int max_surplus = 0;           // D - S at the critical group

  int surplus(int g) const { return cum_demand[g] - cum_supply[g]; }
};

// Exact covering step: choose lanes to clear so that the freed slots meet the
// demand surplus at minimum relocation cost.
struct SpaceCovering {
  std::vector<int> move_cost;    // well-placed loads below the critical group
  std::vector<int> freed_slots;  // lane length minus loads that stay put
  int required = 0;
};

struct LowerBoundReport {
  int blocking = 0;       // every blocking load moves at least once
  int forced_extra = 0;   // one more move when no lane is blockage-free
  int shuffle_moves = 0;  // well-placed loads that must relocate for space
  bool feasible = true;   // false: no completion exists from this state
  DemandSupplyTable table;

  int bound() const { return blocking + forced_extra + shuffle_moves; }
};

int simple_bound(const std::vector<LaneStats>& stats);

// (total blocking, min blocking over lanes). The second component is zero as
// soon as one lane, including an empty one, carries no blocking load.
std::pair<int, int> bx_bound(const std::vector<LaneStats>& stats);

DemandSupplyTable demand_supply(const Bay& bay, const std::vector<VirtualLane>& lanes,
                                const std::vector<LaneStats>& stats);

// Closed-form shuffle bound for lanes of one common length: clear the
// ceil(surplus / lane_slots) cheapest candidate lanes. nullopt when fewer
// candidates exist than lanes needed.
std::optional<int> uniform_shuffle_bound(int surplus, int lane_slots,
                                         std::vector<int> candidate_costs);

// Exact minimum of the covering step (dynamic program over the residual
// demand). nullopt when even clearing every candidate frees too little.
std::optional<int> covering_shuffle_bound(const SpaceCovering& covering);

SpaceCovering make_covering(const Bay& bay, const std::vector<VirtualLane>& lanes,
                            const std::vector<LaneStats>& stats,
                            const DemandSupplyTable& table);

// Admissible bound on the moves needed to reach a blockage-free bay.
LowerBoundReport lower_bound(const Bay& bay, const std::vector<VirtualLane>& lanes);

}  // namespace upmp

#endif  // UPMP_LOWER_BOUND_HPP_
