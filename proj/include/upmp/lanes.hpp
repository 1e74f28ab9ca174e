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

#ifndef UPMP_LANES_HPP_
#define UPMP_LANES_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "upmp/core.hpp"

namespace upmp {

// A straight, boundary-anchored run of stacks served from one direction.
// Slots are listed in access order: nearest stack first, and within a stack
// the top tier before the bottom tier (the top load is retrieved first).
struct VirtualLane {
  Direction dir = Direction::north;
  int line = 1;  // column for north/south lanes, row for west/east lanes
  std::vector<std::pair<int, int>> stacks;  // (i, j), boundary inward
  std::vector<int> slots;                   // cell indices, access order
};

// Access direction per stack, indexed by Bay::stack_index.
struct Fixing {
  std::vector<Direction> stack_dir;
};

// The forced fixing for a single-direction variant.
Fixing forced_fixing(const Bay& bay);

// Groups stacks by (direction, line) into lanes, ordered by direction rank
// north, south, west, east and then line. Throws FixingError when the stacks
// of a lane do not form a contiguous run starting at the boundary, or when a
// stack is assigned a direction the variant does not allow.
std::vector<VirtualLane> build_lanes(const Bay& bay, const Fixing& fixing);

enum class SlotLabel : std::uint8_t { empty, well_placed, blocking };

struct LaneStats {
  std::vector<SlotLabel> labels;  // per slot, access order
  int blocking = 0;
  int well_placed = 0;
  int first_occupied = -1;  // slot index, -1 when the lane is empty
  int outermost_wp = -1;    // nearest well-placed slot; its group is minimal
  int holes = 0;            // empty slots buried behind the first load
};

// A load is blocking when a strictly smaller group lies deeper in the lane,
// or when any deeper load is itself blocking.
LaneStats classify_lane(const std::vector<std::uint8_t>& cells, const VirtualLane& lane);

int lane_blocking(const std::vector<std::uint8_t>& cells, const std::vector<int>& slots);
// Empty slots with a load anywhere in front of them (nearer the boundary):
// trapped capacity that takes extra moves to reach.
int lane_holes(const std::vector<std::uint8_t>& cells, const std::vector<int>& slots);

// Slot the next pickup comes from: the first occupied slot. -1 when empty.
int pickup_slot(const std::vector<std::uint8_t>& cells, const VirtualLane& lane);
// Slot a new load would fill: just before the first occupied slot, or the
// deepest slot of an empty lane. -1 when nothing can be placed.
int placement_slot(const std::vector<std::uint8_t>& cells, const VirtualLane& lane);

struct LaneMove {
  int src_lane = -1;
  int dst_lane = -1;
  Move move;
};

// All single-load relocations: pick the outermost load of one lane, place it
// at the placement slot of a different lane. Ordered by (src, dst).
std::vector<LaneMove> legal_lane_moves(const Bay& bay, const std::vector<VirtualLane>& lanes);
std::vector<Move> legal_moves(const Bay& bay, const std::vector<VirtualLane>& lanes);

int total_blocking(const Bay& bay, const std::vector<VirtualLane>& lanes);
bool is_goal(const Bay& bay, const std::vector<VirtualLane>& lanes);

// True when every lane's occupied slots form a deep-anchored suffix of its
// access sequence (no empty slot behind a load).
bool lanes_hole_free(const Bay& bay, const std::vector<VirtualLane>& lanes);

}  // namespace upmp

#endif  // UPMP_LANES_HPP_
