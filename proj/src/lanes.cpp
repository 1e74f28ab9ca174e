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

#include "upmp/lanes.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace upmp {

namespace {

// Stacks of a full line in boundary-to-inward order for one direction.
std::vector<std::pair<int, int>> line_stacks(const Dims& d, Direction dir, int line) {
  std::vector<std::pair<int, int>> out;
  switch (dir) {
    case Direction::north:
      for (int j = 1; j <= d.rows; ++j) out.emplace_back(line, j);
      break;
    case Direction::south:
      for (int j = d.rows; j >= 1; --j) out.emplace_back(line, j);
      break;
    case Direction::west:
      for (int i = 1; i <= d.columns; ++i) out.emplace_back(i, line);
      break;
    case Direction::east:
      for (int i = d.columns; i >= 1; --i) out.emplace_back(i, line);
      break;
  }
  return out;
}

}  // namespace

Fixing forced_fixing(const Bay& bay) {
  if (!bay.variant().single_direction())
    throw FixingError("forced fixing requires a single-direction variant");
  Fixing f;
  f.stack_dir.assign(static_cast<std::size_t>(bay.dims().stack_count()),
                     bay.variant().first_direction());
  return f;
}

std::vector<VirtualLane> build_lanes(const Bay& bay, const Fixing& fixing) {
  const Dims& d = bay.dims();
  if (static_cast<int>(fixing.stack_dir.size()) != d.stack_count())
    throw FixingError("fixing does not cover every stack");

  std::vector<VirtualLane> lanes;
  for (Direction dir : kAllDirections) {
    std::vector<int> lines;
    if (dir == Direction::north || dir == Direction::south) {
      for (int i = 1; i <= d.columns; ++i) lines.push_back(i);
    } else {
      for (int j = 1; j <= d.rows; ++j) lines.push_back(j);
    }
    for (int line : lines) {
      auto stacks = line_stacks(d, dir, line);
      VirtualLane lane;
      lane.dir = dir;
      lane.line = line;
      std::size_t pos = 0;
      for (; pos < stacks.size(); ++pos) {
        auto [i, j] = stacks[pos];
        if (fixing.stack_dir[bay.stack_index(i, j)] != dir) break;
        lane.stacks.emplace_back(i, j);
      }
      // A later stack with this direction would form a floating run.
      for (; pos < stacks.size(); ++pos) {
        auto [i, j] = stacks[pos];
        if (fixing.stack_dir[bay.stack_index(i, j)] == dir) {
          std::ostringstream os;
          os << "stack (" << i << "," << j << ") is assigned " << to_string(dir)
             << " but is cut off from that boundary";
          throw FixingError(os.str());
        }
      }
      if (lane.stacks.empty()) continue;
      if (!bay.variant().allows(dir))
        throw FixingError(std::string("variant does not allow ") + to_string(dir));
      for (auto [i, j] : lane.stacks) {
        for (int t = d.tiers; t >= 1; --t) lane.slots.push_back(bay.cell_index(i, j, t));
      }
      lanes.push_back(std::move(lane));
    }
  }

  std::vector<char> seen(static_cast<std::size_t>(d.stack_count()), 0);
  for (const auto& lane : lanes) {
    for (auto [i, j] : lane.stacks) {
      if (seen[bay.stack_index(i, j)]++) {
        std::ostringstream os;
        os << "two lanes claim stack (" << i << "," << j << ")";
        throw FixingError(os.str());
      }
    }
  }
  for (int s = 0; s < d.stack_count(); ++s) {
    if (!seen[s]) throw FixingError("fixing leaves a stack unassigned");
  }
  return lanes;
}

LaneStats classify_lane(const std::vector<std::uint8_t>& cells, const VirtualLane& lane) {
  LaneStats st;
  st.labels.assign(lane.slots.size(), SlotLabel::empty);
  int min_deeper = std::numeric_limits<int>::max();
  bool blocking_deeper = false;
  for (int p = static_cast<int>(lane.slots.size()) - 1; p >= 0; --p) {
    int g = cells[lane.slots[p]];
    if (g == 0) continue;
    st.first_occupied = p;
    if (blocking_deeper || g > min_deeper) {
      st.labels[p] = SlotLabel::blocking;
      ++st.blocking;
      blocking_deeper = true;
    } else {
      st.labels[p] = SlotLabel::well_placed;
      ++st.well_placed;
      st.outermost_wp = p;
    }
    min_deeper = std::min(min_deeper, g);
  }
  // Holes: empty slots buried behind the first load. They hold no placement
  // until everything in front moves away.
  if (st.first_occupied >= 0) {
    for (std::size_t p = st.first_occupied + 1; p < lane.slots.size(); ++p) {
      if (cells[lane.slots[p]] == 0) ++st.holes;
    }
  }
  return st;
}

int lane_blocking(const std::vector<std::uint8_t>& cells, const std::vector<int>& slots) {
  int blocking = 0;
  int min_deeper = std::numeric_limits<int>::max();
  bool blocking_deeper = false;
  for (int p = static_cast<int>(slots.size()) - 1; p >= 0; --p) {
    int g = cells[slots[p]];
    if (g == 0) continue;
    if (blocking_deeper || g > min_deeper) {
      ++blocking;
      blocking_deeper = true;
    }
    min_deeper = std::min(min_deeper, g);
  }
  return blocking;
}

int lane_holes(const std::vector<std::uint8_t>& cells, const std::vector<int>& slots) {
  int holes = 0;
  bool occupied_in_front = false;
  for (int slot : slots) {
    if (cells[slot] != 0) {
      occupied_in_front = true;
    } else if (occupied_in_front) {
      ++holes;
    }
  }
  return holes;
}

int pickup_slot(const std::vector<std::uint8_t>& cells, const VirtualLane& lane) {
  for (std::size_t p = 0; p < lane.slots.size(); ++p) {
    if (cells[lane.slots[p]] != 0) return static_cast<int>(p);
  }
  return -1;
}

int placement_slot(const std::vector<std::uint8_t>& cells, const VirtualLane& lane) {
  int first = pickup_slot(cells, lane);
  if (first < 0) return static_cast<int>(lane.slots.size()) - 1;
  return first - 1;  // -1 when the front slot is occupied
}

std::vector<LaneMove> legal_lane_moves(const Bay& bay, const std::vector<VirtualLane>& lanes) {
  const auto& cells = bay.cells();
  std::vector<LaneMove> out;
  std::vector<int> pick(lanes.size()), place(lanes.size());
  for (std::size_t l = 0; l < lanes.size(); ++l) {
    pick[l] = pickup_slot(cells, lanes[l]);
    place[l] = placement_slot(cells, lanes[l]);
  }
  for (std::size_t src = 0; src < lanes.size(); ++src) {
    if (pick[src] < 0) continue;
    int from_idx = lanes[src].slots[pick[src]];
    for (std::size_t dst = 0; dst < lanes.size(); ++dst) {
      if (dst == src || place[dst] < 0) continue;
      LaneMove lm;
      lm.src_lane = static_cast<int>(src);
      lm.dst_lane = static_cast<int>(dst);
      lm.move.from = bay.cell_coords(from_idx);
      lm.move.to = bay.cell_coords(lanes[dst].slots[place[dst]]);
      lm.move.group = cells[from_idx];
      out.push_back(lm);
    }
  }
  return out;
}

std::vector<Move> legal_moves(const Bay& bay, const std::vector<VirtualLane>& lanes) {
  std::vector<Move> out;
  for (const auto& lm : legal_lane_moves(bay, lanes)) out.push_back(lm.move);
  return out;
}

int total_blocking(const Bay& bay, const std::vector<VirtualLane>& lanes) {
  int total = 0;
  for (const auto& lane : lanes) total += lane_blocking(bay.cells(), lane.slots);
  return total;
}

bool is_goal(const Bay& bay, const std::vector<VirtualLane>& lanes) {
  for (const auto& lane : lanes) {
    if (lane_blocking(bay.cells(), lane.slots) > 0) return false;
  }
  return true;
}

bool lanes_hole_free(const Bay& bay, const std::vector<VirtualLane>& lanes) {
  const auto& cells = bay.cells();
  for (const auto& lane : lanes) {
    bool seen_load = false;
    for (int slot : lane.slots) {
      if (cells[slot] != 0) {
        seen_load = true;
      } else if (seen_load) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace upmp
