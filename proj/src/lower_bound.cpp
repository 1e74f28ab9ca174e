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

#include "upmp/lower_bound.hpp"

#include <algorithm>
#include <limits>

namespace upmp {

namespace {
constexpr int kInf = std::numeric_limits<int>::max() / 4;
}

int simple_bound(const std::vector<LaneStats>& stats) {
  int total = 0;
  for (const auto& st : stats) total += st.blocking;
  return total;
}

std::pair<int, int> bx_bound(const std::vector<LaneStats>& stats) {
  int total = 0;
  int min_lane = stats.empty() ? 0 : kInf;
  for (const auto& st : stats) {
    total += st.blocking;
    min_lane = std::min(min_lane, st.blocking);
  }
  return {total, min_lane};
}

DemandSupplyTable demand_supply(const Bay& bay, const std::vector<VirtualLane>& lanes,
                                const std::vector<LaneStats>& stats) {
  DemandSupplyTable t;
  t.groups = bay.groups();
  t.demand.assign(t.groups + 2, 0);
  t.supply.assign(t.groups + 2, 0);
  t.cum_demand.assign(t.groups + 2, 0);
  t.cum_supply.assign(t.groups + 2, 0);

  const auto& cells = bay.cells();
  for (std::size_t l = 0; l < lanes.size(); ++l) {
    const auto& st = stats[l];
    if (st.first_occupied < 0) {
      t.empty_capacity += static_cast<int>(lanes[l].slots.size());
      continue;
    }
    for (std::size_t p = 0; p < st.labels.size(); ++p) {
      if (st.labels[p] == SlotLabel::blocking) ++t.demand[cells[lanes[l].slots[p]]];
    }
    // Every slot in front of the outermost well-placed load is usable by
    // groups up to that load's group: it is empty or vacated by a blocking
    // load that has to move anyway.
    if (st.outermost_wp >= 0) {
      t.supply[cells[lanes[l].slots[st.outermost_wp]]] += st.outermost_wp;
    }
  }
  for (int g = t.groups; g >= 1; --g) {
    t.cum_demand[g] = t.cum_demand[g + 1] + t.demand[g];
    t.cum_supply[g] = t.cum_supply[g + 1] + t.supply[g];
  }
  for (int g = 1; g <= t.groups; ++g) t.cum_supply[g] += t.empty_capacity;

  t.critical_group = t.groups;
  t.max_surplus = t.surplus(t.groups);
  for (int g = t.groups - 1; g >= 1; --g) {
    if (t.surplus(g) > t.max_surplus) {
      t.max_surplus = t.surplus(g);
      t.critical_group = g;
    }
  }
  return t;
}

std::optional<int> uniform_shuffle_bound(int surplus, int lane_slots,
                                         std::vector<int> candidate_costs) {
  if (surplus <= 0) return 0;
  int lanes_needed = (surplus + lane_slots - 1) / lane_slots;
  if (static_cast<int>(candidate_costs.size()) < lanes_needed) return std::nullopt;
  std::sort(candidate_costs.begin(), candidate_costs.end());
  int cost = 0;
  for (int k = 0; k < lanes_needed; ++k) cost += candidate_costs[k];
  return cost;
}

std::optional<int> covering_shuffle_bound(const SpaceCovering& covering) {
  if (covering.required <= 0) return 0;
  const int target = covering.required;
  std::vector<int> best(target + 1, kInf);
  best[0] = 0;
  for (std::size_t l = 0; l < covering.move_cost.size(); ++l) {
    int freed = covering.freed_slots[l];
    int cost = covering.move_cost[l];
    if (freed <= 0) continue;
    for (int have = target - 1; have >= 0; --have) {
      if (best[have] == kInf) continue;
      int next = std::min(target, have + freed);
      best[next] = std::min(best[next], best[have] + cost);
    }
  }
  if (best[target] == kInf) return std::nullopt;
  return best[target];
}

SpaceCovering make_covering(const Bay& bay, const std::vector<VirtualLane>& lanes,
                            const std::vector<LaneStats>& stats,
                            const DemandSupplyTable& table) {
  SpaceCovering covering;
  covering.required = table.max_surplus;
  const auto& cells = bay.cells();
  for (std::size_t l = 0; l < lanes.size(); ++l) {
    const auto& st = stats[l];
    int below = 0, at_or_above = 0;
    for (std::size_t p = 0; p < st.labels.size(); ++p) {
      if (st.labels[p] != SlotLabel::well_placed) continue;
      if (cells[lanes[l].slots[p]] < table.critical_group) {
        ++below;
      } else {
        ++at_or_above;
      }
    }
    // Only lanes holding well-placed loads below the critical group can free
    // additional space; empty lanes already count as supply in full.
    if (below == 0) continue;
    covering.move_cost.push_back(below);
    covering.freed_slots.push_back(static_cast<int>(lanes[l].slots.size()) - at_or_above);
  }
  return covering;
}

LowerBoundReport lower_bound(const Bay& bay, const std::vector<VirtualLane>& lanes) {
  LowerBoundReport report;
  std::vector<LaneStats> stats;
  stats.reserve(lanes.size());
  for (const auto& lane : lanes) stats.push_back(classify_lane(bay.cells(), lane));

  auto [blocking, min_lane] = bx_bound(stats);
  report.blocking = blocking;
  report.forced_extra = min_lane;
  report.table = demand_supply(bay, lanes, stats);

  if (report.table.max_surplus > 0) {
    bool uniform = true;
    for (std::size_t l = 1; l < lanes.size(); ++l) {
      if (lanes[l].slots.size() != lanes[0].slots.size()) uniform = false;
    }
    std::optional<int> shuffle;
    if (uniform && !lanes.empty()) {
      std::vector<int> candidate_costs;
      const auto& cells = bay.cells();
      for (std::size_t l = 0; l < lanes.size(); ++l) {
        int below = 0;
        for (std::size_t p = 0; p < stats[l].labels.size(); ++p) {
          if (stats[l].labels[p] == SlotLabel::well_placed &&
              cells[lanes[l].slots[p]] < report.table.critical_group)
            ++below;
        }
        if (below > 0) candidate_costs.push_back(below);
      }
      shuffle = uniform_shuffle_bound(report.table.max_surplus,
                                      static_cast<int>(lanes[0].slots.size()),
                                      std::move(candidate_costs));
    } else {
      shuffle = covering_shuffle_bound(make_covering(bay, lanes, stats, report.table));
    }
    if (!shuffle) {
      report.feasible = false;
    } else {
      report.shuffle_moves = *shuffle;
    }
  }
  return report;
}

}  // namespace upmp
