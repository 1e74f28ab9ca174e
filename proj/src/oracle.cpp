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

#include "upmp/oracle.hpp"

#include <deque>
#include <unordered_set>

namespace upmp {

namespace {

using State = std::vector<std::uint8_t>;

struct StateHash {
  std::size_t operator()(const State& s) const {
    return static_cast<std::size_t>(state_hash(s));
  }
};

}  // namespace

OracleOutcome oracle_solve(const Bay& root, const std::vector<VirtualLane>& lanes,
                           std::uint64_t state_cap) {
  if (state_cap == 0) state_cap = 2000000;
  OracleOutcome out;
  Bay scratch = root;
  if (is_goal(scratch, lanes)) {
    out.kind = OracleOutcome::Kind::solved;
    out.optimal_moves = 0;
    out.states_seen = 1;
    return out;
  }

  std::unordered_set<State, StateHash> seen;
  std::deque<State> frontier;
  seen.insert(root.cells());
  frontier.push_back(root.cells());
  int depth = 0;

  while (!frontier.empty()) {
    ++depth;
    std::size_t level = frontier.size();
    for (std::size_t k = 0; k < level; ++k) {
      State cur = std::move(frontier.front());
      frontier.pop_front();
      scratch.mutable_cells() = cur;
      for (const LaneMove& lm : legal_lane_moves(scratch, lanes)) {
        State child = cur;
        child[scratch.cell_index(lm.move.from.i, lm.move.from.j, lm.move.from.t)] = 0;
        child[scratch.cell_index(lm.move.to.i, lm.move.to.j, lm.move.to.t)] = lm.move.group;
        if (!seen.insert(child).second) continue;
        scratch.mutable_cells() = child;
        bool goal = is_goal(scratch, lanes);
        scratch.mutable_cells() = cur;
        if (goal) {
          out.kind = OracleOutcome::Kind::solved;
          out.optimal_moves = depth;
          out.states_seen = seen.size();
          return out;
        }
        if (seen.size() > state_cap) {
          out.kind = OracleOutcome::Kind::cap_exceeded;
          out.states_seen = seen.size();
          return out;
        }
        frontier.push_back(std::move(child));
      }
    }
  }

  out.kind = OracleOutcome::Kind::infeasible;
  out.states_seen = seen.size();
  return out;
}

}  // namespace upmp
