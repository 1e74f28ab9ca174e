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

#include "upmp/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "upmp/lower_bound.hpp"

namespace upmp {

namespace {

constexpr std::uint64_t kDefaultNodeCap = 2000000;

using State = std::vector<std::uint8_t>;

struct StateHash {
  std::size_t operator()(const State& s) const {
    return static_cast<std::size_t>(state_hash(s));
  }
};

struct NodeRec {
  State state;
  int g = 0;
  int h = 0;
  int parent = -1;
  int src_lane = -1;
  int dst_lane = -1;
  Move move;
};

struct QueueEntry {
  int f = 0;
  int g = 0;
  std::uint64_t seq = 0;
  int node = -1;
};

// Minimum f first; on ties the deeper node, then insertion order.
struct QueueCmp {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.seq > b.seq;
  }
};

}  // namespace

SearchOutcome astar(const Bay& root, const std::vector<VirtualLane>& lanes,
                    const SearchLimits& limits) {
  const auto start_time = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
        .count();
  };
  const std::uint64_t node_cap = limits.node_cap ? limits.node_cap : kDefaultNodeCap;

  SearchOutcome out;
  LowerBoundReport root_report = lower_bound(root, lanes);
  // An unbounded root never proves infeasibility by itself: fall back to a
  // plain uniform-cost sweep so only open-list exhaustion decides.
  const bool bounded = root_report.feasible;
  out.root_bound = bounded ? root_report.bound() : -1;

  Bay scratch = root;
  auto eval_h = [&](const State& cells) -> int {
    if (!bounded) return 0;
    scratch.mutable_cells() = cells;
    LowerBoundReport report = lower_bound(scratch, lanes);
    return report.feasible ? report.bound() : -1;
  };

  std::vector<NodeRec> arena;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueCmp> open;
  std::unordered_map<State, int, StateHash> open_best_f;
  std::unordered_set<State, StateHash> closed;

  arena.push_back(NodeRec{root.cells(), 0, bounded ? root_report.bound() : 0, -1, -1, -1, {}});
  open.push(QueueEntry{arena[0].h, 0, 0, 0});
  open_best_f[root.cells()] = arena[0].h;
  std::uint64_t seq = 1;

  while (!open.empty()) {
    if (limits.timeout_seconds > 0 && elapsed() > limits.timeout_seconds) {
      out.kind = SearchOutcome::Kind::timeout;
      out.runtime_seconds = elapsed();
      return out;
    }
    QueueEntry top = open.top();
    open.pop();
    NodeRec node = arena[top.node];
    if (closed.contains(node.state)) continue;  // stale entry
    closed.insert(node.state);
    ++out.nodes_visited;
    out.best_f_seen = std::max(out.best_f_seen, top.f);

    if (limits.trace) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%d %d %d %016llx\n", top.f, node.g, node.h,
                    static_cast<unsigned long long>(state_hash(node.state)));
      *limits.trace << buf;
    }

    scratch.mutable_cells() = node.state;
    if (is_goal(scratch, lanes)) {
      // Walk the parent chain, then replay as a safety net.
      std::vector<Move> moves;
      for (int at = top.node; arena[at].parent >= 0; at = arena[at].parent)
        moves.push_back(arena[at].move);
      std::reverse(moves.begin(), moves.end());
      Bay replay = root;
      for (const Move& mv : moves) replay = apply_move(replay, mv);
      if (!is_goal(replay, lanes) || static_cast<int>(moves.size()) != node.g)
        throw Error("internal: solution replay failed");
      out.kind = SearchOutcome::Kind::solved;
      out.moves = std::move(moves);
      out.runtime_seconds = elapsed();
      return out;
    }

    if (static_cast<std::uint64_t>(arena.size()) > node_cap) {
      out.kind = SearchOutcome::Kind::timeout;
      out.runtime_seconds = elapsed();
      return out;
    }

    for (const LaneMove& lm : legal_lane_moves(scratch, lanes)) {
      // Never undo the move that created this node.
      if (lm.src_lane == node.dst_lane && lm.dst_lane == node.src_lane) continue;
      State child = node.state;
      child[scratch.cell_index(lm.move.from.i, lm.move.from.j, lm.move.from.t)] = 0;
      child[scratch.cell_index(lm.move.to.i, lm.move.to.j, lm.move.to.t)] = lm.move.group;
      if (closed.contains(child)) continue;
      int h = eval_h(child);
      scratch.mutable_cells() = node.state;  // eval_h clobbers the scratch cells
      if (h < 0) continue;                   // no completion exists below this child
      int f = node.g + 1 + h;
      auto it = open_best_f.find(child);
      if (it != open_best_f.end() && it->second <= f) continue;
      int idx = static_cast<int>(arena.size());
      arena.push_back(NodeRec{child, node.g + 1, h, top.node, lm.src_lane, lm.dst_lane,
                              lm.move});
      open.push(QueueEntry{f, node.g + 1, seq++, idx});
      if (it != open_best_f.end()) {
        it->second = f;
      } else {
        open_best_f.emplace(std::move(child), f);
      }
    }
  }

  out.kind = SearchOutcome::Kind::infeasible;
  out.runtime_seconds = elapsed();
  return out;
}

}  // namespace upmp
