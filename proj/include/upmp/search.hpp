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

#ifndef UPMP_SEARCH_HPP_
#define UPMP_SEARCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "upmp/core.hpp"
#include "upmp/lanes.hpp"

namespace upmp {

struct SearchLimits {
  double timeout_seconds = 0;   // <= 0: unlimited
  std::uint64_t node_cap = 0;   // 0: default cap; exceeding it reports timeout
  std::ostream* trace = nullptr;  // one line per expansion: f g h key
};

struct SearchOutcome {
  enum class Kind { solved, infeasible, timeout };

  Kind kind = Kind::infeasible;
  std::vector<Move> moves;         // solved only; replays from the root to a goal
  std::uint64_t nodes_visited = 0; // pops surviving the closed-set check
  double runtime_seconds = 0;
  int best_f_seen = 0;             // strongest f popped; reported on timeout
  int root_bound = -1;             // h at the root, -1 when unbounded (infinite)
};

// Best-first search over bay states under a fixed lane partition. Returns a
// minimum-length move sequence, proves infeasibility by exhausting the
// reachable states, or times out. An unbounded root falls back to plain
// uniform-cost exhaustion so infeasibility never rests on the bound alone.
SearchOutcome astar(const Bay& root, const std::vector<VirtualLane>& lanes,
                    const SearchLimits& limits = {});

}  // namespace upmp

#endif  // UPMP_SEARCH_HPP_
