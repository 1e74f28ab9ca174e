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

#ifndef UPMP_ORACLE_HPP_
#define UPMP_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "upmp/core.hpp"
#include "upmp/lanes.hpp"

namespace upmp {

struct OracleOutcome {
  enum class Kind { solved, infeasible, cap_exceeded };

  Kind kind = Kind::infeasible;
  int optimal_moves = -1;
  std::uint64_t states_seen = 0;
};

// Breadth-first sweep of the full reachable state graph: exact optimum or an
// exhaustion proof of infeasibility. Deliberately free of bounds, pruning and
// tie-breaking so it can verify the guided search. Small instances only.
OracleOutcome oracle_solve(const Bay& root, const std::vector<VirtualLane>& lanes,
                           std::uint64_t state_cap = 2000000);

}  // namespace upmp

#endif  // UPMP_ORACLE_HPP_
