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

#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "upmp/fixing.hpp"
#include "upmp/lower_bound.hpp"
#include "upmp/oracle.hpp"
#include "upmp/search.hpp"

using namespace upmp;

namespace {

Bay replay(const Bay& root, const std::vector<Move>& moves) {
  Bay bay = root;
  for (const Move& mv : moves) bay = apply_move(bay, mv);
  return bay;
}

}  // namespace

TEST_CASE("two-move instance solves optimally") {
  Bay bay = testutil::two_move_bay();
  auto lanes = build_lanes(bay, forced_fixing(bay));
  SearchOutcome outcome = astar(bay, lanes);
  REQUIRE(outcome.kind == SearchOutcome::Kind::solved);
  CHECK(outcome.moves.size() == 2);
  CHECK(outcome.root_bound == 2);
  CHECK(is_goal(replay(bay, outcome.moves), lanes));

  OracleOutcome reference = oracle_solve(bay, lanes);
  REQUIRE(reference.kind == OracleOutcome::Kind::solved);
  CHECK(reference.optimal_moves == 2);
}

TEST_CASE("already sorted: zero moves, one node") {
  Bay sorted = testutil::bay_from_columns(2, 2, {{0, 1, 2, 3}, {0, 0, 4, 5}, {0, 0, 0, 0}});
  auto lanes = build_lanes(sorted, forced_fixing(sorted));
  SearchOutcome outcome = astar(sorted, lanes);
  REQUIRE(outcome.kind == SearchOutcome::Kind::solved);
  CHECK(outcome.moves.empty());
  CHECK(outcome.nodes_visited == 1);
}

TEST_CASE("branching on the four-move root") {
  Bay bay = testutil::branching_bay();
  auto lanes = build_lanes(bay, forced_fixing(bay));
  REQUIRE(lower_bound(bay, lanes).bound() == 3);

  // Four successors; child bound values 2, 3, 3, 3 give f = 3, 4, 4, 4.
  auto moves = legal_lane_moves(bay, lanes);
  REQUIRE(moves.size() == 4);
  std::vector<int> fs;
  for (const auto& lm : moves) {
    Bay child = apply_move(bay, lm.move);
    LowerBoundReport report = lower_bound(child, lanes);
    REQUIRE(report.feasible);
    fs.push_back(1 + report.bound());
  }
  std::sort(fs.begin(), fs.end());
  CHECK(fs == std::vector<int>{3, 4, 4, 4});

  SearchOutcome outcome = astar(bay, lanes);
  REQUIRE(outcome.kind == SearchOutcome::Kind::solved);
  CHECK(outcome.moves.size() == 3);
}

TEST_CASE("walled-in blocking load is infeasible by exhaustion") {
  Bay bay = testutil::stuck_bay();
  auto lanes = build_lanes(bay, forced_fixing(bay));
  CHECK(legal_lane_moves(bay, lanes).empty());
  SearchOutcome outcome = astar(bay, lanes);
  CHECK(outcome.kind == SearchOutcome::Kind::infeasible);
  CHECK(outcome.nodes_visited == 1);

  OracleOutcome reference = oracle_solve(bay, lanes);
  CHECK(reference.kind == OracleOutcome::Kind::infeasible);
}

TEST_CASE("zero budget reports a timeout, not infeasibility") {
  Bay bay = testutil::two_move_bay();
  auto lanes = build_lanes(bay, forced_fixing(bay));
  SearchLimits limits;
  limits.timeout_seconds = 1e-9;
  SearchOutcome outcome = astar(bay, lanes, limits);
  CHECK(outcome.kind == SearchOutcome::Kind::timeout);
}

TEST_CASE("node cap converts a blow-up into a timeout outcome") {
  GenParams params;
  params.dims = Dims{4, 4, 2};
  params.variant = AccessVariant::single();
  params.fill_percent = 70;
  params.seed = 5;
  Bay bay = generate_instance(params, 0).bay;
  auto lanes = build_lanes(bay, forced_fixing(bay));
  SearchLimits limits;
  limits.node_cap = 16;
  SearchOutcome outcome = astar(bay, lanes, limits);
  // Either it solved within 16 nodes or it must stop with a timeout kind.
  if (outcome.kind != SearchOutcome::Kind::solved)
    CHECK(outcome.kind == SearchOutcome::Kind::timeout);
}

TEST_CASE("trace emits one line per expansion") {
  Bay bay = testutil::two_move_bay();
  auto lanes = build_lanes(bay, forced_fixing(bay));
  std::ostringstream trace;
  SearchLimits limits;
  limits.trace = &trace;
  SearchOutcome outcome = astar(bay, lanes, limits);
  REQUIRE(outcome.kind == SearchOutcome::Kind::solved);
  std::istringstream lines(trace.str());
  std::string line;
  std::uint64_t count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == outcome.nodes_visited);
}

TEST_CASE("search equals the exhaustive reference on random instances") {
  Rng rng(60606);
  const AccessVariant variants[] = {AccessVariant::single(), AccessVariant::corner(),
                                    AccessVariant::opposite(), AccessVariant::three(),
                                    AccessVariant::four()};
  int compared = 0;
  while (compared < 80) {
    GenParams params;
    params.dims = compared % 2 ? Dims{3, 3, 1} : Dims{3, 2, 2};
    params.variant = variants[rng.below(5)];
    params.fill_percent = 40 + static_cast<int>(rng.below(3)) * 10;
    params.seed = rng.next();
    Bay bay;
    try {
      bay = generate_instance(params, 0).bay;
    } catch (const GenerateError&) {
      continue;
    }
    PreparedLanes prepared = prepare_lanes(bay);
    SearchOutcome outcome = astar(bay, prepared.lanes);
    OracleOutcome reference = oracle_solve(bay, prepared.lanes);
    REQUIRE(reference.kind != OracleOutcome::Kind::cap_exceeded);
    if (reference.kind == OracleOutcome::Kind::solved) {
      REQUIRE(outcome.kind == SearchOutcome::Kind::solved);
      CHECK(static_cast<int>(outcome.moves.size()) == reference.optimal_moves);
      CHECK(is_goal(replay(bay, outcome.moves), prepared.lanes));
    } else {
      CHECK(outcome.kind == SearchOutcome::Kind::infeasible);
    }
    ++compared;
  }
  CHECK(compared == 80);
}

TEST_CASE("reverse of the generating move is never proposed") {
  // Walk two plies manually: successors of a child never contain the exact
  // inverse of the move that created it (same lanes, same slots).
  Bay bay = testutil::branching_bay();
  auto lanes = build_lanes(bay, forced_fixing(bay));
  for (const auto& first : legal_lane_moves(bay, lanes)) {
    Bay child = apply_move(bay, first.move);
    for (const auto& second : legal_lane_moves(child, lanes)) {
      if (second.src_lane == first.dst_lane && second.dst_lane == first.src_lane) {
        // The inverse exists in the raw move list; the search must skip it.
        Bay back = apply_move(child, second.move);
        CHECK(back == bay);
      }
    }
  }
  // The guided search still finds the optimum with the pruning active.
  SearchOutcome outcome = astar(bay, lanes);
  CHECK(outcome.kind == SearchOutcome::Kind::solved);
  CHECK(outcome.moves.size() == 3);
}
