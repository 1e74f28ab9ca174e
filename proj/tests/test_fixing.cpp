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
#include <optional>
#include <set>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "upmp/fixing.hpp"
#include "upmp/lower_bound.hpp"

using namespace upmp;

namespace {

int assignment_cost(const Bay& bay, const Fixing& fixing) {
  auto lanes = build_lanes(bay, fixing);  // throws on incoherent assignments
  int cost = 0;
  for (const auto& lane : lanes)
    cost += lane_blocking(bay.cells(), lane.slots) + lane_holes(bay.cells(), lane.slots);
  return cost;
}

// Exhaustive reference: minimum cost over every per-stack direction
// assignment whose lanes are contiguous and boundary-anchored. Feasible up
// to 3x3 grids (4^9 assignments).
std::optional<int> brute_force_objective(const Bay& bay) {
  int stacks = bay.dims().stack_count();
  REQUIRE(stacks <= 9);
  std::optional<int> best;
  std::vector<Direction> dirs(stacks, Direction::north);
  long long total = 1;
  for (int s = 0; s < stacks; ++s) total *= 4;
  for (long long code = 0; code < total; ++code) {
    long long rest = code;
    bool allowed = true;
    for (int s = 0; s < stacks; ++s) {
      dirs[s] = static_cast<Direction>(rest % 4);
      rest /= 4;
      if (!bay.variant().allows(dirs[s])) allowed = false;
    }
    if (!allowed) continue;
    Fixing fixing;
    fixing.stack_dir = dirs;
    try {
      int cost = assignment_cost(bay, fixing);
      if (!best || cost < *best) best = cost;
    } catch (const FixingError&) {
    }
  }
  return best;
}

bool has_edge(const std::vector<NetworkEdge>& edges, const std::string& from,
              const std::string& to, int cost) {
  return std::any_of(edges.begin(), edges.end(), [&](const NetworkEdge& e) {
    return e.from == from && e.to == to && e.cost == cost;
  });
}

}  // namespace

TEST_CASE("network for the worked 3x3x2 bay") {
  Bay bay = testutil::four_direction_bay();
  auto edges = build_network(bay);

  std::set<std::string> vertices;
  for (const auto& e : edges) {
    vertices.insert(e.from);
    vertices.insert(e.to);
  }
  // 9 stacks + 4 directions + origin.
  CHECK(vertices.size() == 14);

  // Entry from the west boundary into the middle west stack costs one
  // blocking load; continuing into the center adds two more.
  CHECK(has_edge(edges, "W", "S2", 1));
  CHECK(has_edge(edges, "S2", "S5", 2));
  // Boundary entry to the empty corner stack is free.
  CHECK(has_edge(edges, "N", "S7", 0));
  CHECK(has_edge(edges, "E", "S7", 0));

  std::string dump = dump_network(bay);
  CHECK(dump.find("W S2 1\n") != std::string::npos);
  CHECK(dump.find("S2 S5 2\n") != std::string::npos);
}

TEST_CASE("network shapes in degenerate cases") {
  Bay one(Dims{1, 1, 1}, AccessVariant::single(), 5);
  auto edges = build_network(one);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0].from == "o");
  CHECK(edges[0].to == "N");
  CHECK(edges[1].from == "N");
  CHECK(edges[1].to == "S1");

  // Single direction on 3x3: only per-column chains, no side edges.
  Bay grid(Dims{3, 3, 1}, AccessVariant::single(), 5);
  for (const auto& e : build_network(grid)) {
    CHECK((e.from == "o" || e.from == "N" || e.from[0] == 'S'));
    CHECK(e.to != "W");
    CHECK(e.to != "E");
  }
  CHECK(build_network(grid).size() == 1 + 3 + 6);
}

TEST_CASE("solved fixing of the worked bay: objective 4, eight lanes") {
  Bay bay = testutil::four_direction_bay();
  FixingSolution solution = solve_fixing(bay);
  CHECK(solution.objective == 4);
  CHECK(solution.lanes.size() == 8);

  // The west lane runs through the middle row; everything else is a
  // single-stack lane.
  std::vector<std::size_t> sizes;
  for (const auto& lane : solution.lanes) sizes.push_back(lane.stacks.size());
  CHECK(std::count(sizes.begin(), sizes.end(), 2u) == 1);
  CHECK(std::count(sizes.begin(), sizes.end(), 1u) == 7);

  auto west_lane = std::find_if(solution.lanes.begin(), solution.lanes.end(),
                                [](const VirtualLane& l) { return l.stacks.size() == 2; });
  REQUIRE(west_lane != solution.lanes.end());
  CHECK(west_lane->dir == Direction::west);
  CHECK(west_lane->stacks[0] == std::pair<int, int>{1, 2});
  CHECK(west_lane->stacks[1] == std::pair<int, int>{2, 2});

  CHECK(brute_force_objective(bay) == 4);
}

TEST_CASE("sorted and empty bays fix at zero cost") {
  Bay sorted = testutil::bay_from_columns(2, 2, {{0, 1, 2, 3}, {0, 0, 4, 5}, {0, 0, 0, 0}});
  FixingSolution solution = solve_fixing(sorted);
  CHECK(solution.objective == 0);

  Bay empty(Dims{4, 4, 1}, AccessVariant::four(), 5);
  CHECK(solve_fixing(empty).objective == 0);
}

TEST_CASE("single-direction fixing is forced and lanes are full columns") {
  Bay bay = testutil::six_blocking_bay();
  PreparedLanes prepared = prepare_lanes(bay);
  CHECK(prepared.fixed_by_variant);
  CHECK(prepared.lanes.size() == 4);
  for (const auto& lane : prepared.lanes) CHECK(lane.stacks.size() == 2);

  // The exact solver agrees with the forced partition.
  FixingSolution solution = solve_fixing(bay);
  CHECK(solution.lanes.size() == 4);
}

TEST_CASE("opposite variant splits every occupied column") {
  Bay bay(Dims{1, 4, 1}, AccessVariant::opposite(), 5);
  bay.set(1, 1, 1, 1);
  bay.set(1, 2, 1, 2);
  bay.set(1, 3, 1, 2);
  bay.set(1, 4, 1, 1);
  FixingSolution solution = solve_fixing(bay);
  int total_stacks = 0;
  for (const auto& lane : solution.lanes) {
    CHECK((lane.dir == Direction::north || lane.dir == Direction::south));
    total_stacks += static_cast<int>(lane.stacks.size());
  }
  CHECK(total_stacks == 4);
}

TEST_CASE("solver equals exhaustive enumeration on random small bays") {
  Rng rng(909);
  const AccessVariant variants[] = {AccessVariant::single(), AccessVariant::corner(),
                                    AccessVariant::opposite(), AccessVariant::three(),
                                    AccessVariant::four()};
  for (int round = 0; round < 160; ++round) {
    Dims dims = round % 2 ? Dims{2, 2, 2} : Dims{3, 3, 1};
    AccessVariant variant = variants[rng.below(5)];
    Bay bay = testutil::random_gravity_bay(rng, dims, 3, variant);
    FixingSolution solution = solve_fixing(bay);
    auto reference = brute_force_objective(bay);
    REQUIRE(reference.has_value());
    CHECK(solution.objective == *reference);
    // The objective really is the cost of the returned lanes.
    CHECK(solution.objective == assignment_cost(bay, solution.fixing));
  }
}

TEST_CASE("claim regions: north prefixes, south suffixes, west prefixes, east suffixes") {
  Rng rng(77);
  for (int round = 0; round < 60; ++round) {
    Bay bay = testutil::random_gravity_bay(rng, Dims{3, 3, 1}, 3, AccessVariant::four());
    FixingSolution solution = solve_fixing(bay);
    const auto& dir = solution.fixing.stack_dir;
    for (int i = 1; i <= 3; ++i) {
      for (int j = 2; j <= 3; ++j) {
        if (dir[bay.stack_index(i, j)] == Direction::north)
          CHECK(dir[bay.stack_index(i, j - 1)] == Direction::north);
        if (dir[bay.stack_index(i, j - 1)] == Direction::south)
          CHECK(dir[bay.stack_index(i, j)] == Direction::south);
      }
    }
    for (int j = 1; j <= 3; ++j) {
      for (int i = 2; i <= 3; ++i) {
        if (dir[bay.stack_index(i, j)] == Direction::west)
          CHECK(dir[bay.stack_index(i - 1, j)] == Direction::west);
        if (dir[bay.stack_index(i - 1, j)] == Direction::east)
          CHECK(dir[bay.stack_index(i, j)] == Direction::east);
      }
    }
  }
}

TEST_CASE("fixing is deterministic") {
  Rng rng(4242);
  for (int round = 0; round < 20; ++round) {
    Bay bay = testutil::random_gravity_bay(rng, Dims{3, 3, 2}, 5, AccessVariant::four());
    FixingSolution a = solve_fixing(bay);
    FixingSolution b = solve_fixing(bay);
    CHECK(a.objective == b.objective);
    CHECK(a.fixing.stack_dir == b.fixing.stack_dir);
  }
}

TEST_CASE("hole-only weighting certifies hole-free fixings of generated bays") {
  Rng rng(31337);
  const AccessVariant variants[] = {AccessVariant::single(), AccessVariant::corner(),
                                    AccessVariant::opposite(), AccessVariant::three(),
                                    AccessVariant::four()};
  int rounds = 0;
  while (rounds < 40) {
    GenParams params;
    params.dims = Dims{3, 3, rounds % 2 + 1};
    params.variant = variants[rng.below(5)];
    params.fill_percent = 40 + static_cast<int>(rng.below(3)) * 20;
    params.seed = rng.next();
    Bay bay;
    try {
      bay = generate_instance(params, 0).bay;
    } catch (const GenerateError&) {
      continue;
    }
    FixingSolution min_holes = solve_fixing_weighted(bay, 0, 1);
    CHECK(min_holes.objective == 0);
    ++rounds;
  }
}
