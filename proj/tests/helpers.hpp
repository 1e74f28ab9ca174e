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

#ifndef UPMP_TESTS_HELPERS_HPP_
#define UPMP_TESTS_HELPERS_HPP_

#include <vector>

#include "upmp/core.hpp"
#include "upmp/instance.hpp"

namespace testutil {

// Bay for a single-direction (north) layout given per-column slot sequences
// in access order: nearest stack's top tier first, then down, then deeper
// stacks. 0 marks an empty slot.
inline upmp::Bay bay_from_columns(int rows, int tiers,
                                  const std::vector<std::vector<int>>& columns,
                                  int groups = 5,
                                  upmp::AccessVariant variant = upmp::AccessVariant::single()) {
  upmp::Dims dims{static_cast<int>(columns.size()), rows, tiers};
  upmp::Bay bay(dims, variant, groups);
  for (int i = 1; i <= dims.columns; ++i) {
    const auto& seq = columns[i - 1];
    for (int j = 1; j <= rows; ++j) {
      for (int t = tiers; t >= 1; --t) {
        int k = (j - 1) * tiers + (tiers - t);
        bay.set(i, j, t, static_cast<std::uint8_t>(seq[k]));
      }
    }
  }
  return bay;
}

// Four lanes of four slots with six blocking loads; the demand/supply table
// has two slot groups short at the top group.
inline upmp::Bay six_blocking_bay() {
  return bay_from_columns(2, 2,
                          {{0, 0, 5, 4}, {1, 3, 4, 1}, {0, 5, 4, 5}, {0, 3, 1, 2}});
}

// Three lanes of four slots; sortable in exactly two moves.
inline upmp::Bay two_move_bay() {
  return bay_from_columns(2, 2, {{0, 0, 3, 1}, {0, 0, 1, 4}, {0, 0, 2, 5}});
}

// Three blocking loads, exactly four successor moves, one of them reduces
// the bound by a full move.
inline upmp::Bay branching_bay() {
  return bay_from_columns(2, 2, {{0, 5, 4, 3}, {0, 0, 4, 1}, {0, 0, 0, 0}});
}

// One full lane with its blocking load walled in: no legal move exists.
inline upmp::Bay stuck_bay() { return bay_from_columns(2, 1, {{2, 1}}); }

// 3x3 stacks of two tiers, all four directions. Stack contents as
// (top, bottom) pairs keyed by (i, j).
inline upmp::Bay four_direction_bay() {
  upmp::Bay bay(upmp::Dims{3, 3, 2}, upmp::AccessVariant::four(), 5);
  const int tuples[3][3][2] = {
      // [i-1][j-1] = {top, bottom}
      {{0, 2}, {3, 2}, {0, 2}},
      {{2, 3}, {3, 1}, {1, 4}},
      {{0, 0}, {4, 2}, {0, 2}},
  };
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      bay.set(i, j, 2, static_cast<std::uint8_t>(tuples[i - 1][j - 1][0]));
      bay.set(i, j, 1, static_cast<std::uint8_t>(tuples[i - 1][j - 1][1]));
    }
  }
  return bay;
}

// Random bay that respects gravity only (for state-key and fixing tests):
// every stack gets a random height and random groups bottom-up.
inline upmp::Bay random_gravity_bay(upmp::Rng& rng, upmp::Dims dims, int groups,
                                    upmp::AccessVariant variant) {
  upmp::Bay bay(dims, variant, groups);
  for (int i = 1; i <= dims.columns; ++i) {
    for (int j = 1; j <= dims.rows; ++j) {
      int height = static_cast<int>(rng.below(static_cast<std::uint64_t>(dims.tiers) + 1));
      for (int t = 1; t <= height; ++t)
        bay.set(i, j, t, static_cast<std::uint8_t>(1 + rng.below(groups)));
    }
  }
  return bay;
}

}  // namespace testutil

#endif  // UPMP_TESTS_HELPERS_HPP_
