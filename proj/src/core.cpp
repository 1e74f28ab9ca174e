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

#include "upmp/core.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace upmp {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::north: return "north";
    case Direction::south: return "south";
    case Direction::west: return "west";
    case Direction::east: return "east";
  }
  return "?";
}

std::optional<Direction> direction_from_string(std::string_view name) {
  for (Direction d : kAllDirections) {
    if (name == to_string(d)) return d;
  }
  if (name == "N" || name == "n") return Direction::north;
  if (name == "S" || name == "s") return Direction::south;
  if (name == "W" || name == "w") return Direction::west;
  if (name == "E" || name == "e") return Direction::east;
  return std::nullopt;
}

int AccessVariant::direction_count() const { return std::popcount(mask); }

Direction AccessVariant::first_direction() const {
  for (Direction d : kAllDirections) {
    if (allows(d)) return d;
  }
  throw Error("access variant with no direction");
}

namespace {
constexpr std::uint8_t bit(Direction d) {
  return static_cast<std::uint8_t>(1u << static_cast<int>(d));
}
}  // namespace

AccessVariant AccessVariant::single() { return {bit(Direction::north)}; }
AccessVariant AccessVariant::corner() {
  return {static_cast<std::uint8_t>(bit(Direction::north) | bit(Direction::west))};
}
AccessVariant AccessVariant::opposite() {
  return {static_cast<std::uint8_t>(bit(Direction::north) | bit(Direction::south))};
}
AccessVariant AccessVariant::three() {
  return {static_cast<std::uint8_t>(bit(Direction::north) | bit(Direction::south) |
                                    bit(Direction::west))};
}
AccessVariant AccessVariant::four() { return {0b1111}; }

std::optional<AccessVariant> AccessVariant::parse(std::string_view text) {
  if (text == "single") return single();
  if (text == "corner") return corner();
  if (text == "opposite") return opposite();
  if (text == "three") return three();
  if (text == "four") return four();
  std::uint8_t mask = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (part.empty()) return std::nullopt;
    auto d = direction_from_string(part);
    if (!d) return std::nullopt;
    mask |= bit(*d);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (mask == 0) return std::nullopt;
  return AccessVariant{mask};
}

std::string AccessVariant::name() const {
  if (*this == single()) return "single";
  if (*this == corner()) return "corner";
  if (*this == opposite()) return "opposite";
  if (*this == three()) return "three";
  if (*this == four()) return "four";
  std::string out;
  for (Direction d : kAllDirections) {
    if (!allows(d)) continue;
    if (!out.empty()) out += ',';
    out += to_string(d);
  }
  return out;
}

Bay::Bay(Dims dims, AccessVariant variant, int groups)
    : dims_(dims), variant_(variant), groups_(groups) {
  if (dims.columns < 1 || dims.rows < 1 || dims.tiers < 1)
    throw ValidationError("dimensions must be positive");
  if (groups < 1 || groups > 200) throw ValidationError("group count out of range");
  if (variant.mask == 0 || variant.mask > 0b1111)
    throw ValidationError("empty access variant");
  cells_.assign(static_cast<std::size_t>(dims.capacity()), 0);
}

Cell Bay::cell_coords(int index) const {
  int t = index % dims_.tiers;
  int rest = index / dims_.tiers;
  int j = rest % dims_.rows;
  int i = rest / dims_.rows;
  return Cell{i + 1, j + 1, t + 1};
}

int Bay::load_count() const {
  return static_cast<int>(std::count_if(cells_.begin(), cells_.end(),
                                        [](std::uint8_t g) { return g != 0; }));
}

int Bay::stack_height(int i, int j) const {
  int h = 0;
  for (int t = 1; t <= dims_.tiers; ++t) {
    if (at(i, j, t) != 0) ++h;
  }
  return h;
}

bool Bay::in_range(const Cell& c) const {
  return c.i >= 1 && c.i <= dims_.columns && c.j >= 1 && c.j <= dims_.rows &&
         c.t >= 1 && c.t <= dims_.tiers;
}

bool Bay::stack_on_boundary(int i, int j, Direction d) const {
  switch (d) {
    case Direction::north: return j == 1;
    case Direction::south: return j == dims_.rows;
    case Direction::west: return i == 1;
    case Direction::east: return i == dims_.columns;
  }
  return false;
}

std::optional<std::string> validate_bay(const Bay& bay) {
  const Dims& d = bay.dims();
  for (int i = 1; i <= d.columns; ++i) {
    for (int j = 1; j <= d.rows; ++j) {
      for (int t = 1; t <= d.tiers; ++t) {
        int g = bay.at(i, j, t);
        if (g > bay.groups()) {
          std::ostringstream os;
          os << "group range: cell (" << i << "," << j << "," << t << ") holds group "
             << g << " but the instance allows 1.." << bay.groups();
          return os.str();
        }
        if (t > 1 && g != 0 && bay.at(i, j, t - 1) == 0) {
          std::ostringstream os;
          os << "gravity: cell (" << i << "," << j << "," << t
             << ") is occupied above the empty cell (" << i << "," << j << "," << t - 1
             << ")";
          return os.str();
        }
      }
    }
  }
  return std::nullopt;
}

Bay apply_move(const Bay& bay, const Move& move) {
  if (!bay.in_range(move.from) || !bay.in_range(move.to))
    throw IllegalMoveError("move coordinates out of range");
  if (move.from == move.to) throw IllegalMoveError("move to the same slot");
  std::uint8_t g = bay.at(move.from.i, move.from.j, move.from.t);
  if (g == 0) throw IllegalMoveError("source slot is empty");
  if (move.group != 0 && move.group != g)
    throw IllegalMoveError("recorded group does not match the source slot");
  if (bay.at(move.to.i, move.to.j, move.to.t) != 0)
    throw IllegalMoveError("destination slot is occupied");
  Bay next = bay;
  next.set(move.from.i, move.from.j, move.from.t, 0);
  next.set(move.to.i, move.to.j, move.to.t, g);
  // Local gravity at both stacks; lane rules are checked by the caller.
  if (move.from.t < bay.dims().tiers &&
      next.at(move.from.i, move.from.j, move.from.t + 1) != 0)
    throw IllegalMoveError("pickup leaves a load floating above the source");
  if (move.to.t > 1 && next.at(move.to.i, move.to.j, move.to.t - 1) == 0)
    throw IllegalMoveError("placement floats above an empty slot");
  return next;
}

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t k = 0; k < size; ++k) {
    h ^= p[k];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t state_hash(const std::vector<std::uint8_t>& cells) {
  return fnv1a64(cells.data(), cells.size());
}

}  // namespace upmp
