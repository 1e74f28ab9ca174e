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

#ifndef UPMP_CORE_HPP_
#define UPMP_CORE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace upmp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File system failure (open, read, write).
struct IoError : Error {
  using Error::Error;
};

// Malformed or inconsistent input file.
struct ParseError : Error {
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

// Structurally invalid bay (gravity, group range, dimensions).
struct ValidationError : Error {
  using Error::Error;
};

// Inconsistent direction assignment (overlapping or floating lanes).
struct FixingError : Error {
  using Error::Error;
};

// A move that violates the lane access rules; indicates a solver bug.
struct IllegalMoveError : Error {
  using Error::Error;
};

enum class Direction : std::uint8_t { north = 0, south = 1, west = 2, east = 3 };

inline constexpr std::array<Direction, 4> kAllDirections = {
    Direction::north, Direction::south, Direction::west, Direction::east};

const char* to_string(Direction d);
std::optional<Direction> direction_from_string(std::string_view name);

// The subset of cardinal directions from which a bay may be accessed.
struct AccessVariant {
  std::uint8_t mask = 1;  // bit i set <=> kAllDirections[i] allowed

  bool allows(Direction d) const { return (mask >> static_cast<int>(d)) & 1; }
  int direction_count() const;
  bool single_direction() const { return direction_count() == 1; }
  Direction first_direction() const;

  static AccessVariant single();    // north
  static AccessVariant corner();    // north + west
  static AccessVariant opposite();  // north + south
  static AccessVariant three();     // north + south + west
  static AccessVariant four();      // all

  // Accepts the five variant names, a single direction name, or a
  // comma-separated direction list ("north,east").
  static std::optional<AccessVariant> parse(std::string_view text);
  std::string name() const;

  bool operator==(const AccessVariant&) const = default;
};

struct Dims {
  int columns = 1;  // I
  int rows = 1;     // J, depth away from the north boundary
  int tiers = 1;    // T

  int capacity() const { return columns * rows * tiers; }
  int stack_count() const { return columns * rows; }
  bool operator==(const Dims&) const = default;
};

// 1-based grid coordinates of a storage slot.
struct Cell {
  int i = 0;
  int j = 0;
  int t = 0;
  bool operator==(const Cell&) const = default;
};

// One unit-load relocation. The group is recorded for audit only; legality
// and effect derive from the coordinates.
struct Move {
  Cell from;
  Cell to;
  std::uint8_t group = 0;
  bool operator==(const Move&) const = default;
};

// A 3-D grid of priority groups, 0 marking an empty slot. Cells are stored
// in a flat dense array indexed row-major by (i, j, t).
class Bay {
 public:
  Bay() : Bay(Dims{}, AccessVariant::single(), 5) {}
  Bay(Dims dims, AccessVariant variant, int groups);

  const Dims& dims() const { return dims_; }
  AccessVariant variant() const { return variant_; }
  int groups() const { return groups_; }

  int cell_index(int i, int j, int t) const {
    return ((i - 1) * dims_.rows + (j - 1)) * dims_.tiers + (t - 1);
  }
  int stack_index(int i, int j) const { return (i - 1) * dims_.rows + (j - 1); }
  Cell cell_coords(int index) const;

  std::uint8_t at(int i, int j, int t) const { return cells_[cell_index(i, j, t)]; }
  void set(int i, int j, int t, std::uint8_t group) { cells_[cell_index(i, j, t)] = group; }

  const std::vector<std::uint8_t>& cells() const { return cells_; }
  std::vector<std::uint8_t>& mutable_cells() { return cells_; }

  int load_count() const;
  int stack_height(int i, int j) const;
  bool in_range(const Cell& c) const;
  bool stack_on_boundary(int i, int j, Direction d) const;

  bool operator==(const Bay& other) const = default;

 private:
  Dims dims_;
  AccessVariant variant_;
  int groups_;
  std::vector<std::uint8_t> cells_;
};

// Returns a description of the first violated structural invariant
// (group range, then gravity, scanning cells in index order), or nullopt.
std::optional<std::string> validate_bay(const Bay& bay);

// Returns the bay after executing the move. Structural preconditions are
// checked (occupied source, empty destination, matching group, gravity of
// the result); lane-level legality is the caller's responsibility.
Bay apply_move(const Bay& bay, const Move& move);

// Canonical state key: the cell array itself disambiguates, the hash is for
// table placement only.
std::uint64_t state_hash(const std::vector<std::uint8_t>& cells);

std::uint64_t fnv1a64(const void* data, std::size_t size,
                      std::uint64_t seed = 14695981039346656037ull);

}  // namespace upmp

#endif  // UPMP_CORE_HPP_
