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

#include "upmp/fixing.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace upmp {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

std::vector<std::pair<int, int>> line_stacks(const Dims& d, Direction dir, int line) {
  std::vector<std::pair<int, int>> out;
  switch (dir) {
    case Direction::north:
      for (int j = 1; j <= d.rows; ++j) out.emplace_back(line, j);
      break;
    case Direction::south:
      for (int j = d.rows; j >= 1; --j) out.emplace_back(line, j);
      break;
    case Direction::west:
      for (int i = 1; i <= d.columns; ++i) out.emplace_back(i, line);
      break;
    case Direction::east:
      for (int i = d.columns; i >= 1; --i) out.emplace_back(i, line);
      break;
  }
  return out;
}

struct LanePrefix {
  int cost = 0;    // weighted blocking + holes of the prefix as one lane
  int usable = 0;  // placement headroom: slots in front of the first load
};

// Prefix costs of every boundary-anchored lane. Lanes stop before the first
// stack that some allowed direction reaches directly; such stacks are always
// served from their own boundary, which is never more expensive.
struct Model {
  const Bay& bay;
  int wb, wh;
  int I, J, T;
  std::vector<char> accessible;

  // prefix[dir][line-1][len-1], len in 1..max_len[dir][line-1]
  std::array<std::vector<std::vector<LanePrefix>>, 4> prefix;
  std::array<std::vector<int>, 4> max_len;

  Model(const Bay& b, int blocking_weight, int hole_weight)
      : bay(b), wb(blocking_weight), wh(hole_weight) {
    I = bay.dims().columns;
    J = bay.dims().rows;
    T = bay.dims().tiers;
    accessible.assign(static_cast<std::size_t>(bay.dims().stack_count()), 0);
    for (int i = 1; i <= I; ++i) {
      for (int j = 1; j <= J; ++j) {
        for (Direction d : kAllDirections) {
          if (bay.variant().allows(d) && bay.stack_on_boundary(i, j, d))
            accessible[bay.stack_index(i, j)] = 1;
        }
      }
    }
    for (Direction d : kAllDirections) build_direction(d);
  }

  int line_count(Direction d) const {
    return (d == Direction::north || d == Direction::south) ? I : J;
  }

  void build_direction(Direction d) {
    int idx = static_cast<int>(d);
    int lines = line_count(d);
    max_len[idx].assign(lines, 0);
    prefix[idx].assign(lines, {});
    if (!bay.variant().allows(d)) return;
    for (int line = 1; line <= lines; ++line) {
      auto stacks = line_stacks(bay.dims(), d, line);
      int cap = 1;
      while (cap < static_cast<int>(stacks.size()) &&
             !accessible[bay.stack_index(stacks[cap].first, stacks[cap].second)])
        ++cap;
      max_len[idx][line - 1] = cap;
      std::vector<LanePrefix>& pref = prefix[idx][line - 1];
      pref.resize(cap);
      std::vector<int> slots;
      for (int len = 1; len <= cap; ++len) {
        for (int t = T; t >= 1; --t)
          slots.push_back(bay.cell_index(stacks[len - 1].first, stacks[len - 1].second, t));
        LanePrefix lp;
        lp.cost = wb * lane_blocking(bay.cells(), slots) + wh * lane_holes(bay.cells(), slots);
        int first = -1;
        for (std::size_t p = 0; p < slots.size(); ++p) {
          if (bay.cells()[slots[p]] != 0) {
            first = static_cast<int>(p);
            break;
          }
        }
        lp.usable = first < 0 ? static_cast<int>(slots.size()) : first;
        pref[len - 1] = lp;
      }
    }
  }

  const LanePrefix* lane(Direction d, int line, int len) const {
    if (len <= 0) return nullptr;
    return &prefix[static_cast<int>(d)][line - 1][len - 1];
  }
  int cap(Direction d, int line) const {
    return bay.variant().allows(d) ? max_len[static_cast<int>(d)][line - 1] : 0;
  }
};

struct ColChoice {
  int n_len = 0, s_len = 0;
  int cost = 0, usable = 0;
};

struct Value {
  long long cost = kInf;
  long long usable = -1;
  bool valid() const { return cost < kInf; }
  bool better_than(const Value& other) const {
    if (cost != other.cost) return cost < other.cost;
    return usable > other.usable;
  }
};

// Optimal direction assignment as a layered search over columns. The future
// of a partial assignment depends only on the next column and one of three
// phases per row (before, inside, or after that row's column-covered run),
// so results are memoized on that state. West/east lane extents become known
// exactly at the phase transitions and their costs are committed there.
struct AssignmentDP {
  const Model& m;
  bool zero_only;  // decision mode: only zero-cost assignments count

  std::vector<std::vector<ColChoice>> col_choices;
  std::vector<Value> row_split;   // per row: best west/east split of the whole row
  std::vector<int> row_split_w;   // chosen west length of that split

  struct Entry {
    Value value;
    int choice = -1;
  };
  std::unordered_map<std::uint64_t, Entry> memo;

  AssignmentDP(const Model& model, bool zero_cost_only)
      : m(model), zero_only(zero_cost_only) {
    col_choices.resize(m.I);
    for (int i = 1; i <= m.I; ++i) {
      int capn = m.cap(Direction::north, i);
      int caps = m.cap(Direction::south, i);
      for (int n = 0; n <= capn; ++n) {
        for (int s = 0; s <= caps; ++s) {
          if (n + s > m.J) continue;
          ColChoice c;
          c.n_len = n;
          c.s_len = s;
          if (const LanePrefix* lp = m.lane(Direction::north, i, n)) {
            c.cost += lp->cost;
            c.usable += lp->usable;
          }
          if (const LanePrefix* lp = m.lane(Direction::south, i, s)) {
            c.cost += lp->cost;
            c.usable += lp->usable;
          }
          if (zero_only && c.cost > 0) continue;
          col_choices[i - 1].push_back(c);
        }
      }
      std::sort(col_choices[i - 1].begin(), col_choices[i - 1].end(),
                [](const ColChoice& a, const ColChoice& b) {
                  if (a.cost != b.cost) return a.cost < b.cost;
                  if (a.usable != b.usable) return a.usable > b.usable;
                  if (a.n_len != b.n_len) return a.n_len > b.n_len;
                  return a.s_len > b.s_len;
                });
    }

    row_split.assign(m.J, Value{});
    row_split_w.assign(m.J, 0);
    for (int j = 1; j <= m.J; ++j) {
      Value best;
      for (int w = m.I; w >= 0; --w) {
        int e = m.I - w;
        if (w > 0 && w > m.cap(Direction::west, j)) continue;
        if (e > 0 && e > m.cap(Direction::east, j)) continue;
        Value v;
        v.cost = 0;
        v.usable = 0;
        if (const LanePrefix* lp = m.lane(Direction::west, j, w)) {
          v.cost += lp->cost;
          v.usable += lp->usable;
        }
        if (const LanePrefix* lp = m.lane(Direction::east, j, e)) {
          v.cost += lp->cost;
          v.usable += lp->usable;
        }
        if (zero_only && v.cost > 0) continue;
        if (v.better_than(best)) {
          best = v;
          row_split_w[j - 1] = w;
        }
      }
      row_split[j - 1] = best;
    }
  }

  static int phase_of(std::uint64_t code, int j) { return (code >> (2 * (j - 1))) & 3; }
  static std::uint64_t with_phase(std::uint64_t code, int j, int ph) {
    code &= ~(3ull << (2 * (j - 1)));
    return code | (static_cast<std::uint64_t>(ph) << (2 * (j - 1)));
  }

  // Applies one column choice to the row phases. Returns false when a row
  // can no longer be covered legally.
  bool advance(int i, std::uint64_t code, const ColChoice& c, std::uint64_t& next,
               long long& add_cost, long long& add_usable) const {
    next = code;
    add_cost = c.cost;
    add_usable = c.usable;
    for (int j = 1; j <= m.J; ++j) {
      bool covered = j <= c.n_len || j > m.J - c.s_len;
      int ph = phase_of(code, j);
      if (covered) {
        if (ph == 2) return false;
        if (ph == 0) {
          int w = i - 1;
          if (w > 0) {
            if (w > m.cap(Direction::west, j)) return false;
            const LanePrefix* lp = m.lane(Direction::west, j, w);
            if (zero_only && lp->cost > 0) return false;
            add_cost += lp->cost;
            add_usable += lp->usable;
          }
          next = with_phase(next, j, 1);
        }
      } else {
        if (ph == 1) {
          int e = m.I - i + 1;
          if (e > m.cap(Direction::east, j)) return false;
          const LanePrefix* lp = m.lane(Direction::east, j, e);
          if (zero_only && lp->cost > 0) return false;
          add_cost += lp->cost;
          add_usable += lp->usable;
          next = with_phase(next, j, 2);
        } else if (ph == 0) {
          // Still open: either a west lane spanning 1..i or an east lane
          // spanning i..I must remain possible.
          if (i > m.cap(Direction::west, j) && m.I - i + 1 > m.cap(Direction::east, j))
            return false;
        }
      }
    }
    return true;
  }

  Value leaf(std::uint64_t code) const {
    Value total;
    total.cost = 0;
    total.usable = 0;
    for (int j = 1; j <= m.J; ++j) {
      if (phase_of(code, j) != 0) continue;
      const Value& split = row_split[j - 1];
      if (!split.valid()) return Value{};
      total.cost += split.cost;
      total.usable += split.usable;
    }
    return total;
  }

  Value solve(int i, std::uint64_t code) {
    if (i > m.I) return leaf(code);
    std::uint64_t key = code | (static_cast<std::uint64_t>(i) << 40);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second.value;

    Entry entry;
    for (std::size_t k = 0; k < col_choices[i - 1].size(); ++k) {
      std::uint64_t next;
      long long add_cost, add_usable;
      if (!advance(i, code, col_choices[i - 1][k], next, add_cost, add_usable)) continue;
      Value sub = solve(i + 1, next);
      if (!sub.valid()) continue;
      Value total{sub.cost + add_cost, sub.usable + add_usable};
      if (total.better_than(entry.value)) {
        entry.value = total;
        entry.choice = static_cast<int>(k);
        if (zero_only && entry.value.cost == 0) break;  // any witness will do
      }
    }
    memo.emplace(key, entry);
    return entry.value;
  }

  // Walks the memoized choices again and emits lane extents.
  void reconstruct(std::vector<int>& n, std::vector<int>& s, std::vector<int>& w,
                   std::vector<int>& e) {
    n.assign(m.I, 0);
    s.assign(m.I, 0);
    w.assign(m.J, 0);
    e.assign(m.J, 0);
    std::uint64_t code = 0;
    for (int i = 1; i <= m.I; ++i) {
      std::uint64_t key = code | (static_cast<std::uint64_t>(i) << 40);
      const Entry& entry = memo.at(key);
      if (entry.choice < 0) throw FixingError("internal: reconstruction hit a dead state");
      const ColChoice& c = col_choices[i - 1][entry.choice];
      n[i - 1] = c.n_len;
      s[i - 1] = c.s_len;
      for (int j = 1; j <= m.J; ++j) {
        bool covered = j <= c.n_len || j > m.J - c.s_len;
        int ph = phase_of(code, j);
        if (covered && ph == 0) {
          w[j - 1] = i - 1;
          code = with_phase(code, j, 1);
        } else if (!covered && ph == 1) {
          e[j - 1] = m.I - i + 1;
          code = with_phase(code, j, 2);
        }
      }
    }
    for (int j = 1; j <= m.J; ++j) {
      if (phase_of(code, j) == 0) {
        w[j - 1] = row_split_w[j - 1];
        e[j - 1] = m.I - row_split_w[j - 1];
      }
    }
  }
};

Bay transposed_bay(const Bay& bay) {
  std::uint8_t mask = 0;
  auto swap_dir = [](Direction d) {
    switch (d) {
      case Direction::north: return Direction::west;
      case Direction::south: return Direction::east;
      case Direction::west: return Direction::north;
      case Direction::east: return Direction::south;
    }
    return Direction::north;
  };
  for (Direction d : kAllDirections) {
    if (bay.variant().allows(d)) mask |= 1u << static_cast<int>(swap_dir(d));
  }
  Bay out(Dims{bay.dims().rows, bay.dims().columns, bay.dims().tiers}, AccessVariant{mask},
          bay.groups());
  for (int i = 1; i <= bay.dims().columns; ++i) {
    for (int j = 1; j <= bay.dims().rows; ++j) {
      for (int t = 1; t <= bay.dims().tiers; ++t) out.set(j, i, t, bay.at(i, j, t));
    }
  }
  return out;
}

Fixing transpose_fixing_back(const Bay& original, const Bay& transposed, const Fixing& fixing) {
  auto swap_dir = [](Direction d) {
    switch (d) {
      case Direction::north: return Direction::west;
      case Direction::south: return Direction::east;
      case Direction::west: return Direction::north;
      case Direction::east: return Direction::south;
    }
    return Direction::north;
  };
  Fixing out;
  out.stack_dir.assign(static_cast<std::size_t>(original.dims().stack_count()),
                       Direction::north);
  for (int i = 1; i <= original.dims().columns; ++i) {
    for (int j = 1; j <= original.dims().rows; ++j) {
      Direction d = fixing.stack_dir[transposed.stack_index(j, i)];
      out.stack_dir[original.stack_index(i, j)] = swap_dir(d);
    }
  }
  return out;
}

Fixing assignment_to_fixing(const Bay& bay, const std::vector<int>& n,
                            const std::vector<int>& s, const std::vector<int>& w,
                            const std::vector<int>& e) {
  int I = bay.dims().columns, J = bay.dims().rows;
  Fixing fixing;
  fixing.stack_dir.assign(static_cast<std::size_t>(bay.dims().stack_count()),
                          Direction::north);
  std::vector<char> assigned(fixing.stack_dir.size(), 0);
  auto claim = [&](int i, int j, Direction d) {
    int idx = bay.stack_index(i, j);
    if (assigned[idx]++) throw FixingError("internal: stack claimed twice");
    fixing.stack_dir[idx] = d;
  };
  for (int i = 1; i <= I; ++i) {
    for (int j = 1; j <= n[i - 1]; ++j) claim(i, j, Direction::north);
    for (int j = J - s[i - 1] + 1; j <= J; ++j) claim(i, j, Direction::south);
  }
  for (int j = 1; j <= J; ++j) {
    for (int i = 1; i <= w[j - 1]; ++i) claim(i, j, Direction::west);
    for (int i = I - e[j - 1] + 1; i <= I; ++i) claim(i, j, Direction::east);
  }
  for (char a : assigned) {
    if (!a) throw FixingError("internal: stack left unassigned");
  }
  return fixing;
}

// Any full-line partition from one allowed direction: the canonical answer
// for bays without loads, where every assignment costs zero.
Fixing canonical_empty_fixing(const Bay& bay) {
  Direction d = bay.variant().first_direction();
  Fixing fixing;
  fixing.stack_dir.assign(static_cast<std::size_t>(bay.dims().stack_count()), d);
  return fixing;
}

}  // namespace

std::vector<NetworkEdge> build_network(const Bay& bay) {
  Model m(bay, 1, 1);
  std::vector<NetworkEdge> edges;
  auto stack_name = [&](int i, int j) {
    return "S" + std::to_string((i - 1) * bay.dims().rows + j);
  };
  const char* dir_name[4] = {"N", "S", "W", "E"};
  for (Direction d : kAllDirections) {
    if (bay.variant().allows(d)) edges.push_back({"o", dir_name[static_cast<int>(d)], 0});
  }
  for (Direction d : kAllDirections) {
    if (!bay.variant().allows(d)) continue;
    for (int line = 1; line <= m.line_count(d); ++line) {
      auto stacks = line_stacks(bay.dims(), d, line);
      int cap = m.cap(d, line);
      for (int len = 1; len <= cap; ++len) {
        auto [i, j] = stacks[len - 1];
        int cost = m.lane(d, line, len)->cost;
        if (len == 1) {
          edges.push_back({dir_name[static_cast<int>(d)], stack_name(i, j), cost});
        } else {
          auto [pi, pj] = stacks[len - 2];
          cost -= m.lane(d, line, len - 1)->cost;
          edges.push_back({stack_name(pi, pj), stack_name(i, j), cost});
        }
      }
    }
  }
  return edges;
}

std::string dump_network(const Bay& bay) {
  std::ostringstream os;
  for (const auto& e : build_network(bay)) os << e.from << ' ' << e.to << ' ' << e.cost << '\n';
  return os.str();
}

FixingSolution solve_fixing_weighted(const Bay& bay, int blocking_weight, int hole_weight) {
  FixingSolution solution;
  if (bay.load_count() == 0) {
    solution.fixing = canonical_empty_fixing(bay);
    solution.lanes = build_lanes(bay, solution.fixing);
    solution.objective = 0;
    return solution;
  }
  if (bay.dims().rows > bay.dims().columns) {
    // Keep the memo state on the smaller axis.
    Bay flipped = transposed_bay(bay);
    FixingSolution t = solve_fixing_weighted(flipped, blocking_weight, hole_weight);
    solution.fixing = transpose_fixing_back(bay, flipped, t.fixing);
    solution.lanes = build_lanes(bay, solution.fixing);
    solution.objective = t.objective;
    return solution;
  }
  if (bay.dims().rows > 20) throw FixingError("bay rows beyond supported assignment size");

  Model m(bay, blocking_weight, hole_weight);
  AssignmentDP dp(m, false);
  Value best = dp.solve(1, 0);
  if (!best.valid()) throw FixingError("no direction assignment reaches every stack");
  std::vector<int> n, s, w, e;
  dp.reconstruct(n, s, w, e);
  solution.fixing = assignment_to_fixing(bay, n, s, w, e);
  solution.lanes = build_lanes(bay, solution.fixing);
  solution.objective = static_cast<int>(best.cost);
  return solution;
}

FixingSolution solve_fixing(const Bay& bay) { return solve_fixing_weighted(bay, 1, 1); }

bool hole_free_fixing_exists(const Bay& bay) {
  if (bay.load_count() == 0) return true;
  if (bay.dims().rows > bay.dims().columns) return hole_free_fixing_exists(transposed_bay(bay));
  if (bay.dims().rows > 20) throw FixingError("bay rows beyond supported assignment size");
  Model m(bay, 0, 1);
  AssignmentDP dp(m, true);
  Value best = dp.solve(1, 0);
  return best.valid() && best.cost == 0;
}

PreparedLanes prepare_lanes(const Bay& bay) {
  PreparedLanes prepared;
  if (bay.variant().single_direction()) {
    prepared.fixing = forced_fixing(bay);
    prepared.lanes = build_lanes(bay, prepared.fixing);
    prepared.fixed_by_variant = true;
    return prepared;
  }
  FixingSolution solution = solve_fixing(bay);
  prepared.fixing = std::move(solution.fixing);
  prepared.lanes = std::move(solution.lanes);
  prepared.objective = solution.objective;
  return prepared;
}

}  // namespace upmp
