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

#include "upmp/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "upmp/fixing.hpp"
#include "upmp/lanes.hpp"

namespace upmp {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

long long parse_int(const std::string& tok, int line_no) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size()) throw ParseError(line_no, "trailing characters in '" + tok + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& tok, int line_no) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected an unsigned integer, got '" + tok + "'");
  }
  if (pos != tok.size() || tok[0] == '-')
    throw ParseError(line_no, "expected an unsigned integer, got '" + tok + "'");
  return v;
}

std::string serialize_body(const Instance& inst, bool with_provenance) {
  std::ostringstream os;
  const Bay& bay = inst.bay;
  os << "upmp-instance " << kInstanceSchemaVersion << '\n';
  os << "dims " << bay.dims().columns << ' ' << bay.dims().rows << ' ' << bay.dims().tiers
     << '\n';
  os << "variant " << bay.variant().name() << '\n';
  os << "groups " << bay.groups() << '\n';
  if (with_provenance) {
    if (inst.seed) os << "seed " << *inst.seed << '\n';
    if (!inst.generator.empty()) os << "generator " << inst.generator << '\n';
  }
  os << "cells " << bay.load_count() << '\n';
  for (int i = 1; i <= bay.dims().columns; ++i) {
    for (int j = 1; j <= bay.dims().rows; ++j) {
      for (int t = 1; t <= bay.dims().tiers; ++t) {
        int g = bay.at(i, j, t);
        if (g != 0) os << i << ' ' << j << ' ' << t << ' ' << g << '\n';
      }
    }
  }
  os << "end\n";
  return os.str();
}

}  // namespace

std::string serialize_instance(const Instance& inst) { return serialize_body(inst, true); }

Instance parse_instance(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> std::vector<std::string> {
    while (std::getline(is, line)) {
      ++line_no;
      auto toks = split_ws(line);
      if (!toks.empty()) return toks;
    }
    throw ParseError(line_no, "unexpected end of file");
  };

  auto header = next_line();
  if (header.size() != 2 || header[0] != "upmp-instance")
    throw ParseError(line_no, "expected 'upmp-instance <version>'");
  if (parse_int(header[1], line_no) != kInstanceSchemaVersion)
    throw ParseError(line_no, "unsupported schema version " + header[1]);

  auto dims_line = next_line();
  if (dims_line.size() != 4 || dims_line[0] != "dims")
    throw ParseError(line_no, "expected 'dims I J T'");
  Dims dims{static_cast<int>(parse_int(dims_line[1], line_no)),
            static_cast<int>(parse_int(dims_line[2], line_no)),
            static_cast<int>(parse_int(dims_line[3], line_no))};
  if (dims.columns < 1 || dims.rows < 1 || dims.tiers < 1)
    throw ParseError(line_no, "dimensions must be positive");

  auto variant_line = next_line();
  if (variant_line.size() != 2 || variant_line[0] != "variant")
    throw ParseError(line_no, "expected 'variant <name>'");
  auto variant = AccessVariant::parse(variant_line[1]);
  if (!variant) throw ParseError(line_no, "unknown access variant '" + variant_line[1] + "'");

  auto groups_line = next_line();
  if (groups_line.size() != 2 || groups_line[0] != "groups")
    throw ParseError(line_no, "expected 'groups G'");
  int groups = static_cast<int>(parse_int(groups_line[1], line_no));
  if (groups < 1 || groups > 200) throw ParseError(line_no, "groups out of range");

  Instance inst;
  inst.bay = Bay(dims, *variant, groups);

  auto toks = next_line();
  if (toks[0] == "seed") {
    if (toks.size() != 2) throw ParseError(line_no, "expected 'seed <value>'");
    inst.seed = parse_uint(toks[1], line_no);
    toks = next_line();
  }
  if (toks[0] == "generator") {
    std::string g;
    for (std::size_t k = 1; k < toks.size(); ++k) {
      if (k > 1) g += ' ';
      g += toks[k];
    }
    inst.generator = g;
    toks = next_line();
  }

  if (toks.size() != 2 || toks[0] != "cells")
    throw ParseError(line_no, "expected 'cells <count>'");
  long long count = parse_int(toks[1], line_no);
  if (count < 0 || count > dims.capacity())
    throw ParseError(line_no, "cell count out of range");

  for (long long k = 0; k < count; ++k) {
    auto cell = next_line();
    if (cell.size() != 4) throw ParseError(line_no, "expected 'i j t g'");
    int i = static_cast<int>(parse_int(cell[0], line_no));
    int j = static_cast<int>(parse_int(cell[1], line_no));
    int t = static_cast<int>(parse_int(cell[2], line_no));
    int g = static_cast<int>(parse_int(cell[3], line_no));
    if (!inst.bay.in_range(Cell{i, j, t}))
      throw ParseError(line_no, "cell coordinates out of range");
    if (g < 1 || g > groups) throw ParseError(line_no, "cell group out of range");
    if (inst.bay.at(i, j, t) != 0) throw ParseError(line_no, "duplicate cell");
    inst.bay.set(i, j, t, static_cast<std::uint8_t>(g));
  }

  auto end_line = next_line();
  if (end_line.size() != 1 || end_line[0] != "end") throw ParseError(line_no, "expected 'end'");

  if (auto violation = validate_bay(inst.bay))
    throw ValidationError("invalid instance: " + *violation);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << serialize_instance(inst);
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::uint64_t instance_hash(const Instance& inst) {
  // Content only: two bays with equal cells hash alike whatever their
  // provenance lines say.
  std::string body = serialize_body(inst, false);
  return fnv1a64(body.data(), body.size());
}

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound < 2) return 0;
  std::uint64_t limit = ~0ull - ~0ull % bound;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

int target_load_count(const Dims& dims, int fill_percent) {
  return static_cast<int>((static_cast<long long>(dims.capacity()) * fill_percent + 50) / 100);
}

Instance generate_instance(const GenParams& params, int index) {
  if (params.fill_percent < 1 || params.fill_percent > 100)
    throw Error("fill percentage must be in 1..100");
  if (index < 0) throw Error("instance index must be non-negative");
  Bay bay(params.dims, params.variant, params.groups);

  // Per-direction full lines; a load may go wherever some allowed direction
  // can place it right now, which keeps every line fillable without gaps.
  std::vector<VirtualLane> lines;
  for (Direction d : kAllDirections) {
    if (!params.variant.allows(d)) continue;
    bool vertical = d == Direction::north || d == Direction::south;
    int count = vertical ? params.dims.columns : params.dims.rows;
    for (int line = 1; line <= count; ++line) {
      VirtualLane lane;
      lane.dir = d;
      lane.line = line;
      for (int k = 0; k < (vertical ? params.dims.rows : params.dims.columns); ++k) {
        int i, j;
        switch (d) {
          case Direction::north: i = line; j = k + 1; break;
          case Direction::south: i = line; j = params.dims.rows - k; break;
          case Direction::west: i = k + 1; j = line; break;
          default: i = params.dims.columns - k; j = line; break;
        }
        lane.stacks.emplace_back(i, j);
        for (int t = params.dims.tiers; t >= 1; --t)
          lane.slots.push_back(bay.cell_index(i, j, t));
      }
      lines.push_back(std::move(lane));
    }
  }

  // Decorrelated per-instance stream: without the finalizer the streams of
  // consecutive indices would replay one another shifted by a single draw.
  std::uint64_t stream =
      mix64(params.seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(index) + 1));
  Rng rng(stream);
  const int target = target_load_count(params.dims, params.fill_percent);
  for (int placed = 0; placed < target; ++placed) {
    std::vector<int> candidates;
    for (const auto& lane : lines) {
      int slot = placement_slot(bay.cells(), lane);
      if (slot >= 0) candidates.push_back(lane.slots[slot]);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (params.variant.direction_count() > 1) {
      // Crossing directions can wall empty slots in behind loads; keep only
      // placements after which a hole-free direction assignment still exists.
      std::vector<int> safe;
      for (int cell : candidates) {
        bay.mutable_cells()[cell] = 1;  // occupancy alone decides
        if (hole_free_fixing_exists(bay)) safe.push_back(cell);
        bay.mutable_cells()[cell] = 0;
      }
      candidates = std::move(safe);
    }
    if (candidates.empty()) {
      std::ostringstream os;
      os << "no directly accessible slot left after " << placed << " of " << target
         << " loads";
      throw GenerateError(os.str(), placed);
    }
    int cell = candidates[rng.below(candidates.size())];
    Cell c = bay.cell_coords(cell);
    bay.set(c.i, c.j, c.t, static_cast<std::uint8_t>(1 + rng.below(params.groups)));
  }

  Instance inst;
  inst.bay = std::move(bay);
  inst.seed = stream;
  inst.generator = std::string(kGeneratorName) + " " + std::to_string(kInstanceSchemaVersion);
  return inst;
}

std::vector<Instance> generate_batch(const GenParams& params) {
  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(params.count));
  for (int k = 0; k < params.count; ++k) out.push_back(generate_instance(params, k));
  return out;
}

std::string serialize_solution(const SolutionRecord& record) {
  std::ostringstream os;
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(record.instance_hash));
  os << "upmp-solution 1\n";
  os << "instance " << hex << '\n';
  os << "outcome " << record.outcome << '\n';
  os << "moves " << record.moves.size() << '\n';
  os << "nodes " << record.nodes << '\n';
  if (record.best_f) os << "best_f " << *record.best_f << '\n';
  char rt[32];
  std::snprintf(rt, sizeof rt, "%.3f", record.runtime_seconds);
  os << "runtime_s " << rt << '\n';
  for (const Move& mv : record.moves) {
    os << mv.from.i << ' ' << mv.from.j << ' ' << mv.from.t << " -> " << mv.to.i << ' '
       << mv.to.j << ' ' << mv.to.t << '\n';
  }
  os << "end\n";
  return os.str();
}

}  // namespace upmp
