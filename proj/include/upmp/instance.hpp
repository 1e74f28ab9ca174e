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

#ifndef UPMP_INSTANCE_HPP_
#define UPMP_INSTANCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "upmp/core.hpp"

namespace upmp {

inline constexpr int kInstanceSchemaVersion = 1;
inline constexpr const char* kGeneratorName = "upmp-gen";

// A bay plus provenance. Serialization is canonical: fixed field order,
// occupied cells sorted by (i, j, t), LF line endings.
struct Instance {
  Bay bay;
  std::optional<std::uint64_t> seed;
  std::string generator;  // free-form tool tag, may be empty

  bool operator==(const Instance&) const = default;
};

Instance parse_instance(const std::string& text);  // throws ParseError/ValidationError
std::string serialize_instance(const Instance& inst);

Instance load_instance(const std::string& path);   // adds Error on I/O failure
void save_instance(const Instance& inst, const std::string& path);

// FNV-1a over the canonical serialization.
std::uint64_t instance_hash(const Instance& inst);

struct GenParams {
  Dims dims;
  AccessVariant variant = AccessVariant::single();
  int fill_percent = 40;  // 0 < fill <= 100
  int groups = 5;
  std::uint64_t seed = 0;
  int count = 1;
};

// Thrown when no directly accessible slot remains before the fill target.
struct GenerateError : Error {
  GenerateError(const std::string& what, int placed) : Error(what), placed(placed) {}
  int placed;
};

// round(capacity * fill / 100), half up.
int target_load_count(const Dims& dims, int fill_percent);

// Deterministic in (params, index): loads go one by one to a slot drawn
// uniformly from the placement slots currently reachable from some allowed
// direction, groups drawn uniformly from 1..G.
Instance generate_instance(const GenParams& params, int index);
std::vector<Instance> generate_batch(const GenParams& params);

// Small deterministic generator (splitmix64 stream) so outputs are stable
// across platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound), bound >= 1, via rejection sampling.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Canonical text for a finished run; runtime_seconds is informational and
// excluded from determinism comparisons.
struct SolutionRecord {
  std::uint64_t instance_hash = 0;
  std::string outcome;  // solved | infeasible | timeout
  std::vector<Move> moves;
  std::uint64_t nodes = 0;
  double runtime_seconds = 0;
  std::optional<int> best_f;  // timeout only
};
std::string serialize_solution(const SolutionRecord& record);

}  // namespace upmp

#endif  // UPMP_INSTANCE_HPP_
