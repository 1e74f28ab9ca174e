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

#include "upmp.h"

#include <cstring>
#include <exception>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include "upmp/core.hpp"
#include "upmp/fixing.hpp"
#include "upmp/instance.hpp"
#include "upmp/lower_bound.hpp"
#include "upmp/oracle.hpp"
#include "upmp/search.hpp"

struct upmp_instance {
  upmp::Instance inst;
  std::string variant_name;
};

struct upmp_result {
  upmp_outcome outcome = UPMP_OUTCOME_INFEASIBLE;
  std::vector<upmp::Move> moves;
  int oracle_moves = -1;
  std::uint64_t nodes = 0;
  double runtime = 0;
  int root_h = -1;
  int best_f = 0;
};

namespace {

thread_local std::string g_last_error;

upmp_status fail(upmp_status status, const char* what) {
  g_last_error = what ? what : "";
  return status;
}

template <typename Fn>
upmp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const upmp::ParseError& e) {
    return fail(UPMP_ERROR_PARSE, e.what());
  } catch (const upmp::ValidationError& e) {
    return fail(UPMP_ERROR_INVALID_INSTANCE, e.what());
  } catch (const upmp::IoError& e) {
    return fail(UPMP_ERROR_IO, e.what());
  } catch (const upmp::GenerateError& e) {
    return fail(UPMP_ERROR_GENERATE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(UPMP_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(UPMP_ERROR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

upmp_result* result_from_search(const upmp::SearchOutcome& search) {
  auto* res = new upmp_result;
  switch (search.kind) {
    case upmp::SearchOutcome::Kind::solved: res->outcome = UPMP_OUTCOME_SOLVED; break;
    case upmp::SearchOutcome::Kind::infeasible: res->outcome = UPMP_OUTCOME_INFEASIBLE; break;
    case upmp::SearchOutcome::Kind::timeout: res->outcome = UPMP_OUTCOME_TIMEOUT; break;
  }
  res->moves = search.moves;
  res->nodes = search.nodes_visited;
  res->runtime = search.runtime_seconds;
  res->root_h = search.root_bound;
  res->best_f = search.best_f_seen;
  return res;
}

}  // namespace

extern "C" {

const char* upmp_version(void) { return "0.1.0"; }

const char* upmp_status_name(upmp_status status) {
  switch (status) {
    case UPMP_OK: return "ok";
    case UPMP_ERROR_ARGUMENT: return "invalid argument";
    case UPMP_ERROR_IO: return "i/o error";
    case UPMP_ERROR_PARSE: return "parse error";
    case UPMP_ERROR_INVALID_INSTANCE: return "invalid instance";
    case UPMP_ERROR_GENERATE: return "generation error";
    case UPMP_ERROR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* upmp_last_error(void) { return g_last_error.c_str(); }

void upmp_string_free(char* text) { delete[] text; }

upmp_status upmp_instance_load(const char* path, upmp_instance** out) {
  if (!path || !out) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    auto* handle = new upmp_instance;
    handle->inst = upmp::load_instance(path);
    handle->variant_name = handle->inst.bay.variant().name();
    *out = handle;
    return UPMP_OK;
  });
}

upmp_status upmp_instance_from_text(const char* text, upmp_instance** out) {
  if (!text || !out) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    auto* handle = new upmp_instance;
    handle->inst = upmp::parse_instance(text);
    handle->variant_name = handle->inst.bay.variant().name();
    *out = handle;
    return UPMP_OK;
  });
}

upmp_status upmp_instance_save(const upmp_instance* inst, const char* path) {
  if (!inst || !path) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    upmp::save_instance(inst->inst, path);
    return UPMP_OK;
  });
}

upmp_status upmp_instance_text(const upmp_instance* inst, char** out_text) {
  if (!inst || !out_text) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_text = dup_string(upmp::serialize_instance(inst->inst));
    return UPMP_OK;
  });
}

upmp_status upmp_instance_generate(const upmp_gen_params* params, int index,
                                   upmp_instance** out) {
  if (!params || !out) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  if (!params->variant) return fail(UPMP_ERROR_ARGUMENT, "null variant");
  return guarded([&] {
    auto variant = upmp::AccessVariant::parse(params->variant);
    if (!variant) return fail(UPMP_ERROR_ARGUMENT, "unknown access variant");
    upmp::GenParams gp;
    gp.dims = upmp::Dims{params->columns, params->rows, params->tiers};
    gp.variant = *variant;
    gp.fill_percent = params->fill_percent;
    gp.groups = params->groups > 0 ? params->groups : 5;
    gp.seed = params->seed;
    auto* handle = new upmp_instance;
    handle->inst = upmp::generate_instance(gp, index);
    handle->variant_name = handle->inst.bay.variant().name();
    *out = handle;
    return UPMP_OK;
  });
}

void upmp_instance_free(upmp_instance* inst) { delete inst; }

uint64_t upmp_instance_hash(const upmp_instance* inst) {
  return inst ? upmp::instance_hash(inst->inst) : 0;
}
int upmp_instance_columns(const upmp_instance* inst) {
  return inst ? inst->inst.bay.dims().columns : 0;
}
int upmp_instance_rows(const upmp_instance* inst) {
  return inst ? inst->inst.bay.dims().rows : 0;
}
int upmp_instance_tiers(const upmp_instance* inst) {
  return inst ? inst->inst.bay.dims().tiers : 0;
}
int upmp_instance_groups(const upmp_instance* inst) {
  return inst ? inst->inst.bay.groups() : 0;
}
int upmp_instance_load_count(const upmp_instance* inst) {
  return inst ? inst->inst.bay.load_count() : 0;
}
const char* upmp_instance_variant(const upmp_instance* inst) {
  return inst ? inst->variant_name.c_str() : "";
}

upmp_status upmp_root_bound(const upmp_instance* inst, upmp_root_info* out) {
  if (!inst || !out) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    upmp::PreparedLanes prepared = upmp::prepare_lanes(inst->inst.bay);
    upmp::LowerBoundReport report = upmp::lower_bound(inst->inst.bay, prepared.lanes);
    out->fixing_objective = prepared.objective;
    out->lane_count = static_cast<int>(prepared.lanes.size());
    out->h = report.feasible ? report.bound() : -1;
    out->h_infinite = report.feasible ? 0 : 1;
    out->blocking = report.blocking;
    out->forced_extra = report.forced_extra;
    out->shuffle_moves = report.shuffle_moves;
    return UPMP_OK;
  });
}

upmp_status upmp_network_dump(const upmp_instance* inst, char** out_text) {
  if (!inst || !out_text) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_text = dup_string(upmp::dump_network(inst->inst.bay));
    return UPMP_OK;
  });
}

upmp_status upmp_solve(const upmp_instance* inst, const upmp_solve_options* options,
                       upmp_result** out) {
  if (!inst || !out) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    upmp::SearchLimits limits;
    if (options) {
      limits.timeout_seconds = options->timeout_seconds;
      limits.node_cap = options->node_cap;
      if (options->trace) limits.trace = &std::cerr;
    }
    upmp::PreparedLanes prepared = upmp::prepare_lanes(inst->inst.bay);
    upmp::SearchOutcome search = upmp::astar(inst->inst.bay, prepared.lanes, limits);
    *out = result_from_search(search);
    return UPMP_OK;
  });
}

upmp_status upmp_oracle(const upmp_instance* inst, uint64_t node_cap, upmp_result** out) {
  if (!inst || !out) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    upmp::PreparedLanes prepared = upmp::prepare_lanes(inst->inst.bay);
    upmp::OracleOutcome oracle = upmp::oracle_solve(inst->inst.bay, prepared.lanes, node_cap);
    auto* res = new upmp_result;
    switch (oracle.kind) {
      case upmp::OracleOutcome::Kind::solved: res->outcome = UPMP_OUTCOME_SOLVED; break;
      case upmp::OracleOutcome::Kind::infeasible:
        res->outcome = UPMP_OUTCOME_INFEASIBLE;
        break;
      case upmp::OracleOutcome::Kind::cap_exceeded:
        res->outcome = UPMP_OUTCOME_CAP_EXCEEDED;
        break;
    }
    res->oracle_moves = oracle.optimal_moves;
    res->nodes = oracle.states_seen;
    *out = res;
    return UPMP_OK;
  });
}

void upmp_result_free(upmp_result* result) { delete result; }

upmp_outcome upmp_result_outcome(const upmp_result* result) {
  return result ? result->outcome : UPMP_OUTCOME_INFEASIBLE;
}

int upmp_result_move_count(const upmp_result* result) {
  if (!result) return 0;
  if (result->oracle_moves >= 0) return result->oracle_moves;
  return static_cast<int>(result->moves.size());
}

upmp_status upmp_result_move(const upmp_result* result, int index, upmp_move* out) {
  if (!result || !out) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  if (index < 0 || index >= static_cast<int>(result->moves.size()))
    return fail(UPMP_ERROR_ARGUMENT, "move index out of range");
  const upmp::Move& mv = result->moves[static_cast<std::size_t>(index)];
  out->from_i = mv.from.i;
  out->from_j = mv.from.j;
  out->from_t = mv.from.t;
  out->to_i = mv.to.i;
  out->to_j = mv.to.j;
  out->to_t = mv.to.t;
  out->group = mv.group;
  return UPMP_OK;
}

uint64_t upmp_result_nodes(const upmp_result* result) { return result ? result->nodes : 0; }

double upmp_result_runtime_seconds(const upmp_result* result) {
  return result ? result->runtime : 0;
}

int upmp_result_root_h(const upmp_result* result) { return result ? result->root_h : -1; }

int upmp_result_best_f(const upmp_result* result) { return result ? result->best_f : 0; }

upmp_status upmp_result_solution_text(const upmp_result* result, const upmp_instance* inst,
                                      char** out_text) {
  if (!result || !inst || !out_text) return fail(UPMP_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    upmp::SolutionRecord record;
    record.instance_hash = upmp::instance_hash(inst->inst);
    switch (result->outcome) {
      case UPMP_OUTCOME_SOLVED: record.outcome = "solved"; break;
      case UPMP_OUTCOME_INFEASIBLE: record.outcome = "infeasible"; break;
      case UPMP_OUTCOME_TIMEOUT: record.outcome = "timeout"; break;
      case UPMP_OUTCOME_CAP_EXCEEDED: record.outcome = "cap-exceeded"; break;
    }
    record.moves = result->moves;
    record.nodes = result->nodes;
    record.runtime_seconds = result->runtime;
    if (result->outcome == UPMP_OUTCOME_TIMEOUT) record.best_f = result->best_f;
    *out_text = dup_string(upmp::serialize_solution(record));
    return UPMP_OK;
  });
}

}  // extern "C"
