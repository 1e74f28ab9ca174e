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

// Command-line front-end. Everything below talks to the solver through the
// C API in upmp.h; file discovery, scheduling and reporting live here.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "upmp.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeout = 3;

volatile std::sig_atomic_t g_interrupted = 0;

void on_interrupt(int) { g_interrupted = 1; }

struct InstanceHandle {
  upmp_instance* ptr = nullptr;
  ~InstanceHandle() { upmp_instance_free(ptr); }
};

struct ResultHandle {
  upmp_result* ptr = nullptr;
  ~ResultHandle() { upmp_result_free(ptr); }
};

std::string take_string(char* text) {
  std::string out = text ? text : "";
  upmp_string_free(text);
  return out;
}

int report_api_error(const std::string& context, upmp_status status) {
  std::cerr << "error: " << context << ": " << upmp_status_name(status) << " ("
            << upmp_last_error() << ")\n";
  return kExitError;
}

const char* outcome_name(upmp_outcome outcome) {
  switch (outcome) {
    case UPMP_OUTCOME_SOLVED: return "solved";
    case UPMP_OUTCOME_INFEASIBLE: return "infeasible";
    case UPMP_OUTCOME_TIMEOUT: return "timeout";
    case UPMP_OUTCOME_CAP_EXCEEDED: return "cap-exceeded";
  }
  return "?";
}

int exit_code_for(upmp_outcome outcome) {
  switch (outcome) {
    case UPMP_OUTCOME_SOLVED: return kExitOk;
    case UPMP_OUTCOME_INFEASIBLE: return kExitInfeasible;
    default: return kExitTimeout;
  }
}

bool write_file(const std::string& path, const std::string& contents, std::string* err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    *err = "cannot open '" + path + "' for writing";
    return false;
  }
  out << contents;
  if (!out) {
    *err = "write to '" + path + "' failed";
    return false;
  }
  return true;
}

// ---- solve ---------------------------------------------------------------

int cmd_solve(const std::string& path, double timeout, std::uint64_t node_cap, bool trace,
              std::string out_path, const std::string& network_path) {
  InstanceHandle inst;
  if (upmp_status s = upmp_instance_load(path.c_str(), &inst.ptr); s != UPMP_OK)
    return report_api_error("loading " + path, s);

  if (!network_path.empty()) {
    char* text = nullptr;
    if (upmp_status s = upmp_network_dump(inst.ptr, &text); s != UPMP_OK)
      return report_api_error("network dump", s);
    std::string dump = take_string(text);
    if (network_path == "-") {
      std::cout << dump;
    } else {
      std::string err;
      if (!write_file(network_path, dump, &err)) {
        std::cerr << "error: " << err << '\n';
        return kExitError;
      }
    }
  }

  upmp_solve_options options{};
  options.timeout_seconds = timeout;
  options.node_cap = node_cap;
  options.trace = trace ? 1 : 0;
  ResultHandle result;
  if (upmp_status s = upmp_solve(inst.ptr, &options, &result.ptr); s != UPMP_OK)
    return report_api_error("solving " + path, s);

  char* text = nullptr;
  if (upmp_status s = upmp_result_solution_text(result.ptr, inst.ptr, &text); s != UPMP_OK)
    return report_api_error("formatting solution", s);
  if (out_path.empty()) out_path = path + ".sol";
  std::string err;
  if (!write_file(out_path, take_string(text), &err)) {
    std::cerr << "error: " << err << '\n';
    return kExitError;
  }

  upmp_outcome outcome = upmp_result_outcome(result.ptr);
  std::cout << outcome_name(outcome);
  if (outcome == UPMP_OUTCOME_SOLVED)
    std::cout << " in " << upmp_result_move_count(result.ptr) << " moves";
  std::printf(" (nodes %llu, runtime %.3fs, root bound %d)\n",
              static_cast<unsigned long long>(upmp_result_nodes(result.ptr)),
              upmp_result_runtime_seconds(result.ptr), upmp_result_root_h(result.ptr));
  std::cout << "solution written to " << out_path << '\n';
  return exit_code_for(outcome);
}

// ---- generate ------------------------------------------------------------

int cmd_generate(const std::string& dims, const std::string& variant, int fill, int groups,
                 std::uint64_t seed, int count, const std::string& out_dir) {
  int cols = 0, rows = 0, tiers = 0;
  if (std::sscanf(dims.c_str(), "%dx%dx%d", &cols, &rows, &tiers) != 3) {
    std::cerr << "error: --dims expects LxWxT, e.g. 5x5x1\n";
    return kExitError;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir << ": " << ec.message() << '\n';
    return kExitError;
  }
  upmp_gen_params params{};
  params.columns = cols;
  params.rows = rows;
  params.tiers = tiers;
  params.variant = variant.c_str();
  params.fill_percent = fill;
  params.groups = groups;
  params.seed = seed;
  for (int k = 0; k < count; ++k) {
    InstanceHandle inst;
    if (upmp_status s = upmp_instance_generate(&params, k, &inst.ptr); s != UPMP_OK)
      return report_api_error("generating instance " + std::to_string(k), s);
    std::ostringstream name;
    name << "upmp_" << dims << '_' << variant << "_f" << fill << "_s" << seed << '_' << k
         << ".upmp";
    fs::path out_path = fs::path(out_dir) / name.str();
    if (upmp_status s = upmp_instance_save(inst.ptr, out_path.string().c_str()); s != UPMP_OK)
      return report_api_error("saving " + out_path.string(), s);
    std::cout << out_path.string() << '\n';
  }
  return kExitOk;
}

// ---- oracle ----------------------------------------------------------------

int cmd_oracle(const std::string& path, std::uint64_t cap) {
  InstanceHandle inst;
  if (upmp_status s = upmp_instance_load(path.c_str(), &inst.ptr); s != UPMP_OK)
    return report_api_error("loading " + path, s);
  ResultHandle result;
  if (upmp_status s = upmp_oracle(inst.ptr, cap, &result.ptr); s != UPMP_OK)
    return report_api_error("oracle on " + path, s);
  upmp_outcome outcome = upmp_result_outcome(result.ptr);
  if (outcome == UPMP_OUTCOME_SOLVED) {
    std::cout << "optimal " << upmp_result_move_count(result.ptr) << " moves (states "
              << upmp_result_nodes(result.ptr) << ")\n";
  } else {
    std::cout << outcome_name(outcome) << " (states " << upmp_result_nodes(result.ptr)
              << ")\n";
  }
  return exit_code_for(outcome);
}

// ---- bench -----------------------------------------------------------------

struct BenchItem {
  std::string path;
  std::string size_label;
  std::string variant;
  int fill = 0;
  int tiers = 0;
  int cols = 0, rows = 0;
  upmp_outcome outcome = UPMP_OUTCOME_TIMEOUT;
  int moves = 0;
  std::uint64_t nodes = 0;
  double runtime = 0;
  int root_h = -1;
  bool done = false;
  std::string error;
};

int variant_rank(const std::string& name) {
  if (name == "single") return 0;
  if (name == "corner") return 1;
  if (name == "opposite") return 2;
  if (name == "three") return 3;
  if (name == "four") return 4;
  return 5;
}

std::string format_mean(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

int cmd_bench(const std::string& dir, double timeout, int jobs, std::uint64_t node_cap,
              const std::string& csv_path, std::string log_path, std::string gap_path) {
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".upmp")
      files.push_back(entry.path().string());
  }
  if (ec) {
    std::cerr << "error: cannot read " << dir << ": " << ec.message() << '\n';
    return kExitError;
  }
  if (files.empty()) {
    std::cerr << "error: no .upmp instances under " << dir << '\n';
    return kExitError;
  }
  std::sort(files.begin(), files.end());

  std::vector<BenchItem> items(files.size());
  for (std::size_t k = 0; k < files.size(); ++k) items[k].path = files[k];

  if (!csv_path.empty()) {
    if (log_path.empty()) log_path = csv_path + ".jsonl";
    if (gap_path.empty()) gap_path = csv_path + ".gaps.csv";
  }
  std::ofstream log;
  std::mutex log_mutex;
  if (!log_path.empty()) {
    log.open(log_path, std::ios::binary);
    if (!log) {
      std::cerr << "error: cannot open " << log_path << " for writing\n";
      return kExitError;
    }
  }

  std::signal(SIGINT, on_interrupt);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      if (g_interrupted) return;
      std::size_t k = next.fetch_add(1);
      if (k >= items.size()) return;
      BenchItem& item = items[k];
      InstanceHandle inst;
      if (upmp_status s = upmp_instance_load(item.path.c_str(), &inst.ptr); s != UPMP_OK) {
        item.error = std::string(upmp_status_name(s)) + ": " + upmp_last_error();
        continue;
      }
      item.cols = upmp_instance_columns(inst.ptr);
      item.rows = upmp_instance_rows(inst.ptr);
      item.tiers = upmp_instance_tiers(inst.ptr);
      item.size_label = std::to_string(item.cols) + "x" + std::to_string(item.rows) + "x" +
                        std::to_string(item.tiers);
      item.variant = upmp_instance_variant(inst.ptr);
      int capacity = item.cols * item.rows * item.tiers;
      item.fill = static_cast<int>(
          std::llround(100.0 * upmp_instance_load_count(inst.ptr) / capacity));
      upmp_solve_options options{};
      options.timeout_seconds = timeout;
      options.node_cap = node_cap;
      ResultHandle result;
      if (upmp_status s = upmp_solve(inst.ptr, &options, &result.ptr); s != UPMP_OK) {
        item.error = std::string(upmp_status_name(s)) + ": " + upmp_last_error();
        continue;
      }
      item.outcome = upmp_result_outcome(result.ptr);
      item.moves = upmp_result_move_count(result.ptr);
      item.nodes = upmp_result_nodes(result.ptr);
      item.runtime = upmp_result_runtime_seconds(result.ptr);
      item.root_h = upmp_result_root_h(result.ptr);
      item.done = true;
      if (log) {
        json j{{"instance", item.path},
               {"outcome", outcome_name(item.outcome)},
               {"moves", item.moves},
               {"nodes", item.nodes},
               {"runtime_s", item.runtime},
               {"root_h", item.root_h}};
        if (item.outcome == UPMP_OUTCOME_SOLVED) {
          double gap = item.moves == 0
                           ? 0.0
                           : 100.0 * (item.moves - item.root_h) / item.moves;
          j["root_gap_pct"] = gap;
        } else {
          j["root_gap_pct"] = nullptr;
        }
        std::lock_guard<std::mutex> guard(log_mutex);
        log << j.dump() << '\n';
        log.flush();
      }
    }
  };

  int thread_count = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int k = 0; k < thread_count; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (const auto& item : items) {
    if (!item.error.empty()) {
      std::cerr << "error: " << item.path << ": " << item.error << '\n';
      return kExitError;
    }
  }

  // Aggregate rows over (size, variant, fill); means cover solved instances.
  struct RowAgg {
    int solved = 0, infeasible = 0, timeout = 0;
    double moves = 0, nodes = 0, runtime = 0;
  };
  struct RowKey {
    int cols, rows, tiers, variant, fill;
    std::string size_label, variant_name;
    bool operator<(const RowKey& o) const {
      if (cols != o.cols) return cols < o.cols;
      if (rows != o.rows) return rows < o.rows;
      if (tiers != o.tiers) return tiers < o.tiers;
      if (variant != o.variant) return variant < o.variant;
      return fill < o.fill;
    }
  };
  std::map<RowKey, RowAgg> table;
  struct GapAgg {
    double sum = 0;
    int solved = 0;
  };
  std::map<std::pair<int, int>, GapAgg> gaps;  // (variant rank, tiers)
  std::map<std::pair<int, int>, std::string> gap_names;
  for (const auto& item : items) {
    if (!item.done) continue;  // interrupted before this one ran
    RowKey key{item.cols, item.rows, item.tiers, variant_rank(item.variant), item.fill,
               item.size_label, item.variant};
    RowAgg& agg = table[key];
    if (item.outcome == UPMP_OUTCOME_SOLVED) {
      ++agg.solved;
      agg.moves += item.moves;
      agg.nodes += static_cast<double>(item.nodes);
      agg.runtime += item.runtime;
      GapAgg& gagg = gaps[{variant_rank(item.variant), item.tiers}];
      gagg.sum += item.moves == 0 ? 0.0 : 100.0 * (item.moves - item.root_h) / item.moves;
      ++gagg.solved;
      gap_names[{variant_rank(item.variant), item.tiers}] = item.variant;
    } else if (item.outcome == UPMP_OUTCOME_INFEASIBLE) {
      ++agg.infeasible;
    } else {
      ++agg.timeout;
    }
  }

  std::ostringstream csv;
  csv << "size,variant,fill,solved,infeasible,timeout,mean_moves,mean_nodes,mean_runtime_s\n";
  for (const auto& [key, agg] : table) {
    csv << key.size_label << ',' << key.variant_name << ',' << key.fill << ',' << agg.solved
        << ',' << agg.infeasible << ',' << agg.timeout << ',';
    if (agg.solved > 0) {
      csv << format_mean(agg.moves / agg.solved) << ',' << format_mean(agg.nodes / agg.solved)
          << ',' << format_mean(agg.runtime / agg.solved) << '\n';
    } else {
      csv << "-,-,-\n";
    }
  }
  std::ostringstream gap_csv;
  gap_csv << "variant,tiers,mean_root_gap_pct\n";
  for (const auto& [key, agg] : gaps) {
    gap_csv << gap_names[key] << ',' << key.second << ',';
    if (agg.solved > 0) {
      gap_csv << format_mean(agg.sum / agg.solved) << '\n';
    } else {
      gap_csv << "-\n";
    }
  }

  if (csv_path.empty()) {
    std::cout << csv.str() << '\n' << gap_csv.str();
  } else {
    std::string err;
    if (!write_file(csv_path, csv.str(), &err) || !write_file(gap_path, gap_csv.str(), &err)) {
      std::cerr << "error: " << err << '\n';
      return kExitError;
    }
    std::cout << "wrote " << csv_path << " and " << gap_path << '\n';
  }
  if (g_interrupted) {
    std::cerr << "interrupted: partial results flushed\n";
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact pre-marshalling solver for block stacking storage bays"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve one instance to optimality");
  std::string solve_path, solve_out, solve_network;
  double solve_timeout = 0;
  std::uint64_t solve_cap = 0;
  bool solve_trace = false;
  solve->add_option("file", solve_path, "instance file")->required();
  solve->add_option("--timeout", solve_timeout, "wall-clock budget in seconds (0 = none)");
  solve->add_option("--node-cap", solve_cap, "search node cap (0 = default)");
  solve->add_flag("--trace", solve_trace, "print one line per expansion to stderr");
  solve->add_option("--out", solve_out, "solution file path (default: <file>.sol)");
  solve->add_option("--dump-network", solve_network,
                    "write the access network edges to a file ('-' for stdout)");

  auto* generate = app.add_subcommand("generate", "Generate random instances");
  std::string gen_dims = "3x3x1", gen_variant = "single", gen_out = ".";
  int gen_fill = 40, gen_groups = 5, gen_count = 1;
  std::uint64_t gen_seed = 0;
  generate->add_option("--dims", gen_dims, "bay size LxWxT")->capture_default_str();
  generate->add_option("--variant", gen_variant, "single|corner|opposite|three|four")
      ->capture_default_str();
  generate->add_option("--fill", gen_fill, "fill percentage")->capture_default_str();
  generate->add_option("--groups", gen_groups, "priority group count")->capture_default_str();
  generate->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  generate->add_option("--count", gen_count, "instances to emit")->capture_default_str();
  generate->add_option("--out", gen_out, "output directory")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Run a directory of instances and summarize");
  std::string bench_dir, bench_csv, bench_log, bench_gap;
  double bench_timeout = 3600;
  int bench_jobs = 1;
  std::uint64_t bench_cap = 0;
  bench->add_option("dir", bench_dir, "directory of .upmp instances")->required();
  bench->add_option("--timeout", bench_timeout, "per-instance budget in seconds")
      ->capture_default_str();
  bench->add_option("--jobs", bench_jobs, "parallel solves")->capture_default_str();
  bench->add_option("--node-cap", bench_cap, "per-instance node cap (0 = default)");
  bench->add_option("--csv", bench_csv, "summary CSV path (default: stdout)");
  bench->add_option("--log", bench_log, "per-instance JSON-lines log path");
  bench->add_option("--gap-csv", bench_gap, "root-gap CSV path");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive reference search (small instances)");
  std::string oracle_path;
  std::uint64_t oracle_cap = 0;
  oracle->add_option("file", oracle_path, "instance file")->required();
  oracle->add_option("--cap", oracle_cap, "state cap (0 = default)");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed())
    return cmd_solve(solve_path, solve_timeout, solve_cap, solve_trace, solve_out,
                     solve_network);
  if (generate->parsed())
    return cmd_generate(gen_dims, gen_variant, gen_fill, gen_groups, gen_seed, gen_count,
                        gen_out);
  if (bench->parsed())
    return cmd_bench(bench_dir, bench_timeout, bench_jobs, bench_cap, bench_csv, bench_log,
                     bench_gap);
  if (oracle->parsed()) return cmd_oracle(oracle_path, oracle_cap);
  return kExitError;
}
