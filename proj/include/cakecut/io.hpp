// Copyright 2026 The cakecut Authors
//
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

#ifndef CAKECUT_IO_HPP_
#define CAKECUT_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cakecut/groups.hpp"
#include "cakecut/oracle.hpp"
#include "cakecut/rational.hpp"
#include "cakecut/sperner.hpp"
#include "cakecut/valuation.hpp"

namespace cakecut::io {

// Optional solver settings carried by an instance file ("config").
struct InstanceConfig {
  std::optional<std::int64_t> mesh;
  std::optional<SearchMode> mode;
  std::optional<std::uint64_t> budget;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const InstanceConfig&, const InstanceConfig&) = default;
};

struct Instance {
  std::vector<std::string> names;
  std::vector<PiecewiseConstantValuation> valuations;
  std::vector<std::size_t> group_sizes;
  Rational epsilon;
  bool normalize = false;
  std::optional<std::vector<std::size_t>> fixed_membership;  // 0-based group per player
  InstanceConfig config;

  std::size_t players() const { return valuations.size(); }
  GroupStructure groups() const { return GroupStructure(group_sizes); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws InputError with a pointed message on any schema or value problem.
Instance parse_instance(const std::string& json_text);
std::string emit_instance(const Instance& instance);
Instance load_instance(const std::string& path);

// Effective settings for one solve: instance config overridden by flags.
struct RunSettings {
  std::int64_t mesh = 0;
  SearchMode mode = SearchMode::kAuto;
  unsigned workers = 1;
  std::uint64_t budget_cells = 200'000'000;
  std::uint64_t seed = 0;
  std::optional<Rational> epsilon;  // overrides the instance's

  SolverConfig solver_config() const;
};

RunSettings settings_from(const Instance& instance);

struct SolveOutcome {
  GroupSolution solution;
  Rational epsilon;
  RunSettings settings;
  double seconds = 0;
};

// solve_groups on the instance (identical to solve_individual for unit sizes).
SolveOutcome solve_instance(const Instance& instance, const RunSettings& settings);

// Result file. Everything under "stable" is a pure function of instance and
// settings (worker count and timing live under "runtime").
std::string result_json(const Instance& instance, const SolveOutcome& outcome);

// Recomputes envy for the allocation in a result file. Byte-stable output.
struct VerifyOutcome {
  EnvyReport report;
  std::string json;
};
VerifyOutcome verify_result(const Instance& instance, const std::string& result_text,
                            const std::optional<Rational>& epsilon = std::nullopt);

enum class OracleMode { kIndividual, kVariable, kFixed };
OracleMode parse_oracle_mode(const std::string& text);
std::string to_string(OracleMode mode);

struct OracleOutcome {
  OracleResult result;
  std::string json;
};
OracleOutcome run_oracle(const Instance& instance, OracleMode mode, std::int64_t resolution,
                         unsigned workers = 1);

struct BenchOptions {
  std::vector<std::int64_t> meshes;  // empty: n, 2n, 4n
  std::vector<SearchMode> modes{SearchMode::kScan, SearchMode::kWalk};
  bool timing = false;
  unsigned workers = 1;
  std::uint64_t cell_cap = 20'000'000;
};

struct BenchRow {
  SearchMode mode = SearchMode::kScan;
  std::int64_t mesh = 0;
  std::uint64_t cells_visited = 0;
  std::uint64_t steps = 0;
  Rational envy;
  Rational bound;
  double millis = 0;
};

// One row per (mode, mesh): a single fully-labeled-cell search at that mesh
// and the envy of its readout.
std::vector<BenchRow> run_bench(const Instance& instance, const BenchOptions& options);
std::string bench_csv(const std::vector<BenchRow>& rows, bool timing);

// Instance with random valuations (unit group sizes unless given).
Instance generated_instance(std::uint64_t seed, std::size_t players, std::size_t segments,
                            bool uniform, std::vector<std::size_t> sizes = {});

}  // namespace cakecut::io

#endif  // CAKECUT_IO_HPP_
