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

// Command-line front end. Talks to the solver only through the C API.
//
//   cakecut solve  INSTANCE [--epsilon E] [--mesh K] [--mode scan|walk|auto]
//                           [--workers W] [--budget-cells B] [--seed S] [--out FILE]
//   cakecut verify INSTANCE RESULT [--epsilon E] [--out FILE]
//   cakecut oracle INSTANCE --resolution R [--mode individual|variable|fixed]
//   cakecut bench  [INSTANCE | --players N [--segments S] [--uniform]] [--seed S]
//                  [--meshes 3,6,12] [--mode scan|walk|both] [--timing]
//
// Exit codes: 0 success, 1 input error, 2 budget or resource cap exceeded,
// 3 contract violation, 4 envy above epsilon (verify), 6 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cakecut/cakecut.h"

namespace {

struct InstanceDeleter {
  void operator()(cakecut_instance* p) const { cakecut_instance_free(p); }
};
struct ResultDeleter {
  void operator()(cakecut_result* p) const { cakecut_result_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { cakecut_string_free(p); }
};
using InstancePtr = std::unique_ptr<cakecut_instance, InstanceDeleter>;
using ResultPtr = std::unique_ptr<cakecut_result, ResultDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code(cakecut_status status) {
  switch (status) {
    case CAKECUT_OK: return 0;
    case CAKECUT_INPUT_ERROR: return 1;
    case CAKECUT_BUDGET_EXCEEDED:
    case CAKECUT_RESOURCE_LIMIT: return 2;
    case CAKECUT_CONTRACT_VIOLATION: return 3;
    case CAKECUT_ENVY_EXCEEDS_EPSILON: return 4;
    default: return 6;
  }
}

int fail(cakecut_status status) {
  std::cerr << "cakecut: " << cakecut_last_error() << "\n";
  return exit_code(status);
}

bool emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cakecut: cannot write '" << out_path << "'\n";
    return false;
  }
  out << text;
  return static_cast<bool>(out);
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

InstancePtr load(const std::string& path, cakecut_status& status) {
  cakecut_instance* raw = nullptr;
  status = cakecut_instance_load(path.c_str(), &raw);
  return InstancePtr(raw);
}

int mode_code(const std::string& mode) {
  if (mode == "scan") return CAKECUT_MODE_SCAN;
  if (mode == "walk") return CAKECUT_MODE_WALK;
  return CAKECUT_MODE_AUTO;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Envy-free contiguous cake division for individuals and ad-hoc groups"};
  app.set_version_flag("--version", std::string(cakecut_version()));
  app.require_subcommand(1);

  std::string instance_path;
  std::string result_path;
  std::string out_path;
  std::string epsilon;
  std::int64_t mesh = 0;
  std::string mode;
  unsigned workers = 0;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::int64_t resolution = 0;

  auto* solve = app.add_subcommand("solve", "Compute an epsilon-envy-free group allocation");
  solve->add_option("instance", instance_path, "Instance file (JSON)")->required();
  solve->add_option("--epsilon", epsilon, "Envy tolerance, e.g. 1/100 (overrides the instance)");
  solve->add_option("--mesh", mesh, "Initial mesh K");
  solve->add_option("--mode", mode, "Cell search: scan, walk or auto")
      ->check(CLI::IsMember({"scan", "walk", "auto"}));
  solve->add_option("--workers", workers, "Worker threads for the scan");
  solve->add_option("--budget-cells", budget, "Stop after this many cells");
  solve->add_option("--seed", seed, "Seed recorded in the result");
  solve->add_option("--out", out_path, "Write the result here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Recompute envy for a result file");
  verify->add_option("instance", instance_path, "Instance file (JSON)")->required();
  verify->add_option("result", result_path, "Result file (JSON)")->required();
  verify->add_option("--epsilon", epsilon, "Envy tolerance (overrides the instance)");
  verify->add_option("--out", out_path, "Write the report here instead of stdout");

  std::string oracle_mode = "variable";
  auto* oracle = app.add_subcommand("oracle", "Brute-force minimum envy on a cut grid");
  oracle->add_option("instance", instance_path, "Instance file (JSON)")->required();
  oracle->add_option("--resolution", resolution, "Cuts at multiples of 1/R")->required();
  oracle->add_option("--mode", oracle_mode, "individual, variable or fixed")
      ->check(CLI::IsMember({"individual", "variable", "fixed"}));
  oracle->add_option("--workers", workers, "Worker threads");
  oracle->add_option("--out", out_path, "Write the result here instead of stdout");

  std::size_t players = 0;
  std::size_t segments = 4;
  bool uniform = false;
  bool timing = false;
  std::vector<std::int64_t> meshes;
  std::string bench_mode = "both";
  auto* bench = app.add_subcommand("bench", "Mesh / search-mode table for one instance");
  bench->add_option("instance", instance_path, "Instance file (JSON); omit to generate one");
  bench->add_option("--players", players, "Generate an instance with this many players");
  bench->add_option("--segments", segments, "Segments per generated valuation");
  bench->add_flag("--uniform", uniform, "Generated players are all uniform");
  bench->add_option("--seed", seed, "Generator seed");
  bench->add_option("--meshes", meshes, "Comma-separated meshes")->delimiter(',');
  bench->add_option("--mode", bench_mode, "scan, walk or both")
      ->check(CLI::IsMember({"scan", "walk", "both"}));
  bench->add_flag("--timing", timing, "Add a time_ms column (output is then not reproducible)");
  bench->add_option("--workers", workers, "Worker threads for the scan");
  bench->add_option("--out", out_path, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  cakecut_status status = CAKECUT_OK;

  if (*solve) {
    auto instance = load(instance_path, status);
    if (status != CAKECUT_OK) return fail(status);
    cakecut_solve_options options;
    cakecut_solve_options_init(&options);
    options.mesh = mesh;
    if (!mode.empty()) options.mode = mode_code(mode);
    options.workers = workers;
    options.budget_cells = budget;
    options.seed = seed;
    if (!epsilon.empty()) options.epsilon = epsilon.c_str();
    cakecut_result* raw = nullptr;
    status = cakecut_solve(instance.get(), &options, &raw);
    ResultPtr result(raw);
    if (!result) return fail(status);
    char* json = nullptr;
    cakecut_result_to_json(result.get(), &json);
    StringPtr text(json);
    if (!emit(text.get(), out_path)) return 1;
    if (status != CAKECUT_OK) return fail(status);
    return 0;
  }

  if (*verify) {
    auto instance = load(instance_path, status);
    if (status != CAKECUT_OK) return fail(status);
    const auto result_text = slurp(result_path);
    if (!result_text) {
      std::cerr << "cakecut: cannot open result file '" << result_path << "'\n";
      return 1;
    }
    char* report = nullptr;
    status = cakecut_verify(instance.get(), result_text->c_str(),
                            epsilon.empty() ? nullptr : epsilon.c_str(), &report);
    StringPtr text(report);
    if (text && !emit(text.get(), out_path)) return 1;
    if (status != CAKECUT_OK) return fail(status);
    return 0;
  }

  if (*oracle) {
    auto instance = load(instance_path, status);
    if (status != CAKECUT_OK) return fail(status);
    char* json = nullptr;
    status = cakecut_oracle(instance.get(), oracle_mode.c_str(), resolution,
                            workers > 0 ? workers : 1, &json);
    StringPtr text(json);
    if (status != CAKECUT_OK) return fail(status);
    return emit(text.get(), out_path) ? 0 : 1;
  }

  if (*bench) {
    InstancePtr instance;
    if (!instance_path.empty()) {
      instance = load(instance_path, status);
    } else if (players > 0) {
      cakecut_instance* raw = nullptr;
      status = cakecut_instance_generate(seed, players, segments, uniform ? 1 : 0, &raw);
      instance.reset(raw);
    } else {
      std::cerr << "cakecut: bench needs an instance file or --players\n";
      return 1;
    }
    if (status != CAKECUT_OK) return fail(status);
    cakecut_bench_options options;
    cakecut_bench_options_init(&options);
    if (!meshes.empty()) {
      options.meshes = meshes.data();
      options.mesh_count = meshes.size();
    }
    options.mode = bench_mode == "scan" ? CAKECUT_MODE_SCAN
                   : bench_mode == "walk" ? CAKECUT_MODE_WALK
                                          : CAKECUT_MODE_AUTO;
    options.timing = timing ? 1 : 0;
    options.workers = workers > 0 ? workers : 1;
    char* csv = nullptr;
    status = cakecut_bench(instance.get(), &options, &csv);
    StringPtr text(csv);
    if (status != CAKECUT_OK) return fail(status);
    return emit(text.get(), out_path) ? 0 : 1;
  }
  return 1;
}
