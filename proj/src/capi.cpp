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

#include "cakecut/cakecut.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "cakecut/errors.hpp"
#include "cakecut/io.hpp"

struct cakecut_instance {
  cakecut::io::Instance value;
};

struct cakecut_result {
  cakecut::io::Instance instance;
  cakecut::io::SolveOutcome outcome;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

char* copy_out(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs body, mapping exceptions to status codes.
template <class Body>
cakecut_status guarded(Body&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const cakecut::InputError& e) {
    g_last_error = e.what();
    return CAKECUT_INPUT_ERROR;
  } catch (const cakecut::ContractError& e) {
    g_last_error = e.what();
    return CAKECUT_CONTRACT_VIOLATION;
  } catch (const cakecut::SpernerViolation& e) {
    g_last_error = e.what();
    return CAKECUT_CONTRACT_VIOLATION;
  } catch (const cakecut::BudgetExhausted& e) {
    g_last_error = e.what();
    return CAKECUT_BUDGET_EXCEEDED;
  } catch (const cakecut::ResourceLimit& e) {
    g_last_error = e.what();
    return CAKECUT_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CAKECUT_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return CAKECUT_INTERNAL_ERROR;
  }
}

cakecut_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return CAKECUT_INPUT_ERROR;
}

cakecut::SearchMode to_mode(int mode) {
  switch (mode) {
    case CAKECUT_MODE_AUTO: return cakecut::SearchMode::kAuto;
    case CAKECUT_MODE_SCAN: return cakecut::SearchMode::kScan;
    case CAKECUT_MODE_WALK: return cakecut::SearchMode::kWalk;
    default: throw cakecut::InputError("unknown search mode " + std::to_string(mode));
  }
}

}  // namespace

extern "C" {

const char* cakecut_version(void) { return CAKECUT_VERSION; }

const char* cakecut_last_error(void) { return g_last_error.c_str(); }

void cakecut_string_free(char* s) { std::free(s); }

void cakecut_solve_options_init(cakecut_solve_options* options) {
  if (!options) return;
  *options = cakecut_solve_options{0, -1, 0, 0, 0, nullptr};
}

void cakecut_bench_options_init(cakecut_bench_options* options) {
  if (!options) return;
  *options = cakecut_bench_options{nullptr, 0, CAKECUT_MODE_AUTO, 0, 1};
}

cakecut_status cakecut_instance_parse(const char* json, cakecut_instance** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new cakecut_instance{cakecut::io::parse_instance(json)};
    return CAKECUT_OK;
  });
}

cakecut_status cakecut_instance_load(const char* path, cakecut_instance** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new cakecut_instance{cakecut::io::load_instance(path)};
    return CAKECUT_OK;
  });
}

cakecut_status cakecut_instance_generate(uint64_t seed, size_t players, size_t segments,
                                         int uniform, cakecut_instance** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new cakecut_instance{
        cakecut::io::generated_instance(seed, players, segments, uniform != 0)};
    return CAKECUT_OK;
  });
}

void cakecut_instance_free(cakecut_instance* instance) { delete instance; }

size_t cakecut_instance_players(const cakecut_instance* instance) {
  return instance ? instance->value.players() : 0;
}

size_t cakecut_instance_groups(const cakecut_instance* instance) {
  return instance ? instance->value.group_sizes.size() : 0;
}

cakecut_status cakecut_instance_to_json(const cakecut_instance* instance, char** out) {
  if (!instance) return null_argument("instance");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = copy_out(cakecut::io::emit_instance(instance->value));
    return CAKECUT_OK;
  });
}

cakecut_status cakecut_solve(const cakecut_instance* instance,
                             const cakecut_solve_options* options, cakecut_result** out) {
  if (!instance) return null_argument("instance");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto settings = cakecut::io::settings_from(instance->value);
    if (options) {
      if (options->mesh > 0) settings.mesh = options->mesh;
      if (options->mode >= 0) settings.mode = to_mode(options->mode);
      if (options->workers > 0) settings.workers = options->workers;
      if (options->budget_cells > 0) settings.budget_cells = options->budget_cells;
      if (options->seed > 0) settings.seed = options->seed;
      if (options->epsilon) settings.epsilon = cakecut::Rational::parse(options->epsilon);
    }
    auto outcome = cakecut::io::solve_instance(instance->value, settings);
    auto result = std::make_unique<cakecut_result>(
        cakecut_result{instance->value, std::move(outcome), std::string()});
    result->json = cakecut::io::result_json(result->instance, result->outcome);
    const bool exceeded =
        result->outcome.solution.status == cakecut::SolveStatus::kBudgetExceeded;
    *out = result.release();
    if (exceeded) {
      g_last_error = "cell budget exhausted; returning the best allocation found";
      return CAKECUT_BUDGET_EXCEEDED;
    }
    return CAKECUT_OK;
  });
}

void cakecut_result_free(cakecut_result* result) { delete result; }

cakecut_status cakecut_result_to_json(const cakecut_result* result, char** out) {
  if (!result) return null_argument("result");
  if (!out) return null_argument("out");
  *out = copy_out(result->json);
  return CAKECUT_OK;
}

cakecut_status cakecut_result_max_envy(const cakecut_result* result, char** out) {
  if (!result) return null_argument("result");
  if (!out) return null_argument("out");
  const auto& envy = result->outcome.solution.envy;
  *out = copy_out(envy ? envy->max_envy.str() : std::string());
  return CAKECUT_OK;
}

size_t cakecut_result_group_of(const cakecut_result* result, size_t player) {
  if (!result) return SIZE_MAX;
  const auto& membership = result->outcome.solution.allocation.membership;
  return player < membership.size() ? membership[player] : SIZE_MAX;
}

cakecut_status cakecut_verify(const cakecut_instance* instance, const char* result_json,
                              const char* epsilon, char** report_json) {
  if (!instance) return null_argument("instance");
  if (!result_json) return null_argument("result_json");
  if (!report_json) return null_argument("report_json");
  *report_json = nullptr;
  return guarded([&] {
    std::optional<cakecut::Rational> eps;
    if (epsilon) eps = cakecut::Rational::parse(epsilon);
    auto verdict = cakecut::io::verify_result(instance->value, result_json, eps);
    *report_json = copy_out(verdict.json);
    if (!verdict.report.pass) {
      g_last_error = "maximum envy " + verdict.report.max_envy.str() + " exceeds epsilon " +
                     verdict.report.epsilon.str();
      return CAKECUT_ENVY_EXCEEDS_EPSILON;
    }
    return CAKECUT_OK;
  });
}

cakecut_status cakecut_oracle(const cakecut_instance* instance, const char* mode,
                              int64_t resolution, unsigned workers, char** out_json) {
  if (!instance) return null_argument("instance");
  if (!mode) return null_argument("mode");
  if (!out_json) return null_argument("out_json");
  *out_json = nullptr;
  return guarded([&] {
    auto outcome = cakecut::io::run_oracle(instance->value, cakecut::io::parse_oracle_mode(mode),
                                           resolution, workers);
    *out_json = copy_out(outcome.json);
    return CAKECUT_OK;
  });
}

cakecut_status cakecut_bench(const cakecut_instance* instance,
                             const cakecut_bench_options* options, char** out_csv) {
  if (!instance) return null_argument("instance");
  if (!out_csv) return null_argument("out_csv");
  *out_csv = nullptr;
  return guarded([&] {
    cakecut::io::BenchOptions bench;
    if (options) {
      if (options->meshes) {
        bench.meshes.assign(options->meshes, options->meshes + options->mesh_count);
      }
      if (options->mode == CAKECUT_MODE_SCAN) bench.modes = {cakecut::SearchMode::kScan};
      if (options->mode == CAKECUT_MODE_WALK) bench.modes = {cakecut::SearchMode::kWalk};
      bench.timing = options->timing != 0;
      bench.workers = options->workers > 0 ? options->workers : 1;
    }
    const auto rows = cakecut::io::run_bench(instance->value, bench);
    *out_csv = copy_out(cakecut::io::bench_csv(rows, bench.timing));
    return CAKECUT_OK;
  });
}

}  // extern "C"
