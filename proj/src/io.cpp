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

#include "cakecut/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cakecut/errors.hpp"
#include "cakecut/random.hpp"
#include "json.hpp"

namespace cakecut::io {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kEnvyNotion =
    "additive: best piece value minus own piece value; a quantitative notion added on top of "
    "boolean preferences";

Rational rational_field(const Json& node, const std::string& where) {
  if (node.is_string()) {
    try {
      return Rational::parse(node.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (node.is_number_integer()) return Rational(node.get<std::int64_t>());
  if (node.is_number_float()) return Rational::parse(node.dump());
  throw InputError(where + ": expected a rational string such as \"1/3\"");
}

std::vector<Rational> rational_list(const Json& node, const std::string& where) {
  if (!node.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(rational_field(node[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <class T>
T unsigned_field(const Json& node, const std::string& where) {
  if (!node.is_number_integer() || node.get<std::int64_t>() < 0) {
    throw InputError(where + ": expected a nonnegative integer");
  }
  return static_cast<T>(node.get<std::uint64_t>());
}

Json rational_array(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

Json decimal_array(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.decimal());
  return out;
}

std::string status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMeshCertificate: return "mesh-certificate";
    case SolveStatus::kBudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

Json envy_json(const Instance& instance, const EnvyReport& report,
               const std::vector<std::size_t>& group_of) {
  Json players = Json::array();
  for (std::size_t p = 0; p < report.envy.size(); ++p) {
    players.push_back(Json{{"player", instance.names[p]},
                           {"group", group_of[p] + 1},
                           {"envy", report.envy[p].str()},
                           {"envyDecimal", report.envy[p].decimal()}});
  }
  Json enviers = Json::array();
  for (auto p : report.enviers()) enviers.push_back(instance.names[p]);
  return Json{{"notion", kEnvyNotion},
              {"epsilon", report.epsilon.str()},
              {"maxEnvy", report.max_envy.str()},
              {"maxEnvyDecimal", report.max_envy.decimal()},
              {"pass", report.pass},
              {"enviers", enviers},
              {"players", players}};
}

const Json& require(const Json& node, const char* key, const std::string& where) {
  if (!node.is_object() || !node.contains(key)) {
    throw InputError(where + ": missing field \"" + key + "\"");
  }
  return node.at(key);
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  const Json doc = parse_json(json_text, "instance");
  if (!doc.is_object()) throw InputError("instance: expected a JSON object");
  Instance inst;
  if (doc.contains("normalize")) {
    if (!doc["normalize"].is_boolean()) throw InputError("normalize: expected true or false");
    inst.normalize = doc["normalize"].get<bool>();
  }
  const Json& players = require(doc, "players", "instance");
  if (!players.is_array() || players.empty()) {
    throw InputError("players: expected a nonempty array");
  }
  for (std::size_t p = 0; p < players.size(); ++p) {
    const std::string where = "players[" + std::to_string(p) + "]";
    const Json& pj = players[p];
    std::string name = "p" + std::to_string(p + 1);
    if (pj.contains("name")) {
      if (!pj["name"].is_string()) throw InputError(where + ".name: expected a string");
      name = pj["name"].get<std::string>();
    }
    auto bps = rational_list(require(pj, "breakpoints", where), where + ".breakpoints");
    auto dens = rational_list(require(pj, "densities", where), where + ".densities");
    try {
      inst.valuations.push_back(
          inst.normalize ? PiecewiseConstantValuation::normalized(std::move(bps), std::move(dens))
                         : PiecewiseConstantValuation(std::move(bps), std::move(dens)));
    } catch (const InputError& e) {
      throw InputError(where + " (" + name + "): " + e.what());
    }
    if (std::find(inst.names.begin(), inst.names.end(), name) != inst.names.end()) {
      throw InputError(where + ": duplicate player name '" + name + "'");
    }
    inst.names.push_back(std::move(name));
  }
  if (doc.contains("groups")) {
    const Json& groups = doc["groups"];
    if (!groups.is_array() || groups.empty()) throw InputError("groups: expected a nonempty array");
    for (std::size_t j = 0; j < groups.size(); ++j) {
      const auto k = unsigned_field<std::size_t>(groups[j], "groups[" + std::to_string(j) + "]");
      if (k == 0) throw InputError("groups[" + std::to_string(j) + "]: sizes must be positive");
      inst.group_sizes.push_back(k);
    }
  } else {
    inst.group_sizes.assign(inst.players(), 1);
  }
  std::size_t total = 0;
  for (auto k : inst.group_sizes) total += k;
  if (total != inst.players()) {
    throw InputError("groups: sizes sum to " + std::to_string(total) + " but there are " +
                     std::to_string(inst.players()) + " players");
  }
  inst.epsilon = rational_field(require(doc, "epsilon", "instance"), "epsilon");
  if (inst.epsilon.sign() <= 0) throw InputError("epsilon: must be positive");

  if (doc.contains("fixedMembership")) {
    const Json& fm = doc["fixedMembership"];
    if (!fm.is_array() || fm.size() != inst.players()) {
      throw InputError("fixedMembership: expected one group number per player");
    }
    std::vector<std::size_t> membership;
    for (std::size_t p = 0; p < fm.size(); ++p) {
      const auto g =
          unsigned_field<std::size_t>(fm[p], "fixedMembership[" + std::to_string(p) + "]");
      if (g < 1 || g > inst.group_sizes.size()) {
        throw InputError("fixedMembership[" + std::to_string(p) + "]: group " +
                         std::to_string(g) + " is not between 1 and " +
                         std::to_string(inst.group_sizes.size()));
      }
      membership.push_back(g - 1);
    }
    std::vector<std::size_t> counts(inst.group_sizes.size(), 0);
    for (auto g : membership) ++counts[g];
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (counts[j] != inst.group_sizes[j]) {
        throw InputError("fixedMembership: group " + std::to_string(j + 1) + " has " +
                         std::to_string(counts[j]) + " members but its size is " +
                         std::to_string(inst.group_sizes[j]));
      }
    }
    inst.fixed_membership = std::move(membership);
  }
  if (doc.contains("config")) {
    const Json& cfg = doc["config"];
    if (!cfg.is_object()) throw InputError("config: expected an object");
    if (cfg.contains("mesh")) {
      inst.config.mesh = unsigned_field<std::int64_t>(cfg["mesh"], "config.mesh");
    }
    if (cfg.contains("mode")) {
      if (!cfg["mode"].is_string()) throw InputError("config.mode: expected a string");
      inst.config.mode = parse_search_mode(cfg["mode"].get<std::string>());
    }
    if (cfg.contains("budget")) {
      inst.config.budget = unsigned_field<std::uint64_t>(cfg["budget"], "config.budget");
    }
    if (cfg.contains("workers")) {
      inst.config.workers = unsigned_field<unsigned>(cfg["workers"], "config.workers");
    }
    if (cfg.contains("seed")) {
      inst.config.seed = unsigned_field<std::uint64_t>(cfg["seed"], "config.seed");
    }
  }
  return inst;
}

std::string emit_instance(const Instance& inst) {
  Json players = Json::array();
  for (std::size_t p = 0; p < inst.players(); ++p) {
    players.push_back(Json{{"name", inst.names[p]},
                           {"breakpoints", rational_array(inst.valuations[p].breakpoints())},
                           {"densities", rational_array(inst.valuations[p].densities())}});
  }
  Json doc{{"players", players}, {"groups", inst.group_sizes}, {"epsilon", inst.epsilon.str()}};
  if (inst.normalize) doc["normalize"] = true;
  if (inst.fixed_membership) {
    Json fm = Json::array();
    for (auto g : *inst.fixed_membership) fm.push_back(g + 1);
    doc["fixedMembership"] = fm;
  }
  Json cfg = Json::object();
  if (inst.config.mesh) cfg["mesh"] = *inst.config.mesh;
  if (inst.config.mode) cfg["mode"] = to_string(*inst.config.mode);
  if (inst.config.budget) cfg["budget"] = *inst.config.budget;
  if (inst.config.workers) cfg["workers"] = *inst.config.workers;
  if (inst.config.seed) cfg["seed"] = *inst.config.seed;
  if (!cfg.empty()) doc["config"] = cfg;
  return doc.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

SolverConfig RunSettings::solver_config() const {
  SolverConfig cfg;
  cfg.mesh = mesh;
  cfg.mode = mode;
  cfg.workers = workers;
  cfg.budget_cells = budget_cells;
  return cfg;
}

RunSettings settings_from(const Instance& inst) {
  RunSettings s;
  if (inst.config.mesh) s.mesh = *inst.config.mesh;
  if (inst.config.mode) s.mode = *inst.config.mode;
  if (inst.config.budget) s.budget_cells = *inst.config.budget;
  if (inst.config.workers) s.workers = *inst.config.workers;
  if (inst.config.seed) s.seed = *inst.config.seed;
  return s;
}

SolveOutcome solve_instance(const Instance& inst, const RunSettings& settings) {
  const Rational eps = settings.epsilon.value_or(inst.epsilon);
  if (eps.sign() <= 0) throw InputError("epsilon must be positive");
  const auto start = std::chrono::steady_clock::now();
  const auto groups = inst.groups();
  auto solution = [&] {
    if (!groups.all_singletons()) {
      return solve_groups(inst.valuations, groups, eps, settings.solver_config());
    }
    auto individual = solve_individual(inst.valuations, eps, settings.solver_config());
    return GroupSolution{
        assemble_groups(individual.allocation.partition, individual.allocation.assignment, groups),
        individual.allocation, individual.envy, individual.status, individual.levels};
  }();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return SolveOutcome{std::move(solution), eps, settings, elapsed.count()};
}

std::string result_json(const Instance& inst, const SolveOutcome& outcome) {
  const auto& sol = outcome.solution;
  const auto groups = inst.groups();
  const auto& alloc = sol.allocation;
  const auto cuts = cuts_from_partition(alloc.partition).cuts();

  Json group_list = Json::array();
  for (std::size_t j = 0; j < groups.groups(); ++j) {
    const auto [left, right] = alloc.partition.bounds(j);
    Json members = Json::array();
    for (auto p : alloc.members(j)) members.push_back(inst.names[p]);
    group_list.push_back(Json{{"group", j + 1},
                              {"piece", j + 1},
                              {"size", groups.size(j)},
                              {"left", left.str()},
                              {"right", right.str()},
                              {"length", alloc.partition[j].str()},
                              {"members", members}});
  }
  Json membership = Json::array();
  for (std::size_t p = 0; p < inst.players(); ++p) {
    membership.push_back(Json{{"player", inst.names[p]}, {"group", alloc.membership[p] + 1}});
  }

  const auto& lifted = sol.lifted;
  const auto& cert = lifted.certificate;
  Json perm = Json::array();
  for (auto c : cert.cell.perm) perm.push_back(c + 1);
  Json owners = Json::array();
  for (auto o : cert.owners) owners.push_back(inst.names[o]);
  Json labels = Json::array();
  for (auto l : cert.labels) labels.push_back(l + 1);
  Json piece_of_player = Json::array();
  for (std::size_t p = 0; p < lifted.assignment.size(); ++p) {
    piece_of_player.push_back(Json{{"player", inst.names[p]},
                                   {"piece", lifted.assignment.piece_of(p) + 1}});
  }

  Json levels = Json::array();
  for (const auto& level : sol.levels) {
    Json row{{"mesh", level.mesh},
             {"mode", to_string(level.mode)},
             {"cellsVisited", level.cells_visited},
             {"steps", level.steps},
             {"fellBack", level.fell_back}};
    if (level.envy) row["maxEnvy"] = level.envy->str();
    levels.push_back(row);
  }

  Json stable{{"format", "cakecut-result/1"},
              {"status", status_name(sol.status)},
              {"allocation",
               Json{{"cuts", rational_array(cuts)},
                    {"cutsDecimal", decimal_array(cuts)},
                    {"groups", group_list},
                    {"membership", membership}}}};
  if (sol.envy) {
    stable["envy"] = envy_json(inst, *sol.envy, alloc.membership);
  }
  stable["certificate"] = Json{
      {"mesh", cert.cell.mesh},
      {"meshDistance", lifted.mesh_distance.str()},
      {"base", cert.cell.base},
      {"perm", perm},
      {"owners", owners},
      {"labels", labels},
      {"individualCuts", rational_array(cuts_from_partition(lifted.partition).cuts())},
      {"pieceOfPlayer", piece_of_player},
      {"note",
       "every owner demanded its labeled piece at the corresponding cell vertex; vertices lie "
       "within meshDistance of the individual cuts"}};
  stable["levels"] = levels;
  stable["provenance"] =
      Json{{"tool", "cakecut"},
           {"version", CAKECUT_VERSION},
           {"config",
            Json{{"epsilon", outcome.epsilon.str()},
                 {"mesh", outcome.settings.mesh},
                 {"mode", to_string(outcome.settings.mode)},
                 {"budgetCells", outcome.settings.budget_cells},
                 {"seed", outcome.settings.seed}}}};

  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream stamp;
  stamp << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  Json doc{{"stable", stable},
           {"runtime",
            Json{{"workers", outcome.settings.workers},
                 {"seconds", outcome.seconds},
                 {"timestamp", stamp.str()}}}};
  return doc.dump(2) + "\n";
}

VerifyOutcome verify_result(const Instance& inst, const std::string& result_text,
                            const std::optional<Rational>& epsilon) {
  const Json doc = parse_json(result_text, "result");
  const Json& stable = require(doc, "stable", "result");
  const Json& alloc = require(stable, "allocation", "result.stable");
  const auto groups = inst.groups();
  auto cuts = rational_list(require(alloc, "cuts", "allocation"), "allocation.cuts");
  if (cuts.size() + 1 != groups.groups()) {
    throw InputError("allocation.cuts: expected " + std::to_string(groups.groups() - 1) +
                     " cuts for " + std::to_string(groups.groups()) + " groups");
  }
  auto partition = partition_from_cuts(CutVector(std::move(cuts)));

  const Json& membership = require(alloc, "membership", "allocation");
  if (!membership.is_array() || membership.size() != inst.players()) {
    throw InputError("allocation.membership: expected one entry per instance player");
  }
  std::vector<std::size_t> group_of(inst.players());
  std::vector<std::size_t> counts(groups.groups(), 0);
  for (std::size_t p = 0; p < inst.players(); ++p) {
    const std::string where = "allocation.membership[" + std::to_string(p) + "]";
    const Json& entry = membership[p];
    const Json& name = require(entry, "player", where);
    if (!name.is_string() || name.get<std::string>() != inst.names[p]) {
      throw InputError(where + ": expected player '" + inst.names[p] + "'");
    }
    const auto g = unsigned_field<std::size_t>(require(entry, "group", where), where + ".group");
    if (g < 1 || g > groups.groups()) throw InputError(where + ": no such group");
    group_of[p] = g - 1;
    ++counts[g - 1];
  }
  for (std::size_t j = 0; j < groups.groups(); ++j) {
    if (counts[j] != groups.size(j)) {
      throw InputError("group " + std::to_string(j + 1) + " has " + std::to_string(counts[j]) +
                       " members, expected " + std::to_string(groups.size(j)));
    }
  }
  const Rational eps = epsilon.value_or(inst.epsilon);
  const GroupAllocation allocation{partition, group_of};
  auto report = verify_group_envy(inst.valuations, allocation, eps);
  Json out = envy_json(inst, report, group_of);
  return VerifyOutcome{std::move(report), out.dump(2) + "\n"};
}

OracleMode parse_oracle_mode(const std::string& text) {
  if (text == "individual") return OracleMode::kIndividual;
  if (text == "variable") return OracleMode::kVariable;
  if (text == "fixed") return OracleMode::kFixed;
  throw InputError("unknown oracle mode '" + text + "' (expected individual, variable or fixed)");
}

std::string to_string(OracleMode mode) {
  switch (mode) {
    case OracleMode::kIndividual: return "individual";
    case OracleMode::kVariable: return "variable";
    case OracleMode::kFixed: return "fixed";
  }
  return "individual";
}

OracleOutcome run_oracle(const Instance& inst, OracleMode mode, std::int64_t resolution,
                         unsigned workers) {
  OracleLimits limits;
  limits.workers = std::max(1U, workers);
  OracleResult result;
  switch (mode) {
    case OracleMode::kIndividual:
      result = grid_min_envy_individual(inst.valuations, GridSpec{resolution}, limits);
      break;
    case OracleMode::kVariable:
      result = grid_min_envy_groups(inst.valuations, inst.groups(), GridSpec{resolution}, limits);
      break;
    case OracleMode::kFixed:
      if (!inst.fixed_membership) throw InputError("fixed mode needs fixedMembership");
      result = fixed_group_min_envy(inst.valuations, *inst.fixed_membership,
                                    GridSpec{resolution}, limits);
      break;
  }
  Json argmin = Json::array();
  for (const auto& cuts : result.argmin) argmin.push_back(rational_array(cuts.cuts()));
  Json holdings = Json::array();
  for (std::size_t p = 0; p < result.best_piece_of_player.size(); ++p) {
    holdings.push_back(Json{{"player", inst.names[p]},
                            {"piece", result.best_piece_of_player[p] + 1}});
  }
  Json doc{{"mode", to_string(mode)},
           {"resolution", resolution},
           {"gridPoints", result.grid_points},
           {"minMaxEnvy", result.min_max_envy.str()},
           {"minMaxEnvyDecimal", result.min_max_envy.decimal()},
           {"argmin", argmin},
           {"best", Json{{"cuts", rational_array(result.best_cuts.cuts())},
                         {"pieceOfPlayer", holdings}}}};
  return OracleOutcome{std::move(result), doc.dump(2) + "\n"};
}

std::vector<BenchRow> run_bench(const Instance& inst, const BenchOptions& options) {
  const std::size_t n = inst.players();
  if (n < 2) throw InputError("bench needs at least two players");
  const auto groups = inst.groups();
  const auto coarse = valuation_demands(inst.valuations);
  std::vector<DemandFunction> demands;
  for (const auto& f : coarse) demands.push_back(lift_demand(f, groups));
  const Rational density = max_density(inst.valuations);

  std::vector<std::int64_t> meshes = options.meshes;
  if (meshes.empty()) {
    const auto base = static_cast<std::int64_t>(n);
    meshes = {base, 2 * base, 4 * base};
  }
  std::vector<BenchRow> rows;
  for (auto mode : options.modes) {
    for (auto mesh : meshes) {
      if (mesh < 1) throw InputError("bench meshes must be positive");
      SearchOptions search;
      search.workers = options.workers;
      search.cell_cap = options.cell_cap;
      SearchStats stats;
      const auto start = std::chrono::steady_clock::now();
      const auto cell = mode == SearchMode::kWalk
                            ? find_fully_labeled_walk(n, mesh, demands, search, &stats)
                            : find_fully_labeled_scan(n, mesh, demands, search, &stats);
      const std::chrono::duration<double, std::milli> elapsed =
          std::chrono::steady_clock::now() - start;
      const auto alloc = read_allocation(cell);
      const auto grouped = assemble_groups(alloc.partition, alloc.assignment, groups);
      BenchRow row;
      row.mode = mode;
      row.mesh = mesh;
      row.cells_visited = stats.cells_visited;
      row.steps = stats.steps;
      row.envy = verify_group_envy(inst.valuations, grouped, Rational(0)).max_envy;
      row.bound = Rational(2) * density * Rational(static_cast<std::int64_t>(n) - 1) / Rational(mesh);
      row.millis = elapsed.count();
      rows.push_back(row);
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool timing) {
  std::ostringstream out;
  out << "mode,mesh,cells_visited,steps,envy,envy_decimal,bound";
  if (timing) out << ",time_ms";
  out << "\n";
  for (const auto& r : rows) {
    out << to_string(r.mode) << ',' << r.mesh << ',' << r.cells_visited << ',' << r.steps << ','
        << r.envy.str() << ',' << r.envy.decimal() << ',' << r.bound.str();
    if (timing) out << ',' << std::fixed << std::setprecision(3) << r.millis;
    out << "\n";
  }
  return out.str();
}

Instance generated_instance(std::uint64_t seed, std::size_t players, std::size_t segments,
                            bool uniform, std::vector<std::size_t> sizes) {
  if (players == 0) throw InputError("generator needs at least one player");
  Instance inst;
  RandomValuationSpec spec;
  spec.segments = segments;
  if (uniform) {
    inst.valuations.assign(players, PiecewiseConstantValuation::uniform());
  } else {
    inst.valuations = random_valuations(seed, players, spec);
  }
  for (std::size_t p = 0; p < players; ++p) inst.names.push_back("p" + std::to_string(p + 1));
  inst.group_sizes = sizes.empty() ? std::vector<std::size_t>(players, 1) : std::move(sizes);
  inst.epsilon = Rational(1, 100);
  inst.config.seed = seed;
  return inst;
}

}  // namespace cakecut::io
