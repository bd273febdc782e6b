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

#include "cakecut/sperner.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include "cakecut/errors.hpp"

namespace cakecut {

namespace {

std::string dump(const std::vector<std::size_t>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i] + 1);
  }
  return out + "]";
}

ContiguousPartition partition_of(const std::vector<std::int64_t>& z, std::int64_t mesh) {
  std::vector<Rational> lengths;
  lengths.reserve(z.size() + 1);
  std::int64_t prev = 0;
  for (auto c : z) {
    lengths.emplace_back(c - prev, mesh);
    prev = c;
  }
  lengths.emplace_back(mesh - prev, mesh);
  return ContiguousPartition(std::move(lengths));
}

bool nondecreasing_in_range(const std::vector<std::int64_t>& z, std::int64_t mesh) {
  std::int64_t prev = 0;
  for (auto c : z) {
    if (c < prev) return false;
    prev = c;
  }
  return prev <= mesh;
}

// A perm over all coordinates is valid for `base` iff, wherever two adjacent
// coordinates of the base are equal, the right one is incremented first.
bool perm_fits(const std::vector<std::int64_t>& base, const std::vector<std::size_t>& position) {
  for (std::size_t j = 0; j + 1 < base.size(); ++j) {
    if (base[j] == base[j + 1] && position[j + 1] > position[j]) return false;
  }
  return true;
}

// Visits cells with base[0] == head in lexicographic order.
template <class Visit>
bool visit_cells_with_head(std::size_t dim, std::int64_t mesh, std::int64_t head, Visit&& visit) {
  ElementaryCell cell;
  cell.mesh = mesh;
  cell.base.assign(dim, head);
  cell.perm.resize(dim);
  std::vector<std::size_t> position(dim);
  // Odometer over nondecreasing bases b[1..] in [b[i-1], mesh - 1].
  while (true) {
    std::iota(cell.perm.begin(), cell.perm.end(), std::size_t{0});
    do {
      for (std::size_t i = 0; i < dim; ++i) position[cell.perm[i]] = i;
      if (perm_fits(cell.base, position)) {
        if (!visit(cell)) return false;
      }
    } while (std::next_permutation(cell.perm.begin(), cell.perm.end()));
    // advance base
    std::size_t i = dim;
    while (i > 1 && cell.base[i - 1] == mesh - 1) --i;
    if (i <= 1) return true;
    ++cell.base[i - 1];
    for (std::size_t j = i; j < dim; ++j) cell.base[j] = cell.base[i - 1];
  }
}

std::set<std::size_t> label_set(const std::vector<std::size_t>& labels) {
  return {labels.begin(), labels.end()};
}

}  // namespace

bool LatticeVertex::valid() const { return mesh >= 1 && nondecreasing_in_range(z, mesh); }

CutVector LatticeVertex::cuts() const {
  std::vector<Rational> cuts;
  cuts.reserve(z.size());
  for (auto c : z) cuts.emplace_back(c, mesh);
  return CutVector(std::move(cuts));
}

ContiguousPartition LatticeVertex::partition() const { return partition_of(z, mesh); }

std::vector<LatticeVertex> ElementaryCell::vertices() const {
  std::vector<LatticeVertex> out;
  out.reserve(perm.size() + 1);
  LatticeVertex v{base, mesh};
  out.push_back(v);
  for (auto coord : perm) {
    ++v.z[coord];
    out.push_back(v);
  }
  return out;
}

bool ElementaryCell::inside_order_region() const {
  for (const auto& v : vertices()) {
    if (!v.valid()) return false;
  }
  return true;
}

ContiguousPartition ElementaryCell::barycenter() const {
  const auto d = static_cast<std::int64_t>(perm.size());
  // coordinate perm[j] is raised in vertices j+1..d, i.e. d - j of d + 1.
  std::vector<Rational> cuts;
  cuts.reserve(base.size());
  for (auto b : base) cuts.emplace_back(b, mesh);
  for (std::size_t j = 0; j < perm.size(); ++j) {
    cuts[perm[j]] += Rational(d - static_cast<std::int64_t>(j), (d + 1) * mesh);
  }
  return partition_from_cuts(CutVector(std::move(cuts)));
}

bool LabeledCell::fully_labeled() const {
  std::vector<bool> seen(labels.size(), false);
  for (auto l : labels) {
    if (l >= seen.size() || seen[l]) return false;
    seen[l] = true;
  }
  return true;
}

Assignment::Assignment(std::vector<std::size_t> piece_of_player)
    : piece_of_(std::move(piece_of_player)), player_of_(piece_of_.size(), SIZE_MAX) {
  for (std::size_t p = 0; p < piece_of_.size(); ++p) {
    const auto piece = piece_of_[p];
    if (piece >= piece_of_.size() || player_of_[piece] != SIZE_MAX) {
      throw InputError("assignment is not a bijection");
    }
    player_of_[piece] = p;
  }
}

Assignment Assignment::identity(std::size_t n) {
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return Assignment(std::move(ids));
}

std::size_t owner_of(const LatticeVertex& v, std::size_t n) {
  std::int64_t sum = 0;
  for (auto c : v.z) sum += c;
  return static_cast<std::size_t>(sum % static_cast<std::int64_t>(n));
}

std::uint64_t cell_count(std::size_t n, std::int64_t mesh) {
  std::uint64_t count = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (count > UINT64_MAX / static_cast<std::uint64_t>(mesh)) return UINT64_MAX;
    count *= static_cast<std::uint64_t>(mesh);
  }
  return count;
}

void for_each_cell(std::size_t n, std::int64_t mesh,
                   const std::function<bool(const ElementaryCell&)>& visit, std::uint64_t cap) {
  if (n < 2 || mesh < 1) throw InputError("cell enumeration needs n >= 2 and mesh >= 1");
  const auto count = cell_count(n, mesh);
  if (count > cap) {
    throw ResourceLimit("mesh " + std::to_string(mesh) + " has " + std::to_string(count) +
                        " cells, above the cap of " + std::to_string(cap));
  }
  for (std::int64_t head = 0; head < mesh; ++head) {
    if (!visit_cells_with_head(n - 1, mesh, head, visit)) return;
  }
}

std::vector<ElementaryCell> enumerate_cells(std::size_t n, std::int64_t mesh, std::uint64_t cap) {
  std::vector<ElementaryCell> out;
  for_each_cell(
      n, mesh,
      [&](const ElementaryCell& c) {
        out.push_back(c);
        return true;
      },
      cap);
  return out;
}

std::size_t VertexLabeler::Hash::operator()(const std::vector<std::int64_t>& z) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto c : z) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

VertexLabeler::VertexLabeler(std::span<const DemandFunction> demands, std::int64_t mesh)
    : demands_(demands), mesh_(mesh) {}

std::size_t VertexLabeler::label(const std::vector<std::int64_t>& z) {
  if (auto it = cache_.find(z); it != cache_.end()) return it->second;
  const LatticeVertex v{z, mesh_};
  const std::size_t owner = owner_of(v, demands_.size());
  const auto demanded = checked_demand(demands_[owner], v.partition(), owner);
  ++evaluations_;
  cache_.emplace(z, demanded.front());
  return demanded.front();
}

LabeledCell VertexLabeler::label_cell(const ElementaryCell& cell) {
  LabeledCell out;
  out.cell = cell;
  for (const auto& v : cell.vertices()) {
    out.owners.push_back(owner_of(v, demands_.size()));
    out.labels.push_back(label(v.z));
  }
  return out;
}

std::size_t label_vertex(const LatticeVertex& v, std::span<const DemandFunction> demands) {
  if (demands.empty()) throw InputError("no players");
  if (!v.valid()) throw InputError("lattice vertex outside the order region");
  const std::size_t owner = owner_of(v, demands.size());
  return checked_demand(demands[owner], v.partition(), owner).front();
}

LabeledCell find_fully_labeled_scan(std::size_t n, std::int64_t mesh,
                                    std::span<const DemandFunction> demands,
                                    const SearchOptions& options, SearchStats* stats) {
  if (n < 2 || demands.size() != n) throw InputError("scan needs n >= 2 demand functions");
  if (mesh < 1) throw InputError("mesh must be positive");
  const auto total = cell_count(n, mesh);
  if (total > options.cell_cap) {
    throw ResourceLimit("mesh " + std::to_string(mesh) + " has " + std::to_string(total) +
                        " cells, above the cap of " + std::to_string(options.cell_cap));
  }
  const unsigned workers = std::max(1U, options.workers);
  std::vector<VertexLabeler> labelers;
  labelers.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) labelers.emplace_back(demands, mesh);

  struct Chunk {
    std::optional<LabeledCell> found;
    std::uint64_t visited = 0;
    std::exception_ptr error;
  };
  auto scan_head = [&](std::int64_t head, VertexLabeler& labeler, Chunk& chunk) {
    try {
      visit_cells_with_head(n - 1, mesh, head, [&](const ElementaryCell& cell) {
        ++chunk.visited;
        auto labeled = labeler.label_cell(cell);
        if (labeled.fully_labeled()) {
          chunk.found = std::move(labeled);
          return false;
        }
        return chunk.visited <= options.budget;
      });
    } catch (...) {
      chunk.error = std::current_exception();
    }
  };

  // Heads are handed out in rounds; the decision only looks at chunks in head
  // order, so the outcome and the visit count do not depend on `workers`.
  std::uint64_t visited = 0;
  for (std::int64_t round_start = 0; round_start < mesh; round_start += workers) {
    const auto round_size =
        static_cast<unsigned>(std::min<std::int64_t>(workers, mesh - round_start));
    std::vector<Chunk> chunks(round_size);
    if (round_size == 1) {
      scan_head(round_start, labelers[0], chunks[0]);
    } else {
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < round_size; ++w) {
        threads.emplace_back(scan_head, round_start + w, std::ref(labelers[w]),
                             std::ref(chunks[w]));
      }
      for (auto& t : threads) t.join();
    }
    for (auto& chunk : chunks) {
      if (chunk.error) std::rethrow_exception(chunk.error);
      visited += chunk.visited;
      if (chunk.found && visited <= options.budget) {
        if (stats) {
          stats->cells_visited = visited;
          stats->steps = visited;
        }
        return *std::move(chunk.found);
      }
      if (visited > options.budget) throw BudgetExhausted(visited);
    }
  }
  throw SpernerViolation("no fully-labeled cell at mesh " + std::to_string(mesh) +
                         " among " + std::to_string(visited) +
                         " cells; some demand function violates its contract");
}

namespace {

struct WalkNode {
  ElementaryCell cell;
  std::vector<std::size_t> labels;
};

// Drops vertex k; returns the index of the vertex that replaces it.
std::size_t pivot(ElementaryCell& cell, std::size_t k) {
  const std::size_t d = cell.perm.size();
  if (k == 0) {
    ++cell.base[cell.perm.front()];
    std::rotate(cell.perm.begin(), cell.perm.begin() + 1, cell.perm.end());
    return d;
  }
  if (k == d) {
    --cell.base[cell.perm.back()];
    std::rotate(cell.perm.rbegin(), cell.perm.rbegin() + 1, cell.perm.rend());
    return 0;
  }
  std::swap(cell.perm[k - 1], cell.perm[k]);
  return k;
}

class Walker {
 public:
  Walker(std::size_t n, std::int64_t mesh, std::span<const DemandFunction> demands,
         const SearchOptions& options)
      : n_(n), mesh_(mesh), labeler_(demands, mesh), budget_(options.budget) {}

  // nullopt: the path revisited a node.
  std::optional<LabeledCell> run() {
    WalkNode node;
    node.cell.mesh = mesh_;
    node.cell.base.assign(n_ - 1, 0);
    relabel(node);
    if (node.labels.front() != n_ - 1) {
      throw SpernerViolation("corner where the last piece is the whole cake is labeled " +
                             std::to_string(node.labels.front() + 1));
    }
    if (!visit(node)) return std::nullopt;
    // The corner is fully labeled in its 0-dimensional face: climb.
    std::size_t entered = lift(node);
    while (true) {
      if (!visit(node)) return std::nullopt;
      const std::size_t d = node.cell.dimension();
      const std::size_t low = n_ - 1 - d;  // the label missing from the doors of this face
      std::size_t exit = SIZE_MAX;
      if (node.labels[entered] == low) {
        if (d == n_ - 1) return labeler_.label_cell(node.cell);
        entered = lift(node);
        continue;
      }
      for (std::size_t k = 0; k <= d; ++k) {
        if (k != entered && node.labels[k] == node.labels[entered]) exit = k;
      }
      if (exit == SIZE_MAX) throw SpernerViolation("walk entered a cell through a non-door");
      entered = leave(node, exit);
    }
  }

  const SearchStats& stats() const { return stats_; }

 private:
  void relabel(WalkNode& node) {
    node.labels.clear();
    for (const auto& v : node.cell.vertices()) node.labels.push_back(labeler_.label(v.z));
  }

  bool visit(const WalkNode& node) {
    ++stats_.steps;
    if (node.cell.dimension() == n_ - 1) ++stats_.cells_visited;
    if (stats_.steps > budget_) throw BudgetExhausted(stats_.steps);
    return seen_.insert(node.cell).second;
  }

  // Moves into the next higher face; the new vertex is last.
  std::size_t lift(WalkNode& node) {
    const std::size_t d = node.cell.dimension();
    node.cell.perm.push_back(n_ - 2 - d);
    node.labels.push_back(labeler_.label(node.cell.vertices().back().z));
    return d + 1;
  }

  // Exits through the facet opposite vertex k. Returns the entry vertex of the
  // next node, which may lie in a lower face.
  std::size_t leave(WalkNode& node, std::size_t k) {
    while (true) {
      const std::size_t d = node.cell.dimension();
      ElementaryCell next = node.cell;
      const std::size_t fresh = pivot(next, k);
      if (next.inside_order_region()) {
        node.cell = std::move(next);
        node.labels.erase(node.labels.begin() + static_cast<std::ptrdiff_t>(k));
        const auto label = labeler_.label(node.cell.vertices()[fresh].z);
        node.labels.insert(node.labels.begin() + static_cast<std::ptrdiff_t>(fresh), label);
        return fresh;
      }
      // The door lies on the face where this face's leftmost free piece is
      // empty: drop to the lower face, where it is fully labeled.
      const std::size_t first_free = n_ - 1 - d;
      if (k != d || node.cell.perm.back() != first_free || node.cell.base[first_free] != 0) {
        throw SpernerViolation("walk reached the boundary through a door off the lower face");
      }
      node.cell.perm.pop_back();
      node.labels.pop_back();
      if (node.cell.dimension() == 0) throw SpernerViolation("walk returned to its start");
      if (!visit(node)) throw SpernerViolation("walk revisited a lower face");
      const std::size_t low = n_ - 1 - node.cell.dimension();
      auto it = std::find(node.labels.begin(), node.labels.end(), low);
      if (it == node.labels.end()) throw SpernerViolation("lower face is not fully labeled");
      k = static_cast<std::size_t>(it - node.labels.begin());
    }
  }

  std::size_t n_;
  std::int64_t mesh_;
  VertexLabeler labeler_;
  std::uint64_t budget_;
  SearchStats stats_;
  std::set<ElementaryCell> seen_;
};

}  // namespace

LabeledCell find_fully_labeled_walk(std::size_t n, std::int64_t mesh,
                                    std::span<const DemandFunction> demands,
                                    const SearchOptions& options, SearchStats* stats) {
  if (n < 2 || demands.size() != n) throw InputError("walk needs n >= 2 demand functions");
  if (mesh < 1) throw InputError("mesh must be positive");
  Walker walker(n, mesh, demands, options);
  auto found = walker.run();
  if (stats) *stats = walker.stats();
  if (found) return *std::move(found);
  SearchStats scan_stats;
  SearchOptions rest = options;
  rest.budget = options.budget - std::min(options.budget, walker.stats().steps);
  auto cell = find_fully_labeled_scan(n, mesh, demands, rest, &scan_stats);
  if (stats) {
    stats->fell_back = true;
    stats->diagnostic = "walk revisited a node after " + std::to_string(walker.stats().steps) +
                        " steps; fell back to scan";
    stats->cells_visited += scan_stats.cells_visited;
    stats->steps += scan_stats.steps;
  }
  return cell;
}

std::uint64_t count_fully_labeled(std::size_t n, std::int64_t mesh,
                                  std::span<const DemandFunction> demands, std::uint64_t cap) {
  VertexLabeler labeler(demands, mesh);
  std::uint64_t count = 0;
  for_each_cell(
      n, mesh,
      [&](const ElementaryCell& cell) {
        if (labeler.label_cell(cell).fully_labeled()) ++count;
        return true;
      },
      cap);
  return count;
}

IndividualAllocation read_allocation(const LabeledCell& cell) {
  const std::size_t n = cell.owners.size();
  if (!cell.fully_labeled() || label_set(cell.owners).size() != n) {
    throw SpernerViolation("certificate cell is not fully labeled with distinct owners: owners " +
                           dump(cell.owners) + ", labels " + dump(cell.labels));
  }
  std::vector<std::size_t> piece_of(n);
  for (std::size_t i = 0; i < n; ++i) piece_of[cell.owners[i]] = cell.labels[i];
  return IndividualAllocation{cell.cell.barycenter(), Assignment(std::move(piece_of)), cell,
                              Rational(static_cast<std::int64_t>(n) - 1, cell.cell.mesh)};
}

namespace {

IndividualAllocation single_player() {
  LabeledCell cell;
  cell.cell.mesh = 1;
  cell.owners = {0};
  cell.labels = {0};
  return IndividualAllocation{ContiguousPartition::whole(), Assignment::identity(1),
                              std::move(cell), Rational(0)};
}

SearchMode choose_mode(const SolverConfig& config, std::size_t n, std::int64_t mesh) {
  if (config.mode != SearchMode::kAuto) return config.mode;
  return (n <= config.scan_max_players && cell_count(n, mesh) <= std::min(config.scan_max_cells, config.cell_cap))
             ? SearchMode::kScan
             : SearchMode::kWalk;
}

}  // namespace

std::int64_t guarantee_mesh(std::size_t n, const Rational& max_density, const Rational& eps) {
  if (eps.sign() <= 0) throw InputError("epsilon must be positive");
  const auto bound =
      ceil_to_int(Rational(2) * max_density * Rational(static_cast<std::int64_t>(n) - 1) / eps);
  return std::max<std::int64_t>(static_cast<std::int64_t>(n), bound);
}

IndividualSolution run_mesh_schedule(std::span<const DemandFunction> demands,
                                     const SolverConfig& config, const ReadoutCheck& check,
                                     std::int64_t guarantee) {
  const std::size_t n = demands.size();
  if (n == 0) throw InputError("no players");
  if (config.mesh < 0) throw InputError("mesh must be positive");
  IndividualSolution out{single_player(), std::nullopt, SolveStatus::kConverged, {}};
  if (n == 1) {
    checked_demand(demands[0], ContiguousPartition::whole(), 0);
    if (check) out.envy = check(out.allocation);
    out.status = check ? SolveStatus::kConverged : SolveStatus::kMeshCertificate;
    return out;
  }

  std::int64_t mesh = config.mesh > 0 ? config.mesh : static_cast<std::int64_t>(n);
  std::uint64_t spent = 0;
  bool have_best = false;
  constexpr std::int64_t kMaxMesh = std::int64_t{1} << 40;
  while (true) {
    LevelStats level;
    level.mesh = mesh;
    level.mode = choose_mode(config, n, mesh);
    SearchOptions options;
    options.workers = config.workers;
    options.cell_cap = config.cell_cap;
    options.budget = config.budget_cells - std::min(config.budget_cells, spent);
    SearchStats stats;
    LabeledCell cell;
    try {
      cell = level.mode == SearchMode::kWalk
                 ? find_fully_labeled_walk(n, mesh, demands, options, &stats)
                 : find_fully_labeled_scan(n, mesh, demands, options, &stats);
    } catch (const BudgetExhausted& e) {
      if (!have_best) throw;
      level.steps = e.spent();
      out.levels.push_back(level);
      out.status = SolveStatus::kBudgetExceeded;
      return out;
    } catch (const ResourceLimit&) {
      if (!have_best) throw;
      out.levels.push_back(level);
      out.status = SolveStatus::kBudgetExceeded;
      return out;
    }
    spent += stats.steps;
    level.cells_visited = stats.cells_visited;
    level.steps = stats.steps;
    level.fell_back = stats.fell_back;

    auto alloc = read_allocation(cell);
    if (!check) {
      out.allocation = std::move(alloc);
      out.levels.push_back(level);
      out.status = SolveStatus::kMeshCertificate;
      return out;
    }
    auto report = check(alloc);
    if (report) level.envy = report->max_envy;
    out.levels.push_back(level);
    const bool better = !have_best || !report || !out.envy || report->max_envy < out.envy->max_envy;
    if (better) {
      out.allocation = std::move(alloc);
      out.envy = report;
      have_best = true;
    }
    if (!report || report->pass) {
      out.status = SolveStatus::kConverged;
      return out;
    }
    if (mesh >= guarantee) {
      throw SpernerViolation("readout envy " + report->max_envy.str() + " at mesh " +
                             std::to_string(mesh) + " exceeds the mesh bound");
    }
    if (mesh > kMaxMesh / 2) {
      out.status = SolveStatus::kBudgetExceeded;
      return out;
    }
    mesh *= 2;
  }
}

IndividualSolution solve_individual(std::span<const PiecewiseConstantValuation> valuations,
                                    const Rational& eps, const SolverConfig& config) {
  if (valuations.empty()) throw InputError("no players");
  const auto demands = valuation_demands(valuations);
  const auto guarantee = guarantee_mesh(valuations.size(), max_density(valuations), eps);
  ReadoutCheck check = [&](const IndividualAllocation& alloc) -> std::optional<EnvyReport> {
    return check_envy_individual(valuations, alloc, eps);
  };
  return run_mesh_schedule(demands, config, check, guarantee);
}

IndividualSolution solve_individual(std::span<const DemandFunction> demands,
                                    const SolverConfig& config) {
  return run_mesh_schedule(demands, config, nullptr, 0);
}

EnvyReport check_envy_individual(std::span<const PiecewiseConstantValuation> valuations,
                                 const IndividualAllocation& alloc, const Rational& eps) {
  if (alloc.assignment.size() != valuations.size()) {
    throw InputError("allocation and valuations disagree on the number of players");
  }
  return envy_report(valuations, alloc.partition, alloc.assignment.pieces(), eps);
}

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::kAuto: return "auto";
    case SearchMode::kScan: return "scan";
    case SearchMode::kWalk: return "walk";
  }
  return "auto";
}

SearchMode parse_search_mode(const std::string& text) {
  if (text == "auto") return SearchMode::kAuto;
  if (text == "scan") return SearchMode::kScan;
  if (text == "walk") return SearchMode::kWalk;
  throw InputError("unknown search mode '" + text + "' (expected scan, walk or auto)");
}

}  // namespace cakecut
