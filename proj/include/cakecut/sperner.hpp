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

#ifndef CAKECUT_SPERNER_HPP_
#define CAKECUT_SPERNER_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cakecut/demand.hpp"
#include "cakecut/partition.hpp"
#include "cakecut/rational.hpp"
#include "cakecut/valuation.hpp"

namespace cakecut {

// Point z / mesh of the cut space, 0 <= z[0] <= ... <= z[n-2] <= mesh.
struct LatticeVertex {
  std::vector<std::int64_t> z;
  std::int64_t mesh = 1;

  bool valid() const;
  CutVector cuts() const;
  ContiguousPartition partition() const;
};

// Freudenthal (Kuhn) simplex: vertices base, base + e[perm[0]],
// base + e[perm[0]] + e[perm[1]], ... `perm` lists coordinate indices. Full
// cells have perm.size() == z.size(); the walk also uses lower-dimensional
// faces whose remaining coordinates stay at 0.
struct ElementaryCell {
  std::vector<std::int64_t> base;
  std::vector<std::size_t> perm;
  std::int64_t mesh = 1;

  std::size_t dimension() const { return perm.size(); }
  std::vector<LatticeVertex> vertices() const;
  bool inside_order_region() const;
  // Partition at the average of the vertices.
  ContiguousPartition barycenter() const;

  friend auto operator<=>(const ElementaryCell&, const ElementaryCell&) = default;
  friend bool operator==(const ElementaryCell&, const ElementaryCell&) = default;
};

struct LabeledCell {
  ElementaryCell cell;
  std::vector<std::size_t> owners;  // per vertex
  std::vector<std::size_t> labels;  // per vertex

  bool fully_labeled() const;
  friend bool operator==(const LabeledCell&, const LabeledCell&) = default;
};

// Bijection player -> piece. Players keep their original indices; the
// "renumbering" of players is this object, not a relabeling.
class Assignment {
 public:
  explicit Assignment(std::vector<std::size_t> piece_of_player);
  static Assignment identity(std::size_t n);

  std::size_t size() const { return piece_of_.size(); }
  std::size_t piece_of(std::size_t player) const { return piece_of_[player]; }
  std::size_t player_of(std::size_t piece) const { return player_of_[piece]; }
  const std::vector<std::size_t>& pieces() const { return piece_of_; }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.piece_of_ == b.piece_of_;
  }

 private:
  std::vector<std::size_t> piece_of_;
  std::vector<std::size_t> player_of_;
};

struct IndividualAllocation {
  ContiguousPartition partition;
  Assignment assignment;
  LabeledCell certificate;
  // Every player demanded their piece at a cut vector within this distance
  // (per coordinate) of `partition`'s cuts: (n - 1) / mesh.
  Rational mesh_distance;
};

// ((sum of z) mod n), 0-based. Each Freudenthal step raises the sum by one,
// so the n vertices of a full cell have n distinct owners.
std::size_t owner_of(const LatticeVertex& v, std::size_t n);

// mesh^(n-1), saturating at UINT64_MAX.
std::uint64_t cell_count(std::size_t n, std::int64_t mesh);

// Visits every full cell of the order region once, ordered lexicographically
// by (base, perm). Stops early when `visit` returns false. Throws
// ResourceLimit if cell_count(n, mesh) exceeds `cap`.
void for_each_cell(std::size_t n, std::int64_t mesh,
                   const std::function<bool(const ElementaryCell&)>& visit,
                   std::uint64_t cap = 50'000'000);
std::vector<ElementaryCell> enumerate_cells(std::size_t n, std::int64_t mesh,
                                            std::uint64_t cap = 50'000'000);

// Labels lattice vertices by the owner's demand, caching per vertex.
class VertexLabeler {
 public:
  VertexLabeler(std::span<const DemandFunction> demands, std::int64_t mesh);

  std::size_t label(const std::vector<std::int64_t>& z);
  LabeledCell label_cell(const ElementaryCell& cell);
  std::size_t players() const { return demands_.size(); }
  std::uint64_t evaluations() const { return evaluations_; }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<std::int64_t>& z) const noexcept;
  };
  std::span<const DemandFunction> demands_;
  std::int64_t mesh_;
  std::uint64_t evaluations_ = 0;
  std::unordered_map<std::vector<std::int64_t>, std::size_t, Hash> cache_;
};

// Smallest piece index demanded by the vertex's owner. Throws ContractError
// if the demand is not hungry.
std::size_t label_vertex(const LatticeVertex& v, std::span<const DemandFunction> demands);

enum class SearchMode { kAuto, kScan, kWalk };

struct SearchOptions {
  unsigned workers = 1;
  std::uint64_t cell_cap = 50'000'000;
  std::uint64_t budget = UINT64_MAX;  // cells (scan) or steps (walk)
};

struct SearchStats {
  std::uint64_t cells_visited = 0;  // full-dimensional cells examined
  std::uint64_t steps = 0;          // all nodes, including lower-dimensional faces
  bool fell_back = false;
  std::string diagnostic;
};

// Lexicographically first fully-labeled cell. The result does not depend on
// options.workers. Throws SpernerViolation if none exists.
LabeledCell find_fully_labeled_scan(std::size_t n, std::int64_t mesh,
                                    std::span<const DemandFunction> demands,
                                    const SearchOptions& options = {},
                                    SearchStats* stats = nullptr);

// Door-in/door-out path from the corner where the last piece is the whole
// cake, moving through the nested faces where only the last d + 1 pieces can
// be nonempty. Falls back to the scan if the path revisits a node.
LabeledCell find_fully_labeled_walk(std::size_t n, std::int64_t mesh,
                                    std::span<const DemandFunction> demands,
                                    const SearchOptions& options = {},
                                    SearchStats* stats = nullptr);

// Number of fully-labeled full cells (exhaustive).
std::uint64_t count_fully_labeled(std::size_t n, std::int64_t mesh,
                                  std::span<const DemandFunction> demands,
                                  std::uint64_t cap = 50'000'000);

// owner(v) <- label(v) over the cell's vertices; partition at the barycenter.
IndividualAllocation read_allocation(const LabeledCell& cell);

struct SolverConfig {
  // Valuation-backed: first mesh of the doubling schedule (0 picks n).
  // Abstract demands: the requested mesh (0 picks n).
  std::int64_t mesh = 0;
  SearchMode mode = SearchMode::kAuto;
  unsigned workers = 1;
  std::uint64_t budget_cells = 200'000'000;
  std::uint64_t cell_cap = 20'000'000;
  // kAuto scans while both limits hold and walks otherwise.
  std::size_t scan_max_players = 4;
  std::uint64_t scan_max_cells = std::uint64_t{1} << 18;
};

enum class SolveStatus { kConverged, kMeshCertificate, kBudgetExceeded };

struct LevelStats {
  std::int64_t mesh = 0;
  SearchMode mode = SearchMode::kScan;
  std::uint64_t cells_visited = 0;
  std::uint64_t steps = 0;
  bool fell_back = false;
  std::optional<Rational> envy;
};

struct IndividualSolution {
  IndividualAllocation allocation;
  std::optional<EnvyReport> envy;  // valuation-backed only
  SolveStatus status = SolveStatus::kConverged;
  std::vector<LevelStats> levels;
};

// Judges a readout; nullopt means "no envy notion", accept at the requested mesh.
using ReadoutCheck = std::function<std::optional<EnvyReport>(const IndividualAllocation&)>;

// Mesh schedule shared by the individual and group solvers. With a check,
// doubles the mesh from config.mesh until the check passes, the guarantee
// mesh `guarantee_mesh` is reached without success (SpernerViolation), or the
// budget runs out. Without one, solves once at config.mesh.
IndividualSolution run_mesh_schedule(std::span<const DemandFunction> demands,
                                     const SolverConfig& config, const ReadoutCheck& check,
                                     std::int64_t guarantee_mesh);

// Smallest mesh at which a fully-labeled cell guarantees envy <= eps:
// max(n, ceil(2 * D * (n - 1) / eps)).
std::int64_t guarantee_mesh(std::size_t n, const Rational& max_density, const Rational& eps);

IndividualSolution solve_individual(std::span<const PiecewiseConstantValuation> valuations,
                                    const Rational& eps, const SolverConfig& config = {});
IndividualSolution solve_individual(std::span<const DemandFunction> demands,
                                    const SolverConfig& config = {});

EnvyReport check_envy_individual(std::span<const PiecewiseConstantValuation> valuations,
                                 const IndividualAllocation& alloc, const Rational& eps);

std::string to_string(SearchMode mode);
SearchMode parse_search_mode(const std::string& text);

}  // namespace cakecut

#endif  // CAKECUT_SPERNER_HPP_
