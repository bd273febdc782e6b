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

#ifndef CAKECUT_GROUPS_HPP_
#define CAKECUT_GROUPS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cakecut/demand.hpp"
#include "cakecut/partition.hpp"
#include "cakecut/sperner.hpp"
#include "cakecut/valuation.hpp"

namespace cakecut {

// Group sizes k_1..k_m and the consecutive index blocks they induce: block j
// holds pieces/players [prefix(j), prefix(j+1)) (0-based).
class GroupStructure {
 public:
  explicit GroupStructure(std::vector<std::size_t> sizes);
  static GroupStructure singletons(std::size_t n);

  std::size_t groups() const { return sizes_.size(); }
  std::size_t players() const { return prefix_.back(); }
  std::size_t size(std::size_t j) const { return sizes_[j]; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  // K_t: total size of the first t groups, t = 0..m.
  std::size_t prefix(std::size_t t) const { return prefix_[t]; }
  std::size_t block_begin(std::size_t j) const { return prefix_[j]; }
  std::size_t block_end(std::size_t j) const { return prefix_[j + 1]; }
  std::size_t block_of(std::size_t index) const;
  bool all_singletons() const { return groups() == players(); }

  friend bool operator==(const GroupStructure&, const GroupStructure&) = default;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> prefix_;
};

// Unites each block of consecutive pieces of an n-partition into one piece.
ContiguousPartition coarsen(const ContiguousPartition& x, const GroupStructure& groups);

// Turns a demand over m-partitions into one over n-partitions: coarsen x to y,
// take the demanded blocks f(y), and return, for each, every longest piece of
// x inside that block (ties kept).
DemandFunction lift_demand(DemandFunction f, const GroupStructure& groups);

// Group j receives the j-th piece of `partition`.
struct GroupAllocation {
  ContiguousPartition partition;
  std::vector<std::size_t> membership;  // player -> group

  std::vector<std::size_t> members(std::size_t group) const;
};

// A player holding piece i of x_star joins the group whose block contains i.
GroupAllocation assemble_groups(const ContiguousPartition& x_star, const Assignment& assignment,
                                const GroupStructure& groups);

// eps = 0 checks exact envy-freeness.
EnvyReport verify_group_envy(std::span<const PiecewiseConstantValuation> valuations,
                             const GroupAllocation& alloc, const Rational& eps);

struct GroupSolution {
  GroupAllocation allocation;
  IndividualAllocation lifted;     // x*, the player -> piece bijection, and the certificate
  std::optional<EnvyReport> envy;  // valuation-backed only
  SolveStatus status = SolveStatus::kConverged;
  std::vector<LevelStats> levels;
};

// Valuation-backed: doubles the mesh until the group allocation is
// eps-envy-free (or the budget runs out, flagged in `status`).
GroupSolution solve_groups(std::span<const PiecewiseConstantValuation> valuations,
                           const GroupStructure& groups, const Rational& eps,
                           const SolverConfig& config = {});

// Abstract demands over m-partitions: solves at config.mesh and returns the
// mesh certificate in `lifted`.
GroupSolution solve_groups(std::span<const DemandFunction> demands, const GroupStructure& groups,
                           const SolverConfig& config = {});

}  // namespace cakecut

#endif  // CAKECUT_GROUPS_HPP_
