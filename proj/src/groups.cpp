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

#include "cakecut/groups.hpp"

#include <algorithm>
#include <memory>

#include "cakecut/errors.hpp"

namespace cakecut {

GroupStructure::GroupStructure(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw InputError("at least one group is required");
  prefix_.reserve(sizes_.size() + 1);
  prefix_.push_back(0);
  for (auto k : sizes_) {
    if (k == 0) throw InputError("group sizes must be positive");
    prefix_.push_back(prefix_.back() + k);
  }
}

GroupStructure GroupStructure::singletons(std::size_t n) {
  return GroupStructure(std::vector<std::size_t>(n, 1));
}

std::size_t GroupStructure::block_of(std::size_t index) const {
  if (index >= players()) throw InputError("index outside every block");
  auto it = std::upper_bound(prefix_.begin(), prefix_.end(), index);
  return static_cast<std::size_t>(it - prefix_.begin()) - 1;
}

std::vector<std::size_t> GroupAllocation::members(std::size_t group) const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < membership.size(); ++p) {
    if (membership[p] == group) out.push_back(p);
  }
  return out;
}

ContiguousPartition coarsen(const ContiguousPartition& x, const GroupStructure& groups) {
  if (x.size() != groups.players()) {
    throw InputError("partition has " + std::to_string(x.size()) + " pieces, groups expect " +
                     std::to_string(groups.players()));
  }
  std::vector<Rational> y(groups.groups());
  for (std::size_t j = 0; j < groups.groups(); ++j) {
    for (std::size_t i = groups.block_begin(j); i < groups.block_end(j); ++i) y[j] += x[i];
  }
  return ContiguousPartition(std::move(y));
}

DemandFunction lift_demand(DemandFunction f, const GroupStructure& groups) {
  auto shared = std::make_shared<const DemandFunction>(std::move(f));
  return [shared, groups](const ContiguousPartition& x) {
    const auto y = coarsen(x, groups);
    PieceSet out;
    for (auto j : (*shared)(y)) {
      if (j >= groups.groups()) throw InputError("coarse demand names a nonexistent piece");
      const auto begin = groups.block_begin(j);
      const auto end = groups.block_end(j);
      Rational longest = x[begin];
      for (auto i = begin + 1; i < end; ++i) longest = std::max(longest, x[i]);
      for (auto i = begin; i < end; ++i) {
        if (x[i] == longest) out.push_back(i);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
}

GroupAllocation assemble_groups(const ContiguousPartition& x_star, const Assignment& assignment,
                                const GroupStructure& groups) {
  if (assignment.size() != groups.players()) {
    throw InputError("assignment covers " + std::to_string(assignment.size()) +
                     " players, groups expect " + std::to_string(groups.players()));
  }
  GroupAllocation out{coarsen(x_star, groups), std::vector<std::size_t>(assignment.size())};
  for (std::size_t p = 0; p < assignment.size(); ++p) {
    out.membership[p] = groups.block_of(assignment.piece_of(p));
  }
  return out;
}

EnvyReport verify_group_envy(std::span<const PiecewiseConstantValuation> valuations,
                             const GroupAllocation& alloc, const Rational& eps) {
  if (alloc.membership.size() != valuations.size()) {
    throw InputError("membership and valuations disagree on the number of players");
  }
  return envy_report(valuations, alloc.partition, alloc.membership, eps);
}

namespace {

std::vector<DemandFunction> lift_all(std::span<const DemandFunction> demands,
                                     const GroupStructure& groups) {
  if (demands.size() != groups.players()) {
    throw InputError("group sizes sum to " + std::to_string(groups.players()) + " but there are " +
                     std::to_string(demands.size()) + " players");
  }
  std::vector<DemandFunction> lifted;
  lifted.reserve(demands.size());
  for (const auto& f : demands) lifted.push_back(lift_demand(f, groups));
  return lifted;
}

GroupSolution finish(IndividualSolution solution, const GroupStructure& groups,
                     std::optional<EnvyReport> envy) {
  auto alloc = assemble_groups(solution.allocation.partition, solution.allocation.assignment,
                               groups);
  return GroupSolution{std::move(alloc), std::move(solution.allocation), std::move(envy),
                       solution.status, std::move(solution.levels)};
}

}  // namespace

GroupSolution solve_groups(std::span<const PiecewiseConstantValuation> valuations,
                           const GroupStructure& groups, const Rational& eps,
                           const SolverConfig& config) {
  if (valuations.empty()) throw InputError("no players");
  const auto coarse = valuation_demands(valuations);
  const auto lifted = lift_all(coarse, groups);
  const auto guarantee = guarantee_mesh(valuations.size(), max_density(valuations), eps);
  ReadoutCheck check = [&](const IndividualAllocation& alloc) -> std::optional<EnvyReport> {
    return verify_group_envy(valuations, assemble_groups(alloc.partition, alloc.assignment, groups),
                             eps);
  };
  auto solution = run_mesh_schedule(lifted, config, check, guarantee);
  auto envy = solution.envy;
  return finish(std::move(solution), groups, std::move(envy));
}

GroupSolution solve_groups(std::span<const DemandFunction> demands, const GroupStructure& groups,
                           const SolverConfig& config) {
  const auto lifted = lift_all(demands, groups);
  return finish(run_mesh_schedule(lifted, config, nullptr, 0), groups, std::nullopt);
}

}  // namespace cakecut
