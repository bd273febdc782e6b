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

#ifndef CAKECUT_ORACLE_HPP_
#define CAKECUT_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cakecut/groups.hpp"
#include "cakecut/partition.hpp"
#include "cakecut/rational.hpp"
#include "cakecut/sperner.hpp"
#include "cakecut/valuation.hpp"

namespace cakecut {

// Brute-force ground truth on the grid of cuts at multiples of 1/resolution.
struct GridSpec {
  std::int64_t resolution = 1;
};

struct OracleLimits {
  std::size_t max_players = 4;
  std::int64_t max_resolution = 64;
  std::uint64_t max_work = 200'000'000;  // grid points x assignments
  unsigned workers = 1;
};

struct OracleResult {
  Rational min_max_envy;
  std::vector<CutVector> argmin;  // every grid cut vector attaining the minimum, lexicographic
  CutVector best_cuts;            // argmin.front()
  // At best_cuts: piece held by each player. For group modes this is the
  // player's group's piece.
  std::vector<std::size_t> best_piece_of_player;
  std::uint64_t grid_points = 0;
};

// All cut vectors and all n! player -> piece bijections.
OracleResult grid_min_envy_individual(std::span<const PiecewiseConstantValuation> valuations,
                                      GridSpec grid, const OracleLimits& limits = {});

// All m-cut vectors; for each, the exact min-max-envy assignment of players to
// groups with group j holding k_j players and piece j.
OracleResult grid_min_envy_groups(std::span<const PiecewiseConstantValuation> valuations,
                                  const GroupStructure& groups, GridSpec grid,
                                  const OracleLimits& limits = {});

// Membership frozen (player -> group, 0-based); enumerates all cut vectors and
// all m! orders of groups to pieces.
OracleResult fixed_group_min_envy(std::span<const PiecewiseConstantValuation> valuations,
                                  std::span<const std::size_t> membership, GridSpec grid,
                                  const OracleLimits& limits = {});

// Two players who only care about [0, 1/10] and two who only care about
// [9/10, 1], as density-10 valuations, in that order.
std::vector<PiecewiseConstantValuation> morning_evening_players();

// An instance on which solving for individuals and then grouping players by
// the block their piece falls in leaves some player envious.
struct NaiveReductionCase {
  std::vector<PiecewiseConstantValuation> valuations;
  GroupStructure groups;
  Rational epsilon;
  IndividualAllocation individual;
  GroupAllocation blocked;
  EnvyReport group_envy;
  std::uint64_t trial = 0;
};

struct NaiveSearchOptions {
  std::size_t players = 4;
  std::vector<std::size_t> sizes{2, 2};
  Rational epsilon{1, 100};
  bool uniform_only = false;
  SolverConfig solver{};
};

// Envy above (largest group size) * epsilon counts as a failure: an
// individually eps-envy-free division can leave a group of k players up to
// k * eps behind through approximation alone.
Rational naive_failure_threshold(const GroupStructure& groups, const Rational& eps);

// Solves the individual problem with the original demands, then groups by blocks.
NaiveReductionCase replay_naive_reduction(std::vector<PiecewiseConstantValuation> valuations,
                                          const GroupStructure& groups, const Rational& eps,
                                          const SolverConfig& solver = {});

std::optional<NaiveReductionCase> naive_reduction_counterexample_search(
    std::uint64_t seed, std::size_t trials, const NaiveSearchOptions& options = {});

}  // namespace cakecut

#endif  // CAKECUT_ORACLE_HPP_
