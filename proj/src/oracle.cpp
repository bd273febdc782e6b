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

#include "cakecut/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <thread>

#include "cakecut/errors.hpp"
#include "cakecut/random.hpp"

namespace cakecut {

namespace {

using EnvyMatrix = std::vector<std::vector<Rational>>;  // [player][piece]

// C(resolution + pieces - 1, pieces - 1), saturating.
std::uint64_t grid_point_count(std::size_t pieces, std::int64_t resolution) {
  long double count = 1;
  for (std::size_t i = 1; i < pieces; ++i) {
    count = count * static_cast<long double>(resolution + static_cast<std::int64_t>(i)) /
            static_cast<long double>(i);
  }
  return count > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(count + 0.5L);
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_limits(std::size_t players, std::size_t pieces, std::int64_t resolution,
                  std::uint64_t assignments, const OracleLimits& limits) {
  if (resolution < 1) throw InputError("grid resolution must be positive");
  if (players == 0) throw InputError("no players");
  const auto points = grid_point_count(pieces, resolution);
  const long double work = static_cast<long double>(points) * static_cast<long double>(assignments);
  if (players > limits.max_players || resolution > limits.max_resolution ||
      work > static_cast<long double>(limits.max_work)) {
    throw ResourceLimit("oracle refused: " + std::to_string(players) + " players, resolution " +
                        std::to_string(resolution) + ", about " +
                        std::to_string(static_cast<unsigned long long>(work)) +
                        " grid points x assignments (caps: " + std::to_string(limits.max_players) +
                        " players, resolution " + std::to_string(limits.max_resolution) + ", " +
                        std::to_string(limits.max_work) + " work)");
  }
}

std::vector<std::vector<std::int64_t>> grid_points(std::size_t pieces, std::int64_t resolution) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> z(pieces - 1, 0);
  while (true) {
    out.push_back(z);
    std::size_t i = z.size();
    while (i > 0 && z[i - 1] == resolution) --i;
    if (i == 0) break;
    ++z[i - 1];
    for (std::size_t j = i; j < z.size(); ++j) z[j] = z[i - 1];
  }
  return out;
}

EnvyMatrix envy_matrix(std::span<const PiecewiseConstantValuation> valuations,
                       const ContiguousPartition& x) {
  EnvyMatrix envy;
  envy.reserve(valuations.size());
  for (const auto& v : valuations) {
    auto values = piece_values(v, x);
    const Rational best = *std::max_element(values.begin(), values.end());
    for (auto& value : values) value = best - value;
    envy.push_back(std::move(values));
  }
  return envy;
}

// Best achievable max-envy at one grid point and the player -> piece choice.
using PointSolver = std::function<std::pair<Rational, std::vector<std::size_t>>(const EnvyMatrix&)>;

OracleResult run_grid(std::span<const PiecewiseConstantValuation> valuations, std::size_t pieces,
                      std::int64_t resolution, const OracleLimits& limits,
                      const PointSolver& solve_point) {
  const auto points = grid_points(pieces, resolution);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(limits.workers, 1, points.size()));

  struct Partial {
    std::optional<Rational> best;
    std::vector<std::size_t> argmin;  // indices into points
    std::vector<std::size_t> best_choice;
    std::exception_ptr error;
  };
  std::vector<Partial> partials(workers);
  auto work = [&](unsigned w) {
    Partial& part = partials[w];
    try {
      const std::size_t begin = points.size() * w / workers;
      const std::size_t end = points.size() * (w + 1) / workers;
      for (std::size_t idx = begin; idx < end; ++idx) {
        std::vector<Rational> lengths;
        std::int64_t prev = 0;
        for (auto c : points[idx]) {
          lengths.emplace_back(c - prev, resolution);
          prev = c;
        }
        lengths.emplace_back(resolution - prev, resolution);
        auto [value, choice] = solve_point(envy_matrix(valuations, ContiguousPartition(lengths)));
        if (!part.best || value < *part.best) {
          part.best = value;
          part.argmin = {idx};
          part.best_choice = std::move(choice);
        } else if (value == *part.best) {
          part.argmin.push_back(idx);
        }
      }
    } catch (...) {
      part.error = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  // Ranges are in lexicographic order, so merging in worker order keeps the
  // argmin list sorted.
  std::optional<Rational> best;
  for (const auto& part : partials) {
    if (part.error) std::rethrow_exception(part.error);
    if (part.best && (!best || *part.best < *best)) best = part.best;
  }
  OracleResult result;
  result.min_max_envy = *best;
  result.grid_points = points.size();
  for (const auto& part : partials) {
    if (!part.best || *part.best != *best) continue;
    if (result.argmin.empty()) result.best_piece_of_player = part.best_choice;
    for (auto idx : part.argmin) {
      std::vector<Rational> cuts;
      for (auto c : points[idx]) cuts.emplace_back(c, resolution);
      result.argmin.emplace_back(std::move(cuts));
    }
  }
  result.best_cuts = result.argmin.front();
  return result;
}

// Kuhn's augmenting paths over expanded group slots.
class CapacityMatcher {
 public:
  CapacityMatcher(const EnvyMatrix& envy, const GroupStructure& groups)
      : envy_(envy), groups_(groups), slot_owner_(groups.players(), SIZE_MAX) {}

  // Assignment player -> group using only entries <= threshold, if one exists.
  std::optional<std::vector<std::size_t>> feasible(const Rational& threshold) {
    std::fill(slot_owner_.begin(), slot_owner_.end(), SIZE_MAX);
    threshold_ = &threshold;
    for (std::size_t p = 0; p < envy_.size(); ++p) {
      std::vector<bool> seen(slot_owner_.size(), false);
      if (!augment(p, seen)) return std::nullopt;
    }
    std::vector<std::size_t> group_of(envy_.size());
    for (std::size_t s = 0; s < slot_owner_.size(); ++s) {
      group_of[slot_owner_[s]] = groups_.block_of(s);
    }
    return group_of;
  }

 private:
  bool augment(std::size_t player, std::vector<bool>& seen) {
    for (std::size_t s = 0; s < slot_owner_.size(); ++s) {
      if (seen[s] || envy_[player][groups_.block_of(s)] > *threshold_) continue;
      seen[s] = true;
      if (slot_owner_[s] == SIZE_MAX || augment(slot_owner_[s], seen)) {
        slot_owner_[s] = player;
        return true;
      }
    }
    return false;
  }

  const EnvyMatrix& envy_;
  const GroupStructure& groups_;
  std::vector<std::size_t> slot_owner_;
  const Rational* threshold_ = nullptr;
};

}  // namespace

OracleResult grid_min_envy_individual(std::span<const PiecewiseConstantValuation> valuations,
                                      GridSpec grid, const OracleLimits& limits) {
  const std::size_t n = valuations.size();
  check_limits(n, n, grid.resolution, factorial(n), limits);
  return run_grid(valuations, n, grid.resolution, limits, [n](const EnvyMatrix& envy) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::optional<Rational> best;
    std::vector<std::size_t> choice;
    do {
      Rational worst;
      for (std::size_t p = 0; p < n; ++p) worst = std::max(worst, envy[p][perm[p]]);
      if (!best || worst < *best) {
        best = worst;
        choice = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::make_pair(*best, choice);
  });
}

OracleResult grid_min_envy_groups(std::span<const PiecewiseConstantValuation> valuations,
                                  const GroupStructure& groups, GridSpec grid,
                                  const OracleLimits& limits) {
  const std::size_t n = valuations.size();
  if (groups.players() != n) throw InputError("group sizes do not sum to the number of players");
  const std::size_t m = groups.groups();
  // Work per point: one matching per distinct threshold, at most n*m of them.
  check_limits(n, m, grid.resolution, n * m, limits);
  return run_grid(valuations, m, grid.resolution, limits, [&](const EnvyMatrix& envy) {
    std::vector<Rational> thresholds;
    for (const auto& row : envy) thresholds.insert(thresholds.end(), row.begin(), row.end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    CapacityMatcher matcher(envy, groups);
    // Smallest feasible threshold; the largest one is always feasible.
    std::size_t lo = 0;
    std::size_t hi = thresholds.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (matcher.feasible(thresholds[mid])) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return std::make_pair(thresholds[lo], *matcher.feasible(thresholds[lo]));
  });
}

OracleResult fixed_group_min_envy(std::span<const PiecewiseConstantValuation> valuations,
                                  std::span<const std::size_t> membership, GridSpec grid,
                                  const OracleLimits& limits) {
  const std::size_t n = valuations.size();
  if (membership.size() != n) throw InputError("membership must list one group per player");
  std::size_t m = 0;
  for (auto g : membership) m = std::max(m, g + 1);
  std::vector<bool> used(m, false);
  for (auto g : membership) used[g] = true;
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw InputError("fixed membership leaves a group empty");
  }
  check_limits(n, m, grid.resolution, factorial(m), limits);
  const std::vector<std::size_t> members(membership.begin(), membership.end());
  return run_grid(valuations, m, grid.resolution, limits, [m, members](const EnvyMatrix& envy) {
    std::vector<std::size_t> order(m);  // group -> piece
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::optional<Rational> best;
    std::vector<std::size_t> choice;
    do {
      Rational worst;
      for (std::size_t p = 0; p < members.size(); ++p) {
        worst = std::max(worst, envy[p][order[members[p]]]);
      }
      if (!best || worst < *best) {
        best = worst;
        choice.resize(members.size());
        for (std::size_t p = 0; p < members.size(); ++p) choice[p] = order[members[p]];
      }
    } while (std::next_permutation(order.begin(), order.end()));
    return std::make_pair(*best, choice);
  });
}

std::vector<PiecewiseConstantValuation> morning_evening_players() {
  const auto morning = PiecewiseConstantValuation::concentrated(Rational(0), Rational(1, 10));
  const auto evening = PiecewiseConstantValuation::concentrated(Rational(9, 10), Rational(1));
  return {morning, morning, evening, evening};
}

Rational naive_failure_threshold(const GroupStructure& groups, const Rational& eps) {
  const auto largest = *std::max_element(groups.sizes().begin(), groups.sizes().end());
  return Rational(static_cast<std::int64_t>(largest)) * eps;
}

NaiveReductionCase replay_naive_reduction(std::vector<PiecewiseConstantValuation> valuations,
                                          const GroupStructure& groups, const Rational& eps,
                                          const SolverConfig& solver) {
  auto individual = solve_individual(valuations, eps, solver);
  auto blocked = assemble_groups(individual.allocation.partition,
                                 individual.allocation.assignment, groups);
  auto report = verify_group_envy(valuations, blocked, naive_failure_threshold(groups, eps));
  return NaiveReductionCase{std::move(valuations), groups, eps, std::move(individual.allocation),
                            std::move(blocked), std::move(report), 0};
}

std::optional<NaiveReductionCase> naive_reduction_counterexample_search(
    std::uint64_t seed, std::size_t trials, const NaiveSearchOptions& options) {
  const GroupStructure groups(options.sizes);
  if (groups.players() != options.players) {
    throw InputError("group sizes do not sum to the number of players");
  }
  std::mt19937_64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<PiecewiseConstantValuation> valuations;
    for (std::size_t p = 0; p < options.players; ++p) {
      valuations.push_back(options.uniform_only ? PiecewiseConstantValuation::uniform()
                                                : random_valuation(rng));
    }
    auto found = replay_naive_reduction(std::move(valuations), groups, options.epsilon,
                                        options.solver);
    if (!found.group_envy.pass) {
      found.trial = trial;
      return found;
    }
  }
  return std::nullopt;
}

}  // namespace cakecut
