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

// Triangulation, labeling, fully-labeled cell search and the mesh schedule.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "cakecut/demand.hpp"
#include "cakecut/errors.hpp"
#include "cakecut/random.hpp"
#include "cakecut/sperner.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cakecut;
using cakecut::testing::P;

namespace {

using Z = std::vector<std::int64_t>;

// Every Freudenthal cell of the cube grid, kept when all its vertices are
// nondecreasing and at most K. Independent of the library's enumerator.
std::vector<ElementaryCell> brute_force_cells(std::size_t n, std::int64_t mesh) {
  const std::size_t d = n - 1;
  std::vector<ElementaryCell> out;
  Z base(d, 0);
  while (true) {
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool inside = true;
      Z v = base;
      auto ok = [&](const Z& z) {
        for (std::size_t i = 0; i < d; ++i) {
          if (z[i] < 0 || z[i] > mesh || (i > 0 && z[i - 1] > z[i])) return false;
        }
        return true;
      };
      inside = ok(v);
      for (auto c : perm) {
        ++v[c];
        inside = inside && ok(v);
      }
      if (inside) out.push_back(ElementaryCell{base, perm, mesh});
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::size_t i = 0;
    while (i < d && ++base[i] == mesh) base[i++] = 0;
    if (i == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DemandFunction> uniform_demands(std::size_t n) {
  return std::vector<DemandFunction>(n, valuation_demand(PiecewiseConstantValuation::uniform()));
}

// Labels of a returned cell must be reproduced by fresh evaluation.
void check_certificate(const LabeledCell& cell, std::span<const DemandFunction> demands) {
  const std::size_t n = demands.size();
  REQUIRE(cell.owners.size() == n);
  CHECK(cell.fully_labeled());
  CHECK(cell.cell.inside_order_region());
  std::vector<std::size_t> owners = cell.owners;
  std::vector<std::size_t> labels = cell.labels;
  std::sort(owners.begin(), owners.end());
  std::sort(labels.begin(), labels.end());
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  CHECK(owners == all);
  CHECK(labels == all);
  const auto vertices = cell.cell.vertices();
  for (std::size_t v = 0; v < n; ++v) {
    CHECK(owner_of(vertices[v], n) == cell.owners[v]);
    CHECK(label_vertex(vertices[v], demands) == cell.labels[v]);
  }
}

}  // namespace

TEST_CASE("owner_of examples") {
  CHECK(owner_of(LatticeVertex{{0, 0}, 3}, 3) == 0);
  const ElementaryCell cell{{0, 0}, {1, 0}, 3};
  std::vector<std::size_t> owners;
  for (const auto& v : cell.vertices()) owners.push_back(owner_of(v, 3));
  CHECK(cell.vertices()[1].z == Z{0, 1});
  CHECK(cell.vertices()[2].z == Z{1, 1});
  CHECK(owners == std::vector<std::size_t>{0, 1, 2});
  CHECK(owner_of(LatticeVertex{{3}, 4}, 2) == 1);
}

TEST_CASE("lattice vertices map to partitions") {
  const LatticeVertex v{{1, 2}, 3};
  CHECK(v.valid());
  CHECK(v.partition() == ContiguousPartition::equal(3));
  CHECK_FALSE((LatticeVertex{{2, 1}, 3}).valid());
  CHECK_FALSE((LatticeVertex{{1, 4}, 3}).valid());
  const ElementaryCell cell{{0, 0}, {1, 0}, 3};
  CHECK(cell.barycenter() == P({"1/9", "1/9", "7/9"}));
}

TEST_CASE("enumerate_cells examples") {
  CHECK(enumerate_cells(2, 5).size() == 5);
  CHECK(brute_force_cells(3, 4).size() == 16);
  CHECK(enumerate_cells(3, 4).size() == 16);
  CHECK(enumerate_cells(3, 1).size() == 1);
  CHECK(cell_count(3, 4) == 16);
  CHECK_THROWS_AS(enumerate_cells(4, 100, 1000), ResourceLimit);
}

TEST_CASE("enumerate_cells matches brute force") {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::int64_t mesh = 1; mesh <= 6; ++mesh) {
      auto cells = enumerate_cells(n, mesh);
      CHECK(std::is_sorted(cells.begin(), cells.end()));
      CHECK(cells == brute_force_cells(n, mesh));
      std::uint64_t expected = 1;
      for (std::size_t i = 1; i < n; ++i) expected *= static_cast<std::uint64_t>(mesh);
      CHECK(cells.size() == expected);
    }
  }
}

TEST_CASE("label_vertex examples") {
  const auto uniform = uniform_demands(3);
  CHECK(label_vertex(LatticeVertex{{1, 2}, 3}, uniform) == 0);
  std::mt19937_64 rng(20);
  std::vector<DemandFunction> random;
  for (int p = 0; p < 3; ++p) random.push_back(valuation_demand(random_valuation(rng)));
  for (std::int64_t b = 0; b <= 3; ++b) {
    // Piece 1 is empty whenever the first cut sits at 0.
    CHECK(label_vertex(LatticeVertex{{0, b}, 3}, random) != 0);
    CHECK(label_vertex(LatticeVertex{{0, b}, 3}, uniform) != 0);
  }
  const std::vector<DemandFunction> pair{valuation_demand(PiecewiseConstantValuation::uniform()),
                                         valuation_demand(testing::morning())};
  const LatticeVertex half{{1}, 2};
  CHECK(owner_of(half, 2) == 1);
  CHECK(label_vertex(half, pair) == 0);
}

TEST_CASE("label_vertex reports broken demands") {
  const DemandFunction greedy_left = [](const ContiguousPartition&) { return PieceSet{0}; };
  const std::vector<DemandFunction> demands{greedy_left, greedy_left};
  CHECK_THROWS_AS(label_vertex(LatticeVertex{{0}, 2}, demands), ContractError);
  CHECK_THROWS_AS(find_fully_labeled_scan(2, 4, demands), ContractError);
}

TEST_CASE("scan examples") {
  SUBCASE("two uniform players") {
    const auto demands = uniform_demands(2);
    const auto cell = find_fully_labeled_scan(2, 2, demands);
    check_certificate(cell, demands);
    const auto vs = cell.cell.vertices();
    CHECK(std::any_of(vs.begin(), vs.end(), [](const auto& v) { return v.z == Z{1}; }));
  }
  SUBCASE("three uniform players") {
    const auto demands = uniform_demands(3);
    const auto cell = find_fully_labeled_scan(3, 3, demands);
    check_certificate(cell, demands);
    const auto vs = cell.cell.vertices();
    CHECK(std::any_of(vs.begin(), vs.end(), [](const auto& v) { return v.z == Z{1, 2}; }));
  }
  SUBCASE("uniform player against a player who wants the end") {
    const std::vector<DemandFunction> demands{
        valuation_demand(PiecewiseConstantValuation::uniform()),
        valuation_demand(testing::evening())};
    const auto cell = find_fully_labeled_scan(2, 10, demands);
    check_certificate(cell, demands);
    for (const auto& v : cell.cell.vertices()) {
      CHECK(v.z[0] >= 5);
      CHECK(v.z[0] <= 9);
    }
  }
}

TEST_CASE("walk examples") {
  SUBCASE("one cut: the walk returns the scan's cell") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<DemandFunction> demands;
      for (int p = 0; p < 2; ++p) demands.push_back(valuation_demand(random_valuation(rng)));
      const std::int64_t mesh = 1 + static_cast<std::int64_t>(draw_below(rng, 30));
      CHECK(find_fully_labeled_walk(2, mesh, demands) == find_fully_labeled_scan(2, mesh, demands));
    }
  }
  SUBCASE("three uniform players") {
    const auto demands = uniform_demands(3);
    CHECK(count_fully_labeled(3, 6, demands) % 2 == 1);
    check_certificate(find_fully_labeled_walk(3, 6, demands), demands);
  }
  SUBCASE("four random players at mesh 12") {
    std::mt19937_64 rng(22);
    std::vector<DemandFunction> demands;
    for (int p = 0; p < 4; ++p) demands.push_back(valuation_demand(random_valuation(rng)));
    SearchStats stats;
    const auto cell = find_fully_labeled_walk(4, 12, demands, {}, &stats);
    check_certificate(cell, demands);
    CHECK(stats.cells_visited <= cell_count(4, 12));
    CHECK_FALSE(stats.fell_back);
  }
}

TEST_CASE("search budgets") {
  const auto demands = uniform_demands(4);
  SearchOptions options;
  options.budget = 3;
  CHECK_THROWS_AS(find_fully_labeled_scan(4, 16, demands, options), BudgetExhausted);
  CHECK_THROWS_AS(find_fully_labeled_walk(4, 16, demands, options), BudgetExhausted);
  options.budget = UINT64_MAX;
  options.cell_cap = 10;
  CHECK_THROWS_AS(find_fully_labeled_scan(4, 16, demands, options), ResourceLimit);
}

TEST_CASE("property: rainbow ownership on every cell") {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::int64_t mesh = 1; mesh <= 8; ++mesh) {
      bool rainbow = true;
      for_each_cell(n, mesh, [&](const ElementaryCell& cell) {
        std::set<std::size_t> owners;
        for (const auto& v : cell.vertices()) owners.insert(owner_of(v, n));
        rainbow = rainbow && owners.size() == n;
        return true;
      });
      CHECK(rainbow);
    }
  }
}

TEST_CASE("property: labels never name an empty piece") {
  std::mt19937_64 rng(23);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<DemandFunction> demands;
      for (std::size_t p = 0; p < n; ++p) demands.push_back(valuation_demand(random_valuation(rng)));
      for (std::int64_t mesh = 1; mesh <= 8; ++mesh) {
        VertexLabeler labeler(demands, mesh);
        bool ok = true;
        for_each_cell(n, mesh, [&](const ElementaryCell& cell) {
          for (const auto& v : cell.vertices()) {
            ok = ok && v.partition()[labeler.label(v.z)] > Rational(0);
          }
          return true;
        });
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("property: the number of fully-labeled cells is odd") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<DemandFunction> demands;
    for (std::size_t p = 0; p < n; ++p) demands.push_back(valuation_demand(random_valuation(rng)));
    for (std::int64_t mesh = 1; mesh <= 8; ++mesh) {
      CHECK(count_fully_labeled(n, mesh, demands) % 2 == 1);
    }
  }
}

TEST_CASE("property: scan and walk certificates are sound") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::int64_t mesh = static_cast<std::int64_t>(n) * (1 + trial % 3);
    std::vector<DemandFunction> demands;
    for (std::size_t p = 0; p < n; ++p) demands.push_back(valuation_demand(random_valuation(rng)));
    check_certificate(find_fully_labeled_walk(n, mesh, demands), demands);
    if (n <= 4) check_certificate(find_fully_labeled_scan(n, mesh, demands), demands);
  }
}

TEST_CASE("property: readout envy respects the mesh bound") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto vals = random_valuations(1000 + trial, n);
    const auto demands = valuation_demands(vals);
    for (std::int64_t mesh : {static_cast<std::int64_t>(n), std::int64_t{8}, std::int64_t{16}}) {
      const auto alloc = read_allocation(find_fully_labeled_scan(n, mesh, demands));
      CHECK(alloc.mesh_distance == Rational(static_cast<std::int64_t>(n) - 1, mesh));
      const auto report = check_envy_individual(vals, alloc, Rational(1));
      const Rational bound = Rational(2) * max_density(vals) * alloc.mesh_distance;
      CHECK(report.max_envy <= bound);
    }
  }
}

TEST_CASE("property: rescaling one player's densities leaves labels and the cell unchanged") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 2 + seed % 3;
    auto vals = random_valuations(seed, n);
    auto scaled = vals;
    std::vector<Rational> densities;
    for (const auto& d : vals[0].densities()) densities.push_back(d * Rational(7));
    scaled[0] = PiecewiseConstantValuation::normalized(vals[0].breakpoints(), densities);
    const auto a = valuation_demands(vals);
    const auto b = valuation_demands(scaled);
    const std::int64_t mesh = 6;
    VertexLabeler la(a, mesh);
    VertexLabeler lb(b, mesh);
    bool same = true;
    for_each_cell(n, mesh, [&](const ElementaryCell& cell) {
      same = same && la.label_cell(cell) == lb.label_cell(cell);
      return true;
    });
    CHECK(same);
    CHECK(find_fully_labeled_scan(n, mesh, a) == find_fully_labeled_scan(n, mesh, b));
  }
}

TEST_CASE("property: scan result does not depend on the worker count") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::size_t n = 3 + seed % 2;
    const auto demands = valuation_demands(random_valuations(seed + 50, n));
    SearchOptions one;
    SearchOptions four;
    four.workers = 4;
    for (std::int64_t mesh : {4, 9, 16}) {
      CHECK(find_fully_labeled_scan(n, mesh, demands, one) ==
            find_fully_labeled_scan(n, mesh, demands, four));
    }
  }
}

TEST_CASE("solve_individual examples") {
  SUBCASE("one player") {
    const std::vector<PiecewiseConstantValuation> vals{testing::morning()};
    const auto sol = solve_individual(vals, Rational(1, 100));
    CHECK(sol.allocation.partition == ContiguousPartition::whole());
    CHECK(sol.envy->max_envy == Rational(0));
  }
  SUBCASE("three uniform players") {
    const std::vector<PiecewiseConstantValuation> vals(3, PiecewiseConstantValuation::uniform());
    const Rational eps(1, 100);
    const auto sol = solve_individual(vals, eps);
    const auto cuts = cuts_from_partition(sol.allocation.partition);
    CHECK(abs(cuts[0] - Rational(1, 3)) <= eps);
    CHECK(abs(cuts[1] - Rational(2, 3)) <= eps);
    CHECK(sol.envy->pass);
  }
  SUBCASE("uniform player against a player who wants the end") {
    const std::vector<PiecewiseConstantValuation> vals{PiecewiseConstantValuation::uniform(),
                                                       testing::evening()};
    const Rational eps(1, 100);
    const auto sol = solve_individual(vals, eps);
    CHECK(sol.allocation.assignment.piece_of(1) == 1);
    const auto cut = cuts_from_partition(sol.allocation.partition)[0];
    CHECK(cut >= Rational(1, 2) - eps);
    CHECK(cut <= Rational(19, 20) + eps);
  }
}

TEST_CASE("solve_individual schedule, budget and certificate modes") {
  const std::vector<PiecewiseConstantValuation> vals(3, PiecewiseConstantValuation::uniform());
  const auto sol = solve_individual(vals, Rational(1, 100));
  REQUIRE(sol.levels.size() >= 2);
  CHECK(sol.levels.front().mesh == 3);
  for (std::size_t i = 1; i < sol.levels.size(); ++i) {
    CHECK(sol.levels[i].mesh == 2 * sol.levels[i - 1].mesh);
  }
  CHECK(sol.status == SolveStatus::kConverged);

  SolverConfig tight;
  tight.budget_cells = 40;
  const auto partial = solve_individual(vals, Rational(1, 100), tight);
  CHECK(partial.status == SolveStatus::kBudgetExceeded);
  REQUIRE(partial.envy);
  CHECK_FALSE(partial.envy->pass);

  SolverConfig none;
  none.budget_cells = 1;
  CHECK_THROWS_AS(solve_individual(vals, Rational(1, 100), none), BudgetExhausted);

  SolverConfig abstract;
  abstract.mesh = 9;
  const auto demands = uniform_demands(3);
  const auto cert = solve_individual(demands, abstract);
  CHECK(cert.status == SolveStatus::kMeshCertificate);
  CHECK(cert.allocation.mesh_distance == Rational(2, 9));
  check_certificate(cert.allocation.certificate, demands);
}

TEST_CASE("guarantee_mesh") {
  CHECK(guarantee_mesh(3, Rational(10), Rational(1, 100)) == 4000);
  CHECK(guarantee_mesh(5, Rational(1), Rational(1)) == 8);
  CHECK(guarantee_mesh(4, Rational(1, 10), Rational(1)) == 4);
  CHECK_THROWS_AS(guarantee_mesh(3, Rational(1), Rational(0)), InputError);
}

TEST_CASE("check_envy_individual examples") {
  const std::vector<PiecewiseConstantValuation> uniform(3, PiecewiseConstantValuation::uniform());
  const auto cell = find_fully_labeled_scan(3, 3, uniform_demands(3));
  IndividualAllocation alloc{ContiguousPartition::equal(3), Assignment::identity(3), cell,
                             Rational(2, 3)};
  CHECK(check_envy_individual(uniform, alloc, Rational(0)).max_envy == Rational(0));
  alloc.assignment = Assignment({1, 0, 2});
  CHECK(check_envy_individual(uniform, alloc, Rational(0)).max_envy == Rational(0));

  const std::vector<PiecewiseConstantValuation> pair{PiecewiseConstantValuation::uniform(),
                                                     testing::evening()};
  const auto cell2 = find_fully_labeled_scan(2, 2, uniform_demands(2));
  IndividualAllocation wrong{P({"1/2", "1/2"}), Assignment({1, 0}), cell2, Rational(1, 2)};
  const auto report = check_envy_individual(pair, wrong, Rational(1, 100));
  CHECK(report.envy[1] == Rational(1));
  CHECK(report.enviers() == std::vector<std::size_t>{1});
}
